//! Text and JSON set files.
//!
//! Text: one element per line, coordinates as base-10 integers separated by a
//! single space; lines starting with `#` are comments. The rank is the token
//! count of the first element line. An input with no element lines is the
//! empty set of rank 1.
//!
//! JSON: `{"rank": r, "elements": [[...], ...]}`. Integers of magnitude at
//! least 2^53 are written as strings; on input both forms are accepted.

use std::io::{Read, Write};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::model::{AdditiveSet, Element, NonDissociationWitness, SignVector, SpanningCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetFormat {
    Text,
    Json,
}

const SAFE_INTEGER_BITS: u64 = 53;

/// Serializes a big integer as a JSON number when it is below 2^53 in
/// magnitude, otherwise as a decimal string.
pub fn serialize_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.abs().bits() <= SAFE_INTEGER_BITS {
        if let Some(i) = v.to_i64() {
            return s.serialize_i64(i);
        }
    }
    s.serialize_str(&v.to_string())
}

struct JsonInt<'a>(&'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_bigint(self.0, s)
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rank()))?;
        for c in self.coords() {
            seq.serialize_element(&JsonInt(c))?;
        }
        seq.end()
    }
}

impl Serialize for AdditiveSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AdditiveSet", 2)?;
        st.serialize_field("rank", &self.rank())?;
        st.serialize_field("elements", self.elements())?;
        st.end()
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs().serialize(s)
    }
}

impl Serialize for NonDissociationWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("NonDissociationWitness", 1)?;
        st.serialize_field("signs", &self.signs)?;
        st.end()
    }
}

struct Combination<'a>(&'a Element, &'a SignVector);

impl Serialize for Combination<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Combination", 2)?;
        st.serialize_field("target", self.0)?;
        st.serialize_field("signs", self.1)?;
        st.end()
    }
}

impl Serialize for SpanningCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SpanningCertificate", 2)?;
        st.serialize_field("spanner", &self.spanner)?;
        let combos: Vec<Combination<'_>> = self
            .combinations
            .iter()
            .map(|(e, v)| Combination(e, v))
            .collect();
        st.serialize_field("combinations", &combos)?;
        st.end()
    }
}

pub fn parse_set(input: &[u8], format: SetFormat) -> Result<AdditiveSet> {
    match format {
        SetFormat::Text => parse_text(input),
        SetFormat::Json => parse_json(input),
    }
}

pub fn read_set(mut reader: impl Read, format: SetFormat) -> Result<AdditiveSet> {
    let mut buf = Vec::new();
    reader.read_to_end(&mut buf)?;
    parse_set(&buf, format)
}

fn parse_text(input: &[u8]) -> Result<AdditiveSet> {
    let text = std::str::from_utf8(input).map_err(|e| Error::Parse {
        location: format!("byte {}", e.valid_up_to()),
        message: "input is not valid UTF-8".into(),
    })?;
    let mut rank: Option<usize> = None;
    let mut elements = Vec::new();
    let mut seen = std::collections::HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let coords = line
            .split(' ')
            .map(|tok| parse_int_token(tok).map_err(|m| Error::parse_line(lineno, m)))
            .collect::<Result<Vec<_>>>()?;
        match rank {
            None => rank = Some(coords.len()),
            Some(r) if r != coords.len() => {
                return Err(Error::parse_line(
                    lineno,
                    format!(
                        "ragged rank: expected {r} coordinates, found {}",
                        coords.len()
                    ),
                ));
            }
            Some(_) => {}
        }
        let e = Element::new(coords);
        if let Some(first) = seen.insert(e.clone(), lineno) {
            return Err(Error::parse_line(
                lineno,
                format!("duplicate element (first seen on line {first})"),
            ));
        }
        elements.push(e);
    }
    AdditiveSet::new(rank.unwrap_or(1), elements)
}

fn parse_int_token(tok: &str) -> std::result::Result<BigInt, String> {
    let digits = tok.strip_prefix(['-', '+']).unwrap_or(tok);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("invalid integer token {tok:?}"));
    }
    BigInt::from_str(tok).map_err(|e| format!("invalid integer token {tok:?}: {e}"))
}

fn parse_json(input: &[u8]) -> Result<AdditiveSet> {
    let value: Value = serde_json::from_slice(input).map_err(|e| Error::Parse {
        location: format!("line {}", e.line()),
        message: e.to_string(),
    })?;
    set_from_json(&value)
}

fn json_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

/// Converts an already-parsed JSON value in set format.
pub fn set_from_json(value: &Value) -> Result<AdditiveSet> {
    let obj = value
        .as_object()
        .ok_or_else(|| json_err("root", "expected an object"))?;
    let rank = obj
        .get("rank")
        .and_then(Value::as_u64)
        .filter(|&r| r > 0)
        .ok_or_else(|| json_err("rank", "expected a positive integer"))? as usize;
    let items = obj
        .get("elements")
        .and_then(Value::as_array)
        .ok_or_else(|| json_err("elements", "expected an array"))?;
    let mut elements = Vec::with_capacity(items.len());
    let mut seen = std::collections::HashMap::new();
    for (i, item) in items.iter().enumerate() {
        let loc = || format!("elements[{i}]");
        let coords = item
            .as_array()
            .ok_or_else(|| json_err(loc(), "expected an array of integers"))?;
        if coords.len() != rank {
            return Err(json_err(
                loc(),
                format!(
                    "ragged rank: expected {rank} coordinates, found {}",
                    coords.len()
                ),
            ));
        }
        let coords = coords
            .iter()
            .map(|c| json_int(c).map_err(|m| json_err(loc(), m)))
            .collect::<Result<Vec<_>>>()?;
        let e = Element::new(coords);
        if let Some(first) = seen.insert(e.clone(), i) {
            return Err(json_err(loc(), format!("duplicate of elements[{first}]")));
        }
        elements.push(e);
    }
    AdditiveSet::new(rank, elements)
}

fn json_int(v: &Value) -> std::result::Result<BigInt, String> {
    match v {
        // With arbitrary precision enabled the number keeps its literal text.
        Value::Number(n) => parse_int_token(&n.to_string()),
        Value::String(s) => parse_int_token(s),
        other => Err(format!("expected an integer, found {other}")),
    }
}

/// Writes the text format, preceded by `# ` header lines.
pub fn write_text(set: &AdditiveSet, header: &[String], mut out: impl Write) -> Result<()> {
    for h in header {
        writeln!(out, "# {h}")?;
    }
    for e in set {
        writeln!(out, "{e}")?;
    }
    Ok(())
}

pub fn to_text(set: &AdditiveSet, header: &[String]) -> String {
    let mut buf = Vec::new();
    write_text(set, header, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("utf-8")
}

pub fn to_json(set: &AdditiveSet) -> String {
    serde_json::to_string(set).expect("set serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn loc(e: Error) -> String {
        match e {
            Error::Parse { location, .. } => location,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn text_examples() {
        let s = parse_set(b"1\n3\n9\n", SetFormat::Text).unwrap();
        assert_eq!(s, AdditiveSet::from_scalars(&[1, 3, 9]));
        assert_eq!(s.rank(), 1);

        let err = parse_set(b"1 0\n1\n", SetFormat::Text).unwrap_err();
        assert_eq!(loc(err), "line 2");
    }

    #[test]
    fn text_comments_and_duplicates() {
        let s = parse_set(b"# header\n2 1\n# more\n-4 0\n", SetFormat::Text).unwrap();
        assert_eq!(s, AdditiveSet::from_rows(&[&[2, 1], &[-4, 0]]));
        assert_eq!(
            loc(parse_set(b"1\n2\n1\n", SetFormat::Text).unwrap_err()),
            "line 3"
        );
        assert_eq!(
            loc(parse_set(b"1  2\n", SetFormat::Text).unwrap_err()),
            "line 1"
        );
        assert_eq!(
            loc(parse_set(b"x\n", SetFormat::Text).unwrap_err()),
            "line 1"
        );
        assert!(parse_set(b"", SetFormat::Text).unwrap().is_empty());
    }

    #[test]
    fn json_examples() {
        let s = parse_set(br#"{"rank":2,"elements":[[1,0],[0,1]]}"#, SetFormat::Json).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.len(), 2);

        let big = "123456789012345678901234567890";
        let input = format!(r#"{{"rank":1,"elements":[[{big}],["-{big}"]]}}"#);
        let s = parse_set(input.as_bytes(), SetFormat::Json).unwrap();
        assert_eq!(s.elements()[0].coords()[0], BigInt::from_str(big).unwrap());
        assert_eq!(s.elements()[1].coords()[0], -BigInt::from_str(big).unwrap());

        assert!(parse_set(br#"{"rank":1,"elements":[[1.5]]}"#, SetFormat::Json).is_err());
        assert!(parse_set(br#"{"rank":2,"elements":[[1]]}"#, SetFormat::Json).is_err());
        assert!(parse_set(br#"{"rank":1,"elements":[[1],[1]]}"#, SetFormat::Json).is_err());
    }

    #[test]
    fn large_values_serialize_as_strings() {
        let big = BigInt::from(1u64 << 53);
        let s =
            AdditiveSet::new(2, vec![Element::new(vec![big.clone(), BigInt::from(-3)])]).unwrap();
        assert_eq!(
            to_json(&s),
            r#"{"rank":2,"elements":[["9007199254740992",-3]]}"#
        );
        let small = Element::new(vec![big - 1]);
        assert_eq!(serde_json::to_string(&small).unwrap(), "[9007199254740991]");
    }

    fn arb_set() -> impl Strategy<Value = AdditiveSet> {
        (1usize..4).prop_flat_map(|rank| {
            prop::collection::hash_set(
                prop::collection::vec(
                    prop_oneof![-1000i64..1000, Just(i64::MAX), Just(i64::MIN),],
                    rank,
                ),
                0..12,
            )
            .prop_map(move |rows| {
                AdditiveSet::new(rank, rows.iter().map(|r| Element::from_ints(r)).collect())
                    .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn round_trip_both_formats(set in arb_set()) {
            let text = to_text(&set, &["generated".to_string()]);
            let back = parse_set(text.as_bytes(), SetFormat::Text).unwrap();
            if !set.is_empty() {
                prop_assert_eq!(back.elements(), set.elements());
            }
            let json = to_json(&set);
            let back = parse_set(json.as_bytes(), SetFormat::Json).unwrap();
            prop_assert_eq!(back.elements(), set.elements());
            prop_assert_eq!(back.rank(), set.rank());
        }
    }
}
