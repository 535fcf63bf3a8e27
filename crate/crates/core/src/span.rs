//! 1-spans: `⟨S⟩ = {∑ ε_s·s : ε ∈ {-1,0,1}^S}`.

use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::combos::{decode_rank, for_each_combination, pow3};
use crate::error::{Error, Result};
use crate::keys::{FastMap, FastSet, Key, Keyed, Packing};
use crate::model::{AdditiveSet, Element, SignVector, SpanningCertificate};

/// Largest spanner [`span`] will enumerate (3^16 combinations).
pub const SPAN_CAP: usize = 16;
/// Largest spanner for membership queries (3^16 per half).
pub const MEMBER_CAP: usize = 32;

/// Largest all-combinations table built for batch queries (`3^13` entries).
const FULL_TABLE_MAX: u64 = 1_594_323;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanMembership {
    pub target: Element,
    /// Over the spanner's stored order.
    pub combination: SignVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coverage {
    Covered(SpanningCertificate),
    /// Lexicographically least element outside the span.
    Uncovered(Element),
}

impl Coverage {
    pub fn is_covered(&self) -> bool {
        matches!(self, Coverage::Covered(_))
    }
}

/// `⟨S⟩` in canonical order.
pub fn span(s: &AdditiveSet) -> Result<AdditiveSet> {
    if s.len() > SPAN_CAP {
        return Err(Error::Resource {
            what: "1-span enumeration",
            size: s.len(),
            cap: SPAN_CAP,
            advice: "use membership queries instead",
        });
    }
    fn collect<K: Key>(keys: &[K], zero: &K) -> Vec<K> {
        let mut seen = FastSet::default();
        for_each_combination::<K, ()>(keys, zero, |_, v| {
            seen.insert(v.clone());
            ControlFlow::Continue(())
        });
        seen.into_iter().collect()
    }
    let mut out: Vec<Element> = match Keyed::new(s.rank(), s.elements(), &[], true) {
        Keyed::Packed(p, keys) => collect(&keys, &0)
            .into_iter()
            .map(|k| p.decode(k))
            .collect(),
        Keyed::Exact(keys) => collect(&keys, &Element::zero(s.rank())),
    };
    out.sort();
    Ok(AdditiveSet::from_distinct(s.rank(), out))
}

/// Meet-in-the-middle membership oracle for a fixed spanner.
///
/// The spanner is taken in canonical order; the first half holds the
/// `⌈k/2⌉` lexicographically smaller elements. The right-half table keeps,
/// per value, the lexicographically least right vector, and the left half is
/// scanned in lexicographic order, so the first hit is the least full vector.
struct SpanOracle<K: Key> {
    left: Vec<K>,
    right_len: usize,
    right: FastMap<K, u64>,
    zero: K,
}

impl<K: Key> SpanOracle<K> {
    /// With many queries ahead, a single table over all `3^k` combinations
    /// (empty left half) is cheaper than scanning `3^⌈k/2⌉` per query.
    fn new(sorted: &[K], zero: K, queries: usize) -> Self {
        let k = sorted.len();
        let half = k.div_ceil(2);
        let full =
            pow3(k) <= FULL_TABLE_MAX && pow3(k) <= (queries as u64).saturating_mul(pow3(half));
        let split = if full { 0 } else { half };
        let (left, right) = sorted.split_at(split);
        let mut table = FastMap::default();
        for_each_combination::<K, ()>(right, &zero, |rank, v| {
            table.entry(v.clone()).or_insert(rank);
            ControlFlow::Continue(())
        });
        SpanOracle {
            left: left.to_vec(),
            right_len: right.len(),
            right: table,
            zero,
        }
    }

    /// Least sign vector (canonical spanner order) hitting `x`.
    fn query(&self, x: &K) -> Option<Vec<i8>> {
        for_each_combination(&self.left, &self.zero, |rank, v| {
            match self.right.get(&x.sub(v)) {
                Some(&r) => ControlFlow::Break((rank, r)),
                None => ControlFlow::Continue(()),
            }
        })
        .map(|(l, r)| {
            let mut out = decode_rank(l, self.left.len());
            out.extend(decode_rank(r, self.right_len));
            out
        })
    }
}

/// Spanner sorted canonically, plus the permutation back to stored order.
struct Prepared {
    sorted: Vec<Element>,
    /// `order[j]` = stored position of the `j`-th canonical element.
    order: Vec<usize>,
}

impl Prepared {
    fn new(s: &AdditiveSet) -> Self {
        let mut order: Vec<usize> = (0..s.len()).collect();
        order.sort_by(|&a, &b| s.elements()[a].cmp(&s.elements()[b]));
        Prepared {
            sorted: order.iter().map(|&i| s.elements()[i].clone()).collect(),
            order,
        }
    }

    fn to_stored(&self, canonical: &[i8]) -> SignVector {
        let mut out = vec![0i8; canonical.len()];
        for (j, &c) in canonical.iter().enumerate() {
            out[self.order[j]] = c;
        }
        SignVector::new(out).expect("coefficients in range")
    }
}

enum Oracle {
    Packed(Packing, SpanOracle<i128>),
    Exact(SpanOracle<Element>),
}

impl Oracle {
    fn new(prep: &Prepared, rank: usize, queries: usize) -> Self {
        match Packing::for_elements(rank, prep.sorted.iter()) {
            Some(p) => {
                let keys = p.encode_all(&prep.sorted);
                Oracle::Packed(p, SpanOracle::new(&keys, 0, queries))
            }
            None => Oracle::Exact(SpanOracle::new(&prep.sorted, Element::zero(rank), queries)),
        }
    }

    fn query(&self, x: &Element) -> Option<Vec<i8>> {
        match self {
            // outside the box means outside the span
            Oracle::Packed(p, o) => p.encode(x).and_then(|k| o.query(&k)),
            Oracle::Exact(o) => o.query(x),
        }
    }
}

fn check_member_cap(s: &AdditiveSet) -> Result<()> {
    if s.len() > MEMBER_CAP {
        return Err(Error::Resource {
            what: "1-span membership",
            size: s.len(),
            cap: MEMBER_CAP,
            advice: "the spanner is too large for exhaustive search",
        });
    }
    Ok(())
}

pub fn member(x: &Element, s: &AdditiveSet) -> Result<Option<SpanMembership>> {
    check_member_cap(s)?;
    if x.rank() != s.rank() {
        return Err(Error::Contract(
            "target rank differs from the spanner's".into(),
        ));
    }
    Ok(SpanIndex::new(s, 1)
        .query(x)
        .map(|combination| SpanMembership {
            target: x.clone(),
            combination,
        }))
}

/// Membership index for a fixed spanner, sized for about `queries` lookups.
pub(crate) struct SpanIndex {
    prep: Prepared,
    oracle: Oracle,
}

impl SpanIndex {
    pub fn new(s: &AdditiveSet, queries: usize) -> Self {
        let prep = Prepared::new(s);
        let oracle = Oracle::new(&prep, s.rank(), queries);
        SpanIndex { prep, oracle }
    }

    /// Least combination (canonical spanner order), in stored order.
    pub fn query(&self, x: &Element) -> Option<SignVector> {
        self.oracle.query(x).map(|c| self.prep.to_stored(&c))
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.oracle.query(x).is_some()
    }
}

/// Certificate that `⟨S⟩ ⊇ A`, or the least uncovered element of `A`.
pub fn covers(s: &AdditiveSet, a: &AdditiveSet) -> Result<Coverage> {
    check_member_cap(s)?;
    if !a.is_empty() && s.rank() != a.rank() {
        return Err(Error::Contract("spanner and target ranks differ".into()));
    }
    let prep = Prepared::new(s);
    let oracle = Oracle::new(&prep, s.rank(), a.len());
    let answers: Vec<Option<Vec<i8>>> = a.elements().par_iter().map(|t| oracle.query(t)).collect();
    let uncovered = a
        .iter()
        .zip(&answers)
        .filter(|(_, ans)| ans.is_none())
        .map(|(t, _)| t)
        .min();
    if let Some(t) = uncovered {
        return Ok(Coverage::Uncovered(t.clone()));
    }
    let combinations = a
        .iter()
        .zip(answers)
        .map(|(t, ans)| (t.clone(), prep.to_stored(&ans.expect("covered"))))
        .collect();
    Ok(Coverage::Covered(SpanningCertificate {
        spanner: s.clone(),
        combinations,
    }))
}

/// Number of `{-1,0,1}`-combinations of a set of size `n`.
pub fn combination_count(n: usize) -> u64 {
    pow3(n)
}
