//! Text renderings. JSON output goes straight through serde.

use std::fmt::Write;

use addim_core::solvers::DimensionEntry;
use addim_core::{AdditiveSet, DimensionReport, Element};
use serde_json::Value;

fn elem(e: &Element) -> String {
    match e.coords() {
        [x] => x.to_string(),
        cs => {
            let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
            format!("({})", parts.join(","))
        }
    }
}

fn set_inline(s: &AdditiveSet) -> String {
    let items: Vec<String> = s.iter().map(elem).collect();
    format!("{{{}}}", items.join(", "))
}

fn entry_line(out: &mut String, label: &str, e: &DimensionEntry) {
    match e.value {
        Some(v) => {
            let w = e.witness.as_ref().map(set_inline).unwrap_or_default();
            let _ = writeln!(out, "{label:<6} {v:>3}  {w}");
        }
        None => {
            let _ = write!(
                out,
                "{label:<6} [{}, {}]  budget exhausted",
                e.lower, e.upper
            );
            if let Some(w) = &e.witness {
                let _ = write!(out, "; best {}", set_inline(w));
            }
            out.push('\n');
        }
    }
}

pub fn report(a: &AdditiveSet, r: &DimensionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# rank {}, {} elements", r.rank, r.size);
    let _ = writeln!(out, "# A = {}", set_inline(a));
    match &r.d_s_minus {
        None => {
            let _ = writeln!(out, "d_s^-    -  (no universe given)");
        }
        Some(u) if !u.spannable => {
            let _ = writeln!(
                out,
                "d_s^-    -  universe of {} elements does not span A",
                u.universe_size
            );
        }
        Some(u) => entry_line(&mut out, "d_s^-", &u.entry),
    }
    entry_line(&mut out, "d_s", &r.d_s);
    entry_line(&mut out, "d_d^-", &r.d_d_minus);
    entry_line(&mut out, "d_d", &r.d_d);
    if let Some(c) = r
        .d_s
        .certificate
        .as_ref()
        .filter(|c| !c.combinations.is_empty())
    {
        let _ = writeln!(out, "# spanning certificate:");
        for (target, signs) in &c.combinations {
            let terms: Vec<String> = signs
                .coeffs()
                .iter()
                .zip(c.spanner.iter())
                .filter(|(s, _)| **s != 0)
                .map(|(s, e)| format!("{}{}", if *s > 0 { "+" } else { "-" }, elem(e)))
                .collect();
            let _ = writeln!(out, "#   {} = {}", elem(target), terms.join(" "));
        }
    }
    out
}

/// `key=value` pairs of a flat JSON object, in key order.
pub fn params(v: &Value) -> String {
    let Some(obj) = v.as_object() else {
        return v.to_string();
    };
    obj.iter()
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}={s}"),
            other => format!("{k}={other}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn num(v: &Value) -> String {
    match v.as_f64() {
        Some(x) => format!("{x:.6}"),
        None => v.to_string(),
    }
}

/// A one-line summary of a check from the lab, whatever its kind.
fn check_line(c: &Value) -> String {
    let mark = if c["holds"] == Value::Bool(true) {
        "ok  "
    } else {
        "FAIL"
    };
    let body = if let Some(name) = c["name"].as_str() {
        format!(
            "{name} lhs={} rhs={} {}",
            num(&c["lhs"]),
            num(&c["rhs"]),
            c["inputs"]
        )
    } else if c.get("ratio").is_some() {
        format!(
            "midratio n={} D={} d_s={} d_d={} ratio={}",
            c["n"], c["D"]["elements"], c["d_s"], c["d_d"], c["ratio"]
        )
    } else {
        format!(
            "chain instance={} d_s^-={} d_s={} d_d^-={} d_d={}",
            c["instance"], c["d_s_minus"], c["d_s"], c["d_d_minus"], c["d_d"]
        )
    };
    let mut line = format!("{mark} {body}");
    if let Some(notes) = c["notes"].as_array() {
        for n in notes {
            if let Some(s) = n.as_str() {
                let _ = write!(line, "\n       note: {s}");
            }
        }
    }
    line
}

pub fn checks(target: &str, params_v: &Value, checks: &[Value], failed: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# verify {target} {}", params(params_v));
    for c in checks {
        let _ = writeln!(out, "{}", check_line(c));
    }
    let _ = writeln!(
        out,
        "{} checks, {failed} failed: {}",
        checks.len(),
        if failed == 0 { "PASS" } else { "FAIL" }
    );
    out
}
