use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::random::{random_instance, RandomSetSpec};
use super::{InequalityCheck, Interval, Relation};
use crate::constructions::{cube, geneg_family, interval, interval_basis, interval_dimension};
use crate::dissociation::{
    is_dissociated_subsetsum, is_maximal_dissociated, Dissociativity, Maximality,
};
use crate::error::{Error, Result};
use crate::model::{negate_closure, AdditiveSet};
use crate::solvers::{
    max_dissociated, min_maximal_dissociated, min_spanning_subset, min_spanning_universe,
    DimensionReport, Search, SearchBudget, UniverseSpan,
};
use crate::span::{covers, Coverage};

pub const ORACLE_INTERVAL_CAP: u64 = 40;
pub const CONSTRUCTIVE_INTERVAL_CAP: u64 = 6561;
pub const MIDRATIO_EXACT_CAP: usize = 4;

fn validate(d: &AdditiveSet, s: &AdditiveSet, a: &AdditiveSet, min_d: usize) -> Result<()> {
    if d.len() < min_d {
        return Err(Error::Contract(format!(
            "|D| = {} but at least {min_d} is required",
            d.len()
        )));
    }
    if s.is_empty() {
        return Err(Error::Contract("S is empty".into()));
    }
    if !d.is_subset_of(a) {
        return Err(Error::Contract("D is not a subset of A".into()));
    }
    if let Dissociativity::NotDissociated(w) = is_dissociated_subsetsum(d)? {
        return Err(Error::Contract(format!(
            "D is not dissociated: signs {:?} vanish",
            w.signs
        )));
    }
    if let Coverage::Uncovered(x) = covers(s, a)? {
        return Err(Error::Contract(format!("S does not 1-span {x:?}")));
    }
    Ok(())
}

fn int(v: usize, bits: u32) -> Interval {
    Interval::int(v as u64, bits)
}

/// `1 + (4 + log₂ ln(4s)) / log₂ d`.
fn dslb_factor(s: usize, d: usize, bits: u32) -> Interval {
    let inner = int(4 * s, bits).ln().log2();
    int(1, bits).add(&int(4, bits).add(&inner).div(&int(d, bits).log2()))
}

/// `|D| / log₄|D| ≤ |S|·(1 + (4 + log₂ ln 4|S|) / log₂|D|)`.
pub fn check_dslb(d: &AdditiveSet, s: &AdditiveSet, a: &AdditiveSet) -> Result<InequalityCheck> {
    validate(d, s, a, 2)?;
    let (nd, ns) = (d.len(), s.len());
    Ok(InequalityCheck::evaluate(
        "dslb",
        Relation::Le,
        json!({ "D": d, "S": s, "A": a }),
        |bits| {
            let lhs = int(nd, bits).div(&int(nd, bits).log4());
            let rhs = int(ns, bits).mul(&dslb_factor(ns, nd, bits));
            (lhs, rhs)
        },
    ))
}

/// `|D| / log₂(2|D| + 1) ≤ |S|`.
pub fn check_lev_yuster(
    d: &AdditiveSet,
    s: &AdditiveSet,
    a: &AdditiveSet,
) -> Result<InequalityCheck> {
    validate(d, s, a, 1)?;
    let (nd, ns) = (d.len(), s.len());
    Ok(InequalityCheck::evaluate(
        "lev_yuster",
        Relation::Le,
        json!({ "D": d, "S": s, "A": a }),
        |bits| {
            let lhs = int(nd, bits).div(&int(2 * nd + 1, bits).log2());
            (lhs, int(ns, bits))
        },
    ))
}

/// The finite form with optimal `D` and `S`:
/// `d_d / (log₄ d_d · (1 + (4 + log₂ ln 4d_s) / log₂ d_d)) ≤ d_s`.
pub fn check_thm_main(a: &AdditiveSet, report: &DimensionReport) -> Result<InequalityCheck> {
    let (Some(ds), Some(dd)) = (report.d_s.value, report.d_d.value) else {
        return Err(Error::Contract("d_s and d_d must be exact".into()));
    };
    if dd < 2 {
        return Err(Error::Contract(format!(
            "d_d = {dd}, at least 2 is required"
        )));
    }
    let inputs = json!({
        "A": a,
        "d_s": ds,
        "d_d": dd,
        "ratio": ds as f64 / dd as f64,
        "inverse_log4_dd": report.ratios.inverse_log4_dd,
    });
    Ok(InequalityCheck::evaluate(
        "thm_main",
        Relation::Le,
        inputs,
        |bits| {
            let den = int(dd, bits).log4().mul(&dslb_factor(ds, dd, bits));
            (int(dd, bits).div(&den), int(ds, bits))
        },
    ))
}

fn exhausted(what: &str) -> String {
    format!("{what}: search budget exhausted")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalMode {
    /// Exact solvers on `[N]`.
    Oracle,
    /// Certificate checks of the explicit basis plus the counting bound.
    Constructive,
}

fn interval_oracle(n: u64, budget: &SearchBudget) -> Result<InequalityCheck> {
    let a = interval(n);
    let formula = interval_dimension(n)?;
    let ds = min_spanning_subset(&a, budget)?.exact().map(|o| o.value);
    let ddm = min_maximal_dissociated(&a, budget)?
        .exact()
        .map(|o| o.value);
    let inputs = json!({ "N": n, "mode": IntervalMode::Oracle, "formula": formula, "d_s": ds, "d_d_minus": ddm });
    let Some(ds) = ds else {
        return Ok(
            InequalityCheck::exact("interval", Relation::Eq, inputs, formula as i64, -1)
                .fail(exhausted("d_s")),
        );
    };
    let mut check =
        InequalityCheck::exact("interval", Relation::Eq, inputs, formula as i64, ds as i64);
    match ddm {
        None => check = check.fail(exhausted("d_d⁻")),
        Some(m) if m != formula => check = check.fail(format!("d_d⁻ = {m} differs from {formula}")),
        Some(_) => {}
    }
    Ok(check)
}

fn interval_constructive(n: u64) -> Result<InequalityCheck> {
    let a = interval(n);
    let formula = interval_dimension(n)?;
    let b = interval_basis(n)?;
    let size = b.basis.len();
    let inputs = json!({
        "N": n,
        "mode": IntervalMode::Constructive,
        "formula": formula,
        "case": b.case,
        "basis": b.basis,
    });
    let mut check = InequalityCheck::exact(
        "interval",
        Relation::Eq,
        inputs,
        formula as i64,
        size as i64,
    );
    if !b.basis.is_subset_of(&a) {
        check = check.fail("basis is not a subset of [N]");
    }
    if let Coverage::Uncovered(x) = covers(&b.basis, &a)? {
        check = check.fail(format!("basis does not 1-span {x:?}"));
    }
    match is_maximal_dissociated(&b.basis, &a)? {
        Maximality::Maximal => {}
        Maximality::NotDissociated(w) => {
            check = check.fail(format!(
                "basis is not dissociated: signs {:?} vanish",
                w.signs
            ))
        }
        Maximality::Extendable(x) => check = check.fail(format!("basis extends by {x:?}")),
    }
    // |S| elements give at most (3^|S| − 1)/2 positive values, so one fewer
    // element than the basis cannot reach N
    let smaller = (3u128.pow(size as u32 - 1) - 1) / 2;
    if smaller >= n as u128 {
        check = check.fail(format!("counting does not exclude {} elements", size - 1));
    }
    Ok(check)
}

/// One check per `N ≤ n_max`: the closed form against exact `d_s` and
/// `d_d⁻` (oracle), or against the certified basis (constructive).
pub fn check_thm_interval(
    n_max: u64,
    mode: IntervalMode,
    budget: &SearchBudget,
) -> Result<Vec<InequalityCheck>> {
    let cap = match mode {
        IntervalMode::Oracle => ORACLE_INTERVAL_CAP,
        IntervalMode::Constructive => CONSTRUCTIVE_INTERVAL_CAP,
    };
    if n_max == 0 {
        return Err(Error::Input("N must be at least 1".into()));
    }
    if n_max > cap {
        return Err(Error::Resource {
            what: "interval verification",
            size: n_max as usize,
            cap: cap as usize,
            advice: "lower --to or use the constructive mode",
        });
    }
    (1..=n_max)
        .into_par_iter()
        .map(|n| match mode {
            IntervalMode::Oracle => interval_oracle(n, budget),
            IntervalMode::Constructive => interval_constructive(n),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MidratioReport {
    pub n: usize,
    #[serde(rename = "D")]
    pub d: AdditiveSet,
    #[serde(rename = "A")]
    pub a: AdditiveSet,
    pub expected_d_s: usize,
    pub expected_d_d: usize,
    pub d_s: Option<usize>,
    pub d_d_minus: Option<usize>,
    pub d_d: Option<usize>,
    /// `(n+1)/(n+|D|)`.
    pub ratio: String,
    pub ratio_value: f64,
    /// `1 / log₄(n+|D|)`, reported for context only.
    pub inverse_log4_dd: f64,
    pub verified: bool,
    pub check: Option<InequalityCheck>,
    pub holds: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Builds `A_n` from `D`, verifies its dimensions exactly for `n ≤ 4`, and
/// reports `d_s/d_d⁻` next to `1/log₄ d_d`.
pub fn check_thm_midratio(
    n: usize,
    d: &AdditiveSet,
    budget: &SearchBudget,
) -> Result<MidratioReport> {
    let a = geneg_family(n, d)?;
    let expected_d_s = n + 1;
    let expected_d_d = n + d.len();
    let mut out = MidratioReport {
        n,
        d: d.clone(),
        a: a.clone(),
        expected_d_s,
        expected_d_d,
        d_s: None,
        d_d_minus: None,
        d_d: None,
        ratio: format!("{expected_d_s}/{expected_d_d}"),
        ratio_value: expected_d_s as f64 / expected_d_d as f64,
        inverse_log4_dd: 2.0 * 2f64.ln() / (expected_d_d as f64).ln(),
        verified: false,
        check: None,
        holds: false,
        notes: Vec::new(),
    };
    if n > MIDRATIO_EXACT_CAP {
        out.notes.push(format!(
            "exact verification needs n <= {MIDRATIO_EXACT_CAP}"
        ));
        return Ok(out);
    }
    let report = crate::solvers::full_report(&a, None, budget)?;
    (out.d_s, out.d_d_minus, out.d_d) =
        (report.d_s.value, report.d_d_minus.value, report.d_d.value);
    out.verified = out.d_s == Some(expected_d_s)
        && out.d_d_minus == Some(expected_d_d)
        && out.d_d == Some(expected_d_d);
    if !out.verified {
        out.notes.push(format!(
            "expected d_s = {expected_d_s}, d_d⁻ = d_d = {expected_d_d}; got {:?}, {:?}, {:?}",
            out.d_s, out.d_d_minus, out.d_d
        ));
    }
    if report.d_s.value.is_some() && report.d_d.value.is_some() {
        out.check = Some(check_thm_main(&a, &report)?);
    }
    out.holds = out.verified && out.check.as_ref().is_some_and(|c| c.holds);
    Ok(out)
}

fn choose(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        choose(n, k, i + 1, cur, out);
        cur.pop();
    }
}

/// [`check_thm_midratio`] for every nonempty dissociated `D ⊆ Q_n ∖ {0}`
/// with `|D| ≤ max_d`, in canonical order.
pub fn geneg_batch(n: usize, max_d: usize, budget: &SearchBudget) -> Result<Vec<MidratioReport>> {
    if n < 2 {
        return Err(Error::Input("n must be at least 2".into()));
    }
    let q = cube(n)?;
    let nonzero = AdditiveSet::new(n, q.elements()[1..].to_vec())?;
    let mut subsets = Vec::new();
    for k in 1..=max_d.min(nonzero.len()) {
        choose(nonzero.len(), k, 0, &mut Vec::new(), &mut subsets);
    }
    let candidates: Vec<AdditiveSet> = subsets
        .into_iter()
        .map(|idx| nonzero.select(&idx))
        .filter(|d| crate::dissociation::is_dissociated(d).unwrap_or(false))
        .collect();
    candidates
        .par_iter()
        .map(|d| check_thm_midratio(n, d, budget))
        .collect()
}

fn tag(mut check: InequalityCheck, instance: usize) -> InequalityCheck {
    if let Value::Object(map) = &mut check.inputs {
        map.insert("instance".into(), json!(instance));
    }
    check
}

/// `check_dslb` and `check_lev_yuster` on `A` with a maximum dissociated `D`
/// and a minimum spanner `S ⊆ A`. Sets whose optimal `D` is too small for a
/// check skip it.
pub fn dslb_instance(a: &AdditiveSet, budget: &SearchBudget) -> Result<Vec<InequalityCheck>> {
    let d = match max_dissociated(a, budget)? {
        Search::Exact(o) => o.witness,
        Search::Exhausted { .. } => {
            return Err(Error::Resource {
                what: "maximum dissociated subset",
                size: a.len(),
                cap: a.len(),
                advice: "raise the node budget",
            })
        }
    };
    let s = match min_spanning_subset(a, budget)? {
        Search::Exact(o) => o.witness,
        Search::Exhausted { .. } => {
            return Err(Error::Resource {
                what: "minimum spanning subset",
                size: a.len(),
                cap: a.len(),
                advice: "raise the node budget",
            })
        }
    };
    let mut out = Vec::new();
    if d.len() >= 2 {
        out.push(check_dslb(&d, &s, a)?);
    }
    if !d.is_empty() {
        out.push(check_lev_yuster(&d, &s, a)?);
    }
    Ok(out)
}

/// [`dslb_instance`] on `runs` seeded random sets (`|A| ≤ 8`, rank ≤ 2,
/// coordinates in `[-3, 3]`).
pub fn dslb_batch(seed: u64, runs: usize, budget: &SearchBudget) -> Result<Vec<InequalityCheck>> {
    let per: Vec<Vec<InequalityCheck>> = (0..runs)
        .into_par_iter()
        .map(|i| {
            let a = random_instance(seed, i, &RandomSetSpec::SMALL);
            Ok(dslb_instance(&a, budget)?
                .into_iter()
                .map(|c| tag(c, i))
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per.into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainCheck {
    pub instance: usize,
    #[serde(rename = "A")]
    pub a: AdditiveSet,
    pub d_s_minus: Option<usize>,
    pub d_s: Option<usize>,
    pub d_d_minus: Option<usize>,
    pub d_d: Option<usize>,
    pub holds: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// `d_s⁻(U) ≤ d_s ≤ d_d⁻ ≤ d_d` with `U = A ∪ −A`, each value from its own solver.
pub fn chain_instance(
    instance: usize,
    a: &AdditiveSet,
    budget: &SearchBudget,
) -> Result<ChainCheck> {
    let u = negate_closure(a);
    let d_s_minus = match min_spanning_universe(a, &u, budget)? {
        Search::Exact(UniverseSpan::Spanned(o)) => Some(o.value),
        _ => None,
    };
    let d_s = min_spanning_subset(a, budget)?.exact().map(|o| o.value);
    let d_d_minus = min_maximal_dissociated(a, budget)?.exact().map(|o| o.value);
    let d_d = max_dissociated(a, budget)?.exact().map(|o| o.value);
    let mut notes = Vec::new();
    let holds = match (d_s_minus, d_s, d_d_minus, d_d) {
        (Some(w), Some(x), Some(y), Some(z)) => {
            let ok = w <= x && x <= y && y <= z;
            if !ok {
                notes.push(format!("{w} <= {x} <= {y} <= {z} fails"));
            }
            ok
        }
        _ => {
            notes.push("a solver ran out of budget".into());
            false
        }
    };
    Ok(ChainCheck {
        instance,
        a: a.clone(),
        d_s_minus,
        d_s,
        d_d_minus,
        d_d,
        holds,
        notes,
    })
}

pub fn chain_batch(seed: u64, runs: usize, budget: &SearchBudget) -> Result<Vec<ChainCheck>> {
    (0..runs)
        .into_par_iter()
        .map(|i| chain_instance(i, &random_instance(seed, i, &RandomSetSpec::SMALL), budget))
        .collect()
}
