//! Executable checks of the inequalities relating the four dimensions.
//!
//! Every [`InequalityCheck`] is evaluated twice, in interval arithmetic with
//! 64 and 128 fractional bits. A check holds only when the enclosures decide
//! it at both precisions; overlapping enclosures give
//! [`Verdict::Indeterminate`], which counts as a failure.

mod checks;
pub mod interval;
mod lfree;
pub mod random;

use serde::Serialize;
use serde_json::Value;

pub use checks::{
    chain_batch, chain_instance, check_dslb, check_lev_yuster, check_thm_interval, check_thm_main,
    check_thm_midratio, dslb_batch, dslb_instance, geneg_batch, ChainCheck, IntervalMode,
    MidratioReport, CONSTRUCTIVE_INTERVAL_CAP, MIDRATIO_EXACT_CAP, ORACLE_INTERVAL_CAP,
};
pub use interval::Interval;
pub use lfree::{
    check_schoen_bound, lfree_max_density, LFreeResult, LinearForm, MAX_COEFFS, MAX_PRIME,
};

pub const PRECISIONS: [u32; 2] = [64, 128];
const DECIMALS: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Le,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated,
    Indeterminate,
}

impl Verdict {
    fn decide(relation: Relation, lhs: &Interval, rhs: &Interval) -> Verdict {
        match relation {
            Relation::Le if lhs.certainly_le(rhs) => Verdict::Holds,
            Relation::Le if lhs.certainly_gt(rhs) => Verdict::Violated,
            Relation::Eq if lhs.is_point() && lhs == rhs => Verdict::Holds,
            Relation::Eq if lhs.certainly_gt(rhs) || rhs.certainly_gt(lhs) => Verdict::Violated,
            _ => Verdict::Indeterminate,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Enclosure {
    pub lo: String,
    pub hi: String,
}

impl From<&Interval> for Enclosure {
    fn from(iv: &Interval) -> Self {
        Enclosure {
            lo: iv.lower_decimal(DECIMALS),
            hi: iv.upper_decimal(DECIMALS),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Evaluation {
    pub precision_bits: u32,
    pub lhs: Enclosure,
    pub rhs: Enclosure,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub name: &'static str,
    pub relation: Relation,
    pub inputs: Value,
    /// Midpoints of the 128-bit enclosures, for display.
    pub lhs: f64,
    pub rhs: f64,
    pub evaluations: Vec<Evaluation>,
    pub verdict: Verdict,
    pub holds: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl InequalityCheck {
    /// Evaluates `sides(bits)` at every precision. The verdicts must agree.
    pub(crate) fn evaluate(
        name: &'static str,
        relation: Relation,
        inputs: Value,
        sides: impl Fn(u32) -> (Interval, Interval),
    ) -> Self {
        let mut evaluations = Vec::new();
        let mut mids = (0.0, 0.0);
        for bits in PRECISIONS {
            let (lhs, rhs) = sides(bits);
            mids = (lhs.mid_f64(), rhs.mid_f64());
            evaluations.push(Evaluation {
                precision_bits: bits,
                verdict: Verdict::decide(relation, &lhs, &rhs),
                lhs: (&lhs).into(),
                rhs: (&rhs).into(),
            });
        }
        let first = evaluations[0].verdict;
        let mut notes = Vec::new();
        let verdict = if evaluations.iter().all(|e| e.verdict == first) {
            first
        } else {
            notes.push("verdicts differ between precisions".to_string());
            Verdict::Indeterminate
        };
        if verdict == Verdict::Indeterminate {
            notes.push("enclosures overlap; no verdict".to_string());
        }
        InequalityCheck {
            name,
            relation,
            inputs,
            lhs: mids.0,
            rhs: mids.1,
            evaluations,
            verdict,
            holds: verdict == Verdict::Holds,
            notes,
        }
    }

    /// An exact integer comparison.
    pub(crate) fn exact(
        name: &'static str,
        relation: Relation,
        inputs: Value,
        lhs: i64,
        rhs: i64,
    ) -> Self {
        Self::evaluate(name, relation, inputs, |bits| {
            (Interval::int(lhs, bits), Interval::int(rhs, bits))
        })
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Marks the check failed with a diagnostic, whatever the comparison said.
    pub(crate) fn fail(mut self, note: impl Into<String>) -> Self {
        self.verdict = Verdict::Violated;
        self.holds = false;
        self.notes.push(note.into());
        self
    }
}
