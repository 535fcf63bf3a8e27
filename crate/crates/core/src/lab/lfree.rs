//! Maximum density of sets in `Z/p` free of solutions to `c₁x₁ + … + c_k x_k = 0`.
//!
//! Subsets of `Z/p` are `u32` bitmasks. A set is L-free iff `0` is not in
//! the sumset `c₁·A + … + c_k·A`, which costs `O(k·p)` word operations.
//! Tuples may repeat elements.

use serde::Serialize;
use serde_json::json;

use super::{InequalityCheck, Interval, Relation};
use crate::error::{Error, Result};
use crate::model::AdditiveSet;
use crate::solvers::{min_spanning_subset, Search, SearchBudget};

pub const MAX_PRIME: u32 = 19;
pub const MAX_COEFFS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearForm {
    coefficients: Vec<i64>,
}

impl LinearForm {
    pub fn new(coefficients: Vec<i64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Input(
                "a linear form needs at least one coefficient".into(),
            ));
        }
        if coefficients.contains(&0) {
            return Err(Error::Input("coefficients must be nonzero".into()));
        }
        Ok(LinearForm { coefficients })
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn k(&self) -> usize {
        self.coefficients.len()
    }

    /// `C = {c₁, …, c_k}` as a rank-1 set.
    pub fn coefficient_set(&self) -> AdditiveSet {
        let mut c = self.coefficients.clone();
        c.sort_unstable();
        c.dedup();
        AdditiveSet::from_scalars(&c)
    }

    /// `u·L`.
    pub fn scaled(&self, u: i64) -> Result<Self> {
        LinearForm::new(self.coefficients.iter().map(|c| c * u).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LFreeResult {
    pub p: u32,
    /// `m = size / p`.
    pub size: u32,
    /// Lexicographically least largest L-free set, ascending.
    pub witness: Vec<u32>,
}

impl LFreeResult {
    pub fn density(&self) -> String {
        format!("{}/{}", self.size, self.p)
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

struct Zp {
    p: u32,
    full: u32,
}

impl Zp {
    fn scale(&self, mask: u32, c: u32) -> u32 {
        let mut out = 0;
        let mut m = mask;
        while m != 0 {
            let x = m.trailing_zeros();
            m &= m - 1;
            out |= 1 << (x * c % self.p);
        }
        out
    }

    fn rotate(&self, mask: u32, by: u32) -> u32 {
        if by == 0 {
            mask
        } else {
            ((mask << by) | (mask >> (self.p - by))) & self.full
        }
    }

    fn sumset(&self, a: u32, b: u32) -> u32 {
        let mut out = 0;
        let mut m = b;
        while m != 0 {
            let y = m.trailing_zeros();
            m &= m - 1;
            out |= self.rotate(a, y);
        }
        out
    }
}

struct LFreeSearch<'a> {
    zp: Zp,
    coeffs: &'a [u32],
    best: u32,
    best_size: u32,
}

impl LFreeSearch<'_> {
    fn has_solution(&self, a: u32) -> bool {
        let mut sums = self.zp.scale(a, self.coeffs[0]);
        for &c in &self.coeffs[1..] {
            sums = self.zp.sumset(sums, self.zp.scale(a, c));
        }
        sums & 1 != 0
    }

    fn dfs(&mut self, x: u32, set: u32, size: u32) {
        if size > self.best_size {
            self.best = set;
            self.best_size = size;
        }
        if x == self.zp.p || size + (self.zp.p - x) <= self.best_size {
            return;
        }
        let with = set | 1 << x;
        if !self.has_solution(with) {
            self.dfs(x + 1, with, size + 1);
        }
        self.dfs(x + 1, set, size);
    }
}

/// `m_L(Z/p)` by exhaustive search, with the lexicographically least witness.
pub fn lfree_max_density(l: &LinearForm, p: u32) -> Result<LFreeResult> {
    if !is_prime(p) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    if p > MAX_PRIME {
        return Err(Error::Resource {
            what: "L-free search modulus",
            size: p as usize,
            cap: MAX_PRIME as usize,
            advice: "choose a prime at most 19",
        });
    }
    if l.k() > MAX_COEFFS {
        return Err(Error::Resource {
            what: "L-free search coefficients",
            size: l.k(),
            cap: MAX_COEFFS,
            advice: "use at most 4 coefficients",
        });
    }
    let coeffs: Vec<u32> = l
        .coefficients
        .iter()
        .map(|c| c.rem_euclid(p as i64) as u32)
        .collect();
    let mut s = LFreeSearch {
        zp: Zp {
            p,
            full: ((1u64 << p) - 1) as u32,
        },
        coeffs: &coeffs,
        best: 0,
        best_size: 0,
    };
    s.dfs(0, 0, 0);
    Ok(LFreeResult {
        p,
        size: s.best_size,
        witness: (0..p).filter(|x| s.best >> x & 1 == 1).collect(),
    })
}

/// `m_L(Z/p) ≤ exp(−d_s(C)/12)`.
pub fn check_schoen_bound(
    l: &LinearForm,
    p: u32,
    budget: &SearchBudget,
) -> Result<InequalityCheck> {
    let m = lfree_max_density(l, p)?;
    let c = l.coefficient_set();
    let d = match min_spanning_subset(&c, budget)? {
        Search::Exact(o) => o.value,
        Search::Exhausted { .. } => {
            return Err(Error::Resource {
                what: "d_s of the coefficient set",
                size: c.len(),
                cap: c.len(),
                advice: "raise the node budget",
            })
        }
    };
    let inputs = json!({
        "coefficients": l.coefficients,
        "p": p,
        "d_s_C": d,
        "m": m.density(),
        "witness": m.witness,
    });
    let size = m.size;
    let check = InequalityCheck::evaluate("schoen", Relation::Le, inputs, |bits| {
        (
            Interval::ratio(size, p, bits),
            Interval::ratio(-(d as i64), 12, bits).exp(),
        )
    });
    Ok(if size == 0 {
        check.with_note("degenerate: m = 0")
    } else {
        check
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::Verdict;

    /// All subsets and all tuples, no cleverness.
    fn brute(coeffs: &[i64], p: u32) -> (u32, Vec<u32>) {
        let mut best: Option<(u32, Vec<u32>)> = None;
        for mask in 0u32..1 << p {
            let a: Vec<u32> = (0..p).filter(|x| mask >> x & 1 == 1).collect();
            let k = coeffs.len() as u32;
            let total = (a.len() as u64).pow(k);
            let free = (0..total).all(|t| {
                let mut rest = t;
                let mut s = 0i64;
                for c in coeffs {
                    s += c * a[(rest % a.len() as u64) as usize] as i64;
                    rest /= a.len() as u64;
                }
                s.rem_euclid(p as i64) != 0
            });
            if free {
                let size = a.len() as u32;
                let better = match &best {
                    None => true,
                    Some((s, w)) => size > *s || (size == *s && a < *w),
                };
                if better {
                    best = Some((size, a));
                }
            }
        }
        best.expect("empty set is free")
    }

    #[test]
    fn matches_brute_force() {
        let forms: &[&[i64]] = &[
            &[1, 1, -3],
            &[1, 1],
            &[1, -1],
            &[1],
            &[2, 3],
            &[1, 2, 3],
            &[3, -3, 1],
        ];
        for &c in forms {
            for p in [2, 3, 5, 7] {
                let r = lfree_max_density(&LinearForm::new(c.to_vec()).unwrap(), p).unwrap();
                let (size, w) = brute(c, p);
                assert_eq!((r.size, &r.witness), (size, &w), "{c:?} mod {p}");
            }
        }
    }

    #[test]
    fn examples() {
        let r = lfree_max_density(&LinearForm::new(vec![1, 1]).unwrap(), 5).unwrap();
        assert_eq!((r.size, r.witness), (2, vec![1, 2]));
        let r = lfree_max_density(&LinearForm::new(vec![1]).unwrap(), 5).unwrap();
        assert_eq!(r.density(), "4/5");
        // x − y: the constant tuple always solves
        let r = lfree_max_density(&LinearForm::new(vec![1, -1]).unwrap(), 7).unwrap();
        assert_eq!(r.size, 0);
        assert!(lfree_max_density(&LinearForm::new(vec![1]).unwrap(), 9).is_err());
        assert!(lfree_max_density(&LinearForm::new(vec![1]).unwrap(), 23).is_err());
        assert!(lfree_max_density(&LinearForm::new(vec![1; 5]).unwrap(), 5).is_err());
        assert!(LinearForm::new(vec![]).is_err());
        assert!(LinearForm::new(vec![1, 0]).is_err());
    }

    #[test]
    fn unit_scaling_preserves_density() {
        for p in [2u32, 3, 5, 7] {
            for c in [vec![1, 1, -3], vec![1, 2], vec![2, -1, 1], vec![3]] {
                let l = LinearForm::new(c).unwrap();
                let m = lfree_max_density(&l, p).unwrap().size;
                for u in 1..p as i64 {
                    assert_eq!(lfree_max_density(&l.scaled(u).unwrap(), p).unwrap().size, m);
                }
            }
        }
    }

    #[test]
    fn schoen_examples() {
        let b = SearchBudget::default();
        let c = check_schoen_bound(&LinearForm::new(vec![1, 1, -3]).unwrap(), 5, &b).unwrap();
        assert_eq!(c.inputs["d_s_C"], 2);
        assert!(c.holds);
        let c = check_schoen_bound(&LinearForm::new(vec![1, -1]).unwrap(), 7, &b).unwrap();
        assert_eq!(c.inputs["d_s_C"], 1);
        assert!(c.holds);
        let c = check_schoen_bound(&LinearForm::new(vec![1]).unwrap(), 5, &b).unwrap();
        assert_eq!(c.inputs["m"], "4/5");
        assert!(c.holds);
        // 12/13 against exp(−1/12) ≈ 0.9200
        let c = check_schoen_bound(&LinearForm::new(vec![1]).unwrap(), 13, &b).unwrap();
        assert_eq!(c.verdict, Verdict::Violated);
    }
}
