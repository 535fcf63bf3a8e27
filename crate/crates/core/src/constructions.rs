//! Explicit sets: powers of three, interval bases, cubes, the `B_n ∪ {s_n} ∪ 2·D`
//! family, dissociated subsets of the cube, and Freiman embeddings into `Z`.
//!
//! Everything that depends on `log₃ N` is decided with exact integer
//! comparisons.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dissociation::{is_dissociated_subsetsum, Dissociativity, SumStack, SUBSET_SUM_CAP};
use crate::error::{Error, Result};
use crate::keys::{Key, Packing};
use crate::model::{AdditiveSet, Element};
use crate::solvers::{max_dissociated, Search, SearchBudget};

pub const CUBE_CAP: usize = 20;
pub const EXACT_CUBE_CAP: usize = 5;
/// The greedy keeps all `2^|D|` subset sums per restart.
pub const GREEDY_CUBE_CAP: usize = 12;
pub const DEFAULT_RESTARTS: usize = 32;

/// `{1, 3, …, 3^(k−1)}`.
pub fn powers_of_three(k: usize) -> Result<AdditiveSet> {
    if k == 0 {
        return Err(Error::Input("k must be at least 1".into()));
    }
    let mut p = BigInt::one();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(Element::new(vec![p.clone()]));
        p *= 3;
    }
    Ok(AdditiveSet::from_distinct(1, out))
}

/// `[N] = {1, …, N}`.
pub fn interval(n: u64) -> AdditiveSet {
    AdditiveSet::from_distinct(1, (1..=n).map(Element::scalar).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalCase {
    /// `2N < 3^(k+1)`: the powers of three up to `3^k` suffice.
    One,
    /// `2N > 3^(k+1)`: one extra element `t = (3^(k+1)+1)/2` is needed.
    Two,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalBasis {
    pub n: u64,
    pub case: IntervalCase,
    /// `⌊log₃ N⌋`.
    pub k: u32,
    pub t: Option<u128>,
    pub basis: AdditiveSet,
}

/// Largest `k` with `3^k ≤ n`.
fn floor_log3(n: u64) -> u32 {
    let mut k = 0;
    let mut p: u128 = 3;
    while p <= n as u128 {
        p *= 3;
        k += 1;
    }
    k
}

fn interval_case(n: u64) -> (u32, IntervalCase) {
    let k = floor_log3(n);
    // 2N = 3^(k+1) is impossible: one side is even, the other odd
    if 2 * (n as u128) < 3u128.pow(k + 1) {
        (k, IntervalCase::One)
    } else {
        (k, IntervalCase::Two)
    }
}

/// A minimum 1-spanning maximal dissociated subset of `[N]`.
pub fn interval_basis(n: u64) -> Result<IntervalBasis> {
    if n == 0 {
        return Err(Error::Input("N must be at least 1".into()));
    }
    let (k, case) = interval_case(n);
    let mut elements: Vec<Element> = (0..=k).map(|i| Element::scalar(3u128.pow(i))).collect();
    let t = match case {
        IntervalCase::One => None,
        IntervalCase::Two => {
            let t = 3u128.pow(k + 1).div_ceil(2);
            elements.push(Element::scalar(t));
            Some(t)
        }
    };
    Ok(IntervalBasis {
        n,
        case,
        k,
        t,
        basis: AdditiveSet::from_distinct(1, elements),
    })
}

/// `d_s([N]) = d_d⁻([N])`: `⌊log₃ N⌋ + 1` or `⌊log₃ N⌋ + 2` by case.
pub fn interval_dimension(n: u64) -> Result<usize> {
    if n == 0 {
        return Err(Error::Input("N must be at least 1".into()));
    }
    let (k, case) = interval_case(n);
    Ok(k as usize
        + match case {
            IntervalCase::One => 1,
            IntervalCase::Two => 2,
        })
}

/// `{0,1}^n`, in canonical order.
pub fn cube(n: usize) -> Result<AdditiveSet> {
    if n == 0 || n > CUBE_CAP {
        return Err(Error::Resource {
            what: "cube",
            size: n,
            cap: CUBE_CAP,
            advice: "choose 1 <= n <= 20",
        });
    }
    let elements = (0u64..1 << n)
        .map(|m| {
            Element::from_ints(
                &(0..n)
                    .map(|i| ((m >> (n - 1 - i)) & 1) as i64)
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    Ok(AdditiveSet::from_distinct(n, elements))
}

/// The standard basis `e_1, …, e_n`.
pub fn standard_basis(n: usize) -> AdditiveSet {
    AdditiveSet::from_distinct(
        n,
        (0..n)
            .map(|i| Element::from_ints(&(0..n).map(|j| (i == j) as i64).collect::<Vec<_>>()))
            .collect(),
    )
}

/// `{x₁, x₂, x₁+x₂, 2x₁, 2x₂}`.
pub fn example_eg1() -> AdditiveSet {
    AdditiveSet::from_rows(&[&[1, 0], &[0, 1], &[1, 1], &[2, 0], &[0, 2]])
}

/// `A_n = B_n ∪ {s_n} ∪ 2·D` for a nonempty dissociated `D ⊆ {0,1}^n ∖ {0}`.
pub fn geneg_family(n: usize, d: &AdditiveSet) -> Result<AdditiveSet> {
    // for n = 1, s_n coincides with e_1
    if n < 2 {
        return Err(Error::Input("n must be at least 2".into()));
    }
    if d.is_empty() {
        return Err(Error::Contract("D must be nonempty".into()));
    }
    if d.rank() != n {
        return Err(Error::Contract(format!(
            "D has rank {} but n = {n}",
            d.rank()
        )));
    }
    for e in d {
        let binary = e.coords().iter().all(|c| c.is_zero() || c.is_one());
        if !binary || e.is_zero() {
            return Err(Error::Contract(format!(
                "{e:?} is not a nonzero element of the cube"
            )));
        }
    }
    if let Dissociativity::NotDissociated(w) = is_dissociated_subsetsum(d)? {
        return Err(Error::Contract(format!(
            "D is not dissociated: signs {:?} vanish",
            w.signs
        )));
    }
    let mut elements = standard_basis(n).elements().to_vec();
    elements.push(Element::from_ints(&vec![1; n]));
    let two = BigInt::from(2);
    elements.extend(d.iter().map(|e| e.scale(&two)));
    let out = AdditiveSet::new(n, elements)?;
    if out.len() != n + 1 + d.len() {
        return Err(Error::Invariant("A_n has overlapping parts".into()));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubeStrategy {
    /// Exhaustive maximum (n ≤ 5).
    Exact,
    /// Best of `restarts` seeded random-order greedy insertions.
    GreedyRandom { seed: u64, restarts: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeDissociated {
    pub set: AdditiveSet,
    /// True only when the exact strategy proved the size maximum.
    pub optimal: bool,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed for restart `i` of a greedy run with master seed `seed`.
pub fn restart_seed(seed: u64, i: usize) -> u64 {
    splitmix64(seed ^ splitmix64(i as u64))
}

fn greedy_once<K: Key>(keys: &[K], zero: K, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut stack = SumStack::new(zero);
    let mut chosen = Vec::new();
    for i in order {
        if stack.depth() == SUBSET_SUM_CAP {
            break;
        }
        if stack.try_push(&keys[i]) {
            chosen.push(i);
        }
    }
    chosen
}

/// A verified dissociated subset of `{0,1}^n`.
pub fn dissociated_in_cube(n: usize, strategy: CubeStrategy) -> Result<CubeDissociated> {
    let q = cube(n)?;
    let nonzero = AdditiveSet::from_distinct(n, q.elements()[1..].to_vec());
    let out = match strategy {
        CubeStrategy::Exact => {
            if n > EXACT_CUBE_CAP {
                return Err(Error::Resource {
                    what: "exact cube search",
                    size: n,
                    cap: EXACT_CUBE_CAP,
                    advice: "use the greedy strategy",
                });
            }
            match max_dissociated(&nonzero, &SearchBudget::with_nodes(u64::MAX))? {
                Search::Exact(o) => CubeDissociated {
                    set: o.witness,
                    optimal: true,
                },
                Search::Exhausted { incumbent, .. } => CubeDissociated {
                    set: incumbent.unwrap_or_else(|| AdditiveSet::empty(n)),
                    optimal: false,
                },
            }
        }
        CubeStrategy::GreedyRandom { seed, restarts } => {
            if restarts == 0 {
                return Err(Error::Input("restarts must be positive".into()));
            }
            if n > GREEDY_CUBE_CAP {
                return Err(Error::Resource {
                    what: "greedy cube search",
                    size: n,
                    cap: GREEDY_CUBE_CAP,
                    advice: "choose n <= 12",
                });
            }
            let runs: Vec<Vec<usize>> = match Packing::for_small_subsets(&nonzero, SUBSET_SUM_CAP) {
                Some(p) => {
                    let keys = p.encode_all(nonzero.elements());
                    (0..restarts)
                        .into_par_iter()
                        .map(|i| greedy_once(&keys, 0, restart_seed(seed, i)))
                        .collect()
                }
                None => (0..restarts)
                    .into_par_iter()
                    .map(|i| {
                        greedy_once(nonzero.elements(), Element::zero(n), restart_seed(seed, i))
                    })
                    .collect(),
            };
            // largest; earliest restart on ties
            let best = runs
                .iter()
                .enumerate()
                .max_by(|(i, a), (j, b)| a.len().cmp(&b.len()).then(j.cmp(i)))
                .map(|(_, r)| r)
                .expect("at least one restart");
            let mut elements: Vec<Element> = best
                .iter()
                .map(|&i| nonzero.elements()[i].clone())
                .collect();
            elements.sort();
            CubeDissociated {
                set: AdditiveSet::from_distinct(n, elements),
                optimal: false,
            }
        }
    };
    if !is_dissociated_subsetsum(&out.set)?.is_dissociated() {
        return Err(Error::Invariant(
            "cube construction is not dissociated".into(),
        ));
    }
    Ok(out)
}

/// `x ↦ ∑ x_i · B^(i−1)` with `B = 2·s·d + 1`.
///
/// Digit vectors with entries in `[-s·d, s·d]` have unique base-`B`
/// expansions, so any identity among at most `2s` signed terms holds in the
/// image iff it holds in the source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreimanEmbedding {
    pub source_rank: usize,
    #[serde(serialize_with = "crate::format::serialize_bigint")]
    pub digit_bound: BigInt,
    pub order: u64,
    #[serde(serialize_with = "crate::format::serialize_bigint")]
    pub base: BigInt,
}

impl FreimanEmbedding {
    pub fn new(source_rank: usize, digit_bound: BigInt, order: u64) -> Self {
        let base = BigInt::from(2) * BigInt::from(order) * &digit_bound + 1;
        FreimanEmbedding {
            source_rank,
            digit_bound,
            order,
            base,
        }
    }

    pub fn apply(&self, x: &Element) -> Element {
        let mut acc = BigInt::zero();
        for c in x.coords().iter().rev() {
            acc = acc * &self.base + c;
        }
        Element::new(vec![acc])
    }

    pub fn apply_set(&self, a: &AdditiveSet) -> Result<AdditiveSet> {
        a.map(1, |x| self.apply(x))
    }
}

/// Embeds `A` into `Z` by a Freiman isomorphism of order `s`.
pub fn freiman_embed(a: &AdditiveSet, order: u64) -> Result<(AdditiveSet, FreimanEmbedding)> {
    if order == 0 {
        return Err(Error::Input("order must be at least 1".into()));
    }
    if a.is_empty() {
        return Err(Error::Input("cannot embed the empty set".into()));
    }
    let emb = FreimanEmbedding::new(a.rank(), a.max_abs(), order);
    let image = emb.apply_set(a)?;
    if image.len() != a.len() {
        return Err(Error::Invariant("embedding is not injective".into()));
    }
    Ok((image, emb))
}
