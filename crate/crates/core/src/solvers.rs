//! Exact computation of the four dimensions with certified optimality.
//!
//! * `d_d(A)`: largest dissociated subset, by branch and bound.
//! * `d_d⁻(A)`: smallest maximal dissociated subset. A dissociated `D ⊆ A` is
//!   maximal iff `⟨D⟩ ⊇ A`, so this deepens over `k` looking for a dissociated
//!   `k`-subset that spans `A`.
//! * `d_s(A)`: smallest `S ⊆ A` with `⟨S⟩ ⊇ A`, by iterative deepening.
//! * `d_s⁻` restricted to a finite universe `U`: same search over subsets of `U`.
//!
//! All searches run in canonical (lexicographic) element order and visit
//! subsets of a given size in lexicographic order, so the reported witness is
//! the lexicographically least optimum.

use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::dissociation::{SumStack, SUBSET_SUM_CAP};
use crate::error::{Error, Result};
use crate::keys::{FastMap, FastSet, Key, Packing};
use crate::model::{negate_closure, AdditiveSet, Element, SpanningCertificate};
use crate::span::{covers, Coverage};

pub const DEFAULT_MAX_NODES: u64 = 100_000_000;
pub const DEFAULT_MAX_SECONDS: u64 = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: DEFAULT_MAX_NODES,
            max_time: Duration::from_secs(DEFAULT_MAX_SECONDS),
        }
    }
}

impl SearchBudget {
    pub fn with_nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes,
            ..Default::default()
        }
    }
}

struct Meter {
    nodes: u64,
    max_nodes: u64,
    deadline: Instant,
    exhausted: bool,
}

impl Meter {
    fn new(budget: &SearchBudget) -> Self {
        Meter {
            nodes: 0,
            max_nodes: budget.max_nodes,
            deadline: Instant::now() + budget.max_time,
            exhausted: false,
        }
    }

    /// Counts one node; false once any budget is spent.
    #[inline]
    fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes
            || (self.nodes.is_multiple_of(4096) && Instant::now() >= self.deadline)
        {
            self.exhausted = true;
        }
        !self.exhausted
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub lower: usize,
    pub upper: usize,
}

/// Outcome of a budgeted search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Exact(T),
    /// Budget ran out; `bounds` are valid and `incumbent` is the best
    /// feasible set seen, if any.
    Exhausted {
        bounds: Bounds,
        incumbent: Option<AdditiveSet>,
    },
}

impl<T> Search<T> {
    pub fn exact(self) -> Option<T> {
        match self {
            Search::Exact(t) => Some(t),
            Search::Exhausted { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Search::Exact(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Optimum {
    pub value: usize,
    /// Canonical order.
    pub witness: AdditiveSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanOptimum {
    pub value: usize,
    pub witness: AdditiveSet,
    pub certificate: SpanningCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniverseSpan {
    /// Optimal among spanners drawn from the universe.
    Spanned(SpanOptimum),
    /// Not even the whole universe spans the target.
    Unspannable,
}

/// `⌈log₃ |A ∪ −A ∪ {0}|⌉`, by exact integer comparison.
pub fn lower_bound_log3(a: &AdditiveSet) -> usize {
    let n = negate_closure(a).len() as u128;
    let mut k = 0;
    let mut p: u128 = 1;
    while p < n {
        p *= 3;
        k += 1;
    }
    k
}

/// Canonical candidates with zero removed, lowered to keys.
struct Prepared<K> {
    elements: Vec<Element>,
    keys: Vec<K>,
    /// Number of distinct classes `{e, −e}` among candidates `i..`.
    classes_from: Vec<usize>,
}

fn prepare<K: Key>(set: &AdditiveSet, lower: impl Fn(&Element) -> K) -> Prepared<K> {
    let mut elements: Vec<Element> = set.iter().filter(|e| !e.is_zero()).cloned().collect();
    elements.sort();
    let mut ids: FastMap<Element, usize> = FastMap::default();
    let class: Vec<usize> = elements
        .iter()
        .map(|e| {
            let neg = -e;
            let rep = if *e > neg { e.clone() } else { neg };
            let next = ids.len();
            *ids.entry(rep).or_insert(next)
        })
        .collect();
    let mut classes_from = vec![0; elements.len() + 1];
    let mut seen = FastSet::default();
    for i in (0..elements.len()).rev() {
        seen.insert(class[i]);
        classes_from[i] = seen.len();
    }
    let keys = elements.iter().map(&lower).collect();
    Prepared {
        elements,
        keys,
        classes_from,
    }
}

fn witness_set(rank: usize, elements: &[Element], chosen: &[usize]) -> AdditiveSet {
    AdditiveSet::from_distinct(rank, chosen.iter().map(|&i| elements[i].clone()).collect())
}

/// Runs `f` with the candidates of `cands` lowered to packed or exact keys;
/// `extra` widens the packing box (targets that are not candidates).
fn with_keys<R>(
    rank: usize,
    cands: &AdditiveSet,
    extra: &AdditiveSet,
    f_packed: impl FnOnce(&Packing, Prepared<i128>) -> R,
    f_exact: impl FnOnce(Prepared<Element>) -> R,
) -> R {
    match Packing::for_elements(rank, cands.iter().chain(extra.iter())) {
        Some(p) => {
            let prep = prepare(cands, |e| p.encode(e).expect("in box"));
            f_packed(&p, prep)
        }
        None => f_exact(prepare(cands, Clone::clone)),
    }
}

// ---------------------------------------------------------------------------
// d_d

struct MaxSearch<'a, K: Key> {
    prep: &'a Prepared<K>,
    stack: SumStack<K>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    meter: Meter,
}

impl<K: Key> MaxSearch<'_, K> {
    fn dfs(&mut self, i: usize) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if self.chosen.len() >= SUBSET_SUM_CAP {
            return;
        }
        for j in i..self.prep.keys.len() {
            if self.chosen.len() + self.prep.classes_from[j] <= self.best.len()
                || !self.meter.tick()
            {
                return;
            }
            if self.stack.try_push(&self.prep.keys[j]) {
                self.chosen.push(j);
                self.dfs(j + 1);
                self.chosen.pop();
                self.stack.pop();
            }
        }
    }
}

fn run_max<K: Key>(prep: &Prepared<K>, zero: K, budget: &SearchBudget) -> (Vec<usize>, bool) {
    let mut s = MaxSearch {
        prep,
        stack: SumStack::new(zero),
        chosen: Vec::new(),
        best: Vec::new(),
        meter: Meter::new(budget),
    };
    s.dfs(0);
    (s.best, !s.meter.exhausted)
}

/// `d_d(A)` and the lexicographically least maximum dissociated subset.
pub fn max_dissociated(a: &AdditiveSet, budget: &SearchBudget) -> Result<Search<Optimum>> {
    let rank = a.rank();
    let (elements, best, complete, classes) = with_keys(
        rank,
        a,
        &AdditiveSet::empty(rank),
        |_, prep| {
            let (best, done) = run_max(&prep, 0, budget);
            (prep.elements, best, done, prep.classes_from[0])
        },
        |prep| {
            let (best, done) = run_max(&prep, Element::zero(rank), budget);
            (prep.elements, best, done, prep.classes_from[0])
        },
    );
    let witness = witness_set(rank, &elements, &best);
    Ok(if complete {
        Search::Exact(Optimum {
            value: best.len(),
            witness,
        })
    } else {
        Search::Exhausted {
            bounds: Bounds {
                lower: best.len(),
                upper: classes.min(SUBSET_SUM_CAP),
            },
            incumbent: Some(witness),
        }
    })
}

// ---------------------------------------------------------------------------
// d_d⁻

struct SpanningDissociatedSearch<'a, K: Key> {
    prep: &'a Prepared<K>,
    targets: &'a [K],
    target: usize,
    stack: SumStack<K>,
    chosen: Vec<usize>,
    meter: Meter,
}

impl<K: Key> SpanningDissociatedSearch<'_, K> {
    /// First (lexicographically least) dissociated `target`-subset spanning all targets.
    fn dfs(&mut self, i: usize) -> bool {
        if !self.meter.tick() {
            return false;
        }
        if self.chosen.len() == self.target {
            return self.targets.iter().all(|t| self.stack.spans(t));
        }
        let need = self.target - self.chosen.len();
        for j in i..self.prep.keys.len() {
            if self.prep.classes_from[j] < need {
                break;
            }
            if self.stack.try_push(&self.prep.keys[j]) {
                self.chosen.push(j);
                if self.dfs(j + 1) {
                    return true;
                }
                self.chosen.pop();
                self.stack.pop();
            }
            if self.meter.exhausted {
                return false;
            }
        }
        false
    }
}

/// Greedy maximal dissociated subset in canonical order (an upper bound for `d_d⁻`).
fn greedy_maximal<K: Key>(prep: &Prepared<K>, zero: K) -> Vec<usize> {
    let mut stack = SumStack::new(zero);
    (0..prep.keys.len())
        .filter(|&i| stack.depth() < SUBSET_SUM_CAP && stack.try_push(&prep.keys[i]))
        .collect()
}

enum Deepening {
    Found(Vec<usize>),
    /// Budget ran out while searching level `level`.
    Exhausted {
        level: usize,
    },
    NotFound,
}

fn run_min_maximal<K: Key>(
    prep: &Prepared<K>,
    targets: &[K],
    zero: K,
    lower: usize,
    budget: &SearchBudget,
) -> Deepening {
    let mut meter = Meter::new(budget);
    for k in lower..=prep.classes_from[0].min(SUBSET_SUM_CAP) {
        let mut s = SpanningDissociatedSearch {
            prep,
            targets,
            target: k,
            stack: SumStack::new(zero.clone()),
            chosen: Vec::new(),
            meter,
        };
        let found = s.dfs(0);
        if found {
            return Deepening::Found(s.chosen);
        }
        if s.meter.exhausted {
            return Deepening::Exhausted { level: k };
        }
        meter = s.meter;
    }
    Deepening::NotFound
}

/// `d_d⁻(A)` and the lexicographically least minimum maximal dissociated subset.
pub fn min_maximal_dissociated(a: &AdditiveSet, budget: &SearchBudget) -> Result<Search<Optimum>> {
    let rank = a.rank();
    let lower = lower_bound_log3(a);
    let (elements, outcome, greedy) = with_keys(
        rank,
        a,
        &AdditiveSet::empty(rank),
        |p, prep| {
            let targets = p.encode_all(a.elements());
            let out = run_min_maximal(&prep, &targets, 0, lower, budget);
            let greedy = greedy_maximal(&prep, 0);
            (prep.elements, out, greedy)
        },
        |prep| {
            let zero = Element::zero(rank);
            let out = run_min_maximal(&prep, a.elements(), zero.clone(), lower, budget);
            let greedy = greedy_maximal(&prep, zero);
            (prep.elements, out, greedy)
        },
    );
    match outcome {
        Deepening::Found(chosen) => Ok(Search::Exact(Optimum {
            value: chosen.len(),
            witness: witness_set(rank, &elements, &chosen),
        })),
        Deepening::Exhausted { level } => Ok(Search::Exhausted {
            bounds: Bounds {
                lower: level,
                upper: greedy.len().max(level),
            },
            incumbent: Some(witness_set(rank, &elements, &greedy)),
        }),
        Deepening::NotFound => Err(Error::Invariant(
            "no maximal dissociated subset found".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// d_s and d_s⁻ over a universe

struct SpannerSearch<'a, K: Key> {
    prep: &'a Prepared<K>,
    targets: &'a [K],
    target: usize,
    chosen: Vec<usize>,
    /// Subset sums of the chosen elements, in mask order (with repeats).
    sums: Vec<K>,
    meter: Meter,
}

impl<K: Key> SpannerSearch<'_, K> {
    fn leaf_spans(&self) -> bool {
        let set: FastSet<&K> = self.sums.iter().collect();
        self.targets
            .iter()
            .all(|t| self.sums.iter().any(|s| set.contains(&t.add(s))))
    }

    fn dfs(&mut self, i: usize) -> bool {
        if !self.meter.tick() {
            return false;
        }
        if self.chosen.len() == self.target {
            return self.leaf_spans();
        }
        let need = self.target - self.chosen.len();
        // e and −e may both be needed: together they reach 2e
        for j in i..self.prep.keys.len() {
            if self.prep.keys.len() - j < need {
                break;
            }
            let half = self.sums.len();
            for m in 0..half {
                let v = self.sums[m].add(&self.prep.keys[j]);
                self.sums.push(v);
            }
            self.chosen.push(j);
            if self.dfs(j + 1) {
                return true;
            }
            self.chosen.pop();
            self.sums.truncate(half);
            if self.meter.exhausted {
                return false;
            }
        }
        false
    }
}

fn run_min_spanner<K: Key>(
    prep: &Prepared<K>,
    targets: &[K],
    zero: K,
    lower: usize,
    upper: usize,
    budget: &SearchBudget,
) -> Deepening {
    let mut meter = Meter::new(budget);
    for k in lower..=upper.min(prep.keys.len()) {
        let mut s = SpannerSearch {
            prep,
            targets,
            target: k,
            chosen: Vec::new(),
            sums: vec![zero.clone()],
            meter,
        };
        if s.dfs(0) {
            return Deepening::Found(s.chosen);
        }
        if s.meter.exhausted {
            return Deepening::Exhausted { level: k };
        }
        meter = s.meter;
    }
    Deepening::NotFound
}

fn certify(witness: AdditiveSet, targets: &AdditiveSet) -> Result<SpanOptimum> {
    match covers(&witness, targets)? {
        Coverage::Covered(certificate) => Ok(SpanOptimum {
            value: witness.len(),
            witness,
            certificate,
        }),
        Coverage::Uncovered(e) => Err(Error::Invariant(format!(
            "spanner search returned a set that misses {e:?}"
        ))),
    }
}

/// Smallest spanner of `targets` drawn from `universe`, deepening from `lower`.
fn min_spanner_from(
    targets: &AdditiveSet,
    universe: &AdditiveSet,
    lower: usize,
    upper: usize,
    budget: &SearchBudget,
) -> Result<(Deepening, Vec<Element>)> {
    let rank = targets.rank();
    Ok(with_keys(
        rank,
        universe,
        targets,
        |p, prep| {
            let t = p.encode_all(targets.elements());
            (
                run_min_spanner(&prep, &t, 0, lower, upper, budget),
                prep.elements,
            )
        },
        |prep| {
            let out = run_min_spanner(
                &prep,
                targets.elements(),
                Element::zero(rank),
                lower,
                upper,
                budget,
            );
            (out, prep.elements)
        },
    ))
}

/// `d_s(A)`, the lexicographically least minimum 1-spanning subset, and its certificate.
pub fn min_spanning_subset(a: &AdditiveSet, budget: &SearchBudget) -> Result<Search<SpanOptimum>> {
    let rank = a.rank();
    let lower = lower_bound_log3(a);
    let nonzero = a.iter().filter(|e| !e.is_zero()).count();
    let (outcome, elements) = min_spanner_from(a, a, lower, nonzero, budget)?;
    match outcome {
        Deepening::Found(chosen) => Ok(Search::Exact(certify(
            witness_set(rank, &elements, &chosen),
            a,
        )?)),
        Deepening::Exhausted { level } => {
            // any maximal dissociated subset spans A
            let greedy = with_keys(
                rank,
                a,
                &AdditiveSet::empty(rank),
                |_, prep| witness_set(rank, &prep.elements, &greedy_maximal(&prep, 0)),
                |prep| {
                    witness_set(
                        rank,
                        &prep.elements,
                        &greedy_maximal(&prep, Element::zero(rank)),
                    )
                },
            );
            Ok(Search::Exhausted {
                bounds: Bounds {
                    lower: level,
                    upper: greedy.len().max(level),
                },
                incumbent: Some(greedy),
            })
        }
        Deepening::NotFound => Err(Error::Invariant("A does not span itself".into())),
    }
}

/// `d_s⁻(A)` restricted to spanners drawn from `universe`.
///
/// The value is an upper bound for the unrestricted `d_s⁻(A)` and equals it
/// whenever some optimal spanner lies inside the universe.
pub fn min_spanning_universe(
    a: &AdditiveSet,
    universe: &AdditiveSet,
    budget: &SearchBudget,
) -> Result<Search<UniverseSpan>> {
    if !a.is_empty() && !universe.is_empty() && a.rank() != universe.rank() {
        return Err(Error::Contract(
            "universe rank differs from the set's".into(),
        ));
    }
    let rank = a.rank();
    let lower = lower_bound_log3(a);
    let (outcome, elements) = min_spanner_from(a, universe, lower, universe.len(), budget)?;
    match outcome {
        Deepening::Found(chosen) => Ok(Search::Exact(UniverseSpan::Spanned(certify(
            witness_set(rank, &elements, &chosen),
            a,
        )?))),
        Deepening::Exhausted { level } => Ok(Search::Exhausted {
            bounds: Bounds {
                lower: level,
                upper: universe.len(),
            },
            incumbent: None,
        }),
        Deepening::NotFound => Ok(Search::Exact(UniverseSpan::Unspannable)),
    }
}

// ---------------------------------------------------------------------------
// reports

/// One dimension inside a [`DimensionReport`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionEntry {
    /// Exact value, when the search completed.
    pub value: Option<usize>,
    pub lower: usize,
    pub upper: usize,
    pub witness: Option<AdditiveSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<SpanningCertificate>,
    pub method: &'static str,
}

impl DimensionEntry {
    fn from_optimum(s: Search<Optimum>, method: &'static str) -> Self {
        match s {
            // the bounds met before the search could prove it
            Search::Exhausted {
                bounds,
                incumbent: Some(w),
            } if bounds.lower == bounds.upper && w.len() == bounds.lower => Self::from_optimum(
                Search::Exact(Optimum {
                    value: w.len(),
                    witness: w,
                }),
                method,
            ),
            Search::Exact(o) => DimensionEntry {
                value: Some(o.value),
                lower: o.value,
                upper: o.value,
                witness: Some(o.witness),
                certificate: None,
                method,
            },
            Search::Exhausted { bounds, incumbent } => DimensionEntry {
                value: None,
                lower: bounds.lower,
                upper: bounds.upper,
                witness: incumbent,
                certificate: None,
                method,
            },
        }
    }

    fn from_span(s: Search<SpanOptimum>, method: &'static str) -> Self {
        match s {
            Search::Exact(o) => DimensionEntry {
                value: Some(o.value),
                lower: o.value,
                upper: o.value,
                witness: Some(o.witness),
                certificate: Some(o.certificate),
                method,
            },
            Search::Exhausted { bounds, incumbent } => DimensionEntry {
                value: None,
                lower: bounds.lower,
                upper: bounds.upper,
                witness: incumbent,
                certificate: None,
                method,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniverseEntry {
    pub universe_size: usize,
    /// False when the universe cannot span the set at all.
    pub spannable: bool,
    #[serde(flatten)]
    pub entry: DimensionEntry,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ratios {
    pub ds_minus_over_ds: Option<f64>,
    pub ds_over_dd_minus: Option<f64>,
    pub dd_minus_over_dd: Option<f64>,
    /// `1 / log₄ d_d(A)`, for `d_d ≥ 2`.
    pub inverse_log4_dd: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionReport {
    pub rank: usize,
    pub size: usize,
    pub d_s_minus: Option<UniverseEntry>,
    pub d_s: DimensionEntry,
    pub d_d_minus: DimensionEntry,
    pub d_d: DimensionEntry,
    pub ratios: Ratios,
    /// True when every value needed for the chain is exact.
    pub all_exact: bool,
}

impl DimensionReport {
    pub fn values(&self) -> (Option<usize>, Option<usize>, Option<usize>, Option<usize>) {
        (
            self.d_s_minus
                .as_ref()
                .filter(|u| u.spannable)
                .and_then(|u| u.entry.value),
            self.d_s.value,
            self.d_d_minus.value,
            self.d_d.value,
        )
    }
}

fn ratio(num: Option<usize>, den: Option<usize>) -> Option<f64> {
    match (num, den) {
        (Some(n), Some(d)) if d > 0 => Some(n as f64 / d as f64),
        _ => None,
    }
}

/// Runs every applicable solver and checks `d_s⁻(U) ≤ d_s ≤ d_d⁻ ≤ d_d`.
///
/// The first link is only checked when `U ⊇ A`.
pub fn full_report(
    a: &AdditiveSet,
    universe: Option<&AdditiveSet>,
    budget: &SearchBudget,
) -> Result<DimensionReport> {
    let d_d = DimensionEntry::from_optimum(max_dissociated(a, budget)?, "branch-and-bound");
    let d_d_minus =
        DimensionEntry::from_optimum(min_maximal_dissociated(a, budget)?, "iterative-deepening");
    let d_s = DimensionEntry::from_span(min_spanning_subset(a, budget)?, "iterative-deepening");
    let d_s_minus = match universe {
        None => None,
        Some(u) => Some(match min_spanning_universe(a, u, budget)? {
            Search::Exact(UniverseSpan::Spanned(o)) => UniverseEntry {
                universe_size: u.len(),
                spannable: true,
                entry: DimensionEntry::from_span(Search::Exact(o), "exact-over-universe"),
            },
            Search::Exact(UniverseSpan::Unspannable) => UniverseEntry {
                universe_size: u.len(),
                spannable: false,
                entry: DimensionEntry {
                    value: None,
                    lower: 0,
                    upper: 0,
                    witness: None,
                    certificate: None,
                    method: "exact-over-universe",
                },
            },
            Search::Exhausted { bounds, incumbent } => UniverseEntry {
                universe_size: u.len(),
                spannable: true,
                entry: DimensionEntry::from_span(
                    Search::Exhausted { bounds, incumbent },
                    "exact-over-universe",
                ),
            },
        }),
    };

    let ds_minus = d_s_minus
        .as_ref()
        .filter(|u| u.spannable)
        .and_then(|u| u.entry.value);
    let chain_broken = match (d_s.value, d_d_minus.value, d_d.value) {
        (Some(s), Some(m), Some(d)) => s > m || m > d,
        _ => false,
    };
    let universe_contains_a = universe.is_some_and(|u| a.is_subset_of(u));
    if chain_broken
        || (universe_contains_a && matches!((ds_minus, d_s.value), (Some(x), Some(s)) if x > s))
    {
        return Err(Error::Invariant(format!(
            "dimension chain violated: d_s⁻={ds_minus:?} d_s={:?} d_d⁻={:?} d_d={:?}",
            d_s.value, d_d_minus.value, d_d.value
        )));
    }

    let ratios = Ratios {
        ds_minus_over_ds: ratio(ds_minus, d_s.value),
        ds_over_dd_minus: ratio(d_s.value, d_d_minus.value),
        dd_minus_over_dd: ratio(d_d_minus.value, d_d.value),
        inverse_log4_dd: d_d
            .value
            .filter(|&d| d >= 2)
            .map(|d| 1.0 / (d.to_f64().expect("small").ln() / 4f64.ln())),
    };
    let all_exact = d_d.value.is_some()
        && d_d_minus.value.is_some()
        && d_s.value.is_some()
        && d_s_minus
            .as_ref()
            .is_none_or(|u| !u.spannable || u.entry.value.is_some());
    Ok(DimensionReport {
        rank: a.rank(),
        size: a.len(),
        d_s_minus,
        d_s,
        d_d_minus,
        d_d,
        ratios,
        all_exact,
    })
}
