//! Dissociativity: deciders, witnesses, and the incremental subset-sum engine.
//!
//! A set is dissociated when its `2^n` subset sums are pairwise distinct, or
//! equivalently when no nonzero `{-1, 0, 1}`-combination vanishes. The two
//! deciders below implement the two readings independently.

use std::ops::ControlFlow;

use crate::combos::{decode_rank, for_each_combination, zero_rank};
use crate::error::{Error, Result};
use crate::keys::{FastMap, FastSet, Key, Keyed};
use crate::model::{AdditiveSet, Element, NonDissociationWitness, SignVector};
use crate::span::SpanIndex;

/// Largest set the subset-sum decider enumerates (2^30 sums).
pub const SUBSET_SUM_CAP: usize = 30;
/// Largest set the meet-in-the-middle decider accepts (3^13 per half).
pub const SIGN_COMBINATION_CAP: usize = 26;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dissociativity {
    Dissociated,
    NotDissociated(NonDissociationWitness),
}

impl Dissociativity {
    pub fn is_dissociated(&self) -> bool {
        matches!(self, Dissociativity::Dissociated)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Maximality {
    Maximal,
    NotDissociated(NonDissociationWitness),
    /// The lexicographically least element that keeps the set dissociated.
    Extendable(Element),
}

fn witness_from_masks(older: u64, newer: u64, len: usize) -> NonDissociationWitness {
    let coeffs = (0..len)
        .map(|i| ((newer >> i) & 1) as i8 - ((older >> i) & 1) as i8)
        .collect();
    NonDissociationWitness {
        signs: SignVector::new(coeffs)
            .expect("mask difference is in {-1,0,1}")
            .normalized(),
    }
}

/// First colliding pair of subset masks in binary-counting order.
fn subset_sum_collision<K: Key>(keys: &[K], zero: &K) -> Option<(u64, u64)> {
    let mut sums: Vec<K> = Vec::with_capacity(1 << keys.len());
    let mut index: FastMap<K, u64> = FastMap::default();
    sums.push(zero.clone());
    index.insert(zero.clone(), 0);
    for (i, k) in keys.iter().enumerate() {
        let half = sums.len();
        for m in 0..half {
            let v = sums[m].add(k);
            let mask = (m as u64) | (1u64 << i);
            if let Some(&older) = index.get(&v) {
                return Some((older, mask));
            }
            index.insert(v.clone(), mask);
            sums.push(v);
        }
    }
    None
}

/// Nonzero vanishing sign vector found by meet in the middle, if any.
fn vanishing_combination<K: Key>(keys: &[K], zero: &K) -> Option<Vec<i8>> {
    let n = keys.len();
    let split = n.div_ceil(2);
    let (left, right) = keys.split_at(split);

    let left_zero = zero_rank(left.len());
    let mut table: FastMap<K, u64> = FastMap::default();
    let left_only = for_each_combination(left, zero, |rank, v| {
        if v.is_zero() && rank != left_zero {
            return ControlFlow::Break(rank);
        }
        table.entry(v.clone()).or_insert(rank);
        ControlFlow::Continue(())
    });
    if let Some(rank) = left_only {
        let mut out = decode_rank(rank, left.len());
        out.resize(n, 0);
        return Some(out);
    }

    let right_zero = zero_rank(right.len());
    for_each_combination(right, zero, |rank, v| {
        if rank == right_zero {
            return ControlFlow::Continue(());
        }
        match table.get(&v.neg()) {
            Some(&l) => ControlFlow::Break((l, rank)),
            None => ControlFlow::Continue(()),
        }
    })
    .map(|(l, r)| {
        let mut out = decode_rank(l, left.len());
        out.extend(decode_rank(r, right.len()));
        out
    })
}

fn check_cap(len: usize, cap: usize, what: &'static str, advice: &'static str) -> Result<()> {
    if len > cap {
        return Err(Error::Resource {
            what,
            size: len,
            cap,
            advice,
        });
    }
    Ok(())
}

pub fn is_dissociated_subsetsum(set: &AdditiveSet) -> Result<Dissociativity> {
    is_dissociated_subsetsum_with(set, SUBSET_SUM_CAP, true)
}

pub(crate) fn is_dissociated_subsetsum_with(
    set: &AdditiveSet,
    cap: usize,
    allow_packed: bool,
) -> Result<Dissociativity> {
    check_cap(
        set.len(),
        cap,
        "subset-sum dissociativity test",
        "use the meet-in-the-middle sign-combination test",
    )?;
    let collision = match Keyed::new(set.rank(), set.elements(), &[], allow_packed) {
        Keyed::Packed(_, keys) => subset_sum_collision(&keys, &0),
        Keyed::Exact(keys) => subset_sum_collision(&keys, &Element::zero(set.rank())),
    };
    Ok(match collision {
        None => Dissociativity::Dissociated,
        Some((older, newer)) => {
            Dissociativity::NotDissociated(witness_from_masks(older, newer, set.len()))
        }
    })
}

pub fn is_dissociated_signcomb(set: &AdditiveSet) -> Result<Dissociativity> {
    is_dissociated_signcomb_with(set, SIGN_COMBINATION_CAP, true)
}

pub(crate) fn is_dissociated_signcomb_with(
    set: &AdditiveSet,
    cap: usize,
    allow_packed: bool,
) -> Result<Dissociativity> {
    check_cap(
        set.len(),
        cap,
        "sign-combination dissociativity test",
        "the set is too large for exhaustive testing",
    )?;
    let found = match Keyed::new(set.rank(), set.elements(), &[], allow_packed) {
        Keyed::Packed(_, keys) => vanishing_combination(&keys, &0),
        Keyed::Exact(keys) => vanishing_combination(&keys, &Element::zero(set.rank())),
    };
    Ok(match found {
        None => Dissociativity::Dissociated,
        Some(coeffs) => Dissociativity::NotDissociated(NonDissociationWitness {
            signs: SignVector::new(coeffs)?.normalized(),
        }),
    })
}

/// The default dissociativity decider.
pub fn is_dissociated(set: &AdditiveSet) -> Result<bool> {
    Ok(is_dissociated_subsetsum(set)?.is_dissociated())
}

/// All `2^|base|` subset sums of a dissociated base, each mapped to the
/// bitmask (bit `i` = `i`-th base element) of its unique generating subset.
#[derive(Clone, Debug)]
pub struct SubsetSumTable {
    base: AdditiveSet,
    sums: Vec<Element>,
    index: FastMap<Element, u64>,
}

#[derive(Clone, Debug)]
pub enum Extension {
    Extended(SubsetSumTable),
    Collision(NonDissociationWitness),
}

impl SubsetSumTable {
    pub fn empty(rank: usize) -> Self {
        let zero = Element::zero(rank);
        let mut index = FastMap::default();
        index.insert(zero.clone(), 0);
        SubsetSumTable {
            base: AdditiveSet::empty(rank),
            sums: vec![zero],
            index,
        }
    }

    /// Builds the table by repeated extension; fails with a witness if `set`
    /// is not dissociated.
    pub fn from_set(
        set: &AdditiveSet,
    ) -> Result<std::result::Result<Self, NonDissociationWitness>> {
        let mut table = SubsetSumTable::empty(set.rank());
        for e in set {
            match table.extend(e)? {
                Extension::Extended(t) => table = t,
                Extension::Collision(w) => return Ok(Err(w)),
            }
        }
        Ok(Ok(table))
    }

    pub fn base(&self) -> &AdditiveSet {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sums.is_empty()
    }

    /// Sums in binary-counting order of their masks.
    pub fn sums(&self) -> &[Element] {
        &self.sums
    }

    /// The generating subset of `sum`, as a mask over the base.
    pub fn subset_of(&self, sum: &Element) -> Option<u64> {
        self.index.get(sum).copied()
    }

    pub fn extend(&self, a: &Element) -> Result<Extension> {
        if a.rank() != self.base.rank() {
            return Err(Error::Contract(
                "element rank differs from the table's".into(),
            ));
        }
        if self.base.contains(a) {
            return Err(Error::Contract(format!("{a:?} is already in the base")));
        }
        check_cap(
            self.base.len() + 1,
            SUBSET_SUM_CAP,
            "subset-sum table",
            "use the meet-in-the-middle sign-combination test",
        )?;
        let n = self.base.len();
        let mut added = Vec::with_capacity(self.sums.len());
        for (m, s) in self.sums.iter().enumerate() {
            let v = s + a;
            if let Some(&older) = self.index.get(&v) {
                // sum(older) = sum(m) + a
                let newer = (m as u64) | (1u64 << n);
                return Ok(Extension::Collision(witness_from_masks(
                    older,
                    newer,
                    n + 1,
                )));
            }
            added.push(v);
        }
        let mut sums = self.sums.clone();
        let mut index = self.index.clone();
        for (m, v) in added.into_iter().enumerate() {
            index.insert(v.clone(), (m as u64) | (1u64 << n));
            sums.push(v);
        }
        debug_assert_eq!(index.len(), sums.len());
        Ok(Extension::Extended(SubsetSumTable {
            base: self.base.with(a.clone())?,
            sums,
            index,
        }))
    }
}

/// Stack of subset sums for depth-first search over dissociated sets.
pub(crate) struct SumStack<K: Key> {
    sums: Vec<K>,
    index: FastSet<K>,
    depth: usize,
}

impl<K: Key> SumStack<K> {
    pub fn new(zero: K) -> Self {
        let mut index = FastSet::default();
        index.insert(zero.clone());
        SumStack {
            sums: vec![zero],
            index,
            depth: 0,
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Pushes `a` if the base stays dissociated.
    pub fn try_push(&mut self, a: &K) -> bool {
        if self.sums.iter().any(|s| self.index.contains(&s.add(a))) {
            return false;
        }
        let half = self.sums.len();
        self.sums.reserve(half);
        for m in 0..half {
            let v = self.sums[m].add(a);
            self.index.insert(v.clone());
            self.sums.push(v);
        }
        self.depth += 1;
        true
    }

    pub fn pop(&mut self) {
        let half = self.sums.len() / 2;
        for v in self.sums.drain(half..) {
            self.index.remove(&v);
        }
        self.depth -= 1;
    }

    /// `x ∈ ⟨base⟩` iff `x + s` is a subset sum for some subset sum `s`.
    pub fn spans(&self, x: &K) -> bool {
        self.sums.iter().any(|s| self.index.contains(&x.add(s)))
    }
}

pub fn is_maximal_dissociated(d: &AdditiveSet, a: &AdditiveSet) -> Result<Maximality> {
    if d.rank() != a.rank() || !d.is_subset_of(a) {
        return Err(Error::Contract("D must be a subset of A".into()));
    }
    check_cap(
        d.len() + 1,
        SUBSET_SUM_CAP,
        "maximality test",
        "D is too large for exhaustive testing",
    )?;
    if let Dissociativity::NotDissociated(w) = is_dissociated_subsetsum(d)? {
        return Ok(Maximality::NotDissociated(w));
    }
    // for dissociated D, D ∪ {x} is dissociated iff x ∉ ⟨D⟩
    let mut rest = a.difference(d);
    rest.sort();
    let index = SpanIndex::new(d, rest.len());
    let pos = rest.iter().position(|x| !index.contains(x));
    Ok(match pos {
        Some(i) => Maximality::Extendable(rest.swap_remove(i)),
        None => Maximality::Maximal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::evaluate;
    use proptest::prelude::*;

    fn witness(d: Dissociativity) -> Vec<i8> {
        match d {
            Dissociativity::NotDissociated(w) => w.signs.coeffs().to_vec(),
            Dissociativity::Dissociated => panic!("expected a witness"),
        }
    }

    #[test]
    fn subsetsum_examples() {
        let s = AdditiveSet::from_scalars(&[1, 3, 9]);
        assert!(is_dissociated_subsetsum(&s).unwrap().is_dissociated());
        let s = AdditiveSet::from_scalars(&[1, 2, 3]);
        assert_eq!(
            witness(is_dissociated_subsetsum(&s).unwrap()),
            vec![1, 1, -1]
        );
        let s = AdditiveSet::from_rows(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(
            witness(is_dissociated_subsetsum(&s).unwrap()),
            vec![1, 1, -1]
        );
    }

    #[test]
    fn signcomb_examples() {
        let s = AdditiveSet::from_scalars(&[1, 3, 9, 27]);
        assert!(is_dissociated_signcomb(&s).unwrap().is_dissociated());
        let s = AdditiveSet::from_scalars(&[2, 4, 6]);
        let w = witness(is_dissociated_signcomb(&s).unwrap());
        assert_eq!(w, vec![1, 1, -1]);
        assert!(is_dissociated_signcomb(&AdditiveSet::empty(1))
            .unwrap()
            .is_dissociated());
        assert!(is_dissociated_subsetsum(&AdditiveSet::empty(3))
            .unwrap()
            .is_dissociated());
    }

    #[test]
    fn zero_and_opposites_are_never_dissociated() {
        for s in [
            AdditiveSet::from_scalars(&[0]),
            AdditiveSet::from_scalars(&[5, 7, -5]),
            AdditiveSet::from_rows(&[&[1, 2], &[-1, -2]]),
        ] {
            assert!(!is_dissociated_subsetsum(&s).unwrap().is_dissociated());
            assert!(!is_dissociated_signcomb(&s).unwrap().is_dissociated());
        }
    }

    #[test]
    fn caps_are_enforced() {
        let big: Vec<i64> = (0..31).map(|i| 1i64 << i).collect();
        let s = AdditiveSet::from_scalars(&big);
        assert!(matches!(
            is_dissociated_subsetsum(&s),
            Err(Error::Resource { cap: 30, .. })
        ));
        let s = AdditiveSet::from_scalars(&big[..27]);
        assert!(matches!(
            is_dissociated_signcomb(&s),
            Err(Error::Resource { cap: 26, .. })
        ));
    }

    #[test]
    fn extend_examples() {
        let t = SubsetSumTable::from_set(&AdditiveSet::from_scalars(&[1, 3]))
            .unwrap()
            .unwrap();
        let Extension::Extended(t9) = t.extend(&Element::scalar(9)).unwrap() else {
            panic!("9 extends {{1,3}}");
        };
        // enumerated independently: all subsets of {1,3,9}
        let mut expect = Vec::new();
        for mask in 0..8u32 {
            let v: i64 = [1, 3, 9]
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| v)
                .sum();
            expect.push(v);
        }
        expect.sort();
        assert_eq!(expect, vec![0, 1, 3, 4, 9, 10, 12, 13]);
        let mut got: Vec<Element> = t9.sums().to_vec();
        got.sort();
        let expect: Vec<Element> = expect.into_iter().map(Element::scalar).collect();
        assert_eq!(got, expect);
        assert_eq!(t9.subset_of(&Element::scalar(10)), Some(0b101));

        let Extension::Collision(w) = t.extend(&Element::scalar(4)).unwrap() else {
            panic!("4 = 1 + 3");
        };
        assert_eq!(w.signs.coeffs(), &[1, 1, -1]);

        let Extension::Collision(w) = SubsetSumTable::empty(1)
            .extend(&Element::scalar(0))
            .unwrap()
        else {
            panic!("0 is never dissociated");
        };
        assert_eq!(w.signs.coeffs(), &[1]);

        assert!(matches!(
            t.extend(&Element::scalar(3)),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn maximality_examples() {
        let q3 = AdditiveSet::from_rows(&[
            &[0, 0, 0],
            &[0, 0, 1],
            &[0, 1, 0],
            &[0, 1, 1],
            &[1, 0, 0],
            &[1, 0, 1],
            &[1, 1, 0],
            &[1, 1, 1],
        ]);
        let basis = AdditiveSet::from_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(
            is_maximal_dissociated(&basis, &q3).unwrap(),
            Maximality::Maximal
        );

        let a = AdditiveSet::from_scalars(&[1, 2, 3]);
        assert_eq!(
            is_maximal_dissociated(&AdditiveSet::from_scalars(&[1]), &a).unwrap(),
            Maximality::Extendable(Element::scalar(2))
        );
        assert_eq!(
            is_maximal_dissociated(&AdditiveSet::from_scalars(&[1, 2]), &a).unwrap(),
            Maximality::Maximal
        );
        assert!(matches!(
            is_maximal_dissociated(&a, &a).unwrap(),
            Maximality::NotDissociated(_)
        ));
        assert!(is_maximal_dissociated(&AdditiveSet::from_scalars(&[4]), &a).is_err());
    }

    fn arb_set(max_len: usize) -> impl Strategy<Value = AdditiveSet> {
        (1usize..=3).prop_flat_map(move |rank| {
            prop::collection::hash_set(prop::collection::vec(-6i64..=6, rank), 0..=max_len)
                .prop_map(move |rows| {
                    AdditiveSet::new(rank, rows.iter().map(|r| Element::from_ints(r)).collect())
                        .unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn deciders_agree_and_witnesses_vanish(set in arb_set(12)) {
            let a = is_dissociated_subsetsum(&set).unwrap();
            let b = is_dissociated_signcomb(&set).unwrap();
            prop_assert_eq!(a.is_dissociated(), b.is_dissociated());
            for d in [a, b] {
                if let Dissociativity::NotDissociated(w) = d {
                    prop_assert!(w.verify(&set));
                    prop_assert!(evaluate(&w.signs, &set).unwrap().is_zero());
                }
            }
        }

        #[test]
        fn packed_and_exact_paths_are_identical(set in arb_set(10)) {
            prop_assert_eq!(
                is_dissociated_subsetsum_with(&set, 30, true).unwrap(),
                is_dissociated_subsetsum_with(&set, 30, false).unwrap()
            );
            prop_assert_eq!(
                is_dissociated_signcomb_with(&set, 26, true).unwrap(),
                is_dissociated_signcomb_with(&set, 26, false).unwrap()
            );
        }

        #[test]
        fn hereditary(set in arb_set(10), mask in any::<u16>()) {
            if is_dissociated(&set).unwrap() {
                let idx: Vec<usize> = (0..set.len()).filter(|i| mask >> i & 1 == 1).collect();
                prop_assert!(is_dissociated(&set.select(&idx)).unwrap());
            }
        }

        #[test]
        fn extend_matches_from_scratch(set in arb_set(8), extra in prop::collection::vec(-6i64..=6, 3)) {
            if let Ok(table) = SubsetSumTable::from_set(&set).unwrap() {
                let e = Element::from_ints(&extra[..set.rank()]);
                if !set.contains(&e) {
                    let scratch = is_dissociated_subsetsum(&set.with(e.clone()).unwrap()).unwrap();
                    match table.extend(&e).unwrap() {
                        Extension::Extended(t) => {
                            prop_assert!(scratch.is_dissociated());
                            prop_assert_eq!(t.len(), 1 << (set.len() + 1));
                        }
                        Extension::Collision(w) => {
                            prop_assert!(!scratch.is_dissociated());
                            prop_assert!(w.verify(&set.with(e).unwrap()));
                        }
                    }
                }
            }
        }
    }
}
