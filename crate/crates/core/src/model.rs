//! Points of `Z^r`, finite additive sets, and `{-1, 0, 1}` coefficient vectors.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A point of `Z^r` with arbitrary-precision coordinates.
///
/// The derived ordering is lexicographic on the coordinate sequence; it is the
/// canonical order used for iteration and tie-breaking everywhere.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Vec<BigInt>);

impl Element {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Element(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Element(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// A rank-1 element.
    pub fn scalar(value: impl Into<BigInt>) -> Self {
        Element(vec![value.into()])
    }

    pub fn zero(rank: usize) -> Self {
        Element(vec![BigInt::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, factor: &BigInt) -> Element {
        Element(self.0.iter().map(|c| c * factor).collect())
    }

    /// Largest absolute coordinate (zero for rank 0).
    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    fn check_rank(&self, other: &Element) {
        assert_eq!(
            self.rank(),
            other.rank(),
            "element arithmetic across different ranks"
        );
    }
}

impl Add for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        self.check_rank(rhs);
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        self.check_rank(rhs);
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        Element(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite, duplicate-free set of elements sharing one ambient rank.
///
/// Elements keep their insertion order; use [`AdditiveSet::canonical`] for the
/// lexicographically sorted form. Equality is order-insensitive.
#[derive(Clone)]
pub struct AdditiveSet {
    rank: usize,
    elements: Vec<Element>,
}

impl AdditiveSet {
    /// Builds a set, rejecting rank mismatches and duplicates.
    pub fn new(rank: usize, elements: Vec<Element>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Contract("rank must be positive".into()));
        }
        let mut seen = HashSet::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if e.rank() != rank {
                return Err(Error::Contract(format!(
                    "element {i} has rank {} but the set has rank {rank}",
                    e.rank()
                )));
            }
            if !seen.insert(e) {
                return Err(Error::Contract(format!("duplicate element {e:?}")));
            }
        }
        Ok(AdditiveSet { rank, elements })
    }

    /// Builds a set from elements already known to be distinct and of rank `rank`.
    pub(crate) fn from_distinct(rank: usize, elements: Vec<Element>) -> Self {
        debug_assert!(AdditiveSet::new(rank, elements.clone()).is_ok());
        AdditiveSet { rank, elements }
    }

    /// Builds a set, silently dropping repeated elements (first occurrence wins).
    pub fn dedup(rank: usize, elements: impl IntoIterator<Item = Element>) -> Result<Self> {
        let mut seen = HashSet::new();
        let kept: Vec<Element> = elements
            .into_iter()
            .filter(|e| seen.insert(e.clone()))
            .collect();
        AdditiveSet::new(rank, kept)
    }

    pub fn empty(rank: usize) -> Self {
        AdditiveSet {
            rank: rank.max(1),
            elements: Vec::new(),
        }
    }

    /// Convenience constructor from small integer rows; panics on bad input.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let rank = rows.first().map_or(1, |r| r.len());
        AdditiveSet::new(rank, rows.iter().map(|r| Element::from_ints(r)).collect())
            .expect("valid rows")
    }

    /// Rank-1 set from integers; panics on duplicates.
    pub fn from_scalars(values: &[i64]) -> Self {
        AdditiveSet::new(1, values.iter().map(|&v| Element::scalar(v)).collect())
            .expect("distinct scalars")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.elements.iter()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.elements.contains(e)
    }

    pub fn position(&self, e: &Element) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    /// The same set with elements in canonical (lexicographic) order.
    pub fn canonical(&self) -> AdditiveSet {
        let mut elements = self.elements.clone();
        elements.sort();
        AdditiveSet {
            rank: self.rank,
            elements,
        }
    }

    pub fn is_subset_of(&self, other: &AdditiveSet) -> bool {
        let theirs: HashSet<&Element> = other.elements.iter().collect();
        self.elements.iter().all(|e| theirs.contains(e))
    }

    /// Elements of `self` not in `other`, in `self`'s order.
    pub fn difference(&self, other: &AdditiveSet) -> Vec<Element> {
        let theirs: HashSet<&Element> = other.elements.iter().collect();
        self.elements
            .iter()
            .filter(|e| !theirs.contains(e))
            .cloned()
            .collect()
    }

    /// The subset selected by `indices` (in the given order).
    pub fn select(&self, indices: &[usize]) -> AdditiveSet {
        AdditiveSet::from_distinct(
            self.rank,
            indices.iter().map(|&i| self.elements[i].clone()).collect(),
        )
    }

    pub fn with(&self, e: Element) -> Result<AdditiveSet> {
        let mut elements = self.elements.clone();
        elements.push(e);
        AdditiveSet::new(self.rank, elements)
    }

    pub fn without(&self, e: &Element) -> AdditiveSet {
        AdditiveSet::from_distinct(
            self.rank,
            self.elements.iter().filter(|x| *x != e).cloned().collect(),
        )
    }

    /// Applies `f` to every element; fails if the image has duplicates.
    pub fn map(&self, rank: usize, f: impl Fn(&Element) -> Element) -> Result<AdditiveSet> {
        AdditiveSet::new(rank, self.elements.iter().map(f).collect())
    }

    /// Largest absolute coordinate over all elements.
    pub fn max_abs(&self) -> BigInt {
        self.elements
            .iter()
            .map(Element::max_abs)
            .max()
            .unwrap_or_default()
    }
}

impl PartialEq for AdditiveSet {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.len() == other.len() && self.is_subset_of(other)
    }
}

impl Eq for AdditiveSet {}

impl fmt::Debug for AdditiveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a AdditiveSet {
    type Item = &'a Element;
    type IntoIter = std::slice::Iter<'a, Element>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

/// `A ∪ (−A) ∪ {0}`, in canonical order.
pub fn negate_closure(set: &AdditiveSet) -> AdditiveSet {
    let mut all: Vec<Element> = Vec::with_capacity(2 * set.len() + 1);
    all.push(Element::zero(set.rank()));
    for e in set {
        all.push(e.clone());
        all.push(-e);
    }
    all.sort();
    all.dedup();
    AdditiveSet::from_distinct(set.rank(), all)
}

/// A `{-1, 0, 1}` coefficient per element of a designated set, positionally
/// aligned with that set's stored order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(coeffs: Vec<i8>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| !(-1..=1).contains(*c)) {
            return Err(Error::Contract(format!(
                "coefficient {c} outside {{-1,0,1}}"
            )));
        }
        Ok(SignVector(coeffs))
    }

    pub fn zeros(len: usize) -> Self {
        SignVector(vec![0; len])
    }

    pub fn coeffs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Flips the sign so the first nonzero coefficient is `+1`.
    pub(crate) fn normalized(mut self) -> Self {
        if let Some(&first) = self.0.iter().find(|&&c| c != 0) {
            if first < 0 {
                self.0.iter_mut().for_each(|c| *c = -*c);
            }
        }
        self
    }

    /// Coefficient-wise sum; `None` if some entry leaves `{-1, 0, 1}`.
    pub fn checked_add(&self, other: &SignVector) -> Option<SignVector> {
        if self.len() != other.len() {
            return None;
        }
        let out: Vec<i8> = self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect();
        SignVector::new(out).ok()
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `∑ ε_a · a` over `over` in its stored order.
pub fn evaluate(sv: &SignVector, over: &AdditiveSet) -> Result<Element> {
    if sv.len() != over.len() {
        return Err(Error::Contract(format!(
            "sign vector has {} coefficients but the set has {} elements",
            sv.len(),
            over.len()
        )));
    }
    let mut acc = Element::zero(over.rank());
    for (&c, e) in sv.coeffs().iter().zip(over) {
        acc = match c {
            1 => &acc + e,
            -1 => &acc - e,
            _ => acc,
        };
    }
    Ok(acc)
}

/// A nonzero `{-1, 0, 1}`-combination of a set that evaluates to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonDissociationWitness {
    pub signs: SignVector,
}

impl NonDissociationWitness {
    /// True iff the witness is nonzero and vanishes on `set`.
    pub fn verify(&self, set: &AdditiveSet) -> bool {
        !self.signs.is_zero()
            && evaluate(&self.signs, set)
                .map(|e| e.is_zero())
                .unwrap_or(false)
    }
}

/// One `{-1, 0, 1}`-combination of the spanner per target element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningCertificate {
    pub spanner: AdditiveSet,
    pub combinations: Vec<(Element, SignVector)>,
}

impl SpanningCertificate {
    /// Checks every combination and that every element of `targets` is listed.
    pub fn verify(&self, targets: &AdditiveSet) -> bool {
        let listed: HashSet<&Element> = self.combinations.iter().map(|(e, _)| e).collect();
        targets.iter().all(|t| listed.contains(t))
            && self
                .combinations
                .iter()
                .all(|(e, sv)| evaluate(sv, &self.spanner).is_ok_and(|v| &v == e))
    }
}
