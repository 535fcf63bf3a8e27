//! Hashable keys for the enumeration engines.
//!
//! Every engine is generic over [`Key`]. Two implementations exist: the exact
//! [`Element`] itself, and an `i128` produced by [`Packing`], a linear
//! mixed-radix map that is injective on a box large enough for every sum and
//! difference the engines ever compare. Both paths must give identical
//! verdicts; the packed one is just faster.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::model::{AdditiveSet, Element};

pub(crate) trait Key: Clone + Eq + Hash + Ord + Debug + Send + Sync {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Key for i128 {
    #[inline]
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    #[inline]
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    #[inline]
    fn neg(&self) -> Self {
        -self
    }
    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl Key for Element {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Element::is_zero(self)
    }
}

/// Keys above this many bits fall back to the exact path.
const MAX_PACKED_BITS: u64 = 120;

/// Mixed-radix encoding `x ↦ ∑ x_i · W_i` with radix `8·M_i + 1` per coordinate.
///
/// `M_i` bounds the `i`-th coordinate of every `{-1,0,1}`-combination of the
/// elements the packing was built for. The engines compare quantities with
/// coordinates up to `2·M_i`, so differences reach `4·M_i`, and a radix of
/// `8·M_i + 1` keeps balanced digits in `[-4·M_i, 4·M_i]` unique.
#[derive(Clone, Debug)]
pub(crate) struct Packing {
    bounds: Vec<BigInt>,
    weights: Vec<i128>,
    radices: Vec<i128>,
}

impl Packing {
    /// A packing covering all combinations of `elements`, if it fits.
    pub fn for_elements<'a>(
        rank: usize,
        elements: impl IntoIterator<Item = &'a Element>,
    ) -> Option<Self> {
        let mut bounds = vec![BigInt::zero(); rank];
        for e in elements {
            for (b, c) in bounds.iter_mut().zip(e.coords()) {
                *b += c.abs();
            }
        }
        Self::with_bounds(bounds)
    }

    /// Like [`Packing::for_elements`], but only combinations with at most
    /// `max_terms` nonzero coefficients need to be covered.
    pub fn for_small_subsets(set: &AdditiveSet, max_terms: usize) -> Option<Self> {
        let bounds = (0..set.rank())
            .map(|i| {
                let mut col: Vec<BigInt> = set.iter().map(|e| e.coords()[i].abs()).collect();
                col.sort_unstable_by(|a, b| b.cmp(a));
                col.into_iter().take(max_terms).sum()
            })
            .collect();
        Self::with_bounds(bounds)
    }

    fn with_bounds(bounds: Vec<BigInt>) -> Option<Self> {
        let mut total = BigInt::one();
        let mut weights = Vec::with_capacity(bounds.len());
        let mut radices = Vec::with_capacity(bounds.len());
        for b in &bounds {
            weights.push(total.to_i128()?);
            let radix: BigInt = b * 8 + 1;
            total *= &radix;
            if total.bits() > MAX_PACKED_BITS {
                return None;
            }
            radices.push(radix.to_i128()?);
        }
        Some(Packing {
            bounds,
            weights,
            radices,
        })
    }

    /// Encodes `e`, or `None` when `e` lies outside the covered box (and so
    /// cannot equal any combination of the covered elements).
    pub fn encode(&self, e: &Element) -> Option<i128> {
        let mut acc: i128 = 0;
        for ((c, b), w) in e.coords().iter().zip(&self.bounds).zip(&self.weights) {
            if c.abs() > *b {
                return None;
            }
            acc += c.to_i128()? * w;
        }
        Some(acc)
    }

    pub fn encode_all(&self, set: &[Element]) -> Vec<i128> {
        set.iter()
            .map(|e| self.encode(e).expect("packing built for these elements"))
            .collect()
    }

    /// Inverse of [`Packing::encode`] for values whose balanced digits lie in
    /// the covered box.
    pub fn decode(&self, mut v: i128) -> Element {
        let mut coords = Vec::with_capacity(self.radices.len());
        for &r in &self.radices {
            let half = r / 2;
            let mut d = v.mod_floor(&r);
            if d > half {
                d -= r;
            }
            coords.push(BigInt::from(d));
            v = (v - d) / r;
        }
        debug_assert_eq!(v, 0);
        Element::new(coords)
    }
}

pub(crate) type FastMap<K, V> = rustc_hash::FxHashMap<K, V>;
pub(crate) type FastSet<K> = rustc_hash::FxHashSet<K>;

/// Elements lowered to keys, packed when the box fits in an `i128`.
pub(crate) enum Keyed {
    Packed(Packing, Vec<i128>),
    Exact(Vec<Element>),
}

impl Keyed {
    /// Keys for `elements`, with the packing box also covering `extra`.
    pub fn new(rank: usize, elements: &[Element], extra: &[Element], allow_packed: bool) -> Self {
        if allow_packed {
            if let Some(p) = Packing::for_elements(rank, elements.iter().chain(extra)) {
                let keys = p.encode_all(elements);
                return Keyed::Packed(p, keys);
            }
        }
        Keyed::Exact(elements.to_vec())
    }
}
