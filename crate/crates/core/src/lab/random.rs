//! Seeded random additive sets for the property batches.
//!
//! Instance `i` of a batch with master seed `s` draws from its own
//! `ChaCha8` stream, so batches can run in any order or in parallel.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constructions::restart_seed;
use crate::model::{AdditiveSet, Element};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSetSpec {
    pub min_size: usize,
    pub max_size: usize,
    pub max_rank: usize,
    /// Coordinates are drawn from `[-coord_bound, coord_bound]`.
    pub coord_bound: i64,
}

impl RandomSetSpec {
    /// `1 ≤ |A| ≤ 8`, rank 1 or 2, coordinates in `[-3, 3]`.
    pub const SMALL: RandomSetSpec = RandomSetSpec {
        min_size: 1,
        max_size: 8,
        max_rank: 2,
        coord_bound: 3,
    };
}

pub fn instance_rng(seed: u64, instance: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(restart_seed(seed, instance))
}

/// Draws a set; duplicates are dropped, so the size may fall below the draw.
pub fn random_set(rng: &mut impl Rng, spec: &RandomSetSpec) -> AdditiveSet {
    let rank = rng.random_range(1..=spec.max_rank);
    let size = rng.random_range(spec.min_size..=spec.max_size);
    let b = spec.coord_bound;
    let elements = (0..size).map(|_| {
        let coords: Vec<i64> = (0..rank).map(|_| rng.random_range(-b..=b)).collect();
        Element::from_ints(&coords)
    });
    AdditiveSet::dedup(rank, elements).expect("uniform rank")
}

pub fn random_instance(seed: u64, instance: usize, spec: &RandomSetSpec) -> AdditiveSet {
    random_set(&mut instance_rng(seed, instance), spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_within_spec() {
        for i in 0..50 {
            let a = random_instance(7, i, &RandomSetSpec::SMALL);
            let b = random_instance(7, i, &RandomSetSpec::SMALL);
            assert_eq!(a.elements(), b.elements());
            assert!(!a.is_empty() && a.len() <= 8);
            assert!(a.rank() <= 2);
            assert!(a
                .iter()
                .flat_map(|e| e.coords())
                .all(|c| c.magnitude() <= &3u32.into()));
        }
        assert_ne!(
            random_instance(7, 0, &RandomSetSpec::SMALL).elements(),
            random_instance(8, 0, &RandomSetSpec::SMALL).elements()
        );
    }
}
