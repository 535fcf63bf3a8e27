//! Solvers against a brute-force oracle written over plain `i64` tuples.

use addim_core::{
    covers, is_dissociated, is_maximal_dissociated, max_dissociated, min_maximal_dissociated,
    min_spanning_subset, AdditiveSet, Element, Maximality, SearchBudget,
};
use proptest::prelude::*;

type Pt = Vec<i64>;

fn combos(s: &[Pt], rank: usize) -> Vec<Pt> {
    let mut out = vec![vec![0; rank]];
    for x in s {
        let mut next = Vec::with_capacity(out.len() * 3);
        for v in &out {
            for c in [-1, 0, 1] {
                next.push(v.iter().zip(x).map(|(a, b)| a + c * b).collect());
            }
        }
        out = next;
    }
    out
}

fn dissociated(s: &[Pt], rank: usize) -> bool {
    // only the all-zero combination may vanish
    let zero = vec![0; rank];
    combos(s, rank).iter().filter(|v| **v == zero).count() == 1
}

fn spans(s: &[Pt], a: &[Pt], rank: usize) -> bool {
    let c = combos(s, rank);
    a.iter().all(|x| c.contains(x))
}

fn subsets(a: &[Pt]) -> impl Iterator<Item = Vec<Pt>> + '_ {
    (0u32..1 << a.len()).map(move |m| {
        (0..a.len())
            .filter(|i| m >> i & 1 == 1)
            .map(|i| a[i].clone())
            .collect()
    })
}

/// (d_s, d_d⁻, d_d) by enumerating every subset.
fn brute(a: &[Pt], rank: usize) -> (usize, usize, usize) {
    let mut ds = usize::MAX;
    let mut ddm = usize::MAX;
    let mut dd = 0;
    for s in subsets(a) {
        if spans(&s, a, rank) {
            ds = ds.min(s.len());
        }
        if dissociated(&s, rank) {
            dd = dd.max(s.len());
            let maximal = a.iter().filter(|x| !s.contains(x)).all(|x| {
                let mut t = s.clone();
                t.push(x.clone());
                !dissociated(&t, rank)
            });
            if maximal {
                ddm = ddm.min(s.len());
            }
        }
    }
    (ds, ddm, dd)
}

fn to_set(a: &[Pt], rank: usize) -> AdditiveSet {
    AdditiveSet::new(rank, a.iter().map(|p| Element::from_ints(p)).collect()).unwrap()
}

fn small_set() -> impl Strategy<Value = (usize, Vec<Pt>)> {
    (1usize..=2).prop_flat_map(|rank| {
        (
            Just(rank),
            prop::collection::btree_set(prop::collection::vec(-4i64..=4, rank), 0..=7)
                .prop_map(|s| s.into_iter().collect::<Vec<_>>()),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn solvers_match_brute_force((rank, pts) in small_set()) {
        let a = to_set(&pts, rank);
        let budget = SearchBudget::default();
        let (ds, ddm, dd) = brute(&pts, rank);

        let d = max_dissociated(&a, &budget).unwrap().exact().unwrap();
        prop_assert_eq!(d.value, dd);
        prop_assert!(is_dissociated(&d.witness).unwrap());
        prop_assert!(d.witness.is_subset_of(&a));

        let m = min_maximal_dissociated(&a, &budget).unwrap().exact().unwrap();
        prop_assert_eq!(m.value, ddm);
        prop_assert_eq!(is_maximal_dissociated(&m.witness, &a).unwrap(), Maximality::Maximal);

        let s = min_spanning_subset(&a, &budget).unwrap().exact().unwrap();
        prop_assert_eq!(s.value, ds);
        prop_assert!(s.certificate.verify(&a));
        prop_assert!(covers(&s.witness, &a).unwrap().is_covered());

        prop_assert!(ds <= ddm && ddm <= dd);
    }
}

#[test]
fn powers_of_two() {
    // dissociated, so d_d is the whole set
    let pts: Vec<Pt> = [1, 2, 4, 8].iter().map(|&x| vec![x]).collect();
    let (ds, ddm, dd) = brute(&pts, 1);
    let a = to_set(&pts, 1);
    let b = SearchBudget::default();
    assert_eq!(
        min_spanning_subset(&a, &b).unwrap().exact().unwrap().value,
        ds
    );
    assert_eq!(
        min_maximal_dissociated(&a, &b)
            .unwrap()
            .exact()
            .unwrap()
            .value,
        ddm
    );
    assert_eq!(max_dissociated(&a, &b).unwrap().exact().unwrap().value, dd);
    assert_eq!(dd, 4);
}
