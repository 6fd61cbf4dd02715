mod common;

use common::*;
use kspec::congruence::{
    all_congruences_exhaustive, join, meet, quotient_congruence, unquotient,
};
use kspec::fixtures::{boolean_power, c3};
use kspec::{all_congruences, congruence_closure, quotient, Congruence, FiniteAlgebra};
use proptest::prelude::*;
use std::sync::OnceLock;

fn unequal_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect()
}

/// The least congruence containing `pairs`, as the intersection of all
/// congruences that contain them.
fn generated(a: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Congruence {
    let all = congruences(a);
    let above: Vec<&Congruence> = all
        .iter()
        .filter(|c| pairs.iter().all(|&(x, y)| c.related(x, y)))
        .collect();
    intersect(a.size(), &above)
}

#[test]
fn closure_is_a_closure_operator() {
    for a in [c3(), c2_squared()] {
        let pairs = unequal_pairs(a.size());
        let sets: Vec<Vec<(usize, usize)>> = (0u32..(1 << pairs.len()))
            .map(|m| (0..pairs.len()).filter(|i| m >> i & 1 == 1).map(|i| pairs[i]).collect())
            .collect();
        let closed: Vec<Congruence> =
            sets.iter().map(|s| congruence_closure(&a, s).unwrap()).collect();
        for (s, c) in sets.iter().zip(&closed) {
            assert_eq!(*c, generated(&a, s));
            assert!(s.iter().all(|&(x, y)| c.related(x, y)));
            let again: Vec<(usize, usize)> = c.pairs().collect();
            assert_eq!(congruence_closure(&a, &again).unwrap(), *c);
        }
        for (s, cs) in sets.iter().zip(&closed) {
            for (t, ct) in sets.iter().zip(&closed) {
                if s.iter().all(|p| t.contains(p)) {
                    assert!(below(cs, ct));
                }
            }
        }
    }
}

#[test]
fn both_enumerations_agree_with_partition_filtering() {
    for a in all_fixtures() {
        let oracle = congruences(&a);
        assert_eq!(all_congruences(&a).unwrap(), oracle);
        assert_eq!(all_congruences_exhaustive(&a).unwrap(), oracle);
    }
}

#[test]
fn correspondence_through_quotients() {
    for a in all_fixtures() {
        let all = all_congruences(&a).unwrap();
        for psi in &all {
            let q = quotient(&a, psi).unwrap();
            let upstairs: Vec<&Congruence> = all.iter().filter(|t| below(psi, t)).collect();
            let mut images = Vec::new();
            for theta in &upstairs {
                let down = quotient_congruence(theta, psi).unwrap();
                assert!(down.is_compatible(&q.algebra));
                assert_eq!(unquotient(&down, psi).unwrap(), **theta);
                images.push(down);
            }
            images.sort();
            // the correspondence is onto Con(A/ψ)
            assert_eq!(images, congruences(&q.algebra));
            for theta in all.iter().filter(|t| !below(psi, t)) {
                assert!(quotient_congruence(theta, psi).is_err());
            }
        }
    }
}

#[test]
fn meet_and_join_are_lattice_operations() {
    for a in all_fixtures() {
        let all = all_congruences(&a).unwrap();
        for x in &all {
            for y in &all {
                let m = meet(a.size(), &[x.clone(), y.clone()]).unwrap();
                assert_eq!(m, intersect(a.size(), &[x, y]));
                let j = join(&a, &[x.clone(), y.clone()]).unwrap();
                let least = all.iter().filter(|c| below(x, c) && below(y, c));
                assert_eq!(j, intersect(a.size(), &least.collect::<Vec<_>>()));
            }
        }
        assert!(meet(a.size(), &[]).unwrap().is_nabla());
    }
}

fn b2_cubed_congruences() -> &'static [Congruence] {
    static ALL: OnceLock<Vec<Congruence>> = OnceLock::new();
    ALL.get_or_init(|| congruences(&boolean_power(3)))
}

proptest! {
    #[test]
    fn generated_congruence_on_b2_cubed(pairs in prop::collection::vec((0usize..8, 0usize..8), 0..4)) {
        let a = boolean_power(3);
        let c = congruence_closure(&a, &pairs).unwrap();
        prop_assert!(c.is_compatible(&a));
        let above: Vec<&Congruence> = b2_cubed_congruences()
            .iter()
            .filter(|t| pairs.iter().all(|&(x, y)| t.related(x, y)))
            .collect();
        prop_assert_eq!(c, intersect(8, &above));
    }
}
