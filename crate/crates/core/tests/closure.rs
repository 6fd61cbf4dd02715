mod common;

use common::*;
use kspec::fixtures::{b2, c2, c3};
use kspec::free::alpha_map;
use kspec::spectrum::induced_map;
use kspec::{enumerate_homs, ClosureSystem, PointSet};

/// All nonempty finite unions of closed sets.
fn unions(system: &ClosureSystem) -> Vec<PointSet> {
    let closed = system.closed_sets();
    assert!(closed.len() < 20);
    let mut out: Vec<PointSet> = (1u64..(1 << closed.len()))
        .map(|m| {
            (0..closed.len())
                .filter(|i| m >> i & 1 == 1)
                .fold(PointSet::empty(system.ground_size()), |acc, i| acc.union(&closed[i]))
        })
        .collect();
    out.sort_by_key(|s| s.to_vec());
    out.dedup();
    out
}

fn sorted(sets: &[PointSet]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
    out.sort();
    out
}

#[test]
fn topologization_is_the_union_closure() {
    for (a, class) in contexts() {
        let z = spectrum_of(&a, &class).zariski().clone();
        let t = z.topologize().unwrap();
        assert_eq!(sorted(t.closed_sets()), sorted(&unions(&z)));
        assert!(z.closed_sets().iter().all(|c| t.is_closed(c)));
        assert!(t.is_topological());
        assert_eq!(sorted(t.topologize().unwrap().closed_sets()), sorted(t.closed_sets()));
        assert_eq!(z.is_topological(), z.closed_sets().len() == t.closed_sets().len());
    }
}

#[test]
fn induced_maps_stay_continuous_after_topologization() {
    let contexts = contexts();
    let mut checked = 0;
    for (a, ka) in &contexts {
        for (b, kb) in &contexts {
            if ka != kb || a.size() > 3 || b.size() > 3 {
                continue;
            }
            let (sa, sb) = (spectrum_of(a, ka), spectrum_of(b, kb));
            for f in enumerate_homs(a, b).unwrap() {
                let m = induced_map(&f, &sa, &sb).unwrap();
                assert!(m.is_morphism());
                assert!(m.topologize().unwrap().is_morphism());
                checked += 1;
            }
        }
    }
    assert!(checked > 50);
}

#[test]
fn irreducibility_criteria_agree_with_the_definition() {
    for (a, class) in contexts() {
        let z = spectrum_of(&a, &class).zariski().clone();
        let t = z.topologize().unwrap();
        for y in subsets(z.ground_size()) {
            let oracle = irreducible(&t, &y);
            assert_eq!(z.is_irreducible(&y), oracle);
            assert_eq!(z.is_irreducible_in_topology(&y).unwrap(), oracle);
            assert_eq!(irreducible(&z, &y), oracle);
            if !y.is_empty() {
                let (sub, _) = z.subsystem(&y).unwrap();
                assert_eq!(sub.is_irreducible(&sub.ground_set()), oracle);
            }
        }
    }
}

#[test]
fn components_are_the_maximal_irreducible_closed_sets() {
    for (a, class) in contexts() {
        let z = spectrum_of(&a, &class).zariski().clone();
        let irr: Vec<&PointSet> = z.closed_sets().iter().filter(|c| irreducible(&z, c)).collect();
        let maximal: Vec<PointSet> = irr
            .iter()
            .filter(|c| !irr.iter().any(|d| d != *c && c.is_subset(d)))
            .map(|c| (*c).clone())
            .collect();
        assert_eq!(sorted(&z.irreducible_components()), sorted(&maximal));
    }
}

#[test]
fn quasi_isomorphisms_transport_irreducibility_and_intersections() {
    for (a, n) in [(c2(), 1), (c2(), 2), (c3(), 1), (c3(), 2), (b2(), 1), (b2(), 2)] {
        let alpha = alpha_map(&a, n).unwrap();
        let f = &alpha.morphism;
        assert!(f.is_quasi_isomorphism());
        let closed = f.source.closed_sets();
        for c in closed {
            assert_eq!(irreducible(&f.source, c), irreducible(&f.target, &f.image(c)));
            for d in closed {
                assert_eq!(f.image(&c.intersection(d)), f.image(c).intersection(&f.image(d)));
            }
        }
    }
}
