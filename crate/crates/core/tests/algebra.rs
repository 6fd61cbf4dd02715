mod common;

use common::*;
use kspec::algebra::ProductLayout;
use kspec::fixtures::{b2, boolean_fixtures, boolean_signature, c2, c3, semilattice_signature, semilattices_up_to};
use kspec::{all_congruences, enumerate_homs, kernel, product, projection, quotient, FiniteAlgebra};
use proptest::prelude::*;

fn small_semilattices() -> Vec<FiniteAlgebra> {
    let mut out = semilattices_up_to(3);
    out.push(kspec::fixtures::left_zero_band());
    out
}

#[test]
fn hom_enumeration_matches_filtering_all_maps() {
    for family in [all_fixtures(), boolean_fixtures()] {
        for a in &family {
            for b in &family {
                if a.signature() != b.signature() || a.size() > 4 || b.size() > 4 {
                    continue;
                }
                let found: Vec<Vec<usize>> = enumerate_homs(a, b)
                    .unwrap()
                    .iter()
                    .map(|h| h.map().to_vec())
                    .collect();
                assert_eq!(found, homs(a, b));
            }
        }
    }
}

#[test]
fn composites_are_enumerated() {
    let algs = small_semilattices();
    for a in &algs {
        for b in &algs {
            for c in &algs {
                let ac: Vec<Vec<usize>> = enumerate_homs(a, c)
                    .unwrap()
                    .iter()
                    .map(|h| h.map().to_vec())
                    .collect();
                for f in enumerate_homs(a, b).unwrap() {
                    for g in enumerate_homs(b, c).unwrap() {
                        assert!(ac.contains(&f.then(&g).map().to_vec()));
                    }
                }
            }
        }
    }
}

#[test]
fn quotient_projection_has_the_right_kernel() {
    for a in all_fixtures() {
        for theta in all_congruences(&a).unwrap() {
            let q = quotient(&a, &theta).unwrap();
            let p = q.projection.map();
            assert!(is_hom(&a, &q.algebra, p));
            assert!(q.projection.is_surjective());
            for x in 0..a.size() {
                for y in 0..a.size() {
                    assert_eq!(p[x] == p[y], theta.related(x, y));
                }
            }
            assert_eq!(kernel(&q.projection), theta);
        }
    }
}

#[test]
fn projections_and_tuple_maps_are_homs() {
    let cases = [vec![c2(), c3()], vec![c2(), c2(), c2()], vec![b2(), b2()]];
    for factors in cases {
        let p = product(&factors).unwrap();
        for k in 0..factors.len() {
            assert!(is_hom(&p, &factors[k], projection(&factors, k).map()));
        }
    }
    // a -> b1 × b2 built from every pair of homs
    let layout = ProductLayout::new(vec![2, 3]);
    let target = product(&[c2(), c3()]).unwrap();
    for a in small_semilattices() {
        for f in homs(&a, &c2()) {
            for g in homs(&a, &c3()) {
                let map: Vec<usize> = (0..a.size()).map(|x| layout.encode(&[f[x], g[x]])).collect();
                assert!(is_hom(&a, &target, &map));
            }
        }
    }
}

fn assert_eval_commutes(algs: &[FiniteAlgebra], vars: &[&str], depth: usize) {
    let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
    let terms = terms(algs[0].signature(), vars, depth);
    for a in algs {
        for b in algs {
            let hs = homs(a, b);
            if hs.is_empty() {
                continue;
            }
            for t in &terms {
                let ta = t.compile(a.signature(), &names).unwrap();
                for args in tuples(a.size(), vars.len()) {
                    let value = ta.eval(a, &args);
                    for h in &hs {
                        let image: Vec<usize> = args.iter().map(|&x| h[x]).collect();
                        assert_eq!(h[value], ta.eval(b, &image), "{t} under {h:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn evaluation_commutes_with_homs_semilattice() {
    let algs = small_semilattices();
    assert_eq!(terms(&semilattice_signature(), &["x", "y"], 3).len(), 1446);
    assert_eval_commutes(&algs, &["x", "y"], 3);
}

#[test]
fn evaluation_commutes_with_homs_boolean() {
    // depth 3 in one variable has millions of terms; depth 2 is exhaustive
    // here and the proptest below samples deeper terms
    assert_eval_commutes(&boolean_fixtures(), &["x"], 2);
}

fn boolean_term(depth: u32) -> impl Strategy<Value = kspec::Term> {
    let leaf = prop_oneof![
        Just(kspec::Term::var("x")),
        Just(kspec::Term::var("y")),
        Just(kspec::Term::constant("zero")),
        Just(kspec::Term::constant("one")),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| kspec::Term::op("join", vec![a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| kspec::Term::op("meet", vec![a, b])),
            inner.prop_map(|a| kspec::Term::op("neg", vec![a])),
        ]
    })
}

proptest! {
    #[test]
    fn deep_boolean_terms_commute(t in boolean_term(3)) {
        let names = vec!["x".to_string(), "y".to_string()];
        let algs = boolean_fixtures();
        for a in &algs {
            for b in &algs {
                for h in homs(a, b) {
                    let ta = t.compile(&boolean_signature(), &names).unwrap();
                    for args in tuples(a.size(), 2) {
                        let image: Vec<usize> = args.iter().map(|&x| h[x]).collect();
                        prop_assert_eq!(h[ta.eval(a, &args)], ta.eval(b, &image));
                    }
                }
            }
        }
    }
}
