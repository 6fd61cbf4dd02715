//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the search routines under test; everything is plain enumeration.
#![allow(dead_code)]

use kspec::fixtures::{boolean_fixtures, c2, left_zero_band, semilattices_up_to};
use kspec::{product, ClosureSystem, Congruence, FiniteAlgebra, PointSet, Term};

/// Every tuple in `0..base` of length `len`, lexicographic.
pub fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn is_hom(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[usize]) -> bool {
    a.signature().symbols().iter().enumerate().all(|(op, sym)| {
        tuples(a.size(), sym.arity).iter().all(|args| {
            let image: Vec<usize> = args.iter().map(|&x| map[x]).collect();
            map[a.apply(op, args)] == b.apply(op, &image)
        })
    })
}

/// All homomorphisms by filtering every map, in lexicographic order.
pub fn homs(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Vec<Vec<usize>> {
    tuples(b.size(), a.size())
        .into_iter()
        .filter(|m| is_hom(a, b, m))
        .collect()
}

pub fn embeds(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    homs(a, b).iter().any(|m| {
        let mut seen = m.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == m.len()
    })
}

/// Restricted growth strings: every partition of `0..n` exactly once.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let top = if cur.is_empty() { 0 } else { max + 1 };
        for b in 0..=top {
            cur.push(b);
            go(n, cur, max.max(b), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), 0, &mut out);
    out
}

pub fn compatible(a: &FiniteAlgebra, blocks: &[usize]) -> bool {
    a.signature().symbols().iter().enumerate().all(|(op, sym)| {
        tuples(a.size(), sym.arity).iter().all(|x| {
            tuples(a.size(), sym.arity).iter().all(|y| {
                !x.iter().zip(y).all(|(&u, &v)| blocks[u] == blocks[v])
                    || blocks[a.apply(op, x)] == blocks[a.apply(op, y)]
            })
        })
    })
}

/// Congruences as sets of related pairs.
pub fn congruences(a: &FiniteAlgebra) -> Vec<Congruence> {
    let mut out: Vec<Congruence> = partitions(a.size())
        .into_iter()
        .filter(|p| compatible(a, p))
        .map(|p| Congruence::from_keys(&p))
        .collect();
    out.sort();
    out
}

/// `θ ⊆ ψ` straight from the pair sets.
pub fn below(theta: &Congruence, psi: &Congruence) -> bool {
    let n = theta.size();
    (0..n).all(|a| (0..n).all(|b| !theta.related(a, b) || psi.related(a, b)))
}

/// Intersection of pair sets; `∇` when empty.
pub fn intersect(n: usize, cs: &[&Congruence]) -> Congruence {
    let keys: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| cs.iter().all(|c| c.related(a, b)))
                .collect()
        })
        .collect();
    Congruence::from_keys(&keys)
}

/// Every subset of `0..n`.
pub fn subsets(n: usize) -> Vec<PointSet> {
    (0u64..(1 << n))
        .map(|m| PointSet::from_indices(n, (0..n).filter(|i| m >> i & 1 == 1)))
        .collect()
}

/// Irreducibility straight from the definition: nonempty, and no finite
/// family of closed sets, each missing part of `y`, covers it.
pub fn irreducible(system: &ClosureSystem, y: &PointSet) -> bool {
    if y.is_empty() {
        return false;
    }
    let missing: Vec<&PointSet> = system
        .closed_sets()
        .iter()
        .filter(|c| !y.is_subset(c))
        .collect();
    assert!(missing.len() < 20, "oracle would be too slow");
    (1u64..(1 << missing.len())).all(|m| {
        let union = (0..missing.len())
            .filter(|i| m >> i & 1 == 1)
            .fold(PointSet::empty(y.universe()), |acc, i| acc.union(missing[i]));
        !y.is_subset(&union)
    })
}

/// Every term over `symbols` and `vars` of depth at most `depth`.
pub fn terms(sig: &kspec::Signature, vars: &[&str], depth: usize) -> Vec<Term> {
    let mut level: Vec<Term> = vars.iter().map(|v| Term::var(*v)).collect();
    for s in sig.symbols().iter().filter(|s| s.arity == 0) {
        level.push(Term::constant(s.name.clone()));
    }
    for _ in 0..depth {
        let mut next: Vec<Term> = level.iter().filter(|t| t.depth() == 0).cloned().collect();
        for s in sig.symbols().iter().filter(|s| s.arity > 0) {
            for args in tuples(level.len(), s.arity) {
                next.push(Term::op(
                    s.name.clone(),
                    args.iter().map(|&i| level[i].clone()).collect(),
                ));
            }
        }
        level = next;
    }
    level
}

pub fn c2_squared() -> FiniteAlgebra {
    product(&[c2(), c2()]).unwrap()
}

/// Semilattices up to four elements (up to isomorphism), `C2²` as an
/// explicit product, and a non-semilattice of the same signature.
pub fn semilattice_fixtures() -> Vec<FiniteAlgebra> {
    let mut out = semilattices_up_to(4);
    out.push(c2_squared());
    out.push(left_zero_band());
    out
}

pub fn all_fixtures() -> Vec<FiniteAlgebra> {
    let mut out = semilattice_fixtures();
    out.extend(boolean_fixtures());
    out
}

/// `(A, K)` pairs covering every fixture with each class of its signature.
pub fn contexts() -> Vec<(FiniteAlgebra, Vec<FiniteAlgebra>)> {
    use kspec::fixtures::{b2, c3};
    let mut out = Vec::new();
    for a in semilattice_fixtures() {
        out.push((a.clone(), vec![c2()]));
        out.push((a, vec![c2(), c3()]));
    }
    for a in boolean_fixtures() {
        out.push((a, vec![b2()]));
    }
    out
}

pub fn spectrum_of(a: &FiniteAlgebra, class: &[FiniteAlgebra]) -> kspec::Spectrum {
    kspec::spec(&kspec::SpectrumContext::new(a.clone(), class.to_vec()).unwrap()).unwrap()
}

/// Points as kernels of every homomorphism into a class member.
pub fn points(a: &FiniteAlgebra, class: &[FiniteAlgebra]) -> Vec<Congruence> {
    let mut out: Vec<Congruence> = class
        .iter()
        .flat_map(|b| homs(a, b))
        .map(|h| Congruence::from_keys(&h))
        .collect();
    out.sort();
    out.dedup();
    out
}
