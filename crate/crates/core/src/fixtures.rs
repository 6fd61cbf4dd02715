//! Standard small algebras and exhaustive catalogues used by the checks.

use crate::algebra::{for_each_tuple, product, trivial_algebra, FiniteAlgebra, Signature};

/// One binary symbol `meet`.
pub fn semilattice_signature() -> Signature {
    Signature::new([("meet", 2)]).expect("static signature")
}

/// `join`, `meet`, `neg`, `zero`, `one`.
pub fn boolean_signature() -> Signature {
    Signature::new([("join", 2), ("meet", 2), ("neg", 1), ("zero", 0), ("one", 0)])
        .expect("static signature")
}

/// The `n`-element chain `0 < 1 < ... < n-1` as a meet-semilattice.
pub fn chain(n: usize) -> FiniteAlgebra {
    FiniteAlgebra::from_fn(semilattice_signature(), n, |_, args| args[0].min(args[1]))
        .expect("chain is valid")
}

pub fn c2() -> FiniteAlgebra {
    chain(2)
}

pub fn c3() -> FiniteAlgebra {
    chain(3)
}

/// The two-element Boolean algebra.
pub fn b2() -> FiniteAlgebra {
    FiniteAlgebra::from_fn(boolean_signature(), 2, |op, args| match op {
        0 => args[0].max(args[1]),
        1 => args[0].min(args[1]),
        2 => 1 - args[0],
        3 => 0,
        _ => 1,
    })
    .expect("B2 is valid")
}

pub fn boolean_power(k: usize) -> FiniteAlgebra {
    if k == 0 {
        return trivial_algebra(&boolean_signature());
    }
    product(&vec![b2(); k]).expect("small power")
}

/// Two elements with `x ∧ y = x`; not a semilattice.
pub fn left_zero_band() -> FiniteAlgebra {
    FiniteAlgebra::from_fn(semilattice_signature(), 2, |_, args| args[0]).expect("valid")
}

fn is_semilattice(n: usize, table: &[usize]) -> bool {
    let m = |a: usize, b: usize| table[a * n + b];
    (0..n).all(|a| m(a, a) == a)
        && (0..n).all(|a| (0..n).all(|b| m(a, b) == m(b, a)))
        && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m(m(a, b), c) == m(a, m(b, c)))))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_tuple(n, n, |p| {
        let mut seen = vec![false; n];
        if p.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
            out.push(p.to_vec());
        }
    });
    out
}

/// Smallest table (lexicographically) among all relabelings.
fn canonical_table(n: usize, table: &[usize], perms: &[Vec<usize>]) -> Vec<usize> {
    perms
        .iter()
        .map(|p| {
            let mut t = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[p[a] * n + p[b]] = p[table[a * n + b]];
                }
            }
            t
        })
        .min()
        .expect("at least one permutation")
}

/// Every semilattice of size `n` up to isomorphism, as meet tables, in a fixed order.
pub fn semilattices_of_size(n: usize) -> Vec<FiniteAlgebra> {
    if n == 0 {
        return vec![];
    }
    let perms = permutations(n);
    // every finite semilattice has a least element; label it 0
    let upper: Vec<(usize, usize)> = (1..n)
        .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
        .collect();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for_each_tuple(n, upper.len(), |vals| {
        let mut table = vec![0; n * n];
        for a in 0..n {
            table[a * n + a] = a;
        }
        for (&(a, b), &v) in upper.iter().zip(vals) {
            table[a * n + b] = v;
            table[b * n + a] = v;
        }
        if is_semilattice(n, &table) {
            let canon = canonical_table(n, &table, &perms);
            if !found.contains(&canon) {
                found.push(canon);
            }
        }
    });
    found.sort();
    found
        .into_iter()
        .map(|t| FiniteAlgebra::new(semilattice_signature(), n, vec![t]).expect("valid table"))
        .collect()
}

/// Every semilattice with at most `max` elements up to isomorphism.
pub fn semilattices_up_to(max: usize) -> Vec<FiniteAlgebra> {
    (1..=max).flat_map(semilattices_of_size).collect()
}

/// Boolean algebras with at most four elements: trivial, `B2`, `B2²`.
pub fn boolean_fixtures() -> Vec<FiniteAlgebra> {
    vec![boolean_power(0), boolean_power(1), boolean_power(2)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semilattice_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| semilattices_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15]);
    }

    #[test]
    fn chains_are_semilattices() {
        for n in 1..5 {
            assert!(is_semilattice(n, chain(n).table(0)));
        }
        assert!(!is_semilattice(2, left_zero_band().table(0)));
    }
}
