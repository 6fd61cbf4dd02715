//! Separation by homomorphisms into a class, distinguished opens, prime
//! congruences, and membership in the quasivariety generated by a class.
//!
//! On a finite algebra the family of all unequal pairs is itself finite, so
//! joint separation of every finite family, discrimination and embeddability
//! into a member of the class coincide.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{
    enumerate_homs, find_embedding, subalgebra_generated, FiniteAlgebra, Homomorphism,
};
use crate::bitset::PointSet;
use crate::congruence::{meet, unquotient, Congruence};
use crate::error::{saturating_pow, Error, Limits, Result};
use crate::free::{free_algebra, DisjunctiveSystem, ModelSpace};
use crate::spectrum::{spec, Spectrum, SpectrumContext};

/// `h(a) ≠ h(b)` for every pair.
pub fn separates(h: &Homomorphism, pairs: &[(usize, usize)]) -> bool {
    pairs.iter().all(|&(a, b)| h.apply(a) != h.apply(b))
}

/// A homomorphism into a class member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub member: usize,
    pub map: Homomorphism,
}

fn context(a: &FiniteAlgebra, class: &[FiniteAlgebra]) -> Result<SpectrumContext> {
    SpectrumContext::new(a.clone(), class.to_vec())
}

fn unequal_pairs(size: usize) -> Vec<(usize, usize)> {
    (0..size)
        .flat_map(|a| ((a + 1)..size).map(move |b| (a, b)))
        .collect()
}

/// The first homomorphism (class order, then map order) separating every pair of `family`.
/// The empty family still needs some homomorphism to exist.
pub fn is_n_separated(
    a: &FiniteAlgebra,
    class: &[FiniteAlgebra],
    family: &[(usize, usize)],
) -> Result<Option<Witness>> {
    context(a, class)?;
    for (member, b) in class.iter().enumerate() {
        if let Some(map) = enumerate_homs(a, b)?
            .into_iter()
            .find(|h| separates(h, family))
        {
            return Ok(Some(Witness { member, map }));
        }
    }
    Ok(None)
}

/// Every pair of distinct elements is separated by some homomorphism.
pub fn is_separated(a: &FiniteAlgebra, class: &[FiniteAlgebra]) -> Result<bool> {
    Ok(separation_report(a, class)?.separated)
}

/// One homomorphism separates all unequal pairs at once.
pub fn is_in_sep_omega(a: &FiniteAlgebra, class: &[FiniteAlgebra]) -> Result<bool> {
    Ok(is_n_separated(a, class, &unequal_pairs(a.size()))?.is_some())
}

/// Some homomorphism is injective on the whole universe.
pub fn is_discriminated(a: &FiniteAlgebra, class: &[FiniteAlgebra]) -> Result<bool> {
    context(a, class)?;
    for b in class {
        if find_embedding(a, b)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub pair: (usize, usize),
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub algebra_size: usize,
    pub class_sizes: Vec<usize>,
    pub pairs: Vec<PairWitness>,
    pub separated: bool,
    /// A single homomorphism separating all unequal pairs.
    pub all_pairs_witness: Option<Witness>,
    pub discriminated: bool,
}

impl SeparationReport {
    /// Every recorded witness separates what it claims to.
    pub fn verify(&self, a: &FiniteAlgebra, class: &[FiniteAlgebra]) -> bool {
        let ok = |w: &Witness, family: &[(usize, usize)]| {
            w.member < class.len()
                && a.is_homomorphism(&class[w.member], w.map.map())
                && separates(&w.map, family)
        };
        self.pairs
            .iter()
            .all(|p| p.witness.as_ref().is_none_or(|w| ok(w, &[p.pair])))
            && self
                .all_pairs_witness
                .as_ref()
                .is_none_or(|w| ok(w, &unequal_pairs(a.size())))
    }
}

pub fn separation_report(a: &FiniteAlgebra, class: &[FiniteAlgebra]) -> Result<SeparationReport> {
    let pairs = unequal_pairs(a.size())
        .into_iter()
        .map(|pair| {
            Ok(PairWitness {
                pair,
                witness: is_n_separated(a, class, &[pair])?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SeparationReport {
        algebra_size: a.size(),
        class_sizes: class.iter().map(FiniteAlgebra::size).collect(),
        separated: pairs.iter().all(|p| p.witness.is_some()),
        pairs,
        all_pairs_witness: is_n_separated(a, class, &unequal_pairs(a.size()))?,
        discriminated: is_discriminated(a, class)?,
    })
}

/// Points not containing `(a, b)`.
pub fn distinguished_open(s: &Spectrum, a: usize, b: usize) -> Result<PointSet> {
    Ok(s.v_closed(&[(a, b)])?.complement())
}

/// Four independently computed conditions that coincide on finite algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IrreducibilityReport {
    pub irreducible: bool,
    pub reduced: bool,
    pub irreducible_and_reduced: bool,
    /// One homomorphism separates the family of all unequal pairs.
    pub jointly_separated: bool,
    pub discriminated: bool,
    pub embeddable: bool,
    pub agree: bool,
}

pub fn check_irreducible_reduced_equiv(
    a: &FiniteAlgebra,
    class: &[FiniteAlgebra],
) -> Result<IrreducibilityReport> {
    let s = spec(&context(a, class)?)?;
    let irreducible = s.zariski().is_irreducible(&s.all_points());
    let reduced = s.is_reduced();
    let jointly_separated = is_in_sep_omega(a, class)?;
    let discriminated = is_discriminated(a, class)?;
    let embeddable = s.point_index(&Congruence::delta(a.size())).is_some();
    let first = irreducible && reduced;
    Ok(IrreducibilityReport {
        irreducible,
        reduced,
        irreducible_and_reduced: first,
        jointly_separated,
        discriminated,
        embeddable,
        agree: first == jointly_separated && first == discriminated && first == embeddable,
    })
}

/// A point whose quotient has an irreducible, reduced spectrum.
pub fn is_prime(s: &Spectrum, theta: &Congruence) -> Result<bool> {
    let index = s.point_index(theta).ok_or(Error::NotAPoint)?;
    let q = s.closed_subset_as_spectrum(&PointSet::singleton(s.len(), index))?;
    let qs = &q.spectrum;
    Ok(qs.zariski().is_irreducible(&qs.all_points()) && qs.is_reduced())
}

/// `ψ` of each irreducible component of `V(θ)`, computed in `Spec(A/θ)` and
/// pulled back, in canonical order.
pub fn prime_decomposition(s: &Spectrum, theta: &Congruence) -> Result<Vec<Congruence>> {
    if !s.is_radical_congruence(theta)? {
        return Err(Error::NotRadical);
    }
    let closed = s.v_of(theta)?;
    let q = s.closed_subset_as_spectrum(&closed)?;
    let mut out = q
        .spectrum
        .zariski()
        .irreducible_components()
        .iter()
        .map(|c| unquotient(&q.spectrum.psi(c)?, &q.psi))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Bounds for the quasi-identity cross-check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QiBounds {
    pub max_vars: usize,
    pub max_premises: usize,
    /// Cap on premise-set and conclusion combinations examined.
    pub max_checks: u128,
}

impl Default for QiBounds {
    fn default() -> Self {
        QiBounds {
            max_vars: 3,
            max_premises: 3,
            max_checks: 1_000_000,
        }
    }
}

/// Quasi-identities examined over one variable count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QiLevel {
    pub vars: usize,
    /// Largest premise count that fit in the budget; absent when even
    /// identities did not fit or there are no terms.
    pub premises: Option<usize>,
    pub checked: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QReport {
    /// Decided as membership in the prevariety: the nilradical is `Δ`.
    pub in_q: bool,
    pub levels: Vec<QiLevel>,
    /// A quasi-identity true in the class but false in the algebra, if found.
    pub failure: Option<String>,
    /// Membership implies every checked quasi-identity transfers.
    pub consistent: bool,
}

/// Membership in the quasivariety generated by the class.
pub fn is_in_q(a: &FiniteAlgebra, class: &[FiniteAlgebra]) -> Result<bool> {
    Ok(spec(&context(a, class)?)?.is_reduced())
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            cur.push(i);
            if !go(i + 1, n, k, cur, f) {
                return false;
            }
            cur.pop();
        }
        true
    }
    go(0, n, k, &mut Vec::new(), f)
}

/// Membership together with a bounded search for a quasi-identity that
/// holds in the class and fails in `a`. Terms range over representatives of
/// the class's free algebra, so every term function of the class appears.
pub fn q_membership_report(
    a: &FiniteAlgebra,
    class: &[FiniteAlgebra],
    bounds: QiBounds,
) -> Result<QReport> {
    let in_q = is_in_q(a, class)?;
    let mut levels = Vec::new();
    let mut failure = None;
    let mut budget = bounds.max_checks;
    for n in 0..=bounds.max_vars {
        let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let free = match free_algebra(class, &vars) {
            Ok(f) => f,
            Err(Error::EmptySubuniverse) | Err(Error::Resource(_)) => {
                levels.push(QiLevel { vars: n, premises: None, checked: 0 });
                continue;
            }
            Err(e) => return Err(e),
        };
        let eqs: Vec<_> = unequal_pairs(free.size())
            .into_iter()
            .map(|(p, q)| free.equation(p, q))
            .collect();
        let premises = (0..=bounds.max_premises.min(eqs.len()))
            .take_while(|&m| {
                let cost: u128 = (0..=m).map(|k| binomial(eqs.len(), k)).sum::<u128>()
                    * eqs.len() as u128;
                cost <= budget
            })
            .last();
        let Some(m) = premises else {
            levels.push(QiLevel { vars: n, premises: None, checked: 0 });
            continue;
        };
        Limits::current().check_search(saturating_pow(a.size(), n), "quasi-identity check")?;
        let in_class = ModelSpace::new(class, &vars)?;
        let in_a = ModelSpace::new(std::slice::from_ref(a), &vars)?;
        let masks = eqs
            .iter()
            .map(|e| Ok((in_class.equation_mask(e)?, in_a.equation_mask(e)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut checked = 0u128;
        for k in 0..=m {
            for_each_subset(eqs.len(), k, &mut |idx: &[usize]| {
                let (mut pk, mut pa) = (PointSet::full(in_class.len()), PointSet::full(in_a.len()));
                for &i in idx {
                    pk = pk.intersection(&masks[i].0);
                    pa = pa.intersection(&masks[i].1);
                }
                for (c, (ck, ca)) in masks.iter().enumerate() {
                    checked += 1;
                    if pk.is_subset(ck) && !pa.is_subset(ca) {
                        let premise =
                            DisjunctiveSystem::equations(idx.iter().map(|&i| eqs[i].clone()));
                        failure = Some(format!("{premise} -> {}", eqs[c]));
                        return false;
                    }
                }
                true
            });
            if failure.is_some() {
                break;
            }
        }
        budget = budget.saturating_sub(checked);
        levels.push(QiLevel { vars: n, premises: Some(m), checked });
        if failure.is_some() {
            break;
        }
    }
    Ok(QReport {
        in_q,
        consistent: !(in_q && failure.is_some()),
        levels,
        failure,
    })
}

/// Every subalgebra of `a`, one per distinct universe, in order of universe.
pub fn all_subalgebras(a: &FiniteAlgebra) -> Result<Vec<FiniteAlgebra>> {
    Limits::current().check_search(saturating_pow(2, a.size()), "subalgebra sweep")?;
    let mut universes: BTreeSet<Vec<usize>> = BTreeSet::new();
    for mask in 0u64..(1u64 << a.size()) {
        let seed: Vec<usize> = (0..a.size()).filter(|i| mask >> i & 1 == 1).collect();
        if let Ok(sub) = subalgebra_generated(a, &seed) {
            universes.insert(sub.universe);
        }
    }
    universes
        .into_iter()
        .map(|u| subalgebra_generated(a, &u).map(|s| s.algebra))
        .collect()
}

/// Whether `predicate` holds on every subalgebra; a finite algebra is its
/// own largest finitely generated subalgebra.
pub fn is_in_local_closure(
    a: &FiniteAlgebra,
    mut predicate: impl FnMut(&FiniteAlgebra) -> Result<bool>,
) -> Result<bool> {
    for sub in all_subalgebras(a)? {
        if !predicate(&sub)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Meet of a decomposition, for checking it returns the original congruence.
pub fn meet_of(size: usize, parts: &[Congruence]) -> Congruence {
    meet(size, parts).expect("parts share the algebra's size")
}
