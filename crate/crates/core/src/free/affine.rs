//! Affine spaces `Aⁿ` with their algebraic sets, and the map sending a point
//! `ā` to the kernel of its evaluation homomorphism on the free algebra.

use super::{free_algebra, FreeAlgebra};
use crate::algebra::{for_each_tuple, FiniteAlgebra};
use crate::bitset::PointSet;
use crate::closure::{ClosureMorphism, ClosureSystem};
use crate::congruence::{kernel, Congruence};
use crate::error::{saturating_pow, Limits, Result};
use crate::parse::Equation;
use crate::spectrum::{spec, Spectrum, SpectrumContext};
use crate::term::{CompiledTerm, Term};

/// `x1, ..., xn`.
pub fn affine_variables(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn affine_points(a: &FiniteAlgebra, n: usize) -> Result<Vec<Vec<usize>>> {
    Limits::current().check_search(saturating_pow(a.size(), n), "affine space")?;
    let mut out = Vec::new();
    for_each_tuple(a.size(), n, |t| out.push(t.to_vec()));
    Ok(out)
}

fn solutions(
    a: &FiniteAlgebra,
    points: &[Vec<usize>],
    vars: &[String],
    eqs: &[Equation],
) -> Result<PointSet> {
    let compiled = eqs
        .iter()
        .map(|e| Ok((e.lhs.compile(a.signature(), vars)?, e.rhs.compile(a.signature(), vars)?)))
        .collect::<Result<Vec<(CompiledTerm, CompiledTerm)>>>()?;
    Ok(PointSet::from_indices(
        points.len(),
        (0..points.len()).filter(|&i| {
            compiled
                .iter()
                .all(|(l, r)| l.eval(a, &points[i]) == r.eval(a, &points[i]))
        }),
    ))
}

/// Tuples of `Aⁿ` satisfying every equation over `x1..xn`.
pub fn algebraic_set(a: &FiniteAlgebra, n: usize, t: &[Equation]) -> Result<PointSet> {
    solutions(a, &affine_points(a, n)?, &affine_variables(n), t)
}

/// `Aⁿ` with its algebraic sets.
#[derive(Debug, Clone)]
pub struct AffineSpace {
    pub algebra: FiniteAlgebra,
    pub variables: Vec<String>,
    /// Tuples in lexicographic order; a point's index is its position here.
    pub points: Vec<Vec<usize>>,
    /// `F_{V(A)}(x1..xn)`: its representatives are all term functions, so
    /// single equations between them generate every algebraic set.
    pub free: FreeAlgebra,
    pub closure: ClosureSystem,
}

pub fn affine_closure_system(a: &FiniteAlgebra, n: usize) -> Result<AffineSpace> {
    let variables = affine_variables(n);
    let points = affine_points(a, n)?;
    let free = free_algebra(std::slice::from_ref(a), &variables)?;
    let mut prebasis = Vec::new();
    for p in 0..free.size() {
        for q in (p + 1)..free.size() {
            prebasis.push(solutions(a, &points, &variables, &[free.equation(p, q)])?);
        }
    }
    let closure = ClosureSystem::generated_by(points.len(), prebasis);
    Ok(AffineSpace {
        algebra: a.clone(),
        variables,
        points,
        free,
        closure,
    })
}

impl AffineSpace {
    pub fn algebraic_set(&self, t: &[Equation]) -> Result<PointSet> {
        solutions(&self.algebra, &self.points, &self.variables, t)
    }

    fn evaluate(&self, t: &Term, point: usize) -> Result<usize> {
        Ok(t.compile(self.algebra.signature(), &self.variables)?
            .eval(&self.algebra, &self.points[point]))
    }
}

/// Pairs of term functions agreeing on every point of `x`, as a congruence
/// of the free algebra; `∇` for the empty set.
pub fn affine_rad(space: &AffineSpace, x: &PointSet) -> Result<Congruence> {
    let keys = space
        .free
        .representatives()
        .iter()
        .map(|t| x.iter().map(|p| space.evaluate(t, p)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Congruence::from_keys(&keys))
}

/// The closure morphism `Aⁿ -> Spec F`, `ā ↦ ker h_ā`.
#[derive(Debug, Clone)]
pub struct AlphaMap {
    pub space: AffineSpace,
    pub spectrum: Spectrum,
    pub morphism: ClosureMorphism,
}

pub fn alpha_map(a: &FiniteAlgebra, n: usize) -> Result<AlphaMap> {
    let space = affine_closure_system(a, n)?;
    let spectrum = spec(&SpectrumContext::new(
        space.free.algebra().clone(),
        vec![a.clone()],
    )?)?;
    // the single class member makes coordinate i the i-th tuple of Aⁿ
    let map = (0..space.points.len())
        .map(|i| {
            let theta = kernel(&space.free.evaluation(i));
            spectrum
                .point_index(&theta)
                .ok_or(crate::error::Error::NotAPoint)
        })
        .collect::<Result<Vec<_>>>()?;
    let morphism = ClosureMorphism::new(
        space.closure.clone(),
        spectrum.zariski().clone(),
        map,
    )?;
    Ok(AlphaMap {
        space,
        spectrum,
        morphism,
    })
}

impl AlphaMap {
    pub fn image(&self, x: &PointSet) -> PointSet {
        self.morphism.image(x)
    }

    /// `ψ(α(X))`.
    pub fn psi_of_image(&self, x: &PointSet) -> Result<Congruence> {
        self.spectrum.psi(&self.image(x))
    }

    /// Whether `θ_Rad(X) = ψ(α(X))`.
    pub fn radical_matches(&self, x: &PointSet) -> Result<bool> {
        Ok(affine_rad(&self.space, x)? == self.psi_of_image(x)?)
    }
}
