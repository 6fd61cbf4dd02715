//! K-spectra: distinguished congruences, Zariski closed sets, radicals and reductions.
//!
//! A congruence `θ` of `A` is a point of the spectrum when `A/θ` embeds into a
//! member of the class `K`, equivalently when `θ` is the kernel of some
//! homomorphism from `A` into `K`. Points are computed the second way.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{
    enumerate_homs, is_in_is, quotient, FiniteAlgebra, Homomorphism, Quotient,
};
use crate::bitset::PointSet;
use crate::closure::{ClosureMorphism, ClosureSystem};
use crate::congruence::{
    all_congruences, congruence_closure, kernel, meet, unquotient, Congruence,
};
use crate::error::{Error, Result};

/// An algebra together with the class `K` its spectrum is taken over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumContext {
    algebra: FiniteAlgebra,
    class: Vec<FiniteAlgebra>,
}

impl SpectrumContext {
    pub fn new(algebra: FiniteAlgebra, class: Vec<FiniteAlgebra>) -> Result<Self> {
        if class.is_empty() {
            return Err(Error::EmptyClass);
        }
        for b in &class {
            algebra.same_signature(b)?;
        }
        Ok(SpectrumContext { algebra, class })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn class(&self) -> &[FiniteAlgebra] {
        &self.class
    }

    /// The same class over another algebra.
    pub fn with_algebra(&self, algebra: FiniteAlgebra) -> Result<Self> {
        SpectrumContext::new(algebra, self.class.clone())
    }
}

/// Which congruences count as points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    /// Kernels of homomorphisms into the class.
    Kernel,
    /// Meets of kernels, together with `∇`.
    Radical,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    context: SpectrumContext,
    condition: Condition,
    points: Vec<Congruence>,
    zariski: ClosureSystem,
}

/// Points as deduplicated kernels of all homomorphisms into the class, in canonical order.
pub fn spec(ctx: &SpectrumContext) -> Result<Spectrum> {
    let mut points = BTreeSet::new();
    for b in &ctx.class {
        for h in enumerate_homs(&ctx.algebra, b)? {
            points.insert(kernel(&h));
        }
    }
    Ok(Spectrum::build(
        ctx.clone(),
        Condition::Kernel,
        points.into_iter().collect(),
    ))
}

/// The spectrum of the radical condition: its points are the radical congruences.
pub fn sqrt_spec(ctx: &SpectrumContext) -> Result<Spectrum> {
    let points = spec(ctx)?.rspec();
    Ok(Spectrum::build(ctx.clone(), Condition::Radical, points))
}

/// Points from the definition: congruences whose quotient embeds into the class.
pub fn points_by_quotient_embedding(ctx: &SpectrumContext) -> Result<Vec<Congruence>> {
    let mut out = Vec::new();
    for theta in all_congruences(&ctx.algebra)? {
        let q = quotient(&ctx.algebra, &theta)?;
        if is_in_is(&q.algebra, &ctx.class)? {
            out.push(theta);
        }
    }
    Ok(out)
}

/// Whether `Δ` is a point, that is whether `a` embeds into the class.
pub fn is_in_fundamental_class(a: &FiniteAlgebra, class: &[FiniteAlgebra]) -> Result<bool> {
    let s = spec(&SpectrumContext::new(a.clone(), class.to_vec())?)?;
    Ok(s.point_index(&Congruence::delta(a.size())).is_some())
}

/// Membership in the prevariety generated by the class: the nilradical is `Δ`.
pub fn is_in_isp(a: &FiniteAlgebra, class: &[FiniteAlgebra]) -> Result<bool> {
    let s = spec(&SpectrumContext::new(a.clone(), class.to_vec())?)?;
    Ok(s.is_reduced())
}

/// A tuple of homomorphisms into class members, one per spectrum point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IspEmbedding {
    /// Index into the class for each factor.
    pub factors: Vec<usize>,
    pub homs: Vec<Homomorphism>,
}

impl IspEmbedding {
    pub fn tuple(&self, a: usize) -> Vec<usize> {
        self.homs.iter().map(|h| h.apply(a)).collect()
    }

    /// Rechecks every component against the operation tables and that the
    /// tuple map is injective.
    pub fn verify(&self, alg: &FiniteAlgebra, class: &[FiniteAlgebra]) -> bool {
        let components_ok = self.factors.len() == self.homs.len()
            && self.factors.iter().zip(&self.homs).all(|(&k, h)| {
                k < class.len()
                    && h.source_size() == alg.size()
                    && alg.is_homomorphism(&class[k], h.map())
            });
        let images: BTreeSet<Vec<usize>> = (0..alg.size()).map(|a| self.tuple(a)).collect();
        components_ok && images.len() == alg.size()
    }
}

/// Builds the map into `∏ B_θ` from one homomorphism per point; present
/// exactly when that map is injective.
pub fn isp_embedding(s: &Spectrum) -> Result<Option<IspEmbedding>> {
    let ctx = s.context();
    let mut factors = Vec::with_capacity(s.len());
    let mut homs = Vec::with_capacity(s.len());
    for theta in s.kernel_points()? {
        let mut found = None;
        'search: for (k, b) in ctx.class.iter().enumerate() {
            for h in enumerate_homs(&ctx.algebra, b)? {
                if kernel(&h) == theta {
                    found = Some((k, h));
                    break 'search;
                }
            }
        }
        let (k, h) = found.ok_or(Error::NotAPoint)?;
        factors.push(k);
        homs.push(h);
    }
    let candidate = IspEmbedding { factors, homs };
    Ok(candidate
        .verify(&ctx.algebra, &ctx.class)
        .then_some(candidate))
}

/// The closure morphism `Spec(target) -> Spec(source)`, `θ ↦ f⁻¹(θ)`.
pub fn induced_map(
    f: &Homomorphism,
    source: &Spectrum,
    target: &Spectrum,
) -> Result<ClosureMorphism> {
    if f.source_size() != source.algebra().size() || f.target_size() != target.algebra().size()
    {
        return Err(Error::NotAHomomorphism(
            "map does not match the spectra's algebras".into(),
        ));
    }
    if !source.algebra().is_homomorphism(target.algebra(), f.map()) {
        return Err(Error::NotAHomomorphism(format!("{:?}", f.map())));
    }
    let map = target
        .points
        .iter()
        .map(|theta| source.point_index(&theta.preimage(f)).ok_or(Error::NotAPoint))
        .collect::<Result<Vec<_>>>()?;
    ClosureMorphism::new(target.zariski.clone(), source.zariski.clone(), map)
}

/// The spectrum of `A/ψ(X)` and its embedding onto the closure of `X`.
#[derive(Debug, Clone)]
pub struct QuotientSpectrum {
    pub psi: Congruence,
    pub quotient: Quotient,
    pub spectrum: Spectrum,
    /// For each point of the quotient spectrum, the index of its preimage.
    pub map: Vec<usize>,
}

impl QuotientSpectrum {
    /// Whether `map` is a bijection onto the closure of `subset` that is a
    /// homeomorphism of the topologized systems.
    pub fn is_homeomorphism(&self, parent: &Spectrum, subset: &PointSet) -> Result<bool> {
        let closure = parent.zariski.closure_of(subset)?;
        let image = PointSet::from_indices(parent.len(), self.map.iter().copied());
        if image != closure || self.map.len() != closure.count() {
            return Ok(false);
        }
        let (sub, order) = parent.zariski.topologize()?.subsystem(&closure)?;
        let local: Vec<usize> = self
            .map
            .iter()
            .map(|p| order.binary_search(p).expect("image lies in the closure"))
            .collect();
        let f = ClosureMorphism::new(self.spectrum.zariski.topologize()?, sub, local)?;
        Ok(f.is_quasi_isomorphism())
    }
}

impl Spectrum {
    fn build(context: SpectrumContext, condition: Condition, points: Vec<Congruence>) -> Self {
        let n = context.algebra.size();
        let prebasis = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).map(|(a, b)| {
            PointSet::from_indices(
                points.len(),
                (0..points.len()).filter(|&i| points[i].related(a, b)),
            )
        });
        let zariski = ClosureSystem::generated_by(points.len(), prebasis.collect::<Vec<_>>());
        Spectrum {
            context,
            condition,
            points,
            zariski,
        }
    }

    pub fn context(&self) -> &SpectrumContext {
        &self.context
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.context.algebra
    }

    pub fn condition(&self) -> Condition {
        self.condition
    }

    pub fn points(&self) -> &[Congruence] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn zariski(&self) -> &ClosureSystem {
        &self.zariski
    }

    pub fn point_index(&self, theta: &Congruence) -> Option<usize> {
        self.points.binary_search(theta).ok()
    }

    pub fn all_points(&self) -> PointSet {
        PointSet::full(self.len())
    }

    fn kernel_points(&self) -> Result<Vec<Congruence>> {
        match self.condition {
            Condition::Kernel => Ok(self.points.clone()),
            Condition::Radical => Ok(spec(&self.context)?.points),
        }
    }

    fn check_pairs(&self, pairs: &[(usize, usize)]) -> Result<()> {
        let size = self.algebra().size();
        match pairs.iter().flat_map(|&(a, b)| [a, b]).find(|&e| e >= size) {
            Some(element) => Err(Error::ElementOutOfRange { element, size }),
            None => Ok(()),
        }
    }

    /// Points containing every pair.
    pub fn v_closed(&self, pairs: &[(usize, usize)]) -> Result<PointSet> {
        self.check_pairs(pairs)?;
        Ok(PointSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&i| pairs.iter().all(|&(a, b)| self.points[i].related(a, b))),
        ))
    }

    /// Points above `theta`.
    pub fn v_of(&self, theta: &Congruence) -> Result<PointSet> {
        self.check_congruence(theta)?;
        Ok(PointSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&i| theta.leq(&self.points[i])),
        ))
    }

    /// `ψ(X) = ⋂X`, with `ψ(∅) = ∇`.
    pub fn psi(&self, subset: &PointSet) -> Result<Congruence> {
        if subset.universe() != self.len() {
            return Err(Error::ForeignPoints);
        }
        let chosen: Vec<Congruence> = subset.iter().map(|i| self.points[i].clone()).collect();
        meet(self.algebra().size(), &chosen)
    }

    pub fn zariski_closure(&self, subset: &PointSet) -> Result<PointSet> {
        self.zariski.closure_of(subset)
    }

    fn check_congruence(&self, theta: &Congruence) -> Result<()> {
        if theta.size() != self.algebra().size() {
            return Err(Error::SizeMismatch(theta.size(), self.algebra().size()));
        }
        Ok(())
    }

    /// Meet of the points above `theta`; `∇` when there are none.
    pub fn radical(&self, theta: &Congruence) -> Result<Congruence> {
        self.psi(&self.v_of(theta)?)
    }

    /// Radical of the congruence generated by `pairs`.
    pub fn radical_of_pairs(&self, pairs: &[(usize, usize)]) -> Result<Congruence> {
        self.radical(&congruence_closure(self.algebra(), pairs)?)
    }

    pub fn nilradical(&self) -> Congruence {
        self.psi(&self.all_points()).expect("points share the algebra's size")
    }

    pub fn is_reduced(&self) -> bool {
        self.nilradical().is_delta()
    }

    /// `A / nil A`.
    pub fn reduction(&self) -> Result<Quotient> {
        quotient(self.algebra(), &self.nilradical())
    }

    /// Meets of nonempty sets of points, plus `∇`, in canonical order.
    pub fn rspec(&self) -> Vec<Congruence> {
        let n = self.algebra().size();
        let mut found: BTreeSet<Congruence> = BTreeSet::new();
        found.insert(Congruence::nabla(n));
        let mut frontier: Vec<Congruence> = Vec::new();
        for p in &self.points {
            if found.insert(p.clone()) {
                frontier.push(p.clone());
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for c in &frontier {
                for p in &self.points {
                    let m = meet(n, &[c.clone(), p.clone()]).expect("same size");
                    if found.insert(m.clone()) {
                        next.push(m);
                    }
                }
            }
            frontier = next;
        }
        found.into_iter().collect()
    }

    pub fn is_radical_congruence(&self, theta: &Congruence) -> Result<bool> {
        Ok(self.radical(theta)? == *theta)
    }

    /// `A/ψ(X)` with its spectrum under the same condition.
    pub fn closed_subset_as_spectrum(&self, subset: &PointSet) -> Result<QuotientSpectrum> {
        let psi = self.psi(subset)?;
        let q = quotient(self.algebra(), &psi)?;
        let ctx = self.context.with_algebra(q.algebra.clone())?;
        let spectrum = match self.condition {
            Condition::Kernel => spec(&ctx)?,
            Condition::Radical => sqrt_spec(&ctx)?,
        };
        let map = spectrum
            .points
            .iter()
            .map(|p| {
                let up = unquotient(p, &psi)?;
                self.point_index(&up).ok_or(Error::NotAPoint)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QuotientSpectrum {
            psi,
            quotient: q,
            spectrum,
            map,
        })
    }

    pub fn point_labels(&self) -> Vec<String> {
        self.points.iter().map(|p| p.to_string()).collect()
    }

    pub fn report(&self) -> Result<SpectrumReport> {
        let nil = self.nilradical();
        let topological = self.zariski.is_topological();
        let dcc = self.zariski.satisfies_dcc();
        Ok(SpectrumReport {
            algebra_size: self.algebra().size(),
            class_sizes: self.context.class.iter().map(FiniteAlgebra::size).collect(),
            condition: self.condition,
            points: self.points.clone(),
            closed_sets: self.zariski.closed_sets().to_vec(),
            topological,
            topologized_closed_sets: self.zariski.topologize()?.closed_sets().to_vec(),
            empty_set_closed: self.zariski.is_closed(&PointSet::empty(self.len())),
            nilradical: nil.clone(),
            reduced: nil.is_delta(),
            fundamental: self.point_index(&Congruence::delta(self.algebra().size())).is_some(),
            components: self.zariski.irreducible_components(),
            longest_chain: dcc.longest_chain,
            radical_congruences: self.rspec(),
        })
    }

    pub fn to_dot(&self, name: &str) -> String {
        self.zariski.to_dot(name, &self.point_labels())
    }
}

/// Serializable summary of a spectrum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub algebra_size: usize,
    pub class_sizes: Vec<usize>,
    pub condition: Condition,
    pub points: Vec<Congruence>,
    /// Closed sets as lists of point indices.
    pub closed_sets: Vec<PointSet>,
    pub topological: bool,
    pub topologized_closed_sets: Vec<PointSet>,
    pub empty_set_closed: bool,
    pub nilradical: Congruence,
    pub reduced: bool,
    pub fundamental: bool,
    pub components: Vec<PointSet>,
    pub longest_chain: usize,
    pub radical_congruences: Vec<Congruence>,
}
