//! Disjunctive systems, entailment over a finite class, and the equational
//! checks that run on free algebras.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{coordinates, free_algebra, Coordinate, FreeAlgebra};
use crate::algebra::{FiniteAlgebra, Signature};
use crate::bitset::PointSet;
use crate::congruence::{congruence_closure, Congruence};
use crate::error::{Error, Limits, Result};
use crate::parse::{parse_system, Equation};
use crate::spectrum::{spec, Spectrum, SpectrumContext};
use crate::term::CompiledTerm;

/// A conjunction of clauses, each a nonempty disjunction of equations.
/// Disjuncts and clauses are kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DisjunctiveSystem {
    clauses: Vec<Vec<Equation>>,
}

impl DisjunctiveSystem {
    pub fn new(clauses: Vec<Vec<Equation>>) -> Result<Self> {
        let mut out = BTreeSet::new();
        for mut clause in clauses {
            if clause.is_empty() {
                return Err(Error::EmptyDisjunction);
            }
            clause.sort();
            clause.dedup();
            out.insert(clause);
        }
        Ok(DisjunctiveSystem {
            clauses: out.into_iter().collect(),
        })
    }

    /// One single-equation clause per equation.
    pub fn equations(eqs: impl IntoIterator<Item = Equation>) -> Self {
        DisjunctiveSystem::new(eqs.into_iter().map(|e| vec![e]).collect())
            .expect("singleton clauses are nonempty")
    }

    pub fn empty() -> Self {
        DisjunctiveSystem { clauses: vec![] }
    }

    pub fn parse(text: &str, signature: &Signature) -> Result<Self> {
        DisjunctiveSystem::new(parse_system(text, signature)?)
    }

    pub fn clauses(&self) -> &[Vec<Equation>] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// The equations, when every clause has a single disjunct.
    pub fn as_equations(&self) -> Option<Vec<Equation>> {
        self.clauses
            .iter()
            .map(|c| (c.len() == 1).then(|| c[0].clone()))
            .collect()
    }

    /// Clauses selected by index, as a new system.
    pub fn select(&self, indices: impl IntoIterator<Item = usize>) -> Self {
        DisjunctiveSystem {
            clauses: indices.into_iter().map(|i| self.clauses[i].clone()).collect(),
        }
    }
}

impl fmt::Display for DisjunctiveSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, clause) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            for (j, e) in clause.iter().enumerate() {
                if j > 0 {
                    write!(f, " | ")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for DisjunctiveSystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A member of the class with an assignment of the variables.
pub type Model = Coordinate;

/// Every model of a class over a variable list, with satisfaction sets as bitsets.
#[derive(Debug, Clone)]
pub struct ModelSpace {
    class: Vec<FiniteAlgebra>,
    variables: Vec<String>,
    models: Vec<Model>,
}

impl ModelSpace {
    pub fn new(class: &[FiniteAlgebra], variables: &[String]) -> Result<Self> {
        let first = class.first().ok_or(Error::EmptyClass)?;
        for b in &class[1..] {
            first.same_signature(b)?;
        }
        let count: u128 = class
            .iter()
            .map(|b| crate::error::saturating_pow(b.size(), variables.len()))
            .fold(0u128, u128::saturating_add);
        Limits::current().check_search(count, "model check")?;
        Ok(ModelSpace {
            class: class.to_vec(),
            variables: variables.to_vec(),
            models: coordinates(class, variables.len()),
        })
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn models(&self) -> &[Model] {
        &self.models
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    fn compile(&self, e: &Equation) -> Result<(CompiledTerm, CompiledTerm)> {
        let sig = self.class[0].signature();
        Ok((
            e.lhs.compile(sig, &self.variables)?,
            e.rhs.compile(sig, &self.variables)?,
        ))
    }

    /// Models satisfying an equation.
    pub fn equation_mask(&self, e: &Equation) -> Result<PointSet> {
        let (l, r) = self.compile(e)?;
        Ok(PointSet::from_indices(
            self.len(),
            self.models.iter().enumerate().filter_map(|(i, m)| {
                let b = &self.class[m.member];
                (l.eval(b, &m.assignment) == r.eval(b, &m.assignment)).then_some(i)
            }),
        ))
    }

    /// Models satisfying every clause of a system.
    pub fn system_mask(&self, s: &DisjunctiveSystem) -> Result<PointSet> {
        let mut acc = PointSet::full(self.len());
        for clause in s.clauses() {
            let mut any = PointSet::empty(self.len());
            for e in clause {
                any = any.union(&self.equation_mask(e)?);
            }
            acc = acc.intersection(&any);
        }
        Ok(acc)
    }

    /// A model of `premise` that falsifies `conclusion`, if any.
    pub fn counterexample(
        &self,
        premise: &DisjunctiveSystem,
        conclusion: &DisjunctiveSystem,
    ) -> Result<Option<Model>> {
        let bad = self.system_mask(premise)?.difference(&self.system_mask(conclusion)?);
        let first = bad.iter().next();
        Ok(first.map(|i| self.models[i].clone()))
    }

    pub fn entails(
        &self,
        premise: &DisjunctiveSystem,
        conclusion: &DisjunctiveSystem,
    ) -> Result<bool> {
        Ok(self.counterexample(premise, conclusion)?.is_none())
    }
}

/// `K ⊨ premise → conclusion`, by checking every member and assignment.
pub fn entails(
    class: &[FiniteAlgebra],
    variables: &[String],
    premise: &DisjunctiveSystem,
    conclusion: &DisjunctiveSystem,
) -> Result<bool> {
    ModelSpace::new(class, variables)?.entails(premise, conclusion)
}

/// A free algebra with its spectrum and model space over the same class.
#[derive(Debug, Clone)]
pub struct FreeContext {
    pub free: FreeAlgebra,
    pub spectrum: Spectrum,
    pub models: ModelSpace,
}

impl FreeContext {
    pub fn new(class: &[FiniteAlgebra], variables: &[String]) -> Result<Self> {
        let free = free_algebra(class, variables)?;
        let spectrum = spec(&SpectrumContext::new(
            free.algebra().clone(),
            class.to_vec(),
        )?)?;
        let models = ModelSpace::new(class, variables)?;
        Ok(FreeContext {
            free,
            spectrum,
            models,
        })
    }

    /// A congruence of the free algebra as equations between representatives.
    pub fn congruence_equations(&self, theta: &Congruence) -> DisjunctiveSystem {
        DisjunctiveSystem::equations(
            (0..theta.size())
                .filter(|&a| theta.label(a) != a)
                .map(|a| self.free.equation(a, theta.label(a))),
        )
    }

    /// Points whose equations entail the system.
    pub fn v_disjunctive(&self, s: &DisjunctiveSystem) -> Result<PointSet> {
        let target = self.models.system_mask(s)?;
        let mut out = PointSet::empty(self.spectrum.len());
        for (i, p) in self.spectrum.points().iter().enumerate() {
            let premise = self.models.system_mask(&self.congruence_equations(p))?;
            if premise.is_subset(&target) {
                out.insert(i);
            }
        }
        Ok(out)
    }

    /// `⋂ over clauses of ⋃ over disjuncts of V(p, q)`, from point membership alone.
    pub fn v_closed_form(&self, s: &DisjunctiveSystem) -> Result<PointSet> {
        let mut acc = self.spectrum.all_points();
        for clause in s.clauses() {
            let mut any = PointSet::empty(self.spectrum.len());
            for e in clause {
                let (p, q) = self.free.pair_of(e)?;
                any = any.union(&self.spectrum.v_closed(&[(p, q)])?);
            }
            acc = acc.intersection(&any);
        }
        Ok(acc)
    }

    pub fn nullstellensatz2(
        &self,
        s1: &DisjunctiveSystem,
        s2: &DisjunctiveSystem,
    ) -> Result<Nsatz2Report> {
        let inclusion = self.v_disjunctive(s1)?.is_subset(&self.v_disjunctive(s2)?);
        let entailed = self.models.entails(s1, s2)?;
        let radical_restatement = match s1.as_equations() {
            Some(t) => Some(self.radical_restatement(&t)?),
            None => None,
        };
        Ok(Nsatz2Report {
            inclusion,
            entailed,
            agree: inclusion == entailed,
            radical_restatement,
        })
    }

    /// Whether `rad T` relates exactly the pairs `(p, q)` with `K ⊨ T → p = q`.
    pub fn radical_restatement(&self, t: &[Equation]) -> Result<bool> {
        let pairs = t
            .iter()
            .map(|e| self.free.pair_of(e))
            .collect::<Result<Vec<_>>>()?;
        let rad = self
            .spectrum
            .radical(&congruence_closure(self.free.algebra(), &pairs)?)?;
        let premise = self.models.system_mask(&DisjunctiveSystem::equations(t.to_vec()))?;
        let n = self.free.size();
        for a in 0..n {
            for b in (a + 1)..n {
                let holds = self.models.equation_mask(&self.free.equation(a, b))?;
                if rad.related(a, b) != premise.is_subset(&holds) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Greedy subsystem equivalent to `s` over the class: clauses are kept in
    /// canonical order when not entailed by those already kept, then any kept
    /// clause entailed by the others is dropped.
    pub fn finite_subsystem(&self, s: &DisjunctiveSystem) -> Result<DisjunctiveSystem> {
        finite_subsystem_in(&self.models, s)
    }
}

fn finite_subsystem_in(models: &ModelSpace, s: &DisjunctiveSystem) -> Result<DisjunctiveSystem> {
    let masks = s
        .clauses()
        .iter()
        .map(|c| models.system_mask(&DisjunctiveSystem::new(vec![c.clone()])?))
        .collect::<Result<Vec<_>>>()?;
    let meet = |idx: &[usize], skip: Option<usize>| {
        idx.iter()
            .filter(|&&i| Some(i) != skip)
            .fold(PointSet::full(models.len()), |acc, &i| acc.intersection(&masks[i]))
    };
    let mut kept: Vec<usize> = Vec::new();
    for (i, mask) in masks.iter().enumerate() {
        if !meet(&kept, None).is_subset(mask) {
            kept.push(i);
        }
    }
    let mut j = 0;
    while j < kept.len() {
        if meet(&kept, Some(kept[j])).is_subset(&masks[kept[j]]) {
            kept.remove(j);
        } else {
            j += 1;
        }
    }
    Ok(s.select(kept))
}

/// Points of a free algebra's spectrum whose equations entail `s`.
pub fn v_disjunctive(
    spectrum: &Spectrum,
    free: &FreeAlgebra,
    s: &DisjunctiveSystem,
) -> Result<PointSet> {
    if spectrum.algebra() != free.algebra() || spectrum.context().class() != free.class() {
        return Err(Error::InvalidAlgebra(
            "spectrum is not taken over this free algebra and class".into(),
        ));
    }
    let ctx = FreeContext {
        free: free.clone(),
        spectrum: spectrum.clone(),
        models: ModelSpace::new(free.class(), free.variables())?,
    };
    ctx.v_disjunctive(s)
}

/// Both sides of the second Nullstellensatz, computed independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Nsatz2Report {
    /// `V(S1) ⊆ V(S2)` on the free algebra's spectrum.
    pub inclusion: bool,
    /// `K ⊨ S1 → S2` by model checking.
    pub entailed: bool,
    pub agree: bool,
    /// For an equational `S1`: whether its radical is exactly its equational consequences.
    pub radical_restatement: Option<bool>,
}

pub fn check_nullstellensatz2(
    class: &[FiniteAlgebra],
    variables: &[String],
    s1: &DisjunctiveSystem,
    s2: &DisjunctiveSystem,
) -> Result<Nsatz2Report> {
    FreeContext::new(class, variables)?.nullstellensatz2(s1, s2)
}

/// Greedy equivalent subsystem of a set of equations.
pub fn finite_subsystem(
    class: &[FiniteAlgebra],
    variables: &[String],
    t: &[Equation],
) -> Result<Vec<Equation>> {
    let models = ModelSpace::new(class, variables)?;
    let sub = finite_subsystem_in(&models, &DisjunctiveSystem::equations(t.to_vec()))?;
    Ok(sub.as_equations().expect("subsystem of equations"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub holds: bool,
    pub longest_chain: usize,
}

/// Chain conditions and the finite-subsystem property for one class and variable list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoetherianReport {
    pub variables: Vec<String>,
    pub free_size: usize,
    pub points: usize,
    pub zariski_dcc: ChainReport,
    pub topological_dcc: ChainReport,
    pub radical_acc: ChainReport,
    pub subsystem_property: bool,
    pub systems_checked: usize,
    /// Quotients of the free algebra by radical congruences whose spectra were checked.
    pub quotients_checked: usize,
    pub holds: bool,
}

fn longest_ascending(elements: &[Congruence]) -> usize {
    // canonical order lists finer congruences first, so strict lower bounds come earlier
    let mut best = vec![1usize; elements.len()];
    for i in 0..elements.len() {
        for j in 0..i {
            if elements[j] != elements[i] && elements[j].leq(&elements[i]) {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

pub fn check_noetherian_equivalences(
    class: &[FiniteAlgebra],
    variables: &[String],
) -> Result<NoetherianReport> {
    let ctx = match FreeContext::new(class, variables) {
        Ok(ctx) => ctx,
        // no terms at all: every chain and system is empty
        Err(Error::EmptySubuniverse) => {
            let empty = ChainReport {
                holds: true,
                longest_chain: 0,
            };
            return Ok(NoetherianReport {
                variables: variables.to_vec(),
                free_size: 0,
                points: 0,
                zariski_dcc: empty,
                topological_dcc: empty,
                radical_acc: empty,
                subsystem_property: true,
                systems_checked: 0,
                quotients_checked: 0,
                holds: true,
            });
        }
        Err(e) => return Err(e),
    };
    let zariski = ctx.spectrum.zariski().satisfies_dcc();
    let topological = ctx.spectrum.zariski().topologize()?.satisfies_dcc();
    let radicals = ctx.spectrum.rspec();
    let radical_acc = ChainReport {
        holds: true,
        longest_chain: longest_ascending(&radicals),
    };

    let n = ctx.free.size();
    let all_equations: Vec<Equation> = (0..n)
        .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
        .map(|(a, b)| ctx.free.equation(a, b))
        .collect();
    let mut systems = vec![DisjunctiveSystem::equations(all_equations.clone())];
    let mut pairs = Vec::new();
    for (i, e) in all_equations.iter().enumerate() {
        systems.push(DisjunctiveSystem::equations([e.clone()]));
        for f in &all_equations[i + 1..] {
            systems.push(DisjunctiveSystem::equations([e.clone(), f.clone()]));
            pairs.push(vec![e.clone(), f.clone()]);
        }
    }
    systems.push(DisjunctiveSystem::new(pairs)?);
    let mut subsystem_property = true;
    for s in &systems {
        let sub = ctx.finite_subsystem(s)?;
        let certified = sub.clauses().iter().all(|c| s.clauses().contains(c))
            && ctx.models.entails(&sub, s)?
            && ctx.models.entails(s, &sub)?;
        subsystem_property &= certified;
    }

    let mut quotient_dcc = true;
    for theta in &radicals {
        let closed = ctx.spectrum.v_of(theta)?;
        let q = ctx.spectrum.closed_subset_as_spectrum(&closed)?;
        quotient_dcc &= q.spectrum.zariski().satisfies_dcc().holds;
    }

    let holds = zariski.holds && topological.holds && subsystem_property && quotient_dcc;
    Ok(NoetherianReport {
        variables: variables.to_vec(),
        free_size: n,
        points: ctx.spectrum.len(),
        zariski_dcc: ChainReport {
            holds: zariski.holds,
            longest_chain: zariski.longest_chain,
        },
        topological_dcc: ChainReport {
            holds: topological.holds,
            longest_chain: topological.longest_chain,
        },
        radical_acc,
        subsystem_property,
        systems_checked: systems.len(),
        quotients_checked: radicals.len(),
        holds,
    })
}
