//! Free algebras of the variety generated by a finite class, built as the
//! subalgebra of a product of class members generated by the variables.
//!
//! The product has one coordinate per pair (member `B`, assignment `X -> B`);
//! a variable is the tuple of its values under every assignment, so each
//! element of the free algebra is the table of a term function over the class.

mod affine;
mod logic;

pub use affine::{
    affine_closure_system, affine_rad, affine_variables, algebraic_set, alpha_map, AffineSpace,
    AlphaMap,
};
pub use logic::{
    check_noetherian_equivalences, check_nullstellensatz2, entails, finite_subsystem,
    v_disjunctive, ChainReport, DisjunctiveSystem, FreeContext, Model, ModelSpace,
    NoetherianReport, Nsatz2Report,
};

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{for_each_tuple, FiniteAlgebra, Homomorphism, Signature};
use crate::error::{saturating_pow, Error, Limits, Result};
use crate::parse::Equation;
use crate::term::Term;

/// One coordinate of the ambient product: a class member and an assignment
/// of the variables into it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Coordinate {
    pub member: usize,
    pub assignment: Vec<usize>,
}

#[derive(Default)]
struct Builder {
    tuples: Vec<Vec<usize>>,
    terms: Vec<Term>,
    index: HashMap<Vec<usize>, usize>,
}

impl Builder {
    fn add(&mut self, tuple: Vec<usize>, term: Term) -> usize {
        if let Some(&i) = self.index.get(&tuple) {
            return i;
        }
        let i = self.tuples.len();
        self.index.insert(tuple.clone(), i);
        self.tuples.push(tuple);
        self.terms.push(term);
        i
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeAlgebra {
    class: Vec<FiniteAlgebra>,
    variables: Vec<String>,
    coordinates: Vec<Coordinate>,
    tuples: Vec<Vec<usize>>,
    algebra: FiniteAlgebra,
    generators: Vec<usize>,
    representatives: Vec<Term>,
}

/// Every (member, assignment) pair in class order, assignments lexicographic
/// with the first variable most significant.
pub(crate) fn coordinates(class: &[FiniteAlgebra], vars: usize) -> Vec<Coordinate> {
    let mut out = Vec::new();
    for (member, b) in class.iter().enumerate() {
        for_each_tuple(b.size(), vars, |a| {
            out.push(Coordinate {
                member,
                assignment: a.to_vec(),
            })
        });
    }
    out
}

fn class_signature(class: &[FiniteAlgebra]) -> Result<&Signature> {
    let first = class.first().ok_or(Error::EmptyClass)?;
    for b in &class[1..] {
        first.same_signature(b)?;
    }
    Ok(first.signature())
}

/// The free algebra over `vars` in the variety generated by `class`.
///
/// Elements are discovered breadth-first: variables, then constants, then
/// one round of operation applications at a time, so each recorded
/// representative term has minimal depth.
pub fn free_algebra(class: &[FiniteAlgebra], vars: &[String]) -> Result<FreeAlgebra> {
    free_algebra_with(class, vars, &Limits::current())
}

pub fn free_algebra_with(
    class: &[FiniteAlgebra],
    vars: &[String],
    limits: &Limits,
) -> Result<FreeAlgebra> {
    let signature = class_signature(class)?.clone();
    for (i, v) in vars.iter().enumerate() {
        if signature.index_of(v).is_some() || vars[..i].contains(v) {
            return Err(Error::InvalidAlgebra(format!(
                "variable `{v}` is duplicated or names a symbol"
            )));
        }
    }
    let product_size = class.iter().fold(1u128, |acc, b| {
        let width = saturating_pow(b.size(), vars.len());
        let width = usize::try_from(width).unwrap_or(usize::MAX);
        acc.saturating_mul(saturating_pow(b.size(), width))
    });
    limits.check_search(product_size, "free algebra product")?;
    let coords = coordinates(class, vars.len());
    let mut b = Builder::default();
    let mut generators = Vec::with_capacity(vars.len());
    for (k, v) in vars.iter().enumerate() {
        let tuple = coords.iter().map(|c| c.assignment[k]).collect();
        generators.push(b.add(tuple, Term::var(v.clone())));
    }
    for (op, sym) in signature.symbols().iter().enumerate() {
        if sym.arity == 0 {
            let tuple = coords.iter().map(|c| class[c.member].constant(op)).collect();
            b.add(tuple, Term::constant(sym.name.clone()));
        }
    }
    if b.tuples.is_empty() {
        return Err(Error::EmptySubuniverse);
    }

    let mut done = 0;
    let mut args = Vec::new();
    while done < b.tuples.len() {
        let known = b.tuples.len();
        for (op, sym) in signature.symbols().iter().enumerate() {
            if sym.arity == 0 {
                continue;
            }
            let mut fresh: Vec<(Vec<usize>, Term)> = Vec::new();
            for_each_tuple(known, sym.arity, |idx| {
                // combinations of elements from earlier rounds were already applied
                if idx.iter().all(|&i| i < done) {
                    return;
                }
                let tuple: Vec<usize> = coords
                    .iter()
                    .enumerate()
                    .map(|(c, coord)| {
                        args.clear();
                        args.extend(idx.iter().map(|&i| b.tuples[i][c]));
                        class[coord.member].apply(op, &args)
                    })
                    .collect();
                if !b.index.contains_key(&tuple) {
                    let term = Term::op(
                        sym.name.clone(),
                        idx.iter().map(|&i| b.terms[i].clone()).collect(),
                    );
                    fresh.push((tuple, term));
                }
            });
            for (tuple, term) in fresh {
                b.add(tuple, term);
            }
            if b.tuples.len() as u128 > limits.max_search {
                return Err(Error::Resource("free algebra: too many elements".into()));
            }
        }
        done = known;
    }
    let Builder {
        tuples,
        terms,
        index,
    } = b;

    let size = tuples.len();
    let algebra = FiniteAlgebra::from_fn(signature, size, |op, idx| {
        let tuple: Vec<usize> = coords
            .iter()
            .enumerate()
            .map(|(c, coord)| {
                let vals: Vec<usize> = idx.iter().map(|&i| tuples[i][c]).collect();
                class[coord.member].apply(op, &vals)
            })
            .collect();
        index[&tuple]
    })?;
    Ok(FreeAlgebra {
        class: class.to_vec(),
        variables: vars.to_vec(),
        coordinates: coords,
        tuples,
        algebra,
        generators,
        representatives: terms,
    })
}

impl FreeAlgebra {
    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn size(&self) -> usize {
        self.algebra.size()
    }

    pub fn class(&self) -> &[FiniteAlgebra] {
        &self.class
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    /// Element of each variable, in variable order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn coordinates(&self) -> &[Coordinate] {
        &self.coordinates
    }

    /// Shortest discovered term for each element.
    pub fn representatives(&self) -> &[Term] {
        &self.representatives
    }

    pub fn representative(&self, element: usize) -> &Term {
        &self.representatives[element]
    }

    /// Value of `element`'s term function at a coordinate.
    pub fn value_at(&self, element: usize, coordinate: usize) -> usize {
        self.tuples[element][coordinate]
    }

    /// The element a term denotes.
    pub fn element_of(&self, t: &Term) -> Result<usize> {
        Ok(t.compile(self.algebra.signature(), &self.variables)?
            .eval(&self.algebra, &self.generators))
    }

    /// The pair of elements an equation denotes.
    pub fn pair_of(&self, e: &Equation) -> Result<(usize, usize)> {
        Ok((self.element_of(&e.lhs)?, self.element_of(&e.rhs)?))
    }

    /// The equation `rep(a) = rep(b)`.
    pub fn equation(&self, a: usize, b: usize) -> Equation {
        Equation::new(self.representatives[a].clone(), self.representatives[b].clone())
    }

    /// The evaluation homomorphism extending the assignment of a coordinate.
    pub fn evaluation(&self, coordinate: usize) -> Homomorphism {
        let member = &self.class[self.coordinates[coordinate].member];
        Homomorphism::new_unchecked(
            self.tuples.iter().map(|t| t[coordinate]).collect(),
            member.size(),
        )
    }

    /// Index of the coordinate for `member` and `assignment`.
    pub fn coordinate_index(&self, member: usize, assignment: &[usize]) -> Option<usize> {
        self.coordinates
            .iter()
            .position(|c| c.member == member && c.assignment == assignment)
    }
}
