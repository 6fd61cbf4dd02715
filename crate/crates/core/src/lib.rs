//! Finite-model engine for K-spectra of finite algebras: congruences,
//! Zariski closure systems, radicals, free algebras and separation.
//!
//! Every object is finite and every check is exhaustive. Enumerations are
//! bounded by [`Limits`], which the `CS_MAX_BUDGET` environment variable
//! can raise or lower.

pub mod algebra;
pub mod bitset;
pub mod closure;
pub mod congruence;
pub mod error;
pub mod fixtures;
pub mod free;
pub mod parse;
pub mod separation;
pub mod spectrum;
pub mod term;

pub use algebra::{
    enumerate_homs, find_embedding, is_in_is, product, projection, quotient, subalgebra_generated,
    trivial_algebra, FiniteAlgebra, Homomorphism, ProductLayout, Signature, Symbol,
};
pub use bitset::PointSet;
pub use closure::{ClosureMorphism, ClosureSystem, DccReport};
pub use congruence::{all_congruences, congruence_closure, kernel, Congruence};
pub use error::{Error, Limits, Result};
pub use free::{free_algebra, DisjunctiveSystem, FreeAlgebra, FreeContext};
pub use parse::{parse_disjunction, parse_equation, parse_system, parse_term, Equation};
pub use spectrum::{spec, sqrt_spec, Spectrum, SpectrumContext};
pub use term::{eval_term, Term};
