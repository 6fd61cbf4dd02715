//! Terms over a signature and their evaluation in finite algebras.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{FiniteAlgebra, Signature};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Op(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn op(name: impl Into<String>, args: Vec<Term>) -> Self {
        Term::Op(name.into(), args)
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Op(name.into(), vec![])
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Op(_, args) if args.is_empty() => 0,
            Term::Op(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Op(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Resolves symbols and variables to indices for repeated evaluation.
    pub fn compile(&self, signature: &Signature, vars: &[String]) -> Result<CompiledTerm> {
        Ok(match self {
            Term::Var(v) => match vars.iter().position(|x| x == v) {
                Some(i) => CompiledTerm::Var(i),
                None => return Err(Error::UnboundVariable(v.clone())),
            },
            Term::Op(name, args) => {
                let op = signature
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                let expected = signature.arity(op);
                if expected != args.len() {
                    return Err(Error::ArityMismatch {
                        symbol: name.clone(),
                        expected,
                        found: args.len(),
                    });
                }
                CompiledTerm::Op(
                    op,
                    args.iter()
                        .map(|a| a.compile(signature, vars))
                        .collect::<Result<_>>()?,
                )
            }
        })
    }
}

/// Prefix form, e.g. `(meet x (neg y))`; constants print bare.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Op(name, args) if args.is_empty() => write!(f, "{name}"),
            Term::Op(name, args) => {
                write!(f, "({name}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompiledTerm {
    Var(usize),
    Op(usize, Vec<CompiledTerm>),
}

impl CompiledTerm {
    /// Value of the term at `values` (indexed like the compile-time variable list).
    pub fn eval(&self, alg: &FiniteAlgebra, values: &[usize]) -> usize {
        match self {
            CompiledTerm::Var(i) => values[*i],
            CompiledTerm::Op(op, args) => {
                let vals: Vec<usize> = args.iter().map(|a| a.eval(alg, values)).collect();
                alg.apply(*op, &vals)
            }
        }
    }
}

/// `t^A(assignment)`.
pub fn eval_term(
    alg: &FiniteAlgebra,
    t: &Term,
    assignment: &BTreeMap<String, usize>,
) -> Result<usize> {
    let vars: Vec<String> = assignment.keys().cloned().collect();
    let values: Vec<usize> = assignment.values().copied().collect();
    if let Some(&v) = values.iter().find(|&&v| v >= alg.size()) {
        return Err(Error::ElementOutOfRange {
            element: v,
            size: alg.size(),
        });
    }
    Ok(t.compile(alg.signature(), &vars)?.eval(alg, &values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::for_each_tuple;
    use crate::fixtures::{c2, c3};

    fn meet(a: Term, b: Term) -> Term {
        Term::op("meet", vec![a, b])
    }

    fn assign(pairs: &[(&str, usize)]) -> BTreeMap<String, usize> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn evaluation_examples() {
        let x = Term::var("x");
        let y = Term::var("y");
        assert_eq!(
            eval_term(&c2(), &meet(x.clone(), y.clone()), &assign(&[("x", 1), ("y", 0)])).unwrap(),
            0
        );
        assert_eq!(eval_term(&c2(), &x, &assign(&[("x", 1)])).unwrap(), 1);
        let t = meet(meet(x.clone(), y.clone()), x.clone());
        assert_eq!(eval_term(&c3(), &t, &assign(&[("x", 2), ("y", 1)])).unwrap(), 1);
        // every assignment: (x ∧ y) ∧ x = min(x, y)
        for_each_tuple(3, 2, |v| {
            let got = eval_term(&c3(), &t, &assign(&[("x", v[0]), ("y", v[1])])).unwrap();
            assert_eq!(got, v[0].min(v[1]));
        });
    }

    #[test]
    fn malformed_terms() {
        let t = meet(Term::var("x"), Term::var("z"));
        assert_eq!(
            eval_term(&c2(), &t, &assign(&[("x", 1)])),
            Err(Error::UnboundVariable("z".into()))
        );
        let t = Term::op("meet", vec![Term::var("x")]);
        assert!(matches!(
            eval_term(&c2(), &t, &assign(&[("x", 1)])),
            Err(Error::ArityMismatch { .. })
        ));
        let t = Term::op("join", vec![Term::var("x"), Term::var("x")]);
        assert!(matches!(
            eval_term(&c2(), &t, &assign(&[("x", 1)])),
            Err(Error::UnknownSymbol(_))
        ));
    }

    #[test]
    fn display_is_prefix() {
        let t = meet(Term::var("x"), Term::op("neg", vec![Term::constant("one")]));
        assert_eq!(t.to_string(), "(meet x (neg one))");
        assert_eq!(t.depth(), 2);
        assert_eq!(t.variables(), vec!["x".to_string()]);
    }
}
