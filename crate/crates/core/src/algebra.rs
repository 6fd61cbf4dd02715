//! Finite algebras over an arbitrary finite signature.
//!
//! Elements are dense indices `0..size`. An `n`-ary table is stored
//! row-major with the first argument most significant, so the row of
//! `(a_1, ..., a_n)` is `a_1 * size^(n-1) + ... + a_n`. Nullary symbols have
//! single-entry tables.

use std::collections::HashMap;

use serde::Serialize;

use crate::congruence::Congruence;
use crate::error::{saturating_pow, Error, Limits, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// An ordered list of operation symbols. The order fixes table order everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

impl Signature {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let symbols: Vec<Symbol> = symbols
            .into_iter()
            .map(|(name, arity)| Symbol {
                name: name.into(),
                arity,
            })
            .collect();
        for (i, s) in symbols.iter().enumerate() {
            if s.name.is_empty() {
                return Err(Error::InvalidAlgebra("empty symbol name".into()));
            }
            if symbols[..i].iter().any(|t| t.name == s.name) {
                return Err(Error::InvalidAlgebra(format!(
                    "duplicate symbol `{}`",
                    s.name
                )));
            }
        }
        Ok(Signature { symbols })
    }

    pub fn empty() -> Self {
        Signature { symbols: vec![] }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn arity(&self, op: usize) -> usize {
        self.symbols[op].arity
    }

    pub fn has_constants(&self) -> bool {
        self.symbols.iter().any(|s| s.arity == 0)
    }
}

/// Calls `f` on every tuple in `0..size` of length `arity`, in lexicographic order.
pub(crate) fn for_each_tuple(size: usize, arity: usize, mut f: impl FnMut(&[usize])) {
    if arity == 0 {
        f(&[]);
        return;
    }
    if size == 0 {
        return;
    }
    let mut tuple = vec![0; arity];
    loop {
        f(&tuple);
        let mut i = arity;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < size {
                break;
            }
            tuple[i] = 0;
        }
    }
}

pub(crate) fn row_index(size: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * size + a)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    signature: Signature,
    size: usize,
    tables: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    /// Builds an algebra from row-major tables, one per symbol in signature order.
    pub fn new(signature: Signature, size: usize, tables: Vec<Vec<usize>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidAlgebra("empty universe".into()));
        }
        if tables.len() != signature.len() {
            return Err(Error::InvalidAlgebra(format!(
                "expected {} tables, got {}",
                signature.len(),
                tables.len()
            )));
        }
        for (sym, table) in signature.symbols().iter().zip(&tables) {
            let rows = saturating_pow(size, sym.arity);
            if table.len() as u128 != rows {
                return Err(Error::InvalidAlgebra(format!(
                    "table `{}` has {} entries, expected {rows}",
                    sym.name,
                    table.len()
                )));
            }
            if let Some(row) = table.iter().position(|&v| v >= size) {
                return Err(Error::InvalidAlgebra(format!(
                    "table `{}` row {row}: entry {} out of range for size {size}",
                    sym.name, table[row]
                )));
            }
        }
        Ok(FiniteAlgebra {
            signature,
            size,
            tables,
        })
    }

    /// Builds an algebra by evaluating `f(op, args)` on every row.
    pub fn from_fn(
        signature: Signature,
        size: usize,
        mut f: impl FnMut(usize, &[usize]) -> usize,
    ) -> Result<Self> {
        let mut tables = Vec::with_capacity(signature.len());
        for (op, sym) in signature.symbols().iter().enumerate() {
            let mut table = Vec::new();
            for_each_tuple(size, sym.arity, |args| table.push(f(op, args)));
            tables.push(table);
        }
        FiniteAlgebra::new(signature, size, tables)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.signature.arity(op));
        self.tables[op][row_index(self.size, args)]
    }

    pub fn constant(&self, op: usize) -> usize {
        self.tables[op][0]
    }

    /// Calls `f(op, args, value)` on every table row.
    pub fn for_each_row(&self, mut f: impl FnMut(usize, &[usize], usize)) {
        for (op, sym) in self.signature.symbols().iter().enumerate() {
            let table = &self.tables[op];
            let mut row = 0;
            for_each_tuple(self.size, sym.arity, |args| {
                f(op, args, table[row]);
                row += 1;
            });
        }
    }

    pub(crate) fn same_signature(&self, other: &FiniteAlgebra) -> Result<()> {
        if self.signature != other.signature {
            return Err(Error::SignatureMismatch(format!(
                "{:?} vs {:?}",
                self.signature
                    .symbols()
                    .iter()
                    .map(|s| (&s.name, s.arity))
                    .collect::<Vec<_>>(),
                other
                    .signature
                    .symbols()
                    .iter()
                    .map(|s| (&s.name, s.arity))
                    .collect::<Vec<_>>()
            )));
        }
        Ok(())
    }

    /// Whether `map` commutes with every operation table of `self` into `target`.
    pub fn is_homomorphism(&self, target: &FiniteAlgebra, map: &[usize]) -> bool {
        if map.len() != self.size || map.iter().any(|&v| v >= target.size) {
            return false;
        }
        if self.signature != target.signature {
            return false;
        }
        let mut ok = true;
        let mut image = Vec::new();
        self.for_each_row(|op, args, value| {
            if !ok {
                return;
            }
            image.clear();
            image.extend(args.iter().map(|&a| map[a]));
            if target.apply(op, &image) != map[value] {
                ok = false;
            }
        });
        ok
    }
}

/// A verified homomorphism, stored as its element map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Homomorphism {
    map: Vec<usize>,
    #[serde(skip)]
    target_size: usize,
}

impl Homomorphism {
    pub fn new(source: &FiniteAlgebra, target: &FiniteAlgebra, map: Vec<usize>) -> Result<Self> {
        source.same_signature(target)?;
        if map.len() != source.size {
            return Err(Error::NotAHomomorphism(format!(
                "map has {} entries for a universe of size {}",
                map.len(),
                source.size
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.size) {
            return Err(Error::ElementOutOfRange {
                element: v,
                size: target.size,
            });
        }
        if !source.is_homomorphism(target, &map) {
            return Err(Error::NotAHomomorphism(format!("{map:?}")));
        }
        Ok(Homomorphism {
            map,
            target_size: target.size,
        })
    }

    pub(crate) fn new_unchecked(map: Vec<usize>, target_size: usize) -> Self {
        Homomorphism { map, target_size }
    }

    pub fn identity(alg: &FiniteAlgebra) -> Self {
        Homomorphism {
            map: (0..alg.size).collect(),
            target_size: alg.size,
        }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn source_size(&self) -> usize {
        self.map.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target_size];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target_size];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Homomorphism {
        assert_eq!(self.target_size, other.source_size());
        Homomorphism {
            map: self.map.iter().map(|&a| other.map[a]).collect(),
            target_size: other.target_size,
        }
    }
}

/// Mixed-radix element encoding of a direct product. The first factor is the
/// most significant digit, so index order is lexicographic tuple order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductLayout {
    radices: Vec<usize>,
}

impl ProductLayout {
    pub fn new(radices: Vec<usize>) -> Self {
        ProductLayout { radices }
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn size(&self) -> u128 {
        self.radices
            .iter()
            .fold(1u128, |acc, &r| acc.saturating_mul(r as u128))
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.radices.len());
        tuple
            .iter()
            .zip(&self.radices)
            .fold(0, |acc, (&t, &r)| acc * r + t)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut tuple = vec![0; self.radices.len()];
        for (slot, &r) in tuple.iter_mut().zip(&self.radices).rev() {
            *slot = index % r;
            index /= r;
        }
        tuple
    }
}

/// Direct product with componentwise tables; see [`ProductLayout`] for the encoding.
pub fn product(algs: &[FiniteAlgebra]) -> Result<FiniteAlgebra> {
    let first = algs
        .first()
        .ok_or_else(|| Error::InvalidAlgebra("empty product; use trivial_algebra".into()))?;
    for a in &algs[1..] {
        first.same_signature(a)?;
    }
    let layout = ProductLayout::new(algs.iter().map(|a| a.size).collect());
    Limits::current().check_search(layout.size(), "product")?;
    let size = layout.size() as usize;
    let decoded: Vec<Vec<usize>> = (0..size).map(|i| layout.decode(i)).collect();
    let mut component_args = Vec::new();
    let mut out = Vec::with_capacity(algs.len());
    FiniteAlgebra::from_fn(first.signature.clone(), size, |op, args| {
        out.clear();
        for (k, alg) in algs.iter().enumerate() {
            component_args.clear();
            component_args.extend(args.iter().map(|&a| decoded[a][k]));
            out.push(alg.apply(op, &component_args));
        }
        layout.encode(&out)
    })
}

/// Projection of `product(algs)` onto factor `k`.
pub fn projection(algs: &[FiniteAlgebra], k: usize) -> Homomorphism {
    let layout = ProductLayout::new(algs.iter().map(|a| a.size).collect());
    let size = layout.size() as usize;
    Homomorphism::new_unchecked(
        (0..size).map(|i| layout.decode(i)[k]).collect(),
        algs[k].size,
    )
}

/// The one-element algebra, which is also the empty product.
pub fn trivial_algebra(signature: &Signature) -> FiniteAlgebra {
    FiniteAlgebra::from_fn(signature.clone(), 1, |_, _| 0).expect("trivial algebra is valid")
}

#[derive(Debug, Clone)]
pub struct Subalgebra {
    /// Sorted elements of the parent algebra.
    pub universe: Vec<usize>,
    pub algebra: FiniteAlgebra,
    pub inclusion: Homomorphism,
}

/// Least subuniverse containing `seed` and every constant.
pub fn subuniverse_generated(alg: &FiniteAlgebra, seed: &[usize]) -> Result<Vec<usize>> {
    let mut member = vec![false; alg.size];
    let mut order = Vec::new();
    for &s in seed {
        if s >= alg.size {
            return Err(Error::ElementOutOfRange {
                element: s,
                size: alg.size,
            });
        }
        if !std::mem::replace(&mut member[s], true) {
            order.push(s);
        }
    }
    close_subuniverse(alg, &mut member, &mut order);
    order.sort_unstable();
    Ok(order)
}

fn close_subuniverse(alg: &FiniteAlgebra, member: &mut [bool], order: &mut Vec<usize>) {
    loop {
        let current = order.clone();
        let before = order.len();
        for (op, sym) in alg.signature.symbols().iter().enumerate() {
            for_each_tuple(current.len(), sym.arity, |idx| {
                let args: Vec<usize> = idx.iter().map(|&i| current[i]).collect();
                let v = alg.apply(op, &args);
                if !std::mem::replace(&mut member[v], true) {
                    order.push(v);
                }
            });
        }
        if order.len() == before {
            break;
        }
    }
}

pub fn subalgebra_generated(alg: &FiniteAlgebra, seed: &[usize]) -> Result<Subalgebra> {
    let universe = subuniverse_generated(alg, seed)?;
    if universe.is_empty() {
        return Err(Error::EmptySubuniverse);
    }
    let position: HashMap<usize, usize> =
        universe.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut args = Vec::new();
    let algebra = FiniteAlgebra::from_fn(alg.signature.clone(), universe.len(), |op, idx| {
        args.clear();
        args.extend(idx.iter().map(|&i| universe[i]));
        position[&alg.apply(op, &args)]
    })?;
    let inclusion = Homomorphism::new_unchecked(universe.clone(), alg.size);
    Ok(Subalgebra {
        universe,
        algebra,
        inclusion,
    })
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: FiniteAlgebra,
    pub projection: Homomorphism,
}

/// `alg / theta`, blocks numbered in order of their least representative.
pub fn quotient(alg: &FiniteAlgebra, theta: &Congruence) -> Result<Quotient> {
    if theta.size() != alg.size {
        return Err(Error::SizeMismatch(theta.size(), alg.size));
    }
    if !theta.is_compatible(alg) {
        return Err(Error::NotACongruence(format!("{theta} on algebra")));
    }
    let block = theta.block_indices();
    let reps = theta.representatives();
    let mut args = Vec::new();
    let algebra = FiniteAlgebra::from_fn(alg.signature.clone(), reps.len(), |op, idx| {
        args.clear();
        args.extend(idx.iter().map(|&b| reps[b]));
        block[alg.apply(op, &args)]
    })?;
    let projection = Homomorphism::new_unchecked(block, reps.len());
    Ok(Quotient {
        algebra,
        projection,
    })
}

/// How each element of a generated algebra is reached in a hom search.
#[derive(Debug, Clone)]
enum Step {
    Constant(usize, usize),
    Generator(usize, usize),
    Derived(usize, usize, Vec<usize>),
}

/// A greedy generating set and a straight-line program deriving every element from it.
fn derivation(alg: &FiniteAlgebra) -> (Vec<usize>, Vec<Step>) {
    let mut reached = vec![false; alg.size];
    let mut steps = Vec::new();
    let mut generators = Vec::new();
    let mut order: Vec<usize> = Vec::new();
    for (op, sym) in alg.signature.symbols().iter().enumerate() {
        if sym.arity == 0 {
            let c = alg.constant(op);
            if !std::mem::replace(&mut reached[c], true) {
                order.push(c);
                steps.push(Step::Constant(op, c));
            }
        }
    }
    let extend = |reached: &mut Vec<bool>, order: &mut Vec<usize>, steps: &mut Vec<Step>| loop {
        let current = order.clone();
        let before = order.len();
        for (op, sym) in alg.signature.symbols().iter().enumerate() {
            if sym.arity == 0 {
                continue;
            }
            for_each_tuple(current.len(), sym.arity, |idx| {
                let args: Vec<usize> = idx.iter().map(|&i| current[i]).collect();
                let v = alg.apply(op, &args);
                if !std::mem::replace(&mut reached[v], true) {
                    order.push(v);
                    steps.push(Step::Derived(v, op, args));
                }
            });
        }
        if order.len() == before {
            break;
        }
    };
    extend(&mut reached, &mut order, &mut steps);
    for a in 0..alg.size {
        if !reached[a] {
            reached[a] = true;
            order.push(a);
            steps.push(Step::Generator(a, generators.len()));
            generators.push(a);
            extend(&mut reached, &mut order, &mut steps);
        }
    }
    (generators, steps)
}

/// Every homomorphism `a -> b`, in lexicographic order of the element map.
pub fn enumerate_homs(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Vec<Homomorphism>> {
    enumerate_homs_with(a, b, &Limits::current())
}

pub fn enumerate_homs_with(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    limits: &Limits,
) -> Result<Vec<Homomorphism>> {
    let mut out = Vec::new();
    search_homs(a, b, limits, |map| {
        out.push(Homomorphism::new_unchecked(map.to_vec(), b.size));
        true
    })?;
    out.sort_unstable();
    Ok(out)
}

/// Runs `visit` on every homomorphism map until it returns `false`.
pub(crate) fn search_homs(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    limits: &Limits,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<()> {
    a.same_signature(b)?;
    limits.check_size(a.size, "homomorphism search")?;
    limits.check_size(b.size, "homomorphism search")?;
    let (generators, steps) = derivation(a);
    limits.check_search(
        saturating_pow(b.size, generators.len()),
        "homomorphism search",
    )?;
    let mut choice = vec![0usize; generators.len()];
    let mut map = vec![usize::MAX; a.size];
    let mut image_args = Vec::new();
    loop {
        for step in &steps {
            let (element, value) = match step {
                Step::Constant(op, c) => (*c, b.constant(*op)),
                Step::Generator(g, k) => (*g, choice[*k]),
                Step::Derived(v, op, args) => {
                    image_args.clear();
                    image_args.extend(args.iter().map(|&x| map[x]));
                    (*v, b.apply(*op, &image_args))
                }
            };
            map[element] = value;
        }
        // The program only fixes each element once; constants and rows not
        // used by the derivation are checked against the full tables here.
        if a.is_homomorphism(b, &map) && !visit(&map) {
            return Ok(());
        }
        let mut i = choice.len();
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < b.size {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// The lexicographically first injective homomorphism `a -> b`, if any.
pub fn find_embedding(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<Homomorphism>> {
    a.same_signature(b)?;
    if a.size > b.size {
        return Ok(None);
    }
    Ok(enumerate_homs(a, b)?.into_iter().find(|h| h.is_injective()))
}

/// Whether `a` embeds into some member of `class`.
pub fn is_in_is(a: &FiniteAlgebra, class: &[FiniteAlgebra]) -> Result<bool> {
    for b in class {
        if find_embedding(a, b)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{b2, boolean_signature, c2, c3, semilattice_signature};

    /// Brute force over all maps.
    fn all_homs_brute(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for_each_tuple(b.size(), a.size(), |map| {
            if a.is_homomorphism(b, map) {
                out.push(map.to_vec());
            }
        });
        out
    }

    fn maps(homs: &[Homomorphism]) -> Vec<Vec<usize>> {
        homs.iter().map(|h| h.map().to_vec()).collect()
    }

    #[test]
    fn homs_c3_to_c2() {
        let homs = enumerate_homs(&c3(), &c2()).unwrap();
        assert_eq!(
            maps(&homs),
            vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]
        );
        assert_eq!(maps(&homs), all_homs_brute(&c3(), &c2()));
    }

    #[test]
    fn homs_c2_to_c2_and_b2_to_b2() {
        assert_eq!(
            maps(&enumerate_homs(&c2(), &c2()).unwrap()),
            vec![vec![0, 0], vec![0, 1], vec![1, 1]]
        );
        assert_eq!(maps(&enumerate_homs(&b2(), &b2()).unwrap()), vec![vec![0, 1]]);
    }

    #[test]
    fn homs_match_brute_force_on_products() {
        let c2sq = product(&[c2(), c2()]).unwrap();
        let b2sq = product(&[b2(), b2()]).unwrap();
        for (a, b) in [
            (&c2sq, &c2()),
            (&c3(), &c2sq),
            (&c2sq, &c3()),
            (&c2sq, &c2sq),
            (&b2sq, &b2()),
            (&b2(), &b2sq),
            (&b2sq, &b2sq),
        ] {
            assert_eq!(maps(&enumerate_homs(a, b).unwrap()), all_homs_brute(a, b));
        }
    }

    #[test]
    fn signature_mismatch_is_rejected() {
        assert!(matches!(
            enumerate_homs(&c2(), &b2()),
            Err(Error::SignatureMismatch(_))
        ));
        assert!(matches!(
            product(&[c2(), b2()]),
            Err(Error::SignatureMismatch(_))
        ));
    }

    #[test]
    fn hom_guard_trips() {
        let limits = Limits {
            max_size: 32,
            max_search: 3,
            max_family: 16,
        };
        let c2sq = product(&[c2(), c2()]).unwrap();
        assert!(matches!(
            enumerate_homs_with(&c2sq, &c2(), &limits),
            Err(Error::Resource(_))
        ));
        let small = Limits {
            max_size: 2,
            ..limits
        };
        assert!(matches!(
            enumerate_homs_with(&c3(), &c2(), &small),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn products() {
        let p = product(&[c2(), c2()]).unwrap();
        assert_eq!(p.size(), 4);
        // (0,1) ∧ (1,0) = (0,0)
        assert_eq!(p.apply(0, &[1, 2]), 0);
        let unary = product(&[c2()]).unwrap();
        assert_eq!(unary, c2());
        let p = product(&[c2(), c3()]).unwrap();
        assert_eq!(p.size(), 6);
        let layout = ProductLayout::new(vec![2, 3]);
        let x = layout.encode(&[1, 2]);
        let y = layout.encode(&[0, 1]);
        assert_eq!(layout.decode(p.apply(0, &[x, y])), vec![0, 1]);
        for k in 0..2 {
            let pi = projection(&[c2(), c3()], k);
            let target = if k == 0 { c2() } else { c3() };
            assert!(p.is_homomorphism(&target, pi.map()));
        }
    }

    #[test]
    fn trivial_algebras() {
        let t = trivial_algebra(&semilattice_signature());
        assert_eq!(t.size(), 1);
        assert_eq!(t.apply(0, &[0, 0]), 0);
        let t = trivial_algebra(&boolean_signature());
        assert_eq!(t.size(), 1);
        let t = trivial_algebra(&Signature::empty());
        assert_eq!(t.size(), 1);
        assert!(t.tables().is_empty());
    }

    #[test]
    fn generated_subalgebras() {
        let c2sq = product(&[c2(), c2()]).unwrap();
        // (0,1)=1, (1,0)=2
        assert_eq!(subuniverse_generated(&c2sq, &[1, 2]).unwrap(), vec![0, 1, 2]);
        assert_eq!(subuniverse_generated(&c3(), &[2]).unwrap(), vec![2]);
        let b2sq = product(&[b2(), b2()]).unwrap();
        assert_eq!(subuniverse_generated(&b2sq, &[]).unwrap(), vec![0, 3]);
        assert!(matches!(
            subalgebra_generated(&c3(), &[]),
            Err(Error::EmptySubuniverse)
        ));
        let sub = subalgebra_generated(&c2sq, &[1, 2]).unwrap();
        assert!(sub.algebra.is_homomorphism(&c2sq, sub.inclusion.map()));
        assert!(sub.inclusion.is_injective());
    }

    #[test]
    fn quotients() {
        let c3 = c3();
        let q = quotient(&c3, &Congruence::from_labels(vec![0, 0, 2]).unwrap()).unwrap();
        assert_eq!(q.algebra, c2());
        assert_eq!(q.projection.map(), &[0, 0, 1]);
        let q = quotient(&c3, &Congruence::delta(3)).unwrap();
        assert_eq!(q.algebra, c3);
        assert!(q.projection.is_injective());
        let q = quotient(&c3, &Congruence::nabla(3)).unwrap();
        assert_eq!(q.algebra, trivial_algebra(c3.signature()));
        let bad = Congruence::from_labels(vec![0, 1, 0]).unwrap();
        assert!(matches!(quotient(&c3, &bad), Err(Error::NotACongruence(_))));
    }

    #[test]
    fn embeddings() {
        let e = find_embedding(&c2(), &c3()).unwrap().unwrap();
        assert_eq!(e.map(), &[0, 1]);
        assert!(find_embedding(&c3(), &c2()).unwrap().is_none());
        let c2sq = product(&[c2(), c2()]).unwrap();
        let e = find_embedding(&c3(), &c2sq).unwrap().unwrap();
        assert!(c3().is_homomorphism(&c2sq, e.map()));
        assert!(e.is_injective());
        assert_eq!(e.map(), &[0, 1, 3]);
    }

    #[test]
    fn is_membership() {
        assert!(is_in_is(&c2(), &[c2()]).unwrap());
        assert!(!is_in_is(&c3(), &[c2()]).unwrap());
        assert!(is_in_is(&trivial_algebra(&semilattice_signature()), &[c2()]).unwrap());
        assert!(!is_in_is(&trivial_algebra(&boolean_signature()), &[b2()]).unwrap());
    }

    #[test]
    fn composition_closure() {
        let c2sq = product(&[c2(), c2()]).unwrap();
        let algs = [c2(), c3(), c2sq];
        for a in &algs {
            for b in &algs {
                for c in &algs {
                    let ac = enumerate_homs(a, c).unwrap();
                    for f in enumerate_homs(a, b).unwrap() {
                        for g in enumerate_homs(b, c).unwrap() {
                            assert!(ac.contains(&f.then(&g)));
                        }
                    }
                }
            }
        }
    }
}
