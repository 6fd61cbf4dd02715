//! Congruences as operation-compatible partitions.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;

use serde::{Serialize, Serializer};

use crate::algebra::{for_each_tuple, FiniteAlgebra, Homomorphism};
use crate::error::{Error, Limits, Result};

/// A partition of `0..size` stored as least-representative labels:
/// `labels[i]` is the smallest element of the block containing `i`.
///
/// The canonical order puts finer partitions first (more blocks), breaking
/// ties by the label vector, so `Δ` is always first and `∇` last.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    labels: Vec<usize>,
}

impl Congruence {
    pub fn delta(size: usize) -> Self {
        Congruence {
            labels: (0..size).collect(),
        }
    }

    pub fn nabla(size: usize) -> Self {
        Congruence {
            labels: vec![0; size],
        }
    }

    /// Validates a least-representative labeling.
    pub fn from_labels(labels: Vec<usize>) -> Result<Self> {
        for (i, &l) in labels.iter().enumerate() {
            if l > i || labels[l] != l {
                return Err(Error::NotACongruence(format!(
                    "labels {labels:?} are not least-representative"
                )));
            }
        }
        Ok(Congruence { labels })
    }

    /// Partition of `0..keys.len()` by equal key.
    pub fn from_keys<K: Eq + Hash>(keys: &[K]) -> Self {
        let mut first: HashMap<&K, usize> = HashMap::new();
        let labels = keys
            .iter()
            .enumerate()
            .map(|(i, k)| *first.entry(k).or_insert(i))
            .collect();
        Congruence { labels }
    }

    pub fn from_blocks(size: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; size];
        for block in blocks {
            let Some(&least) = block.iter().min() else {
                return Err(Error::NotACongruence("empty block".into()));
            };
            for &e in block {
                if e >= size {
                    return Err(Error::ElementOutOfRange { element: e, size });
                }
                if labels[e] != usize::MAX {
                    return Err(Error::NotACongruence(format!("element {e} in two blocks")));
                }
                labels[e] = least;
            }
        }
        if let Some(e) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::NotACongruence(format!("element {e} in no block")));
        }
        Ok(Congruence { labels })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> usize {
        self.labels[a]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn is_delta(&self) -> bool {
        self.labels.iter().enumerate().all(|(i, &l)| i == l)
    }

    pub fn is_nabla(&self) -> bool {
        self.labels.iter().all(|&l| l == 0)
    }

    /// Least representatives in increasing order; block `k` is `representatives()[k]`.
    pub fn representatives(&self) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(i, l)| i == *l)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn block_count(&self) -> usize {
        self.labels
            .iter()
            .enumerate()
            .filter(|(i, l)| i == *l)
            .count()
    }

    /// Maps each element to the index of its block (blocks ordered by least representative).
    pub fn block_indices(&self) -> Vec<usize> {
        let mut index = vec![usize::MAX; self.size()];
        let mut next = 0;
        for (i, slot) in index.iter_mut().enumerate() {
            if self.labels[i] == i {
                *slot = next;
                next += 1;
            }
        }
        self.labels.iter().map(|&l| index[l]).collect()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let index = self.block_indices();
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (e, &b) in index.iter().enumerate() {
            blocks[b].push(e);
        }
        blocks
    }

    /// Pairs `(a, b)` with `a < b` in the relation.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size();
        (0..n).flat_map(move |a| ((a + 1)..n).filter(move |&b| self.related(a, b)).map(move |b| (a, b)))
    }

    /// Pairs `(a, label(a))` for non-representatives; they generate the equivalence.
    pub fn spanning_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.labels
            .iter()
            .enumerate()
            .filter(|(i, l)| i != *l)
            .map(|(i, &l)| (l, i))
    }

    pub fn contains_pair(&self, (a, b): (usize, usize)) -> bool {
        self.related(a, b)
    }

    /// `self ⊆ other` as relations.
    pub fn leq(&self, other: &Congruence) -> bool {
        self.size() == other.size()
            && self
                .labels
                .iter()
                .enumerate()
                .all(|(i, &l)| other.related(i, l))
    }

    pub fn is_compatible(&self, alg: &FiniteAlgebra) -> bool {
        if self.size() != alg.size() {
            return false;
        }
        let mut ok = true;
        let mut shifted = Vec::new();
        alg.for_each_row(|op, args, value| {
            if !ok {
                return;
            }
            for slot in 0..args.len() {
                let rep = self.labels[args[slot]];
                if rep != args[slot] {
                    shifted.clear();
                    shifted.extend_from_slice(args);
                    shifted[slot] = rep;
                    if !self.related(alg.apply(op, &shifted), value) {
                        ok = false;
                        return;
                    }
                }
            }
        });
        ok
    }

    /// Preimage of this congruence (on the target) along `h`.
    pub fn preimage(&self, h: &Homomorphism) -> Congruence {
        assert_eq!(h.target_size(), self.size());
        let keys: Vec<usize> = h.map().iter().map(|&b| self.labels[b]).collect();
        Congruence::from_keys(&keys)
    }
}

impl Ord for Congruence {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .block_count()
            .cmp(&self.block_count())
            .then_with(|| self.labels.cmp(&other.labels))
    }
}

impl PartialOrd for Congruence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.blocks();
        write!(f, "{{")?;
        for (k, block) in blocks.iter().enumerate() {
            if k > 0 {
                write!(f, "|")?;
            }
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Congruence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks().serialize(serializer)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn from_congruence(theta: &Congruence) -> Self {
        UnionFind {
            parent: theta.labels.clone(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller root so roots stay least representatives.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let labels = (0..self.parent.len()).map(|i| self.find(i)).collect();
        Congruence { labels }
    }
}

/// Closes a union-find state under one-step compatibility until nothing changes.
fn close(alg: &FiniteAlgebra, mut uf: UnionFind) -> Congruence {
    let mut shifted = Vec::new();
    loop {
        let mut changed = false;
        for (op, sym) in alg.signature().symbols().iter().enumerate() {
            if sym.arity == 0 {
                continue;
            }
            for_each_tuple(alg.size(), sym.arity, |args| {
                let value = alg.apply(op, args);
                for slot in 0..args.len() {
                    let root = uf.find(args[slot]);
                    if root != args[slot] {
                        shifted.clear();
                        shifted.extend_from_slice(args);
                        shifted[slot] = root;
                        changed |= uf.union(value, alg.apply(op, &shifted));
                    }
                }
            });
        }
        if !changed {
            return uf.into_congruence();
        }
    }
}

/// Least congruence containing `pairs`.
pub fn congruence_closure(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<Congruence> {
    let mut uf = UnionFind::new(alg.size());
    for &(a, b) in pairs {
        for e in [a, b] {
            if e >= alg.size() {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    size: alg.size(),
                });
            }
        }
        uf.union(a, b);
    }
    Ok(close(alg, uf))
}

pub fn principal(alg: &FiniteAlgebra, a: usize, b: usize) -> Result<Congruence> {
    congruence_closure(alg, &[(a, b)])
}

/// Partition by equal image.
pub fn kernel(h: &Homomorphism) -> Congruence {
    Congruence::from_keys(h.map())
}

/// Intersection; the empty meet over `Con A` is `∇`.
pub fn meet(size: usize, congruences: &[Congruence]) -> Result<Congruence> {
    for c in congruences {
        if c.size() != size {
            return Err(Error::SizeMismatch(c.size(), size));
        }
    }
    let keys: Vec<Vec<usize>> = (0..size)
        .map(|i| congruences.iter().map(|c| c.labels[i]).collect())
        .collect();
    Ok(Congruence::from_keys(&keys))
}

/// Least congruence containing all of `congruences`; the empty join is `Δ`.
pub fn join(alg: &FiniteAlgebra, congruences: &[Congruence]) -> Result<Congruence> {
    let mut uf = UnionFind::new(alg.size());
    for c in congruences {
        if c.size() != alg.size() {
            return Err(Error::SizeMismatch(c.size(), alg.size()));
        }
        for (a, b) in c.spanning_pairs() {
            uf.union(a, b);
        }
    }
    Ok(close(alg, uf))
}

fn join_pair(alg: &FiniteAlgebra, a: &Congruence, b: &Congruence) -> Congruence {
    let mut uf = UnionFind::from_congruence(a);
    for (x, y) in b.spanning_pairs() {
        uf.union(x, y);
    }
    close(alg, uf)
}

pub fn leq(a: &Congruence, b: &Congruence) -> Result<bool> {
    if a.size() != b.size() {
        return Err(Error::SizeMismatch(a.size(), b.size()));
    }
    Ok(a.leq(b))
}

/// Every congruence of `alg` in canonical order, as the join-closure of the
/// principal congruences.
pub fn all_congruences(alg: &FiniteAlgebra) -> Result<Vec<Congruence>> {
    let limits = Limits::current();
    limits.check_size(alg.size(), "congruence lattice")?;
    let n = alg.size();
    let mut seen: BTreeSet<Congruence> = BTreeSet::new();
    seen.insert(Congruence::delta(n));
    let mut principals = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let p = principal(alg, a, b)?;
            if seen.insert(p.clone()) {
                principals.push(p);
            }
        }
    }
    // Every congruence is a join of principal ones, so joining the frontier
    // with principal congruences reaches the whole lattice.
    let mut frontier: Vec<Congruence> = principals.clone();
    let mut work: u128 = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            for p in &principals {
                work += 1;
                let j = join_pair(alg, c, p);
                if seen.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        limits.check_search(work, "congruence lattice")?;
        frontier = next;
    }
    Ok(seen.into_iter().collect())
}

/// Largest universe accepted by [`all_congruences_exhaustive`].
pub const EXHAUSTIVE_MAX_SIZE: usize = 10;

/// Every congruence by filtering all partitions (restricted growth strings).
pub fn all_congruences_exhaustive(alg: &FiniteAlgebra) -> Result<Vec<Congruence>> {
    let n = alg.size();
    if n > EXHAUSTIVE_MAX_SIZE {
        return Err(Error::Resource(format!(
            "exhaustive partition filter: size {n} exceeds {EXHAUSTIVE_MAX_SIZE}"
        )));
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, alg: &FiniteAlgebra, out: &mut Vec<Congruence>) {
        if i == rgs.len() {
            let theta = Congruence::from_keys(rgs);
            if theta.is_compatible(alg) {
                out.push(theta);
            }
            return;
        }
        for v in 0..=max + 1 {
            rgs[i] = v;
            rec(i + 1, max.max(v), rgs, alg, out);
        }
    }
    if n == 0 {
        return Ok(out);
    }
    rec(1, 0, &mut rgs, alg, &mut out);
    out.sort();
    Ok(out)
}

/// `theta / psi` as a congruence of `A / psi`; requires `psi ⊆ theta`.
pub fn quotient_congruence(theta: &Congruence, psi: &Congruence) -> Result<Congruence> {
    if theta.size() != psi.size() {
        return Err(Error::SizeMismatch(theta.size(), psi.size()));
    }
    if let Some((a, b)) = psi.spanning_pairs().find(|&(a, b)| !theta.related(a, b)) {
        return Err(Error::NotContained(format!(
            "pair ({a},{b}) of {psi} is not in {theta}"
        )));
    }
    let keys: Vec<usize> = psi
        .representatives()
        .iter()
        .map(|&r| theta.labels[r])
        .collect();
    Ok(Congruence::from_keys(&keys))
}

/// Inverse of [`quotient_congruence`]: pulls a congruence of `A / theta` back to `A`.
pub fn unquotient(over: &Congruence, theta: &Congruence) -> Result<Congruence> {
    if over.size() != theta.block_count() {
        return Err(Error::SizeMismatch(over.size(), theta.block_count()));
    }
    let block = theta.block_indices();
    let keys: Vec<usize> = block.iter().map(|&b| over.labels[b]).collect();
    Ok(Congruence::from_keys(&keys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{enumerate_homs, product, quotient, trivial_algebra};
    use crate::fixtures::{b2, c2, c3, semilattice_signature};

    fn cg(labels: &[usize]) -> Congruence {
        Congruence::from_labels(labels.to_vec()).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(congruence_closure(&c3(), &[(1, 2)]).unwrap(), cg(&[0, 1, 1]));
        assert_eq!(congruence_closure(&c3(), &[(0, 2)]).unwrap(), Congruence::nabla(3));
        assert_eq!(congruence_closure(&c3(), &[]).unwrap(), Congruence::delta(3));
        assert!(congruence_closure(&c3(), &[(0, 5)]).is_err());
    }

    #[test]
    fn c3_lattice() {
        let all = all_congruences(&c3()).unwrap();
        assert_eq!(
            all,
            vec![cg(&[0, 1, 2]), cg(&[0, 0, 2]), cg(&[0, 1, 1]), cg(&[0, 0, 0])]
        );
        assert_eq!(all, all_congruences_exhaustive(&c3()).unwrap());
        assert_eq!(all_congruences(&c2()).unwrap().len(), 2);
        let t = trivial_algebra(&semilattice_signature());
        assert_eq!(all_congruences(&t).unwrap(), vec![Congruence::delta(1)]);
        assert_eq!(all_congruences_exhaustive(&t).unwrap(), vec![Congruence::delta(1)]);
    }

    #[test]
    fn methods_agree_on_products() {
        for alg in [
            product(&[c2(), c2()]).unwrap(),
            product(&[c2(), c3()]).unwrap(),
            product(&[b2(), b2()]).unwrap(),
            product(&[b2(), b2(), b2()]).unwrap(),
        ] {
            assert_eq!(
                all_congruences(&alg).unwrap(),
                all_congruences_exhaustive(&alg).unwrap()
            );
        }
    }

    #[test]
    fn kernels() {
        let homs = enumerate_homs(&c3(), &c2()).unwrap();
        assert_eq!(kernel(&homs[1]), cg(&[0, 0, 2]));
        assert_eq!(kernel(&Homomorphism::identity(&c3())), Congruence::delta(3));
        assert_eq!(kernel(&homs[0]), Congruence::nabla(3));
    }

    #[test]
    fn lattice_operations() {
        let t1 = cg(&[0, 0, 2]);
        let t2 = cg(&[0, 1, 1]);
        assert_eq!(meet(3, &[t1.clone(), t2.clone()]).unwrap(), Congruence::delta(3));
        assert_eq!(join(&c3(), &[t1.clone(), t2.clone()]).unwrap(), Congruence::nabla(3));
        assert_eq!(meet(3, &[]).unwrap(), Congruence::nabla(3));
        assert_eq!(join(&c3(), &[]).unwrap(), Congruence::delta(3));
        assert!(leq(&Congruence::delta(3), &t1).unwrap());
        assert!(!leq(&t1, &t2).unwrap());
        assert!(matches!(
            meet(3, &[Congruence::delta(2)]),
            Err(Error::SizeMismatch(2, 3))
        ));
    }

    #[test]
    fn quotient_congruences() {
        let t1 = cg(&[0, 0, 2]);
        let t2 = cg(&[0, 1, 1]);
        assert_eq!(quotient_congruence(&t1, &Congruence::delta(3)).unwrap(), t1);
        assert_eq!(
            quotient_congruence(&Congruence::nabla(3), &t1).unwrap(),
            Congruence::nabla(2)
        );
        assert!(matches!(
            quotient_congruence(&t2, &t1),
            Err(Error::NotContained(_))
        ));
    }

    #[test]
    fn correspondence_round_trip() {
        let alg = product(&[c2(), c3()]).unwrap();
        let all = all_congruences(&alg).unwrap();
        for psi in &all {
            for theta in all.iter().filter(|t| psi.leq(t)) {
                let down = quotient_congruence(theta, psi).unwrap();
                assert_eq!(&unquotient(&down, psi).unwrap(), theta);
            }
        }
    }

    #[test]
    fn quotient_kernel_is_theta() {
        let alg = product(&[c2(), c2()]).unwrap();
        for theta in all_congruences(&alg).unwrap() {
            let q = quotient(&alg, &theta).unwrap();
            assert!(q.projection.is_surjective());
            assert!(alg.is_homomorphism(&q.algebra, q.projection.map()));
            assert_eq!(kernel(&q.projection), theta);
        }
    }

    #[test]
    fn closure_operator_laws() {
        for alg in [c3(), product(&[c2(), c2()]).unwrap()] {
            let n = alg.size();
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
                .collect();
            let subsets: Vec<Vec<(usize, usize)>> = (0..1u32 << pairs.len())
                .map(|mask| {
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &p)| p)
                        .collect()
                })
                .collect();
            for s in &subsets {
                let c = congruence_closure(&alg, s).unwrap();
                assert!(s.iter().all(|&p| c.contains_pair(p)), "extensive");
                let cc: Vec<_> = c.pairs().collect();
                assert_eq!(congruence_closure(&alg, &cc).unwrap(), c, "idempotent");
                assert!(c.is_compatible(&alg));
                for t in &subsets {
                    if s.iter().all(|p| t.contains(p)) {
                        assert!(c.leq(&congruence_closure(&alg, t).unwrap()), "monotone");
                    }
                }
            }
        }
    }
}
