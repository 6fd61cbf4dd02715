//! Brute-force reference computations. They enumerate maps, partitions and
//! families directly and never call the engine's search routines.

use kspec::{Congruence, FiniteAlgebra, PointSet};

pub fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn is_hom(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[usize]) -> bool {
    map.len() == a.size()
        && map.iter().all(|&x| x < b.size())
        && a.signature().symbols().iter().enumerate().all(|(op, sym)| {
            tuples(a.size(), sym.arity).iter().all(|args| {
                let image: Vec<usize> = args.iter().map(|&x| map[x]).collect();
                map[a.apply(op, args)] == b.apply(op, &image)
            })
        })
}

pub fn homs(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Vec<Vec<usize>> {
    tuples(b.size(), a.size())
        .into_iter()
        .filter(|m| is_hom(a, b, m))
        .collect()
}

pub fn injective(m: &[usize]) -> bool {
    let mut seen = m.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len() == m.len()
}

pub fn embeds(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    homs(a, b).iter().any(|m| injective(m))
}

pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let top = if cur.is_empty() { 0 } else { max + 1 };
        for b in 0..=top {
            cur.push(b);
            go(n, cur, max.max(b), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), 0, &mut out);
    out
}

fn compatible(a: &FiniteAlgebra, blocks: &[usize]) -> bool {
    a.signature().symbols().iter().enumerate().all(|(op, sym)| {
        let all = tuples(a.size(), sym.arity);
        all.iter().all(|x| {
            all.iter().all(|y| {
                !x.iter().zip(y).all(|(&u, &v)| blocks[u] == blocks[v])
                    || blocks[a.apply(op, x)] == blocks[a.apply(op, y)]
            })
        })
    })
}

pub fn congruences(a: &FiniteAlgebra) -> Vec<Congruence> {
    let mut out: Vec<Congruence> = partitions(a.size())
        .into_iter()
        .filter(|p| compatible(a, p))
        .map(|p| Congruence::from_keys(&p))
        .collect();
    out.sort();
    out
}

pub fn below(theta: &Congruence, psi: &Congruence) -> bool {
    let n = theta.size();
    (0..n).all(|a| (0..n).all(|b| !theta.related(a, b) || psi.related(a, b)))
}

pub fn intersect(n: usize, cs: &[&Congruence]) -> Congruence {
    let keys: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).filter(|&b| cs.iter().all(|c| c.related(a, b))).collect())
        .collect();
    Congruence::from_keys(&keys)
}

/// Least congruence containing the pairs, from the full list.
pub fn generated(all: &[Congruence], n: usize, pairs: &[(usize, usize)]) -> Congruence {
    let above: Vec<&Congruence> = all
        .iter()
        .filter(|c| pairs.iter().all(|&(x, y)| c.related(x, y)))
        .collect();
    intersect(n, &above)
}

/// `A/θ` with blocks numbered by least element, and the projection.
pub fn quotient(a: &FiniteAlgebra, theta: &Congruence) -> (FiniteAlgebra, Vec<usize>) {
    let mut reps: Vec<usize> = Vec::new();
    let mut proj = vec![0; a.size()];
    for (x, slot) in proj.iter_mut().enumerate() {
        match reps.iter().position(|&r| theta.related(r, x)) {
            Some(i) => *slot = i,
            None => {
                *slot = reps.len();
                reps.push(x);
            }
        }
    }
    let q = FiniteAlgebra::from_fn(a.signature().clone(), reps.len(), |op, args| {
        let lifted: Vec<usize> = args.iter().map(|&b| reps[b]).collect();
        proj[a.apply(op, &lifted)]
    })
    .expect("quotient of a congruence");
    (q, proj)
}

/// Points as kernels of homomorphisms into the class.
pub fn points(a: &FiniteAlgebra, class: &[FiniteAlgebra]) -> Vec<Congruence> {
    let mut out: Vec<Congruence> = class
        .iter()
        .flat_map(|b| homs(a, b))
        .map(|h| Congruence::from_keys(&h))
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn subsets(n: usize) -> Vec<PointSet> {
    (0u64..(1 << n))
        .map(|m| PointSet::from_indices(n, (0..n).filter(|i| m >> i & 1 == 1)))
        .collect()
}

/// Every intersection of sets from `prebasis`, the whole ground set included.
pub fn intersection_closure(n: usize, prebasis: &[PointSet]) -> Vec<PointSet> {
    let mut family = vec![PointSet::full(n)];
    for p in prebasis {
        let mut next = family.clone();
        for f in &family {
            next.push(f.intersection(p));
        }
        next.sort_by_key(|s| s.to_vec());
        next.dedup();
        family = next;
    }
    family
}

/// Every nonempty finite union of members.
pub fn union_closure(family: &[PointSet]) -> Vec<PointSet> {
    let mut out: Vec<PointSet> = family.to_vec();
    loop {
        let mut next = out.clone();
        for a in &out {
            for b in &out {
                next.push(a.union(b));
            }
        }
        next.sort_by_key(|s| s.to_vec());
        next.dedup();
        if next.len() == out.len() {
            return out;
        }
        out = next;
    }
}

/// The definition: nonempty, and no family of closed sets each missing part
/// of `y` covers it.
pub fn irreducible(closed: &[PointSet], y: &PointSet) -> bool {
    if y.is_empty() {
        return false;
    }
    let missing: Vec<&PointSet> = closed.iter().filter(|c| !y.is_subset(c)).collect();
    assert!(missing.len() < 22, "oracle family too large");
    (1u64..(1 << missing.len())).all(|m| {
        let union = (0..missing.len())
            .filter(|i| m >> i & 1 == 1)
            .fold(PointSet::empty(y.universe()), |acc, i| acc.union(missing[i]));
        !y.is_subset(&union)
    })
}

/// Maximal irreducible members of a closed family contained in `within`.
pub fn components(closed: &[PointSet], within: &PointSet) -> Vec<PointSet> {
    let irr: Vec<&PointSet> = closed
        .iter()
        .filter(|c| c.is_subset(within) && irreducible(closed, c))
        .collect();
    irr.iter()
        .filter(|c| !irr.iter().any(|d| d != *c && c.is_subset(d)))
        .map(|c| (*c).clone())
        .collect()
}

/// The spectrum built from scratch: points, Zariski family, and `ψ`.
pub struct RefSpectrum {
    pub n: usize,
    pub points: Vec<Congruence>,
    pub closed: Vec<PointSet>,
}

impl RefSpectrum {
    pub fn new(a: &FiniteAlgebra, class: &[FiniteAlgebra]) -> Self {
        let points = points(a, class);
        let n = a.size();
        let prebasis: Vec<PointSet> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| {
                PointSet::from_indices(points.len(), (0..points.len()).filter(|&i| points[i].related(x, y)))
            })
            .collect();
        let closed = intersection_closure(points.len(), &prebasis);
        RefSpectrum { n, points, closed }
    }

    pub fn v(&self, pairs: &[(usize, usize)]) -> PointSet {
        PointSet::from_indices(
            self.points.len(),
            (0..self.points.len()).filter(|&i| pairs.iter().all(|&(a, b)| self.points[i].related(a, b))),
        )
    }

    pub fn psi(&self, x: &PointSet) -> Congruence {
        let chosen: Vec<&Congruence> = x.iter().map(|i| &self.points[i]).collect();
        intersect(self.n, &chosen)
    }

    pub fn rad(&self, theta: &Congruence) -> Congruence {
        let above: Vec<&Congruence> = self.points.iter().filter(|p| below(theta, p)).collect();
        intersect(self.n, &above)
    }

    pub fn closure(&self, x: &PointSet) -> PointSet {
        self.closed
            .iter()
            .filter(|c| x.is_subset(c))
            .fold(PointSet::full(self.points.len()), |acc, c| acc.intersection(c))
    }

    pub fn all(&self) -> PointSet {
        PointSet::full(self.points.len())
    }

    pub fn reduced(&self) -> bool {
        self.psi(&self.all()).is_delta()
    }

    pub fn index(&self, theta: &Congruence) -> Option<usize> {
        self.points.iter().position(|p| p == theta)
    }
}
