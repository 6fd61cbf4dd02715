//! Finite closure systems: closure, morphisms, topologization and irreducibility.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::Serialize;

use crate::bitset::PointSet;
use crate::error::{Error, Limits, Result};

/// A ground set `0..n` with an intersection-closed family of closed subsets.
///
/// The family always contains the ground set (the empty intersection) and is
/// kept deduplicated in canonical order: by cardinality, then by members.
/// The empty set is closed only when the input family produces it.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureSystem {
    ground: usize,
    closed: Vec<PointSet>,
    #[serde(skip)]
    topology: OnceLock<Vec<PointSet>>,
}

impl PartialEq for ClosureSystem {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.closed == other.closed
    }
}

impl Eq for ClosureSystem {}

fn canonicalize(mut sets: Vec<PointSet>) -> Vec<PointSet> {
    sets.sort_by_cached_key(PointSet::canonical_key);
    sets.dedup();
    sets
}

impl ClosureSystem {
    /// Validates that `closed` contains the ground set and is closed under intersection.
    pub fn from_family(ground: usize, closed: Vec<PointSet>) -> Result<Self> {
        if closed.iter().any(|s| s.universe() != ground) {
            return Err(Error::ForeignPoints);
        }
        let closed = canonicalize(closed);
        let set: HashSet<&PointSet> = closed.iter().collect();
        if !set.contains(&PointSet::full(ground)) {
            return Err(Error::InvalidAlgebra(
                "closed family must contain the ground set".into(),
            ));
        }
        for a in &closed {
            for b in &closed {
                if !set.contains(&a.intersection(b)) {
                    return Err(Error::InvalidAlgebra(format!(
                        "family not closed under intersection: {a:?} ∩ {b:?}"
                    )));
                }
            }
        }
        Ok(Self::from_canonical(ground, closed))
    }

    fn from_canonical(ground: usize, closed: Vec<PointSet>) -> Self {
        ClosureSystem {
            ground,
            closed,
            topology: OnceLock::new(),
        }
    }

    /// The closure system whose closed sets are all intersections of `prebasis` members.
    pub fn generated_by(ground: usize, prebasis: impl IntoIterator<Item = PointSet>) -> Self {
        let mut family: BTreeSet<PointSet> = BTreeSet::new();
        family.insert(PointSet::full(ground));
        let mut frontier: Vec<PointSet> = Vec::new();
        let base: Vec<PointSet> = prebasis.into_iter().collect();
        for b in &base {
            assert_eq!(b.universe(), ground, "prebasis set over a different ground");
            if family.insert(b.clone()) {
                frontier.push(b.clone());
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for b in &base {
                    let i = s.intersection(b);
                    if family.insert(i.clone()) {
                        next.push(i);
                    }
                }
            }
            frontier = next;
        }
        Self::from_canonical(ground, canonicalize(family.into_iter().collect()))
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn closed_sets(&self) -> &[PointSet] {
        &self.closed
    }

    pub fn ground_set(&self) -> PointSet {
        PointSet::full(self.ground)
    }

    pub fn is_closed(&self, set: &PointSet) -> bool {
        self.closed.binary_search_by_key(&set.canonical_key(), PointSet::canonical_key).is_ok()
    }

    /// Least closed superset.
    pub fn closure_of(&self, subset: &PointSet) -> Result<PointSet> {
        if subset.universe() != self.ground {
            return Err(Error::ForeignPoints);
        }
        Ok(self
            .closed
            .iter()
            .filter(|c| subset.is_subset(c))
            .fold(PointSet::full(self.ground), |acc, c| acc.intersection(c)))
    }

    /// Whether binary unions of closed sets are closed.
    pub fn is_topological(&self) -> bool {
        self.closed
            .iter()
            .enumerate()
            .all(|(i, a)| self.closed[i + 1..].iter().all(|b| self.is_closed(&a.union(b))))
    }

    /// Least family containing this one that is closed under finite nonempty
    /// unions and intersections.
    pub fn topologize(&self) -> Result<ClosureSystem> {
        self.topologize_with(&Limits::current())
    }

    pub fn topologize_with(&self, limits: &Limits) -> Result<ClosureSystem> {
        let family = self.topological_family(limits)?;
        Ok(Self::from_canonical(self.ground, family.to_vec()))
    }

    fn topological_family(&self, limits: &Limits) -> Result<&[PointSet]> {
        if let Some(done) = self.topology.get() {
            return Ok(done);
        }
        let mut family: HashSet<PointSet> = self.closed.iter().cloned().collect();
        let mut all: Vec<PointSet> = self.closed.clone();
        let mut frontier = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for t in &all {
                    for candidate in [s.union(t), s.intersection(t)] {
                        if family.insert(candidate.clone()) {
                            next.push(candidate);
                        }
                    }
                }
                if family.len() > limits.max_family {
                    return Err(Error::Resource(format!(
                        "topologization: family exceeds {} sets",
                        limits.max_family
                    )));
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(self.topology.get_or_init(|| canonicalize(all)))
    }

    /// Induced system on `subset`, reindexed to `0..|subset|` in increasing order.
    pub fn subsystem(&self, subset: &PointSet) -> Result<(ClosureSystem, Vec<usize>)> {
        if subset.universe() != self.ground {
            return Err(Error::ForeignPoints);
        }
        let points = subset.to_vec();
        let restrict = |c: &PointSet| {
            PointSet::from_indices(
                points.len(),
                points.iter().enumerate().filter(|(_, &p)| c.contains(p)).map(|(i, _)| i),
            )
        };
        let family = canonicalize(self.closed.iter().map(restrict).collect());
        Ok((Self::from_canonical(points.len(), family), points))
    }

    /// Irreducibility of a nonempty subset: it is covered by no finite union
    /// of closed sets that each miss part of it.
    ///
    /// Covers are tested with the binary criterion, folding in one closed set
    /// at a time. If `Y ⊆ U₁ ∪ ... ∪ Uₖ` with no `Uᵢ ⊇ Y`, the partial unions
    /// `Wⱼ = U₁ ∪ ... ∪ Uⱼ` reach `Y` at some first step, and there the pair
    /// `(Wⱼ₋₁, Uⱼ)` is a binary cover with neither side containing `Y`.
    /// Conversely any binary cover is a finite cover. So the fold over all
    /// closed sets not containing `Y` decides every finite cover at once.
    pub fn is_irreducible(&self, subset: &PointSet) -> bool {
        if subset.universe() != self.ground || subset.is_empty() {
            return false;
        }
        let mut acc = PointSet::empty(self.ground);
        for c in &self.closed {
            if !subset.is_subset(c) {
                acc = acc.union(c);
                if subset.is_subset(&acc) {
                    return false;
                }
            }
        }
        true
    }

    /// Irreducibility in the topologization, by checking every pair of
    /// topologically closed sets. Agrees with [`Self::is_irreducible`], which
    /// only uses the closed sets of this system as a prebasis.
    pub fn is_irreducible_in_topology(&self, subset: &PointSet) -> Result<bool> {
        if subset.universe() != self.ground || subset.is_empty() {
            return Ok(false);
        }
        let family = self.topological_family(&Limits::current())?;
        let missing: Vec<&PointSet> = family.iter().filter(|c| !subset.is_subset(c)).collect();
        for (i, u) in missing.iter().enumerate() {
            for v in &missing[i..] {
                if subset.is_subset(&u.union(v)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Maximal irreducible subsets, in canonical order. They are closed, since
    /// the closure of an irreducible set is irreducible.
    pub fn irreducible_components(&self) -> Vec<PointSet> {
        let irreducible: Vec<&PointSet> =
            self.closed.iter().filter(|c| self.is_irreducible(c)).collect();
        let mut out: Vec<PointSet> = irreducible
            .iter()
            .filter(|c| !irreducible.iter().any(|d| d != *c && c.is_subset(d)))
            .map(|c| (*c).clone())
            .collect();
        out.sort_by_cached_key(PointSet::canonical_key);
        out
    }

    /// The unique minimal decomposition of the ground set into irreducibles.
    pub fn minimal_decomposition(&self) -> Vec<PointSet> {
        let parts = self.irreducible_components();
        let cover = parts
            .iter()
            .fold(PointSet::empty(self.ground), |acc, c| acc.union(c));
        assert_eq!(cover, self.ground_set(), "components must cover a finite space");
        parts
    }

    /// Longest strictly descending chain of closed sets. Finite systems always
    /// satisfy the descending chain condition.
    pub fn satisfies_dcc(&self) -> DccReport {
        // closed is sorted by cardinality, so strict subsets come first
        let n = self.closed.len();
        let mut best = vec![1usize; n];
        let mut prev = vec![usize::MAX; n];
        for i in 0..n {
            for j in 0..i {
                if self.closed[j] != self.closed[i]
                    && self.closed[j].is_subset(&self.closed[i])
                    && best[j] + 1 > best[i]
                {
                    best[i] = best[j] + 1;
                    prev[i] = j;
                }
            }
        }
        let mut chain = Vec::new();
        if let Some(top) = (0..n).max_by_key(|&i| (best[i], std::cmp::Reverse(i))) {
            let mut i = top;
            loop {
                chain.push(self.closed[i].clone());
                if prev[i] == usize::MAX {
                    break;
                }
                i = prev[i];
            }
        }
        DccReport {
            holds: true,
            longest_chain: chain.len(),
            chain,
        }
    }

    /// Hasse diagram of the closed-set lattice by inclusion.
    pub fn to_dot(&self, name: &str, labels: &[String]) -> String {
        let label = |s: &PointSet| -> String {
            let names: Vec<String> = s
                .iter()
                .map(|p| labels.get(p).cloned().unwrap_or_else(|| p.to_string()))
                .collect();
            format!("{{{}}}", names.join(", "))
        };
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "'"));
        let _ = writeln!(out, "  rankdir=BT;");
        for (i, s) in self.closed.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", label(s).replace('"', "'"));
        }
        for (i, lo) in self.closed.iter().enumerate() {
            for (j, hi) in self.closed.iter().enumerate() {
                if i == j || !lo.is_subset(hi) {
                    continue;
                }
                let covered = self.closed.iter().enumerate().any(|(k, mid)| {
                    k != i && k != j && lo.is_subset(mid) && mid.is_subset(hi)
                });
                if !covered {
                    let _ = writeln!(out, "  n{i} -> n{j};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DccReport {
    pub holds: bool,
    pub longest_chain: usize,
    /// Witness chain, largest set first.
    pub chain: Vec<PointSet>,
}

/// A point map between closure systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureMorphism {
    pub source: ClosureSystem,
    pub target: ClosureSystem,
    pub map: Vec<usize>,
}

impl ClosureMorphism {
    pub fn new(source: ClosureSystem, target: ClosureSystem, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.ground_size() {
            return Err(Error::ForeignPoints);
        }
        if map.iter().any(|&p| p >= target.ground_size()) {
            return Err(Error::ForeignPoints);
        }
        Ok(ClosureMorphism {
            source,
            target,
            map,
        })
    }

    pub fn preimage(&self, set: &PointSet) -> PointSet {
        PointSet::from_indices(
            self.source.ground_size(),
            (0..self.map.len()).filter(|&p| set.contains(self.map[p])),
        )
    }

    pub fn image(&self, set: &PointSet) -> PointSet {
        PointSet::from_indices(self.target.ground_size(), set.iter().map(|p| self.map[p]))
    }

    /// Preimages of closed sets are closed.
    pub fn is_morphism(&self) -> bool {
        self.target
            .closed_sets()
            .iter()
            .all(|c| self.source.is_closed(&self.preimage(c)))
    }

    /// A morphism mapping closed sets to closed sets whose preimage map is a
    /// bijection between the closed families.
    pub fn is_quasi_isomorphism(&self) -> bool {
        if !self.is_morphism() {
            return false;
        }
        if !self
            .source
            .closed_sets()
            .iter()
            .all(|c| self.target.is_closed(&self.image(c)))
        {
            return false;
        }
        let preimages: HashSet<PointSet> = self
            .target
            .closed_sets()
            .iter()
            .map(|c| self.preimage(c))
            .collect();
        preimages.len() == self.target.closed_sets().len()
            && preimages.len() == self.source.closed_sets().len()
    }

    /// The same map between the topologizations.
    pub fn topologize(&self) -> Result<ClosureMorphism> {
        ClosureMorphism::new(
            self.source.topologize()?,
            self.target.topologize()?,
            self.map.clone(),
        )
    }
}
