//! Fixed-universe bitsets used for closed families and point subsets.

use std::fmt;

use serde::{Serialize, Serializer};

/// A subset of `0..len` stored as packed 64-bit words.
///
/// Ordering compares the word vectors from the low end, which is a total
/// order fixed by content; canonical orderings elsewhere sort by
/// `(cardinality, members)` instead.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    len: usize,
    words: Vec<u64>,
}

impl PointSet {
    pub fn empty(len: usize) -> Self {
        PointSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn singleton(len: usize, i: usize) -> Self {
        Self::from_indices(len, [i])
    }

    /// Size of the universe this set lives in.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "point {i} outside universe of size {}", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        debug_assert_eq!(self.len, other.len);
        PointSet {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        debug_assert_eq!(self.len, other.len);
        PointSet {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        debug_assert_eq!(self.len, other.len);
        PointSet {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    pub fn complement(&self) -> PointSet {
        PointSet::full(self.len).difference(self)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Key for the canonical family order: smaller sets first, then by members.
    pub(crate) fn canonical_key(&self) -> (usize, Vec<usize>) {
        (self.count(), self.to_vec())
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_boundaries() {
        let mut s = PointSet::empty(130);
        s.insert(0);
        s.insert(63);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.to_vec(), vec![0, 63, 64, 129]);
        assert_eq!(s.count(), 4);
        assert_eq!(s.complement().count(), 126);
        assert!(PointSet::empty(130).is_subset(&s));
        assert!(!s.is_subset(&PointSet::singleton(130, 0)));
    }

    #[test]
    fn lattice_operations() {
        let a = PointSet::from_indices(5, [0, 1, 2]);
        let b = PointSet::from_indices(5, [2, 3]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 1]);
        assert!(PointSet::empty(0).is_empty());
        assert_eq!(PointSet::full(0).count(), 0);
    }
}
