use alloc::vec::Vec;
use core::cmp::Ordering;

use fixedbitset::FixedBitSet;

use crate::framework::Hafs;

/// A subset of a framework's universe, stored as a bitset over positions.
///
/// Ordered by size first, then lexicographically by member positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElementSet { bits }
    }

    pub fn from_positions(universe: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for m in members {
            s.insert(m);
        }
        s
    }

    /// Builds a set from members given by bare name. Unknown names yield `None`.
    pub fn from_names<'a>(h: &Hafs, names: impl IntoIterator<Item = &'a str>) -> Option<Self> {
        let mut s = Self::empty(h.len());
        for n in names {
            s.insert(h.position_by_name(n)?);
        }
        Some(s)
    }

    /// The set whose members are the set bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        Self::from_positions(universe, (0..universe).filter(|i| mask >> i & 1 == 1))
    }

    pub fn universe_len(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, ix: usize) {
        self.bits.insert(ix);
    }

    pub fn remove(&mut self, ix: usize) {
        self.bits.set(ix, false);
    }

    pub fn contains(&self, ix: usize) -> bool {
        self.bits.contains(ix)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ElementSet { bits }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

/// Index of the set contained in all others, if any.
pub(crate) fn least_index(sets: &[ElementSet]) -> Option<usize> {
    (0..sets.len()).find(|&i| sets.iter().all(|s| sets[i].is_subset(s)))
}

/// Indices of the ⊆-maximal sets.
pub(crate) fn maximal_indices(sets: &[ElementSet]) -> Vec<usize> {
    (0..sets.len())
        .filter(|&i| !sets.iter().any(|s| sets[i].is_subset(s) && sets[i] != *s))
        .collect()
}
