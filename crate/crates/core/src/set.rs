use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A subset of the node universe `0..n`, stored as a dense bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet {
    bits: FixedBitSet,
}

impl NodeSet {
    pub fn empty(n: usize) -> Self {
        NodeSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        NodeSet { bits }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Result<Self> {
        let mut set = NodeSet::empty(n);
        for i in indices {
            set.try_insert(i)?;
        }
        Ok(set)
    }

    /// Builds the set whose `j`-th member is `nodes[j]` whenever bit `j` of `mask` is set.
    pub(crate) fn from_mask(n: usize, nodes: &[usize], mask: u64) -> Self {
        let mut set = NodeSet::empty(n);
        let mut m = mask;
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            set.bits.insert(nodes[j]);
            m &= m - 1;
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    /// Inserts `i`. Panics if `i` is outside the universe.
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe(), "node {i} outside universe of {}", self.universe());
        self.bits.insert(i);
    }

    pub fn try_insert(&mut self, i: usize) -> Result<()> {
        if i >= self.universe() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.universe(),
            });
        }
        self.bits.insert(i);
        Ok(())
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.universe() {
            self.bits.set(i, false);
        }
    }

    pub fn with(&self, i: usize) -> NodeSet {
        let mut s = self.clone();
        s.insert(i);
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn complement(&self) -> NodeSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        NodeSet { bits }
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        NodeSet { bits }
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        NodeSet { bits }
    }

    pub fn difference(&self, other: &NodeSet) -> NodeSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        NodeSet { bits }
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    /// Errors unless the set lives in a universe of exactly `n` nodes.
    pub fn check_universe(&self, n: usize) -> Result<()> {
        if self.universe() != n {
            return Err(Error::UniverseMismatch {
                expected: n,
                found: self.universe(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        Ok(())
    }
}
