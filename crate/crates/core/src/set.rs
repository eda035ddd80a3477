use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::algebra::{BlAlgebra, ElementId};

/// A subset of an algebra's carrier.
///
/// Sets order by size first, then by their ascending member lists compared
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        ElementSet { bits: FixedBitSet::with_capacity(n) }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        ElementSet { bits }
    }

    pub fn from_elements(n: usize, elements: impl IntoIterator<Item = ElementId>) -> Self {
        let mut s = ElementSet::empty(n);
        for x in elements {
            s.insert(x);
        }
        s
    }

    /// Subset whose members are the set bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        ElementSet::from_elements(n, (0..n).filter(|&i| mask >> i & 1 == 1))
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.bits.contains(x)
    }

    pub fn insert(&mut self, x: ElementId) -> bool {
        let fresh = !self.bits.contains(x);
        self.bits.insert(x);
        fresh
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<ElementId> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ElementSet { bits }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ElementSet { bits }
    }

    /// Image of the set under a map on the same carrier.
    pub fn map(&self, f: impl Fn(ElementId) -> ElementId) -> ElementSet {
        ElementSet::from_elements(self.capacity(), self.iter().map(f))
    }

    /// Renders the members with the algebra's labels, e.g. `{b, 1}`.
    pub fn display<'a>(&'a self, algebra: &'a BlAlgebra) -> impl fmt::Display + 'a {
        Labelled { set: self, algebra }
    }

    pub fn labels(&self, algebra: &BlAlgebra) -> Vec<String> {
        self.iter().map(|x| algebra.label(x).to_owned()).collect()
    }
}

struct Labelled<'a> {
    set: &'a ElementSet,
    algebra: &'a BlAlgebra,
}

impl fmt::Display for Labelled<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.set.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(self.algebra.label(x))?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_size_then_lexicographic() {
        let a = ElementSet::from_elements(5, [4]);
        let b = ElementSet::from_elements(5, [0, 4]);
        let c = ElementSet::from_elements(5, [1, 2]);
        let mut v = vec![c.clone(), b.clone(), a.clone()];
        v.sort();
        assert_eq!(v, vec![a, b, c]);
    }

    #[test]
    fn mask_round_trip() {
        let s = ElementSet::from_mask(6, 0b101001);
        assert_eq!(s.to_vec(), vec![0, 3, 5]);
        assert_eq!(ElementSet::full(3).len(), 3);
    }
}
