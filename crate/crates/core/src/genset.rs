//! Compact generator subsets.
//!
//! A [`GenSet`] is a set of generator indices of one [`CoxeterDiagram`]
//! stored as a 64-bit mask. Iteration is always in the diagram's generator
//! order, and the total order on sets is lexicographic on that sorted member
//! list, which is the canonical order used for every deterministic choice in
//! the crate.
//!
//! [`CoxeterDiagram`]: crate::CoxeterDiagram

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

/// Largest number of generators a diagram may have.
pub const MAX_GENERATORS: usize = 64;

/// A subset of a diagram's generators, by index.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct GenSet(u64);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GENERATORS);
        if n == MAX_GENERATORS {
            GenSet(u64::MAX)
        } else {
            GenSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_GENERATORS);
        GenSet(1u64 << i)
    }

    pub fn from_bits(bits: u64) -> Self {
        GenSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_GENERATORS && self.0 & (1u64 << i) != 0
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        self | GenSet::singleton(i)
    }

    #[must_use]
    pub fn without(self, i: usize) -> Self {
        self - GenSet::singleton(i)
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: GenSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(self, other: GenSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member index.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing index order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Every subset of `self`, in increasing order of the underlying mask.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }
}

impl BitOr for GenSet {
    type Output = GenSet;
    fn bitor(self, rhs: GenSet) -> GenSet {
        GenSet(self.0 | rhs.0)
    }
}

impl BitAnd for GenSet {
    type Output = GenSet;
    fn bitand(self, rhs: GenSet) -> GenSet {
        GenSet(self.0 & rhs.0)
    }
}

impl Sub for GenSet {
    type Output = GenSet;
    fn sub(self, rhs: GenSet) -> GenSet {
        GenSet(self.0 & !rhs.0)
    }
}

impl FromIterator<usize> for GenSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(GenSet::EMPTY, GenSet::with)
    }
}

impl IntoIterator for GenSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl Ord for GenSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for GenSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = GenSet;

    fn next(&mut self) -> Option<GenSet> {
        let current = self.next?;
        // Standard submask walk: (x - universe) & universe enumerates upward.
        let following = current.wrapping_sub(self.universe) & self.universe;
        self.next = (following != 0).then_some(following);
        Some(GenSet(current))
    }
}
