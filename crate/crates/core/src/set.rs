//! Bitmask subsets of a small indexed universe `0..64`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest universe size representable by an [`ElementSet`].
pub const MAX_ELEMENTS: usize = 64;

/// A subset of `{0, .., 63}` stored as a bitmask.
///
/// Ordering is lexicographic on the ascending element sequences, so
/// `{0,1} < {0,1,2} < {0,2} < {1}`. This is the order used for every
/// "first witness" and sorted listing in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u64);

/// The ground set of a hypergraph, complex or matroid.
pub type GroundSet = ElementSet;

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "universe of size {n} exceeds {MAX_ELEMENTS}");
        if n == MAX_ELEMENTS {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_ELEMENTS);
        ElementSet(1u64 << v)
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_ELEMENTS && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        ElementSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        ElementSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub const fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min_element(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Elements in ascending order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of `self`, including `∅` and `self`, in increasing
    /// bitmask order.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, next: Some(0) }
    }

    /// Number of elements of `self` strictly below `v`.
    #[inline]
    pub fn rank_of(self, v: usize) -> usize {
        (self.0 & ((1u64 << v) - 1)).count_ones() as usize
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        // Below the lowest differing element both sequences agree. The set
        // holding that element wins unless the other set stops there.
        let diff = self.0 ^ other.0;
        let d = diff.trailing_zeros();
        let above = if d == 63 { 0 } else { u64::MAX << (d + 1) };
        let self_holds = self.0 >> d & 1 == 1;
        let rest = if self_holds { other.0 } else { self.0 };
        let holder_smaller = rest & above != 0;
        if self_holds == holder_smaller {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut bits = 0u64;
        for v in iter {
            assert!(v < MAX_ELEMENTS, "element {v} outside universe");
            bits |= 1u64 << v;
        }
        ElementSet(bits)
    }
}

impl<const N: usize> From<[usize; N]> for ElementSet {
    fn from(value: [usize; N]) -> Self {
        value.into_iter().collect()
    }
}

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Elements;
    fn into_iter(self) -> Elements {
        self.iter()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ElementSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = items.iter().find(|&&v| v >= MAX_ELEMENTS) {
            return Err(serde::de::Error::custom(format!(
                "element {bad} outside universe 0..{MAX_ELEMENTS}"
            )));
        }
        Ok(items.into_iter().collect())
    }
}

#[derive(Clone, Debug)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some(cur.wrapping_sub(self.mask) & self.mask)
        };
        Some(ElementSet(cur))
    }
}

/// Keeps only the inclusion-maximal members, sorted and deduplicated.
pub fn maximal_sets(sets: impl IntoIterator<Item = ElementSet>) -> Vec<ElementSet> {
    let mut all: Vec<ElementSet> = sets.into_iter().collect();
    all.sort_by_key(|s| std::cmp::Reverse(s.len()));
    all.dedup();
    let mut kept: Vec<ElementSet> = Vec::with_capacity(all.len());
    for s in all {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// Keeps only the inclusion-minimal members, sorted and deduplicated.
pub fn minimal_sets(sets: impl IntoIterator<Item = ElementSet>) -> Vec<ElementSet> {
    let mut all: Vec<ElementSet> = sets.into_iter().collect();
    all.sort_by_key(|s| s.len());
    all.dedup();
    let mut kept: Vec<ElementSet> = Vec::with_capacity(all.len());
    for s in all {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}
