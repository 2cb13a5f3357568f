//! Bit-packed vertex sets.
//!
//! Vertices carry the 1-based labels `1..=n` used in facet files and
//! reports; internally label `v` lives at bit `v - 1` of a `u64`. All
//! subset enumeration in the crate runs over these masks.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest number of vertices a [`VertexSet`] can hold.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex labels packed into a `u64` bitmask.
///
/// Iteration is always in ascending label order, which keeps every
/// derived ordering in the crate deterministic.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The full set `{1, ..., n}`.
    pub fn full(n: usize) -> VertexSet {
        assert!(n <= MAX_VERTICES, "vertex universe capped at {MAX_VERTICES}");
        if n == 64 {
            VertexSet(!0)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    /// Builds a set from 1-based labels. Labels must lie in `1..=64`.
    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> VertexSet {
        let mut bits = 0u64;
        for v in labels {
            assert!(
                (1..=MAX_VERTICES).contains(&v),
                "vertex label {v} outside 1..={MAX_VERTICES}"
            );
            bits |= 1 << (v - 1);
        }
        VertexSet(bits)
    }

    pub const fn from_mask(bits: u64) -> VertexSet {
        VertexSet(bits)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, label: usize) -> bool {
        label >= 1 && label <= MAX_VERTICES && self.0 & (1 << (label - 1)) != 0
    }

    pub const fn insert(self, label: usize) -> VertexSet {
        VertexSet(self.0 | (1 << (label - 1)))
    }

    pub const fn remove(self, label: usize) -> VertexSet {
        VertexSet(self.0 & !(1 << (label - 1)))
    }

    pub const fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest label in the set, if any.
    pub fn min_label(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    /// Complement within `universe`.
    pub fn complement_in(self, universe: VertexSet) -> VertexSet {
        VertexSet(universe.0 & !self.0)
    }

    /// Ascending iterator over 1-based labels.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_labels(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in ascending mask order (starts at ∅,
    /// ends at `self`).
    pub fn subsets(self) -> Subsets {
        Subsets { universe: self.0, current: Some(0) }
    }
}

/// Iterator over all submasks of a universe, ascending by mask value.
pub struct Subsets {
    universe: u64,
    current: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.current?;
        // Next submask in ascending order: standard (cur - universe) & universe step.
        let next = (cur.wrapping_sub(self.universe)) & self.universe;
        self.current = if cur == self.universe { None } else { Some(next) };
        Some(VertexSet(cur))
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitXor for VertexSet {
    type Output = VertexSet;
    fn bitxor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 ^ rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> VertexSet {
        VertexSet(!self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexSet{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> VertexSet {
        VertexSet::from_labels(iter)
    }
}

// Serialized form is the sorted list of 1-based labels, which keeps JSON
// reports readable and independent of the packed representation.
impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<VertexSet, D::Error> {
        struct LabelsVisitor;
        impl<'de> Visitor<'de> for LabelsVisitor {
            type Value = VertexSet;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a sequence of vertex labels in 1..=64")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<VertexSet, A::Error> {
                let mut set = VertexSet::EMPTY;
                while let Some(v) = seq.next_element::<usize>()? {
                    if !(1..=MAX_VERTICES).contains(&v) {
                        return Err(serde::de::Error::custom(format!(
                            "vertex label {v} outside 1..={MAX_VERTICES}"
                        )));
                    }
                    set = set.insert(v);
                }
                Ok(set)
            }
        }
        deserializer.deserialize_seq(LabelsVisitor)
    }
}
