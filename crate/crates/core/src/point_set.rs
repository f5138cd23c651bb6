//! Subsets of a finite carrier `{0, .., n-1}` packed into a bitmask.

use std::fmt;

use crate::error::{Error, Result};

/// Largest carrier any finite operation accepts.
pub const MAX_CARRIER: usize = 7;

/// A subset of the carrier `{0, .., n-1}`; point `i` is bit `i`.
///
/// Ordering compares the raw masks as unsigned integers, which is the
/// canonical order used for open-set lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    bits: u32,
    n: u8,
}

impl PointSet {
    pub fn empty(n: usize) -> Self {
        debug_assert!(n <= MAX_CARRIER);
        PointSet { bits: 0, n: n as u8 }
    }

    pub fn full(n: usize) -> Self {
        PointSet { bits: full_mask(n), n: n as u8 }
    }

    pub fn singleton(n: usize, x: usize) -> Self {
        debug_assert!(x < n);
        PointSet { bits: 1 << x, n: n as u8 }
    }

    /// Builds a set from a raw mask, rejecting bits outside the carrier.
    pub fn from_bits(n: usize, bits: u32) -> Result<Self> {
        if n > MAX_CARRIER {
            return Err(Error::CapExceeded { n, cap: MAX_CARRIER });
        }
        if bits & !full_mask(n) != 0 {
            return Err(Error::CarrierMismatch {
                set: PointSet { bits, n: n as u8 },
                n,
            });
        }
        Ok(PointSet { bits, n: n as u8 })
    }

    /// Like [`PointSet::from_bits`] for masks already known to fit.
    pub(crate) fn from_bits_unchecked(n: usize, bits: u32) -> Self {
        debug_assert!(bits & !full_mask(n) == 0);
        PointSet { bits, n: n as u8 }
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(n: usize, points: I) -> Result<Self> {
        let mut bits = 0u32;
        for x in points {
            if x >= n || x >= 32 {
                return Err(Error::Parse(format!("point {x} outside carrier of size {n}")));
            }
            bits |= 1 << x;
        }
        Self::from_bits(n, bits)
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn carrier(self) -> usize {
        self.n as usize
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_full(self) -> bool {
        self.bits == full_mask(self.carrier())
    }

    pub fn contains(self, x: usize) -> bool {
        x < self.carrier() && self.bits & (1 << x) != 0
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn meets(self, other: PointSet) -> bool {
        self.bits & other.bits != 0
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet { bits: self.bits | other.bits, n: self.n }
    }

    pub fn intersection(self, other: PointSet) -> PointSet {
        PointSet { bits: self.bits & other.bits, n: self.n }
    }

    pub fn complement(self) -> PointSet {
        PointSet {
            bits: !self.bits & full_mask(self.carrier()),
            n: self.n,
        }
    }

    pub fn with(self, x: usize) -> PointSet {
        PointSet { bits: self.bits | (1 << x), n: self.n }
    }

    /// Points in ascending order.
    pub fn points(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..self.carrier()).filter(move |&x| bits & (1 << x) != 0)
    }

    /// Image of the set under the point relabeling `perm` (`x ↦ perm[x]`).
    pub fn relabel(self, perm: &[usize]) -> PointSet {
        let mut bits = 0;
        for x in self.points() {
            bits |= 1 << perm[x];
        }
        PointSet { bits, n: self.n }
    }

    /// Every subset of an `n`-point carrier, in mask order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = PointSet> {
        (0..=full_mask(n)).map(move |bits| PointSet { bits, n: n as u8 })
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.points().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
