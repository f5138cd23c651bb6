//! Canonically ordered families of point sets.

use crate::error::{Error, Result};
use crate::point_set::{PointSet, MAX_CARRIER};

/// Duplicate-free family of subsets of an `n`-point carrier, sorted by mask.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SetFamily {
    n: usize,
    members: Vec<PointSet>,
}

impl SetFamily {
    pub fn new<I: IntoIterator<Item = PointSet>>(n: usize, members: I) -> Result<Self> {
        if n > MAX_CARRIER {
            return Err(Error::CapExceeded { n, cap: MAX_CARRIER });
        }
        let mut members: Vec<PointSet> = members.into_iter().collect();
        for &m in &members {
            if m.carrier() != n {
                return Err(Error::CarrierMismatch { set: m, n });
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily { n, members })
    }

    /// Sorts and dedups sets already known to live on the carrier.
    pub(crate) fn from_sorted_unchecked(n: usize, members: Vec<PointSet>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|m| m.carrier() == n));
        SetFamily { n, members }
    }

    pub fn empty(n: usize) -> Self {
        SetFamily { n, members: Vec::new() }
    }

    pub fn carrier(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[PointSet] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, set: PointSet) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.iter().all(|m| other.contains(m))
    }

    /// Intersection of every member; the whole carrier for the empty family.
    pub fn meet(&self) -> PointSet {
        self.iter()
            .fold(PointSet::full(self.n), |acc, m| acc.intersection(m))
    }

    /// Finite intersection property. A finite family's smallest sub-meet is
    /// the meet of all of it, so one intersection decides it.
    pub fn has_fip(&self) -> bool {
        self.is_empty() || !self.meet().is_empty()
    }

    pub fn map(&self, f: impl Fn(PointSet) -> PointSet) -> SetFamily {
        let mut members: Vec<PointSet> = self.iter().map(f).collect();
        members.sort_unstable();
        members.dedup();
        SetFamily { n: self.n, members }
    }
}

/// Closes `seeds` together with `∅` and the full carrier under pairwise union
/// and intersection, returning the sorted result.
///
/// Worklist fixpoint: every newly found set is combined with every set found
/// so far, so pairwise closure is reached when the worklist drains.
pub(crate) fn lattice_closure(n: usize, seeds: impl IntoIterator<Item = PointSet>) -> Vec<PointSet> {
    let mut present = [false; 1 << MAX_CARRIER];
    let mut found: Vec<PointSet> = Vec::new();
    let mut queue: Vec<PointSet> = Vec::new();
    let mut push = |s: PointSet, found: &mut Vec<PointSet>, queue: &mut Vec<PointSet>| {
        let slot = &mut present[s.bits() as usize];
        if !*slot {
            *slot = true;
            found.push(s);
            queue.push(s);
        }
    };
    push(PointSet::empty(n), &mut found, &mut queue);
    push(PointSet::full(n), &mut found, &mut queue);
    for s in seeds {
        push(s, &mut found, &mut queue);
    }
    while let Some(s) = queue.pop() {
        let mut i = 0;
        while i < found.len() {
            let t = found[i];
            push(s.union(t), &mut found, &mut queue);
            push(s.intersection(t), &mut found, &mut queue);
            i += 1;
        }
    }
    found.sort_unstable();
    found
}
