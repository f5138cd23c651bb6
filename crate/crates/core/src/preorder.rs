//! Reflexive, transitive relations on a finite carrier.

use std::fmt;

use crate::error::{Error, Result};
use crate::point_set::{PointSet, MAX_CARRIER};

/// A preorder on `{0, .., n-1}`. Row `x` holds every `y` with `x ≤ y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Preorder {
    n: usize,
    above: Vec<u32>,
}

impl Preorder {
    /// Validates `above[x]` = `{y : x ≤ y}` as a preorder.
    pub fn from_rows(n: usize, above: Vec<u32>) -> Result<Self> {
        if n > MAX_CARRIER {
            return Err(Error::CapExceeded { n, cap: MAX_CARRIER });
        }
        if above.len() != n {
            return Err(Error::InvalidPreorder(format!(
                "expected {n} rows, got {}",
                above.len()
            )));
        }
        let mask = (1u32 << n) - 1;
        for (x, &row) in above.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::InvalidPreorder(format!("row {x} leaves the carrier")));
            }
            if row & (1 << x) == 0 {
                return Err(Error::InvalidPreorder(format!("not reflexive at {x}")));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if above[x] & (1 << y) != 0 && above[y] & !above[x] != 0 {
                    return Err(Error::InvalidPreorder(format!(
                        "not transitive through {x} ≤ {y}"
                    )));
                }
            }
        }
        Ok(Preorder { n, above })
    }

    pub(crate) fn from_rows_unchecked(n: usize, above: Vec<u32>) -> Self {
        debug_assert!(Self::from_rows(n, above.clone()).is_ok());
        Preorder { n, above }
    }

    /// Builds the relation from a predicate `leq(x, y)`.
    pub fn from_fn(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let above = (0..n)
            .map(|x| (0..n).filter(|&y| leq(x, y)).fold(0u32, |row, y| row | 1 << y))
            .collect();
        Self::from_rows(n, above)
    }

    pub fn identity(n: usize) -> Self {
        Preorder {
            n,
            above: (0..n).map(|x| 1 << x).collect(),
        }
    }

    pub fn full(n: usize) -> Self {
        Preorder {
            n,
            above: vec![(1u32 << n) - 1; n],
        }
    }

    pub fn carrier(&self) -> usize {
        self.n
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.above[x] & (1 << y) != 0
    }

    pub fn rows(&self) -> &[u32] {
        &self.above
    }

    /// `{y : x ≤ y}`
    pub fn above(&self, x: usize) -> PointSet {
        PointSet::from_bits_unchecked(self.n, self.above[x])
    }

    /// `{y : y ≤ x}`
    pub fn below(&self, x: usize) -> PointSet {
        let bits = (0..self.n)
            .filter(|&y| self.leq(y, x))
            .fold(0u32, |acc, y| acc | 1 << y);
        PointSet::from_bits_unchecked(self.n, bits)
    }

    /// `↑A = {x : y ≤ x for some y ∈ A}`
    pub fn up_set(&self, a: PointSet) -> PointSet {
        let bits = a.points().fold(0u32, |acc, y| acc | self.above[y]);
        PointSet::from_bits_unchecked(self.n, bits)
    }

    /// `↓A = {x : x ≤ y for some y ∈ A}`
    pub fn down_set(&self, a: PointSet) -> PointSet {
        let bits = (0..self.n)
            .filter(|&x| self.above[x] & a.bits() != 0)
            .fold(0u32, |acc, x| acc | 1 << x);
        PointSet::from_bits_unchecked(self.n, bits)
    }

    pub fn is_up_set(&self, a: PointSet) -> bool {
        self.up_set(a) == a
    }

    pub fn opposite(&self) -> Preorder {
        let above = (0..self.n).map(|x| self.below(x).bits()).collect();
        Preorder { n: self.n, above }
    }

    /// True when the relation is an equivalence.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.leq(x, y) == self.leq(y, x)))
    }

    /// Out/in degree of each point in the relation digraph, loops excluded.
    pub fn degrees(&self) -> Vec<(u32, u32)> {
        (0..self.n)
            .map(|x| {
                let out = self.above[x].count_ones() - 1;
                let inn = self.below(x).len() as u32 - 1;
                (out, inn)
            })
            .collect()
    }
}

impl fmt::Debug for Preorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = (0..self.n)
            .flat_map(|x| (0..self.n).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y && self.leq(x, y))
            .map(|(x, y)| format!("{x}≤{y}"))
            .collect();
        write!(f, "Preorder(n={}, [{}])", self.n, pairs.join(", "))
    }
}
