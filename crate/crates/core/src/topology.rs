//! Finite topological spaces and the basic toolbox on them: closure,
//! specialization, saturation, compactness, and generation from a closed base.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{lattice_closure, SetFamily};
use crate::point_set::{PointSet, MAX_CARRIER};
use crate::preorder::Preorder;

/// Default bound on closed-base size for [`is_compact_fip`]; the check walks
/// up to `2^guard` subfamilies.
pub const DEFAULT_FIP_GUARD: usize = 16;

/// A topology on `{0, .., n-1}`, stored as its open sets sorted by mask.
///
/// Two topologies are equal exactly when their sorted open lists are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteTopology {
    n: usize,
    opens: Vec<PointSet>,
}

impl FiniteTopology {
    /// Checks the topology axioms and returns the canonical form.
    pub fn validate(n: usize, opens: impl IntoIterator<Item = PointSet>) -> Result<Self> {
        if n > MAX_CARRIER {
            return Err(Error::CapExceeded { n, cap: MAX_CARRIER });
        }
        let mut sets: Vec<PointSet> = Vec::new();
        for s in opens {
            if s.carrier() != n {
                return Err(Error::CarrierMismatch { set: s, n });
            }
            sets.push(s);
        }
        sets.sort_unstable();
        sets.dedup();
        let has = |s: PointSet| sets.binary_search(&s).is_ok();
        if !has(PointSet::empty(n)) || !has(PointSet::full(n)) {
            return Err(Error::MissingEmptyOrFull);
        }
        for (i, &a) in sets.iter().enumerate() {
            for &b in &sets[i + 1..] {
                if !has(a.union(b)) {
                    return Err(Error::NotClosedUnderUnion(a, b));
                }
            }
        }
        for (i, &a) in sets.iter().enumerate() {
            for &b in &sets[i + 1..] {
                if !has(a.intersection(b)) {
                    return Err(Error::NotClosedUnderIntersection(a, b));
                }
            }
        }
        Ok(FiniteTopology { n, opens: sets })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, opens: Vec<PointSet>) -> Self {
        debug_assert_eq!(
            Self::validate(n, opens.iter().copied()).as_ref().map(|t| &t.opens),
            Ok(&opens)
        );
        FiniteTopology { n, opens }
    }

    pub fn discrete(n: usize) -> Self {
        FiniteTopology {
            n,
            opens: PointSet::all_subsets(n).collect(),
        }
    }

    pub fn indiscrete(n: usize) -> Self {
        let mut opens = vec![PointSet::empty(n), PointSet::full(n)];
        opens.dedup();
        FiniteTopology { n, opens }
    }

    /// `{∅, {0}, {0,1}}`
    pub fn sierpinski() -> Self {
        let opens = [0b00, 0b01, 0b11]
            .into_iter()
            .map(|b| PointSet::from_bits_unchecked(2, b))
            .collect();
        FiniteTopology { n: 2, opens }
    }

    pub fn carrier(&self) -> usize {
        self.n
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        self.opens.binary_search(&s).is_ok()
    }

    pub fn is_closed(&self, s: PointSet) -> bool {
        self.is_open(s.complement())
    }

    pub fn closed_sets(&self) -> SetFamily {
        let mut closed: Vec<PointSet> = self.opens.iter().map(|o| o.complement()).collect();
        closed.sort_unstable();
        SetFamily::from_sorted_unchecked(self.n, closed)
    }

    fn check_carrier(&self, a: PointSet) -> Result<()> {
        if a.carrier() != self.n {
            return Err(Error::CarrierMismatch { set: a, n: self.n });
        }
        Ok(())
    }

    /// Smallest closed set containing `a`.
    pub fn closure(&self, a: PointSet) -> Result<PointSet> {
        self.check_carrier(a)?;
        Ok(self
            .opens
            .iter()
            .map(|o| o.complement())
            .filter(|c| a.is_subset(*c))
            .fold(PointSet::full(self.n), |acc, c| acc.intersection(c)))
    }

    /// `x ≤ y` iff `x ∈ cl{y}`.
    pub fn specialization(&self) -> Preorder {
        let mut above = vec![0u32; self.n];
        for y in 0..self.n {
            let cl = self
                .closure(PointSet::singleton(self.n, y))
                .expect("singleton lives on the carrier");
            for x in cl.points() {
                above[x] |= 1 << y;
            }
        }
        Preorder::from_rows_unchecked(self.n, above)
    }

    /// Intersection of every open set containing `a`.
    pub fn saturation(&self, a: PointSet) -> Result<PointSet> {
        self.check_carrier(a)?;
        Ok(self
            .opens
            .iter()
            .filter(|o| a.is_subset(**o))
            .fold(PointSet::full(self.n), |acc, o| acc.intersection(*o)))
    }

    pub fn is_saturated(&self, a: PointSet) -> Result<bool> {
        Ok(self.saturation(a)? == a)
    }

    /// Cover form of compactness.
    ///
    /// Any open cover of `s` is a subfamily of the finitely many opens, and
    /// choosing one member per point of `s` yields a subcover with at most
    /// `|s|` members. The subcover is built from the largest cover (every
    /// open meeting `s`) and checked to cover `s`.
    pub fn is_compact_cover(&self, s: PointSet) -> Result<bool> {
        self.check_carrier(s)?;
        let cover: Vec<PointSet> = self.opens.iter().copied().filter(|o| o.meets(s)).collect();
        let mut sub = PointSet::empty(self.n);
        let mut used = 0;
        for x in s.points() {
            match cover.iter().find(|o| o.contains(x)) {
                Some(o) => {
                    sub = sub.union(*o);
                    used += 1;
                }
                None => return Ok(false),
            }
        }
        Ok(used <= s.len() && s.is_subset(sub))
    }

    pub fn relabel(&self, perm: &[usize]) -> FiniteTopology {
        let mut opens: Vec<PointSet> = self.opens.iter().map(|o| o.relabel(perm)).collect();
        opens.sort_unstable();
        FiniteTopology { n: self.n, opens }
    }

    pub fn to_json(&self) -> TopologyJson {
        TopologyJson {
            n: self.n,
            opens: self.opens.iter().map(|o| o.points().collect()).collect(),
        }
    }

    pub fn from_json(json: &TopologyJson) -> Result<Self> {
        if json.n > MAX_CARRIER {
            return Err(Error::CapExceeded { n: json.n, cap: MAX_CARRIER });
        }
        let sets = json
            .opens
            .iter()
            .map(|pts| PointSet::from_points(json.n, pts.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::validate(json.n, sets)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("plain integers serialize")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let json: TopologyJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&json)
    }
}

impl fmt::Display for FiniteTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {{", self.n)?;
        for (i, o) in self.opens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{o}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for FiniteTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Wire form: `{"n": 2, "opens": [[], [0], [0, 1]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyJson {
    pub n: usize,
    pub opens: Vec<Vec<usize>>,
}

/// Closed-base form of compactness with the default guard.
pub fn is_compact_fip(s: PointSet, base: &SetFamily) -> Result<bool> {
    is_compact_fip_guarded(s, base, DEFAULT_FIP_GUARD)
}

/// `s` is compact iff for every subfamily `ζ` of `base` such that `{s} ∪ ζ`
/// has the finite intersection property, `s ∩ ⋂ζ` is nonempty.
///
/// Subfamilies are walked depth-first. Once `{s} ∪ ζ` loses the finite
/// intersection property so does every larger family, so that branch is cut.
pub fn is_compact_fip_guarded(s: PointSet, base: &SetFamily, guard: usize) -> Result<bool> {
    if base.len() > guard {
        return Err(Error::GuardExceeded { size: base.len(), guard });
    }
    if s.carrier() != base.carrier() {
        return Err(Error::CarrierMismatch { set: s, n: base.carrier() });
    }
    fn walk(members: &[PointSet], family_meet: PointSet, s: PointSet) -> bool {
        // a finite family has f.i.p. iff its full meet is nonempty, and
        // that meet is exactly s ∩ ⋂ζ
        let meet = s.intersection(family_meet);
        if meet.is_empty() {
            return true;
        }
        members
            .iter()
            .enumerate()
            .all(|(i, &m)| walk(&members[i + 1..], family_meet.intersection(m), s))
    }
    Ok(walk(base.members(), PointSet::full(s.carrier()), s))
}

/// Topology whose closed sets are generated by `base`: all intersections of
/// finite unions of members, with the empty union `∅` and the empty
/// intersection the whole carrier.
pub fn topology_from_closed_base(n: usize, base: &SetFamily) -> Result<FiniteTopology> {
    if n > MAX_CARRIER {
        return Err(Error::CapExceeded { n, cap: MAX_CARRIER });
    }
    if base.carrier() != n {
        return Err(Error::Parse(format!(
            "closed base lives on {} points, expected {n}",
            base.carrier()
        )));
    }
    let closed = lattice_closure(n, base.iter());
    let mut opens: Vec<PointSet> = closed.into_iter().map(|c| c.complement()).collect();
    opens.sort_unstable();
    Ok(FiniteTopology::from_sorted_unchecked(n, opens))
}

/// The topology whose opens are the up-sets of `p`.
pub fn alexandrov_from_preorder(p: &Preorder) -> FiniteTopology {
    let n = p.carrier();
    let opens = PointSet::all_subsets(n).filter(|&a| p.is_up_set(a)).collect();
    FiniteTopology::from_sorted_unchecked(n, opens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, pts: &[usize]) -> PointSet {
        PointSet::from_points(n, pts.iter().copied()).unwrap()
    }

    fn family(n: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(n, sets.iter().map(|s| set(n, s))).unwrap()
    }

    #[test]
    fn validate_examples() {
        let s = FiniteTopology::validate(2, [set(2, &[]), set(2, &[0]), set(2, &[0, 1])]).unwrap();
        assert_eq!(s, FiniteTopology::sierpinski());
        assert_eq!(
            FiniteTopology::validate(2, [set(2, &[]), set(2, &[0]), set(2, &[1])]),
            Err(Error::MissingEmptyOrFull)
        );
        let d = FiniteTopology::validate(3, PointSet::all_subsets(3)).unwrap();
        assert_eq!(d, FiniteTopology::discrete(3));
        assert_eq!(d.opens().len(), 8);
    }

    #[test]
    fn validate_reports_witness_pairs() {
        let err = FiniteTopology::validate(3, [set(3, &[]), set(3, &[0]), set(3, &[1]), set(3, &[0, 1, 2])]);
        assert_eq!(err, Err(Error::NotClosedUnderUnion(set(3, &[0]), set(3, &[1]))));
        let err = FiniteTopology::validate(3, [set(3, &[]), set(3, &[0, 1]), set(3, &[1, 2]), set(3, &[0, 1, 2])]);
        assert_eq!(
            err,
            Err(Error::NotClosedUnderIntersection(set(3, &[0, 1]), set(3, &[1, 2])))
        );
        assert!(matches!(
            FiniteTopology::validate(2, [set(3, &[])]),
            Err(Error::CarrierMismatch { .. })
        ));
    }

    #[test]
    fn empty_carrier_is_accepted() {
        let t = FiniteTopology::validate(0, [PointSet::empty(0)]).unwrap();
        assert_eq!(t, FiniteTopology::discrete(0));
        assert_eq!(t, FiniteTopology::indiscrete(0));
        assert_eq!(t.opens().len(), 1);
    }

    #[test]
    fn closure_examples() {
        let s = FiniteTopology::sierpinski();
        assert_eq!(s.closure(set(2, &[0])).unwrap(), set(2, &[0, 1]));
        assert_eq!(s.closure(set(2, &[1])).unwrap(), set(2, &[1]));
        assert_eq!(s.closure(set(2, &[])).unwrap(), set(2, &[]));
        assert_eq!(FiniteTopology::discrete(3).closure(set(3, &[1])).unwrap(), set(3, &[1]));
        assert!(s.closure(set(3, &[0])).is_err());
    }

    #[test]
    fn specialization_examples() {
        let p = FiniteTopology::sierpinski().specialization();
        assert!(p.leq(1, 0) && !p.leq(0, 1));
        assert_eq!(FiniteTopology::discrete(4).specialization(), Preorder::identity(4));
        assert_eq!(FiniteTopology::indiscrete(4).specialization(), Preorder::full(4));
    }

    #[test]
    fn saturation_examples() {
        let s = FiniteTopology::sierpinski();
        assert_eq!(s.saturation(set(2, &[1])).unwrap(), set(2, &[0, 1]));
        assert_eq!(s.saturation(set(2, &[0])).unwrap(), set(2, &[0]));
        let d = FiniteTopology::discrete(3);
        for a in PointSet::all_subsets(3) {
            assert_eq!(d.saturation(a).unwrap(), a);
        }
    }

    #[test]
    fn cover_compactness_is_total_on_finite_spaces() {
        let d = FiniteTopology::discrete(4);
        assert!(d.is_compact_cover(PointSet::full(4)).unwrap());
        assert!(d.is_compact_cover(PointSet::empty(4)).unwrap());
        assert!(FiniteTopology::sierpinski().is_compact_cover(set(2, &[1])).unwrap());
    }

    #[test]
    fn fip_compactness_examples() {
        let s = FiniteTopology::sierpinski();
        let closed = s.closed_sets();
        assert_eq!(closed, family(2, &[&[], &[1], &[0, 1]]));
        assert!(is_compact_fip(set(2, &[0]), &closed).unwrap());
        assert!(is_compact_fip(PointSet::full(2), &closed).unwrap());
        assert!(is_compact_fip(PointSet::empty(2), &closed).unwrap());
        let big = SetFamily::new(5, PointSet::all_subsets(5)).unwrap();
        assert_eq!(
            is_compact_fip(PointSet::full(5), &big),
            Err(Error::GuardExceeded { size: 32, guard: 16 })
        );
    }

    #[test]
    fn closed_base_generation_examples() {
        let t = topology_from_closed_base(2, &family(2, &[&[], &[0], &[0, 1]])).unwrap();
        assert_eq!(t.opens(), &[set(2, &[]), set(2, &[1]), set(2, &[0, 1])]);
        assert_eq!(
            topology_from_closed_base(2, &SetFamily::empty(2)).unwrap(),
            FiniteTopology::indiscrete(2)
        );
        let singletons = family(3, &[&[0], &[1], &[2]]);
        assert_eq!(
            topology_from_closed_base(3, &singletons).unwrap(),
            FiniteTopology::discrete(3)
        );
    }

    #[test]
    fn alexandrov_examples() {
        assert_eq!(alexandrov_from_preorder(&Preorder::identity(2)), FiniteTopology::discrete(2));
        assert_eq!(alexandrov_from_preorder(&Preorder::full(2)), FiniteTopology::indiscrete(2));
        let chain = Preorder::from_fn(2, |x, y| x == y || (x == 1 && y == 0)).unwrap();
        assert_eq!(alexandrov_from_preorder(&chain), FiniteTopology::sierpinski());
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let t = FiniteTopology::from_json_str(r#"{"n":2,"opens":[[0,1],[0],[]]}"#).unwrap();
        assert_eq!(t.to_json_string(), r#"{"n":2,"opens":[[],[0],[0,1]]}"#);
        assert!(matches!(FiniteTopology::from_json_str("{"), Err(Error::Parse(_))));
        assert!(matches!(
            FiniteTopology::from_json_str(r#"{"n":9,"opens":[]}"#),
            Err(Error::CapExceeded { .. })
        ));
    }
}
