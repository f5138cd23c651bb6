//! The dual operator `d`: regenerate a topology from its compact saturated
//! sets used as a closed base. Also hosts the stabilization checks built on
//! top of it.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::point_set::PointSet;
use crate::preorder::Preorder;
use crate::topology::{is_compact_fip, topology_from_closed_base, FiniteTopology};

/// Highest iterate [`dual_power`] computes.
pub const MAX_DUAL_POWER: usize = 6;

/// Every compact saturated subset of the space.
pub fn compact_saturated_family(t: &FiniteTopology) -> SetFamily {
    let n = t.carrier();
    let members = PointSet::all_subsets(n)
        .filter(|&s| {
            t.is_saturated(s).expect("subset of carrier") && t.is_compact_cover(s).expect("subset of carrier")
        })
        .collect();
    SetFamily::from_sorted_unchecked(n, members)
}

pub fn dual(t: &FiniteTopology) -> FiniteTopology {
    topology_from_closed_base(t.carrier(), &compact_saturated_family(t))
        .expect("base lives on the same carrier")
}

/// `k`-fold dual, `0 ≤ k ≤ 6`.
pub fn dual_power(t: &FiniteTopology, k: usize) -> Result<FiniteTopology> {
    if k > MAX_DUAL_POWER {
        return Err(Error::PowerOutOfRange(k));
    }
    let mut cur = t.clone();
    for _ in 0..k {
        cur = dual(&cur);
    }
    Ok(cur)
}

/// The iterates `τ, τ^d, τ^dd, τ^ddd, τ^dddd` of some space.
///
/// Generic over the stage type so the finite engine and the symbolic catalog
/// share one classifier. Construction enforces `τ^dd = τ^dddd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSequence<S> {
    stages: [S; 5],
}

impl<S: PartialEq + Clone> DualSequence<S> {
    /// Wraps precomputed stages; `None` when the second and fourth differ.
    pub fn from_stages(stages: [S; 5]) -> Option<Self> {
        (stages[2] == stages[4]).then_some(DualSequence { stages })
    }

    /// Builds the sequence by iterating `step` from `start`.
    pub fn iterate<E>(start: S, mut step: impl FnMut(&S) -> Result<S, E>) -> Result<[S; 5], E> {
        let s1 = step(&start)?;
        let s2 = step(&s1)?;
        let s3 = step(&s2)?;
        let s4 = step(&s3)?;
        Ok([start, s1, s2, s3, s4])
    }

    pub fn stages(&self) -> &[S; 5] {
        &self.stages
    }

    /// Number of distinct topologies among `τ, τ^d, τ^dd, τ^ddd`.
    pub fn distinct_count(&self) -> usize {
        let mut seen: Vec<&S> = Vec::with_capacity(4);
        for s in &self.stages[..4] {
            if !seen.contains(&s) {
                seen.push(s);
            }
        }
        seen.len()
    }
}

/// Dual sequence of a finite space; fails loudly if stabilization breaks.
pub fn dual_sequence(t: &FiniteTopology) -> Result<DualSequence<FiniteTopology>> {
    let stages = DualSequence::iterate(t.clone(), |s| Ok::<_, Error>(dual(s)))?;
    DualSequence::from_stages(stages).ok_or_else(|| Error::TheoremViolation(t.to_json_string()))
}

/// Compact saturated sets of `τ` stay compact saturated in `τ^dd`.
pub fn dual_base_inclusion(t: &FiniteTopology) -> bool {
    let first = compact_saturated_family(t);
    let third = compact_saturated_family(&dual(&dual(t)));
    first.is_subfamily_of(&third)
}

/// The compact saturated sets of `τ^d` and `τ^ddd` coincide.
pub fn second_dual_base_stable(t: &FiniteTopology) -> bool {
    let d1 = dual(t);
    let d3 = dual(&dual(&d1));
    compact_saturated_family(&d1) == compact_saturated_family(&d3)
}

/// Closures of single points; a closed base of any finite space, with at
/// most `n` members so the f.i.p. walk stays small.
pub fn point_closure_base(t: &FiniteTopology) -> SetFamily {
    let n = t.carrier();
    let members = (0..n).map(|x| t.closure(PointSet::singleton(n, x)).expect("point of carrier"));
    SetFamily::new(n, members).expect("closures live on the carrier")
}

/// For every compact `C` and every compact saturated `P` of `τ^d`, `C ∩ P` is
/// compact, decided by the f.i.p. criterion against the point-closure base.
pub fn compact_meets_stay_compact(t: &FiniteTopology) -> bool {
    let n = t.carrier();
    let base = point_closure_base(t);
    let second = compact_saturated_family(&dual(t));
    let mut seen = vec![false; 1 << n];
    for c in PointSet::all_subsets(n) {
        if !t.is_compact_cover(c).expect("subset of carrier") {
            continue;
        }
        for p in second.iter() {
            let meet = c.intersection(p);
            if std::mem::replace(&mut seen[meet.bits() as usize], true) {
                continue;
            }
            if !is_compact_fip(meet, &base).expect("point-closure base is within the guard") {
                return false;
            }
        }
    }
    true
}

/// Choice of a point `ξ(M) ∈ M` for every `M ∈ ψ`.
pub type Witness = BTreeMap<PointSet, usize>;

/// Finds `ξ(M) ∈ M` for each `M ∈ psi` such that `{c} ∪ {↓ξ(M)}` has the
/// finite intersection property, `↓` taken in the specialization of `t`.
///
/// Requires `c` compact saturated in `t`, `psi` compact saturated in `t^d`,
/// and `{c} ∪ psi` with the finite intersection property. A witness always
/// exists under those hypotheses, so [`Error::WitnessNotFound`] means a bug.
pub fn closure_point_witness(t: &FiniteTopology, c: PointSet, psi: &SetFamily) -> Result<Witness> {
    let n = t.carrier();
    if c.carrier() != n {
        return Err(Error::CarrierMismatch { set: c, n });
    }
    if psi.carrier() != n {
        return Err(Error::PreconditionViolated(format!(
            "ψ lives on {} points, expected {n}",
            psi.carrier()
        )));
    }
    let first = compact_saturated_family(t);
    let second = compact_saturated_family(&dual(t));
    witness_with_families(t, &t.specialization(), &first, &second, c, psi)
}

fn witness_with_families(
    t: &FiniteTopology,
    order: &Preorder,
    first: &SetFamily,
    second: &SetFamily,
    c: PointSet,
    psi: &SetFamily,
) -> Result<Witness> {
    if !first.contains(c) {
        return Err(Error::PreconditionViolated(format!("{c} is not compact saturated")));
    }
    if let Some(m) = psi.iter().find(|&m| !second.contains(m)) {
        return Err(Error::PreconditionViolated(format!(
            "{m} is not compact saturated in the dual"
        )));
    }
    if c.intersection(psi.meet()).is_empty() {
        return Err(Error::PreconditionFipViolated);
    }
    search_witness(order, c, psi.members()).ok_or_else(|| {
        Error::WitnessNotFound(format!("C={c}, ψ={:?} in {}", psi.members(), t.to_json_string()))
    })
}

/// Depth-first search over choice functions, cutting a branch as soon as
/// `c ∩ ↓ξ(M₁) ∩ .. ∩ ↓ξ(Mᵢ)` empties.
fn search_witness(order: &Preorder, c: PointSet, psi: &[PointSet]) -> Option<Witness> {
    fn go(order: &Preorder, meet: PointSet, rest: &[PointSet], chosen: &mut Vec<usize>) -> bool {
        let Some((&m, tail)) = rest.split_first() else {
            return true;
        };
        for x in m.points() {
            let next = meet.intersection(order.below(x));
            if next.is_empty() {
                continue;
            }
            chosen.push(x);
            if go(order, next, tail, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::with_capacity(psi.len());
    go(order, c, psi, &mut chosen).then(|| psi.iter().copied().zip(chosen).collect())
}

/// How [`closure_point_witness_sweep`] picks the families `ψ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSweep {
    /// Every `ψ ⊆ Φ^dd` with `{C} ∪ ψ` having f.i.p.
    Exhaustive,
    /// Only the maximal such families `{M ∈ Φ^dd : x ∈ M}` for `x ∈ C`.
    /// Every f.i.p. family sits inside one of these, and restricting a
    /// witness to a subfamily keeps it a witness, so this covers the rest.
    Maximal,
}

/// Runs [`closure_point_witness`] over every `(C, ψ)` the sweep selects and
/// returns how many instances were checked.
pub fn closure_point_witness_sweep(t: &FiniteTopology, sweep: WitnessSweep) -> Result<usize> {
    let n = t.carrier();
    let first = compact_saturated_family(t);
    let second = compact_saturated_family(&dual(t));
    let order = t.specialization();
    let check = |c: PointSet, psi: &SetFamily| witness_with_families(t, &order, &first, &second, c, psi);
    let mut count = 0;
    // {∅} ∪ ψ never has f.i.p.
    for c in first.iter().filter(|c| !c.is_empty()) {
        match sweep {
            WitnessSweep::Exhaustive => {
                let mut families = Vec::new();
                fip_subfamilies(second.members(), c, &mut Vec::new(), &mut families);
                for members in families {
                    let psi = SetFamily::new(n, members)?;
                    check(c, &psi)?;
                    count += 1;
                }
            }
            WitnessSweep::Maximal => {
                // the empty family is always admissible
                check(c, &SetFamily::empty(n))?;
                count += 1;
                for x in c.points() {
                    let psi = SetFamily::new(n, second.iter().filter(|m| m.contains(x)))?;
                    check(c, &psi)?;
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

fn fip_subfamilies(
    pool: &[PointSet],
    meet: PointSet,
    cur: &mut Vec<PointSet>,
    out: &mut Vec<Vec<PointSet>>,
) {
    out.push(cur.clone());
    for (i, &m) in pool.iter().enumerate() {
        let next = meet.intersection(m);
        if next.is_empty() {
            continue;
        }
        cur.push(m);
        fip_subfamilies(&pool[i + 1..], next, cur, out);
        cur.pop();
    }
}

/// A self-dual space has `↑A = ↓A` for every `A`. Vacuous otherwise.
pub fn self_dual_order_symmetric(t: &FiniteTopology) -> bool {
    if dual(t) != *t {
        return true;
    }
    let order = t.specialization();
    PointSet::all_subsets(t.carrier()).all(|a| order.up_set(a) == order.down_set(a))
}

/// When `↑A = ↓A` for every `A`, meeting a compact saturated set of `τ^d`
/// with a closed set of `τ` stays compact saturated in `τ^d`. Vacuous
/// otherwise.
pub fn closed_meets_stay_in_second_base(t: &FiniteTopology) -> bool {
    let n = t.carrier();
    let order = t.specialization();
    if !PointSet::all_subsets(n).all(|a| order.up_set(a) == order.down_set(a)) {
        return true;
    }
    let second = compact_saturated_family(&dual(t));
    let closed = t.closed_sets();
    let holds = second
        .iter()
        .all(|s| closed.iter().all(|h| second.contains(s.intersection(h))));
    holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::alexandrov_from_preorder;

    fn set(n: usize, pts: &[usize]) -> PointSet {
        PointSet::from_points(n, pts.iter().copied()).unwrap()
    }

    fn topo(n: usize, opens: &[&[usize]]) -> FiniteTopology {
        FiniteTopology::validate(n, opens.iter().map(|o| set(n, o))).unwrap()
    }

    fn chain3() -> FiniteTopology {
        alexandrov_from_preorder(&Preorder::from_fn(3, |x, y| x <= y).unwrap())
    }

    fn partition3() -> FiniteTopology {
        topo(3, &[&[], &[0, 1], &[2], &[0, 1, 2]])
    }

    #[test]
    fn compact_saturated_examples() {
        let s = FiniteTopology::sierpinski();
        assert_eq!(compact_saturated_family(&s).members(), &[set(2, &[]), set(2, &[0]), set(2, &[0, 1])]);
        assert_eq!(compact_saturated_family(&FiniteTopology::discrete(2)).len(), 4);
        assert_eq!(
            compact_saturated_family(&FiniteTopology::indiscrete(2)).members(),
            &[set(2, &[]), set(2, &[0, 1])]
        );
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual(&FiniteTopology::sierpinski()), topo(2, &[&[], &[1], &[0, 1]]));
        for n in 0..=4 {
            assert_eq!(dual(&FiniteTopology::discrete(n)), FiniteTopology::discrete(n));
            assert_eq!(dual(&FiniteTopology::indiscrete(n)), FiniteTopology::indiscrete(n));
        }
    }

    #[test]
    fn dual_power_examples() {
        let s = FiniteTopology::sierpinski();
        assert_eq!(dual_power(&s, 2).unwrap(), s);
        assert_eq!(dual_power(&s, 0).unwrap(), s);
        let i3 = FiniteTopology::indiscrete(3);
        assert_eq!(dual_power(&i3, 5).unwrap(), i3);
        assert_eq!(dual_power(&s, 7), Err(Error::PowerOutOfRange(7)));
    }

    #[test]
    fn dual_sequence_examples() {
        let s = FiniteTopology::sierpinski();
        let seq = dual_sequence(&s).unwrap();
        let op = dual(&s);
        assert_eq!(seq.stages(), &[s.clone(), op.clone(), s.clone(), op, s]);
        assert_eq!(seq.distinct_count(), 2);
        assert_eq!(dual_sequence(&FiniteTopology::indiscrete(2)).unwrap().distinct_count(), 1);
        let c = chain3();
        assert_eq!(dual(&c), alexandrov_from_preorder(&c.specialization().opposite()));
        assert_eq!(dual_sequence(&c).unwrap().distinct_count(), 2);
    }

    #[test]
    fn from_stages_rejects_unstable_sequences() {
        assert!(DualSequence::from_stages([1, 2, 3, 4, 5]).is_none());
        assert_eq!(DualSequence::from_stages([1, 2, 3, 4, 3]).unwrap().distinct_count(), 4);
    }

    #[test]
    fn base_inclusion_examples() {
        assert!(dual_base_inclusion(&FiniteTopology::sierpinski()));
        assert!(dual_base_inclusion(&FiniteTopology::discrete(3)));
        assert!(second_dual_base_stable(&chain3()));
    }

    #[test]
    fn compact_meets_examples() {
        assert!(compact_meets_stay_compact(&FiniteTopology::sierpinski()));
        assert!(compact_meets_stay_compact(&FiniteTopology::indiscrete(3)));
        assert!(compact_meets_stay_compact(&chain3()));
    }

    #[test]
    fn witness_examples() {
        let s = FiniteTopology::sierpinski();
        // {0} is not a down-set of 1 ≤ 0, so it is not compact saturated in the dual
        let psi = SetFamily::new(2, [set(2, &[0])]).unwrap();
        assert!(matches!(
            closure_point_witness(&s, set(2, &[0]), &psi),
            Err(Error::PreconditionViolated(_))
        ));
        // with ψ = {X} only ξ = 0 works: ↓{1} = {1} misses C
        let full = PointSet::full(2);
        let w = closure_point_witness(&s, set(2, &[0]), &SetFamily::new(2, [full]).unwrap()).unwrap();
        assert_eq!(w.get(&full), Some(&0));
        assert!(closure_point_witness(&s, set(2, &[0]), &SetFamily::empty(2)).unwrap().is_empty());

        let i2 = FiniteTopology::indiscrete(2);
        let w = closure_point_witness(&i2, full, &SetFamily::new(2, [full]).unwrap()).unwrap();
        assert!(w[&full] < 2);
    }

    #[test]
    fn witness_precondition_errors() {
        let d = FiniteTopology::discrete(2);
        let psi = SetFamily::new(2, [set(2, &[1])]).unwrap();
        assert_eq!(closure_point_witness(&d, set(2, &[0]), &psi), Err(Error::PreconditionFipViolated));
        let s = FiniteTopology::sierpinski();
        assert!(matches!(
            closure_point_witness(&s, set(2, &[1]), &SetFamily::empty(2)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn witness_sweeps_on_small_spaces() {
        for t in [FiniteTopology::sierpinski(), chain3(), partition3(), FiniteTopology::discrete(3)] {
            let all = closure_point_witness_sweep(&t, WitnessSweep::Exhaustive).unwrap();
            let max = closure_point_witness_sweep(&t, WitnessSweep::Maximal).unwrap();
            assert!(all >= 1 && max >= 1);
        }
    }

    #[test]
    fn self_dual_examples() {
        let i2 = FiniteTopology::indiscrete(2);
        assert!(self_dual_order_symmetric(&i2));
        let p = partition3();
        assert_eq!(dual(&p), p);
        assert!(self_dual_order_symmetric(&p));
        assert!(self_dual_order_symmetric(&FiniteTopology::sierpinski()));
    }

    #[test]
    fn closed_meets_examples() {
        assert!(closed_meets_stay_in_second_base(&FiniteTopology::discrete(3)));
        assert!(closed_meets_stay_in_second_base(&partition3()));
        assert!(closed_meets_stay_in_second_base(&chain3()));
    }
}
