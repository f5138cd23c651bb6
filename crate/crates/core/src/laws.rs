//! Named law checks, run per finite space and per catalog member.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::census::{canonicalize, enumerate_preorders, run_blocks, visit_block};
use crate::classify::{
    class_identities_hold, classify, diagram_inclusions_hold, dual_class_admissible, g2b_iff_g3c,
    monoid_table_holds, ClassificationRecord,
};
use crate::dual::{
    closed_meets_stay_in_second_base, closure_point_witness_sweep, compact_meets_stay_compact,
    dual, dual_base_inclusion, dual_sequence, second_dual_base_stable, self_dual_order_symmetric,
    WitnessSweep,
};
use crate::error::{Error, Result};
use crate::symbolic::{catalog, classify_symbolic, symbolic_dual, symbolic_dual_power, SymbolicTopology};
use crate::topology::{alexandrov_from_preorder, FiniteTopology};

/// Largest carrier on which the witness sweep enumerates every family.
pub const EXHAUSTIVE_WITNESS_CAP: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Law {
    /// `τ^dd = τ^dddd`
    Stabilization,
    /// `Φ^d ⊆ Φ^ddd`
    BaseInclusion,
    /// `Φ^dd = Φ^dddd`
    SecondBaseStable,
    /// compact ∩ member of `Φ^dd` is compact
    CompactMeets,
    /// choice of closure points keeps f.i.p.
    ClosurePointWitness,
    /// self-dual ⟹ `↑A = ↓A`
    SelfDualSymmetric,
    /// symmetric order ⟹ `Φ^dd` closed under meets with closed sets
    ClosedMeets,
    /// pointwise class identities
    ClassIdentities,
    /// `G₂b = G₃c`
    G2bIffG3c,
    /// duals lie in `G₃ ∖ (G₂b ∖ G₁)`
    DualsInG3,
    /// composition table of `e, d, dd, ddd`
    MonoidTable,
}

impl Law {
    pub const ALL: [Law; 11] = [
        Law::Stabilization,
        Law::BaseInclusion,
        Law::SecondBaseStable,
        Law::CompactMeets,
        Law::ClosurePointWitness,
        Law::SelfDualSymmetric,
        Law::ClosedMeets,
        Law::ClassIdentities,
        Law::G2bIffG3c,
        Law::DualsInG3,
        Law::MonoidTable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Stabilization => "dual-sequence-stabilizes",
            Law::BaseInclusion => "compact-saturated-in-third-base",
            Law::SecondBaseStable => "second-base-stable",
            Law::CompactMeets => "compact-meets-stay-compact",
            Law::ClosurePointWitness => "closure-point-witness",
            Law::SelfDualSymmetric => "self-dual-order-symmetric",
            Law::ClosedMeets => "closed-meets-in-second-base",
            Law::ClassIdentities => "class-identities",
            Law::G2bIffG3c => "g2b-equals-g3c",
            Law::DualsInG3 => "duals-in-g3",
            Law::MonoidTable => "monoid-table",
        }
    }

    /// Whether the law is also checked on the symbolic catalog.
    pub fn symbolic(self) -> bool {
        matches!(
            self,
            Law::Stabilization | Law::ClassIdentities | Law::G2bIffG3c | Law::DualsInG3 | Law::MonoidTable
        )
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Facts that hold on finite carriers only; verified alongside the laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiniteFact {
    /// `dual(T)` is the Alexandrov topology of the opposite order.
    DualIsOppositeAlexandrov,
    /// Dualizing reverses the specialization order.
    SpecializationReverses,
    /// Every finite space satisfies `τ^dd = τ`.
    SecondDualReturns,
    /// `τ^d = τ` iff the specialization order is symmetric.
    SelfDualIffSymmetric,
    /// Spaces in `G₂` are duals (of their own dual).
    G2AriseAsDuals,
    /// Diagram inclusions between the classes.
    DiagramInclusions,
}

impl FiniteFact {
    pub const ALL: [FiniteFact; 6] = [
        FiniteFact::DualIsOppositeAlexandrov,
        FiniteFact::SpecializationReverses,
        FiniteFact::SecondDualReturns,
        FiniteFact::SelfDualIffSymmetric,
        FiniteFact::G2AriseAsDuals,
        FiniteFact::DiagramInclusions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FiniteFact::DualIsOppositeAlexandrov => "dual-is-opposite-alexandrov",
            FiniteFact::SpecializationReverses => "specialization-reverses",
            FiniteFact::SecondDualReturns => "second-dual-returns",
            FiniteFact::SelfDualIffSymmetric => "self-dual-iff-symmetric",
            FiniteFact::G2AriseAsDuals => "g2-arise-as-duals",
            FiniteFact::DiagramInclusions => "diagram-inclusions",
        }
    }
}

/// What [`examine_finite`] learns about one space.
#[derive(Clone, Debug)]
pub struct SpaceReport {
    pub record: ClassificationRecord,
    /// Sorted open-set masks of the canonical relabeling.
    pub canonical: Vec<u32>,
    pub symmetric_order: bool,
    pub law_checks: usize,
}

fn failure(name: &str, t: &FiniteTopology) -> Error {
    Error::VerificationFailure {
        law: name.to_string(),
        counterexample: t.to_json_string(),
    }
}

fn witness_sweep_for(n: usize) -> WitnessSweep {
    if n <= EXHAUSTIVE_WITNESS_CAP {
        WitnessSweep::Exhaustive
    } else {
        WitnessSweep::Maximal
    }
}

/// Checks one law on a finite space.
pub fn check_finite_law(law: Law, t: &FiniteTopology) -> Result<bool> {
    Ok(match law {
        Law::Stabilization => match dual_sequence(t) {
            Ok(_) => true,
            Err(Error::TheoremViolation(_)) => false,
            Err(e) => return Err(e),
        },
        Law::BaseInclusion => dual_base_inclusion(t),
        Law::SecondBaseStable => second_dual_base_stable(t),
        Law::CompactMeets => compact_meets_stay_compact(t),
        Law::ClosurePointWitness => {
            closure_point_witness_sweep(t, witness_sweep_for(t.carrier()))?;
            true
        }
        Law::SelfDualSymmetric => self_dual_order_symmetric(t),
        Law::ClosedMeets => closed_meets_stay_in_second_base(t),
        Law::ClassIdentities => class_identities_hold(&classify(&dual_sequence(t)?)),
        Law::G2bIffG3c => g2b_iff_g3c(&classify(&dual_sequence(t)?)),
        Law::DualsInG3 => dual_class_admissible(&classify(&dual_sequence(&dual(t))?)),
        Law::MonoidTable => {
            let mut powers = vec![t.clone()];
            for k in 1..=6 {
                powers.push(dual(&powers[k - 1]));
            }
            let powers: [FiniteTopology; 7] = powers.try_into().expect("seven powers");
            monoid_table_holds(&powers)
        }
    })
}

pub fn check_finite_fact(fact: FiniteFact, t: &FiniteTopology) -> Result<bool> {
    let order = t.specialization();
    let d = dual(t);
    Ok(match fact {
        FiniteFact::DualIsOppositeAlexandrov => d == alexandrov_from_preorder(&order.opposite()),
        FiniteFact::SpecializationReverses => d.specialization() == order.opposite(),
        FiniteFact::SecondDualReturns => dual(&d) == *t,
        FiniteFact::SelfDualIffSymmetric => (d == *t) == order.is_symmetric(),
        FiniteFact::G2AriseAsDuals => {
            let c = classify(&dual_sequence(t)?);
            !c.flags.in_g2() || dual(&d) == *t
        }
        FiniteFact::DiagramInclusions => diagram_inclusions_hold(&classify(&dual_sequence(t)?)),
    })
}

/// Runs every law and finite fact on `t`; the first failure becomes
/// [`Error::VerificationFailure`] carrying `t` as JSON.
pub fn examine_finite(t: &FiniteTopology) -> Result<SpaceReport> {
    let seq = dual_sequence(t).map_err(|_| failure(Law::Stabilization.name(), t))?;
    let c = classify(&seq);
    let mut checks = 0;
    for law in Law::ALL {
        match check_finite_law(law, t) {
            Ok(true) => checks += 1,
            Ok(false) | Err(_) => return Err(failure(law.name(), t)),
        }
    }
    for fact in FiniteFact::ALL {
        match check_finite_fact(fact, t) {
            Ok(true) => checks += 1,
            Ok(false) | Err(_) => return Err(failure(fact.name(), t)),
        }
    }
    let canonical = canonicalize(t).opens().iter().map(|o| o.bits()).collect();
    Ok(SpaceReport {
        record: c.record(),
        canonical,
        symmetric_order: t.specialization().is_symmetric(),
        law_checks: checks,
    })
}

/// Checks one law on a catalog member. `None` when the law has no symbolic
/// form.
pub fn check_symbolic_law(law: Law, s: SymbolicTopology) -> Result<Option<bool>> {
    if !law.symbolic() {
        return Ok(None);
    }
    let verdict = match law {
        Law::Stabilization => match classify_symbolic(s) {
            Ok(_) => true,
            Err(Error::RuleInconsistency(_)) => false,
            Err(e) => return Err(e),
        },
        Law::ClassIdentities => class_identities_hold(&classify_symbolic(s)?),
        Law::G2bIffG3c => g2b_iff_g3c(&classify_symbolic(s)?),
        Law::DualsInG3 => dual_class_admissible(&classify_symbolic(symbolic_dual(s)?)?),
        Law::MonoidTable => {
            let powers: Vec<SymbolicTopology> =
                (0..=6).map(|k| symbolic_dual_power(s, k)).collect::<Result<_>>()?;
            let powers: [SymbolicTopology; 7] = powers.try_into().expect("seven powers");
            monoid_table_holds(&powers)
        }
        _ => unreachable!("non-symbolic laws return early"),
    };
    Ok(Some(verdict))
}

/// Outcome of one law across the finite census and the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawRow {
    pub law: String,
    pub finite_instances: usize,
    pub symbolic_instances: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

impl LawRow {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub n: usize,
    pub rows: Vec<LawRow>,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(LawRow::passed)
    }
}

fn blank_rows() -> Vec<LawRow> {
    Law::ALL
        .iter()
        .map(|l| l.name())
        .chain(FiniteFact::ALL.iter().map(|f| f.name()))
        .map(|name| LawRow {
            law: name.to_string(),
            finite_instances: 0,
            symbolic_instances: 0,
            failures: 0,
            first_counterexample: None,
        })
        .collect()
}

fn record(row: &mut LawRow, outcome: Result<bool>, symbolic: bool, subject: impl FnOnce() -> String) {
    if symbolic {
        row.symbolic_instances += 1;
    } else {
        row.finite_instances += 1;
    }
    if !matches!(outcome, Ok(true)) {
        row.failures += 1;
        if row.first_counterexample.is_none() {
            row.first_counterexample = Some(match outcome {
                Err(e) => format!("{} ({e})", subject()),
                _ => subject(),
            });
        }
    }
}

fn merge_rows(into: &mut [LawRow], from: Vec<LawRow>) {
    for (a, b) in into.iter_mut().zip(from) {
        a.finite_instances += b.finite_instances;
        a.symbolic_instances += b.symbolic_instances;
        a.failures += b.failures;
        if a.first_counterexample.is_none() {
            a.first_counterexample = b.first_counterexample;
        }
    }
}

/// Every law over all topologies on `n` points and the whole catalog.
/// Unlike the census this keeps going after a failure and counts them.
pub fn run_laws(n: usize, cap: usize, jobs: usize) -> Result<LawReport> {
    // validates the cap before spinning up workers
    enumerate_preorders(0, cap)?;
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let blocks = run_blocks(n, jobs, |block| {
        let mut rows = blank_rows();
        visit_block(block, |p| {
            let t = alexandrov_from_preorder(&p);
            for (i, law) in Law::ALL.iter().enumerate() {
                record(&mut rows[i], check_finite_law(*law, &t), false, || t.to_json_string());
            }
            for (i, fact) in FiniteFact::ALL.iter().enumerate() {
                let row = &mut rows[Law::ALL.len() + i];
                record(row, check_finite_fact(*fact, &t), false, || t.to_json_string());
            }
        });
        rows
    })?;
    let mut rows = blank_rows();
    for b in blocks {
        merge_rows(&mut rows, b);
    }
    for s in catalog() {
        for (i, law) in Law::ALL.iter().enumerate() {
            match check_symbolic_law(*law, s) {
                Ok(None) => {}
                Ok(Some(v)) => record(&mut rows[i], Ok(v), true, || s.to_string()),
                Err(e) => record(&mut rows[i], Err(e), true, || s.to_string()),
            }
        }
    }
    Ok(LawReport { n, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws_on_three_points() {
        let r = run_laws(3, 5, 1).unwrap();
        assert!(r.all_passed(), "{r:?}");
        for row in &r.rows[..Law::ALL.len()] {
            assert_eq!(row.finite_instances, 29, "{}", row.law);
        }
    }

    #[test]
    fn laws_on_empty_carrier() {
        let r = run_laws(0, 5, 1).unwrap();
        assert!(r.all_passed());
        assert_eq!(r.rows[0].finite_instances, 1);
    }

    #[test]
    fn symbolic_laws_cover_catalog() {
        let r = run_laws(1, 5, 1).unwrap();
        let stab = &r.rows[0];
        assert_eq!(stab.symbolic_instances, catalog().len());
        let meets = r.rows.iter().find(|row| row.law == Law::CompactMeets.name()).unwrap();
        assert_eq!(meets.symbolic_instances, 0);
    }

    #[test]
    fn examine_reports_classification() {
        let rep = examine_finite(&FiniteTopology::sierpinski()).unwrap();
        assert_eq!(rep.record.n_generative, 2);
        assert!(!rep.symmetric_order);
        assert_eq!(rep.law_checks, Law::ALL.len() + FiniteFact::ALL.len());
    }
}
