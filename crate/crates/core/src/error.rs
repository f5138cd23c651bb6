use thiserror::Error;

use crate::point_set::PointSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier size {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("set {set} does not fit in a carrier of {n} points")]
    CarrierMismatch { set: PointSet, n: usize },

    #[error("family must contain both the empty set and the whole carrier")]
    MissingEmptyOrFull,

    #[error("family is not closed under union: {0} ∪ {1} is missing")]
    NotClosedUnderUnion(PointSet, PointSet),

    #[error("family is not closed under intersection: {0} ∩ {1} is missing")]
    NotClosedUnderIntersection(PointSet, PointSet),

    #[error("relation is not a preorder: {0}")]
    InvalidPreorder(String),

    #[error("closed base has {size} members, above the guard of {guard}")]
    GuardExceeded { size: usize, guard: usize },

    #[error("dual power {0} is outside 0..=6")]
    PowerOutOfRange(usize),

    #[error("stabilization failed: second and fourth duals differ for {0}")]
    TheoremViolation(String),

    #[error("witness precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("{{C}} ∪ ψ does not have the finite intersection property")]
    PreconditionFipViolated,

    #[error("no closure-point witness found for {0}")]
    WitnessNotFound(String),

    #[error("census verification failed ({law}) on {counterexample}")]
    VerificationFailure { law: String, counterexample: String },

    #[error("no dual rule for {0}")]
    UnknownFamily(String),

    #[error("dual rules are inconsistent: {0}")]
    RuleInconsistency(String),

    #[error("{0} has no faithful finite truncation")]
    NotTruncatable(String),

    #[error("parse error: {0}")]
    Parse(String),
}
