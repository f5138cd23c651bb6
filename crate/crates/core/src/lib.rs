//! Computes de Groot duals of topological spaces and checks, exhaustively
//! on small finite carriers and by rule on a catalog of infinite spaces,
//! that the dual sequence `τ, τ^d, τ^dd, ..` stabilizes with `τ^dd = τ^dddd`.
//!
//! Finite spaces are handled extensionally ([`FiniteTopology`]); infinite
//! ones intensionally ([`SymbolicTopology`]). Both feed the same generic
//! classifier over [`DualSequence`].

pub mod census;
pub mod classify;
pub mod dual;
pub mod error;
pub mod family;
pub mod laws;
pub mod point_set;
pub mod preorder;
pub mod symbolic;
pub mod topology;

pub use census::{census, canonicalize, CensusRow};
pub use classify::{classify, Classification, ClassificationRecord, RawClassFlags};
pub use dual::{dual, dual_power, dual_sequence, DualSequence};
pub use error::{Error, Result};
pub use family::SetFamily;
pub use point_set::{PointSet, MAX_CARRIER};
pub use preorder::Preorder;
pub use symbolic::{Cardinal, Family, SymbolicTopology};
pub use topology::FiniteTopology;

/// Dual sequence of a finite space.
pub type FiniteSequence = DualSequence<FiniteTopology>;
/// Dual sequence of a catalog member.
pub type SymbolicSequence = DualSequence<SymbolicTopology>;
/// Classification of a finite space.
pub type FiniteClassification = Classification<FiniteTopology>;
/// Classification of a catalog member.
pub type SymbolicClassification = Classification<SymbolicTopology>;
