//! Layer-stripping recovery of conductances from a boundary oracle.
//!
//! At a boundary triangle the oracle is asked for the labelling that is zero beyond one side of
//! the apex and `x` at one cell, and the conductance at the apex is read off the consistency
//! equation. The apex is then smoothed and the oracle wrapped so that it answers for the smaller
//! medial graph. Boundary digons and empty circles carry no data and are stripped the same way.

mod apex;
mod result;
mod strip;
mod wrap;

pub use apex::{recover_apex, ApexFunction, ApexProbe};
pub use result::{EdgeRecovery, RecoveryResult, Step, StepKind};
pub use strip::{recover_network, ApexMode, RecoveryOptions, TriangleOrder};
pub use wrap::{wrap_circle_oracle, wrap_digon_oracle, wrap_uncrossed_oracle, FilledOracle, UncrossedOracle};

use cellset::CellsetError;
use forward::OracleError;
use medial::{CrossingId, GeodesicViolation, MedialError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RecoveryError {
    #[error("crossing {0} is not the apex of a boundary triangle")]
    NotApex(CrossingId),
    #[error("probe values must be nonzero and finite, got {0}")]
    BadProbe(f64),
    #[error("no probes given")]
    NoProbes,
    #[error("not recoverable: {0}")]
    NotRecoverable(GeodesicViolation),
    #[error("the oracle answers for a different medial graph than the network shape")]
    ShapeMismatch,
    #[error("edge {0} has no crossing in the medial graph")]
    MissedEdge(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Medial(#[from] MedialError),
    #[error(transparent)]
    Cellset(#[from] CellsetError),
    #[error(transparent)]
    Network(#[from] network_core::NetworkError),
}
