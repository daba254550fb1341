//! Electrically equivalent rewrites of linear networks, the medial equivalence test, and random
//! circular planar networks for test suites.
//!
//! Every rewrite takes a [`Network`] and returns a new one together with a [`TransformRecord`].
//! Rotation lists are edited in place so that planar inputs stay planar, except for the star-mesh
//! and K4 rewrites whose complete graph is generally not planar.

mod edit;
mod equivalent;
pub mod generate;
mod k4;
mod local;

pub use equivalent::medial_equivalent;
pub use k4::{gadget_from_k4, k4_from_gadget, k4_to_planar, planar_to_k4, star_mesh_4, K4Gadget};
pub use local::{delta_wye, parallel_reduce, remove_isolated, remove_self_loop, series_reduce, wye_delta};

use medial::{GeodesicViolation, MedialError};
use network_core::{Network, NetworkError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Medial(#[from] MedialError),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),
    #[error("boundary mismatch: {left} points against {right}")]
    BoundaryMismatch { left: usize, right: usize },
    #[error("medial graph is not critical: {0}")]
    NotCritical(GeodesicViolation),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TransformKind {
    YDelta,
    DeltaY,
    Series,
    Parallel,
    RemoveDigon,
    RemoveCircle,
    RemoveSelfLoop,
    K4ToPlanar,
    PlanarToK4,
    StarMesh4,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformRecord {
    pub kind: TransformKind,
    pub vertices: Vec<String>,
    /// Removed edges with their slopes.
    pub old: Vec<(String, f64)>,
    /// Added or changed edges with their slopes.
    pub new: Vec<(String, f64)>,
}

pub type Rewrite = Result<(Network, TransformRecord), TransformError>;
