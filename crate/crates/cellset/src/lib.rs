//! Information propagation on medial graphs.
//!
//! A [`CellSet`] is a set of cells of one medial graph. Its rank counts the degrees of freedom of a
//! labelling, closure adds every cell forced by three known neighbours around a crossing, and a
//! set is safe when closing it does not lose rank. On critical graphs closed connected sets are
//! exactly the intersections of pseudo halfplanes.

mod convex;
mod label;
mod set;
mod sweep;

pub use convex::{components, convex_closure, dist, dist_sep, halfplane, is_connected, is_convex};
pub use label::{propagate, propagate_with, solve_missing, Labelling};
pub use set::{closure, closure_in_order, is_closed, rank, surrounded, CellSet, Closure, Extension};
pub use sweep::{build_recovery_sets, spanning_boundary_set, RecoverySets};

use medial::{CellId, CrossingId, GeodesicId, GeodesicViolation};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CellsetError {
    #[error("medial graph is not critical: {0}")]
    NotCritical(GeodesicViolation),
    #[error("no cell {0}")]
    NoSuchCell(CellId),
    #[error("no geodesic {0}")]
    NoSuchGeodesic(GeodesicId),
    #[error("geodesic {geodesic} does not bound cell {cell}")]
    NotBounding { cell: CellId, geodesic: GeodesicId },
    #[error("cell {cell} is forced by more than one crossing")]
    NotSafe { cell: CellId },
    #[error("labelling violates the consistency equation at crossing {crossing} by {residual:e}")]
    Inconsistent { crossing: CrossingId, residual: f64 },
    #[error("crossing {0} has no conductance function")]
    MissingConductance(CrossingId),
}

pub(crate) fn require_critical(m: &medial::MedialGraph) -> Result<&Vec<Vec<bool>>, CellsetError> {
    medial::check_critical(m).map_err(CellsetError::NotCritical)?;
    Ok(m.sides().expect("critical graphs split cleanly along every geodesic"))
}
