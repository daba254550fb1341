use medial::enumerate::endpoint_pairing;
use medial::{check_critical, MedialGraph};

use crate::TransformError;

/// Two critical medial graphs on the same boundary points are equivalent when every geodesic ends
/// at the same boundary point in both.
pub fn medial_equivalent(m1: &MedialGraph, m2: &MedialGraph) -> Result<bool, TransformError> {
    check_critical(m1).map_err(TransformError::NotCritical)?;
    check_critical(m2).map_err(TransformError::NotCritical)?;
    let (left, right) = (m1.boundary_point_count(), m2.boundary_point_count());
    if left != right {
        return Err(TransformError::BoundaryMismatch { left, right });
    }
    Ok(endpoint_pairing(m1) == endpoint_pairing(m2))
}
