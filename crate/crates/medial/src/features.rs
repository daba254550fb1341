use serde::Serialize;

use crate::{check_critical, CellId, CrossingId, MedialError, MedialGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FeatureKind {
    Digon,
    Triangle { apex: CrossingId },
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryCell {
    pub cell: CellId,
    /// First boundary segment the cell occupies.
    pub segment: usize,
    /// Side count, counting the boundary arc as one side; meaningful for simply connected cells.
    pub sides: usize,
    pub kind: FeatureKind,
}

/// Classify every boundary cell of a critical graph, in boundary order.
pub fn find_boundary_features(m: &MedialGraph) -> Result<Vec<BoundaryCell>, MedialError> {
    check_critical(m).map_err(MedialError::NotCritical)?;
    Ok(classify(m))
}

pub(crate) fn classify(m: &MedialGraph) -> Vec<BoundaryCell> {
    let n = m.cell_capacity();
    let mut corners: Vec<Vec<CrossingId>> = vec![Vec::new(); n];
    for (c, x) in m.crossings() {
        for &cell in &x.cells {
            corners[cell].push(c);
        }
    }
    let mut segs = vec![0usize; n];
    for &s in m.segments() {
        segs[s] += 1;
    }
    let mut hosts = vec![false; n];
    for l in m.free_loops() {
        hosts[l.host] = true;
    }
    let points = m.boundary_point_count();
    let mut out = Vec::new();
    for cell in m.boundary_cells() {
        let segment = m.segments().iter().position(|&s| s == cell).expect("boundary cell");
        let simple = segs[cell] == 1 && !hosts[cell] && points >= 2;
        let k = corners[cell].len();
        let kind = match (simple, k) {
            (true, 0) => FeatureKind::Digon,
            (true, 1) => FeatureKind::Triangle { apex: corners[cell][0] },
            _ => FeatureKind::Other,
        };
        out.push(BoundaryCell { cell, segment, sides: k + 2 * segs[cell], kind });
    }
    out.sort_by_key(|b| b.segment);
    out
}

impl MedialGraph {
    pub fn digons(&self) -> Vec<CellId> {
        classify(self).into_iter().filter(|b| b.kind == FeatureKind::Digon).map(|b| b.cell).collect()
    }

    /// Boundary triangles as `(cell, apex)` in boundary order.
    pub fn triangles(&self) -> Vec<(CellId, CrossingId)> {
        classify(self)
            .into_iter()
            .filter_map(|b| match b.kind {
                FeatureKind::Triangle { apex } => Some((b.cell, apex)),
                _ => None,
            })
            .collect()
    }
}
