use medial::{CellId, GeodesicId, MedialGraph};

use crate::{closure, rank, require_critical, CellSet, CellsetError};

/// Boundary cell sets for reading off the conductance at a boundary triangle: `t` closes to the
/// halfplane beyond `g`, and `s = t ∪ {b} ∪ …` is safe and closes to everything.
#[derive(Debug, Clone)]
pub struct RecoverySets<'m> {
    pub s: CellSet<'m>,
    pub t: CellSet<'m>,
    /// Cells of `s` in the order they were added.
    pub order: Vec<CellId>,
}

pub fn build_recovery_sets(m: &MedialGraph, b: CellId, g: GeodesicId) -> Result<RecoverySets<'_>, CellsetError> {
    let sides = require_critical(m)?;
    let side = sides.get(g).ok_or(CellsetError::NoSuchGeodesic(g))?;
    if m.cell(b).is_none() || !m.is_boundary_cell(b) {
        return Err(CellsetError::NoSuchCell(b));
    }
    if !m.neighbors(b).iter().any(|&(_, h)| h == g) {
        return Err(CellsetError::NotBounding { cell: b, geodesic: g });
    }
    let np = m.boundary_point_count();
    let ends = m.geodesic(g).ends.expect("critical geodesics are open");
    let far = |c: CellId| side[c] != side[b];
    // the endpoint after which the boundary runs into the far halfplane
    let start = if far(m.segment_cell((ends[0] + 1) % np)) { ends[0] } else { ends[1] };
    let ring: Vec<CellId> = (1..=np).map(|i| m.segment_cell((start + i) % np)).collect();

    let mut order = Vec::new();
    let mut s = CellSet::empty(m);
    let mut closed = CellSet::empty(m);
    for &c in ring.iter().filter(|&&c| far(c)) {
        grow(c, &mut s, &mut closed, &mut order);
    }
    let t = s.clone();
    grow(b, &mut s, &mut closed, &mut order);
    let from = ring.iter().position(|&c| c == b).expect("boundary cell on the ring");
    for i in 0..np {
        grow(ring[(from + i) % np], &mut s, &mut closed, &mut order);
    }

    let halfplane = CellSet::from_cells(m, m.cell_ids().filter(|&c| far(c)))?;
    let ct = closure(&t);
    let cs = closure(&s);
    assert!(ct.set == halfplane && ct.safe, "far halfplane is the closure of a safe boundary set");
    assert!(cs.set == CellSet::all(m) && cs.safe && rank(&s) == rank(&cs.set), "boundary sweep reaches every cell safely");
    assert!(t.is_subset(&s) && s.contains(b) && !t.contains(b));
    Ok(RecoverySets { s, t, order })
}

fn grow<'m>(c: CellId, s: &mut CellSet<'m>, closed: &mut CellSet<'m>, order: &mut Vec<CellId>) {
    if !closed.contains(c) && !s.contains(c) {
        s.insert(c).expect("live cell");
        order.push(c);
        *closed = closure(s).set;
    }
}

/// A safe set of boundary cells whose closure is every cell, by the same sweep from segment 0.
pub fn spanning_boundary_set(m: &MedialGraph) -> Result<CellSet<'_>, CellsetError> {
    require_critical(m)?;
    let mut s = CellSet::empty(m);
    let mut closed = CellSet::empty(m);
    for &c in m.segments() {
        if !closed.contains(c) {
            s.insert(c)?;
            closed = closure(&s).set;
        }
    }
    if m.cell_count() == 1 && s.is_empty() {
        s.insert(m.segment_cell(0))?;
    }
    Ok(s)
}
