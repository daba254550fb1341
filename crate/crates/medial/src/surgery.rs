use serde::Serialize;

use crate::features::classify;
use crate::{CellId, CrossingId, FeatureKind, GeodesicId, MedialError, MedialGraph, Port};

/// The four cells at the apex of boundary triangle `b`.
///
/// `g` is the geodesic between `b` and `a`; `h` the one between `b` and `d`. `c` is opposite `b`, so
/// `a` and `c` lie on the far side of `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ApexCells {
    pub apex: CrossingId,
    pub a: CellId,
    pub b: CellId,
    pub c: CellId,
    pub d: CellId,
    pub g: GeodesicId,
    pub h: GeodesicId,
    /// Slot index with `cells[slot] == b`.
    pub slot: usize,
}

impl MedialGraph {
    pub fn apex_cells(&self, b: CellId) -> Result<ApexCells, MedialError> {
        let apex = classify(self)
            .into_iter()
            .find_map(|x| match x.kind {
                FeatureKind::Triangle { apex } if x.cell == b => Some(apex),
                _ => None,
            })
            .ok_or(MedialError::NotTriangle(b))?;
        let x = self.crossing(apex).expect("live apex");
        let kb = x.cells.iter().position(|&c| c == b).expect("triangle corner at apex");
        let strands = self.strands(apex);
        Ok(ApexCells {
            apex,
            a: x.cells[(kb + 3) % 4],
            b,
            c: x.cells[(kb + 2) % 4],
            d: x.cells[(kb + 1) % 4],
            g: strands[kb % 2],
            h: strands[(kb + 1) % 2],
            slot: kb,
        })
    }

    /// Smooth the apex of boundary triangle `b` so the triangle merges into the opposite cell `c`,
    /// which keeps its id.
    pub fn uncross_triangle(&self, b: CellId) -> Result<MedialGraph, MedialError> {
        let ac = self.apex_cells(b)?;
        let x = self.crossing(ac.apex).expect("live apex");
        let k = ac.slot;
        let p: Vec<Port> = (0..4).map(|i| x.links[(k + i) % 4]).collect();
        let mut out = self.clone();
        out.set_link(p[0], p[3]);
        out.set_link(p[3], p[0]);
        out.set_link(p[1], p[2]);
        out.set_link(p[2], p[1]);
        out.crossings[ac.apex] = None;
        out.replace_cell(b, ac.c);
        out.refresh();
        Ok(out)
    }

    /// Uncross the first boundary triangle (in boundary order) whose apex is `apex`.
    pub fn uncross(&self, apex: CrossingId) -> Result<MedialGraph, MedialError> {
        let b = self.triangles().into_iter().find(|&(_, a)| a == apex).map(|(b, _)| b).ok_or(MedialError::NotApex(apex))?;
        self.uncross_triangle(b)
    }

    /// Delete a boundary digon: its geodesic and two boundary points go, and the digon cell merges
    /// into the cell on the other side.
    pub fn remove_digon(&self, d: CellId) -> Result<MedialGraph, MedialError> {
        if !self.digons().contains(&d) {
            return Err(MedialError::NotDigon(d));
        }
        let m = self.boundary.len();
        let k = self.segments.iter().position(|&s| s == d).expect("digon segment");
        let (p0, p1) = ((k + m - 1) % m, k);
        debug_assert_eq!(self.boundary[p0], Port::Boundary(p1));
        let other = self.segments[(k + 1) % m];
        let kept: Vec<usize> = (0..m).filter(|&p| p != p0 && p != p1).collect();
        let mut renumber = vec![usize::MAX; m];
        for (new, &old) in kept.iter().enumerate() {
            renumber[old] = new;
        }
        let map = |p: Port| match p {
            Port::Boundary(q) => Port::Boundary(renumber[q]),
            s => s,
        };
        let mut out = self.clone();
        out.boundary = kept.iter().map(|&q| map(self.boundary[q])).collect();
        out.segments = if kept.is_empty() { vec![other] } else { kept.iter().map(|&q| self.segments[q]).collect() };
        for x in out.crossings.iter_mut().flatten() {
            for l in &mut x.links {
                *l = map(*l);
            }
        }
        out.cells[d] = None;
        out.refresh();
        Ok(out)
    }

    /// Delete free loop `l`; the cell inside it disappears.
    pub fn remove_free_loop(&self, l: usize) -> Result<MedialGraph, MedialError> {
        let lp = self.free_loops.get(l).ok_or_else(|| MedialError::Invalid(format!("no free loop {l}")))?;
        if self.free_loops.iter().any(|o| o.host == lp.inside) {
            return Err(MedialError::Invalid(format!("free loop {l} encloses another loop")));
        }
        let mut out = self.clone();
        out.cells[lp.inside] = None;
        out.free_loops.remove(l);
        out.refresh();
        Ok(out)
    }

    fn set_link(&mut self, at: Port, to: Port) {
        match at {
            Port::Slot(c, k) => self.crossings[c].as_mut().expect("live").links[k as usize] = to,
            Port::Boundary(p) => self.boundary[p] = to,
        }
    }

    fn replace_cell(&mut self, old: CellId, new: CellId) {
        for s in &mut self.segments {
            if *s == old {
                *s = new;
            }
        }
        for l in &mut self.free_loops {
            if l.host == old {
                l.host = new;
            }
        }
        for x in self.crossings.iter_mut().flatten() {
            for c in &mut x.cells {
                if *c == old {
                    *c = new;
                }
            }
        }
        self.cells[old] = None;
    }
}
