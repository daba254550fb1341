//! Medial graphs as pure combinatorics.
//!
//! A medial graph is stored as a set of *ports* and the links between them. Each crossing has four
//! slots in counterclockwise order; straight-through continuation pairs slot `k` with slot `k + 2`.
//! Boundary points are numbered counterclockwise. Segment `k` is the piece of boundary curve between
//! point `k - 1` and point `k` (with a single segment when there are no points).
//!
//! Around a crossing, `cells[k]` is the cell between slots `k` and `k + 1`.
//!
//! Crossing and cell ids are stable under [`MedialGraph::uncross_triangle`],
//! [`MedialGraph::remove_digon`] and [`MedialGraph::remove_free_loop`]; removed entries become
//! tombstones. Boundary points are renumbered by digon removal.

mod build;
mod check;
pub mod enumerate;
mod features;
mod surgery;

pub use build::{build_medial, LoopHost};
pub use check::{check_critical, check_semicritical, GeodesicViolation, ViolationKind};
pub use features::{find_boundary_features, BoundaryCell, FeatureKind};
pub use surgery::ApexCells;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

pub type CrossingId = usize;
pub type CellId = usize;
pub type GeodesicId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Port {
    Slot(CrossingId, u8),
    Boundary(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossing {
    pub links: [Port; 4],
    pub cells: [CellId; 4],
    /// Index of the network edge this crossing sits on.
    pub edge: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub color: Color,
    /// Index of the network vertex this cell came from.
    pub vertex: Option<usize>,
}

/// A closed geodesic with no crossings, enclosing the single cell `inside`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FreeLoop {
    pub inside: CellId,
    pub host: CellId,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Geodesic {
    /// Boundary endpoints for open geodesics, in tracing order.
    pub ends: Option<[usize; 2]>,
    /// Crossings in order of traversal; a self-intersection shows up twice.
    pub crossings: Vec<CrossingId>,
}

impl Geodesic {
    pub fn is_closed(&self) -> bool {
        self.ends.is_none()
    }
}

/// A medial edge: one link between two ports, or a free loop.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MedialEdge {
    pub sides: [CellId; 2],
    pub geodesic: GeodesicId,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MedialError {
    #[error("invalid medial graph: {0}")]
    Invalid(String),
    #[error("cells cannot be two-colored")]
    NotColorable,
    #[error("medial graph is not critical: {0}")]
    NotCritical(GeodesicViolation),
    #[error("crossing {0} is not the apex of a boundary triangle")]
    NotApex(CrossingId),
    #[error("cell {0} is not a boundary triangle")]
    NotTriangle(CellId),
    #[error("cell {0} is not a boundary digon")]
    NotDigon(CellId),
    #[error("no such cell {0}")]
    NoSuchCell(CellId),
    #[error("no such geodesic {0}")]
    NoSuchGeodesic(GeodesicId),
    #[error(transparent)]
    Network(#[from] network_core::NetworkError),
}

#[derive(Debug, Clone)]
pub struct MedialGraph {
    crossings: Vec<Option<Crossing>>,
    boundary: Vec<Port>,
    segments: Vec<CellId>,
    free_loops: Vec<FreeLoop>,
    cells: Vec<Option<Cell>>,

    geodesics: Vec<Geodesic>,
    strands: Vec<[GeodesicId; 2]>,
    point_geodesic: Vec<GeodesicId>,
    loop_geodesic: Vec<GeodesicId>,
    edges: Vec<MedialEdge>,
    adjacency: Vec<Vec<(CellId, GeodesicId)>>,
    boundary_cell: Vec<bool>,
    sides: OnceLock<Option<Vec<Vec<bool>>>>,
}

impl PartialEq for MedialGraph {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings
            && self.boundary == other.boundary
            && self.segments == other.segments
            && self.free_loops == other.free_loops
            && self.cells == other.cells
    }
}

impl MedialGraph {
    pub(crate) fn assemble(
        crossings: Vec<Option<Crossing>>,
        boundary: Vec<Port>,
        segments: Vec<CellId>,
        free_loops: Vec<FreeLoop>,
        cells: Vec<Option<Cell>>,
    ) -> MedialGraph {
        let mut m = MedialGraph {
            crossings,
            boundary,
            segments,
            free_loops,
            cells,
            geodesics: Vec::new(),
            strands: Vec::new(),
            point_geodesic: Vec::new(),
            loop_geodesic: Vec::new(),
            edges: Vec::new(),
            adjacency: Vec::new(),
            boundary_cell: Vec::new(),
            sides: OnceLock::new(),
        };
        m.refresh();
        m
    }

    /// Recompute geodesics, edges and adjacency from links and cell assignments.
    pub(crate) fn refresh(&mut self) {
        let nc = self.crossings.len();
        let np = self.boundary.len();
        let mut strands = vec![[usize::MAX; 2]; nc];
        let mut point_geodesic = vec![usize::MAX; np];
        let mut geodesics = Vec::new();
        for p in 0..np {
            if point_geodesic[p] != usize::MAX {
                continue;
            }
            let g = geodesics.len();
            let mut crossings = Vec::new();
            let mut cur = self.boundary[p];
            let end = loop {
                match cur {
                    Port::Boundary(q) => break q,
                    Port::Slot(c, k) => {
                        crossings.push(c);
                        strands[c][k as usize % 2] = g;
                        cur = self.link(Port::Slot(c, (k + 2) % 4));
                    }
                }
            };
            point_geodesic[p] = g;
            point_geodesic[end] = g;
            geodesics.push(Geodesic { ends: Some([p, end]), crossings });
        }
        for c in 0..nc {
            if self.crossings[c].is_none() {
                continue;
            }
            for k in 0..2u8 {
                if strands[c][k as usize] != usize::MAX {
                    continue;
                }
                let g = geodesics.len();
                let mut crossings = Vec::new();
                let (mut cc, mut kk) = (c, k);
                loop {
                    crossings.push(cc);
                    strands[cc][kk as usize % 2] = g;
                    match self.link(Port::Slot(cc, (kk + 2) % 4)) {
                        Port::Slot(c2, k2) => {
                            (cc, kk) = (c2, k2);
                        }
                        Port::Boundary(_) => unreachable!("closed strand reached the boundary"),
                    }
                    if cc == c && kk % 2 == k {
                        break;
                    }
                }
                geodesics.push(Geodesic { ends: None, crossings });
            }
        }
        let mut loop_geodesic = Vec::new();
        for _ in &self.free_loops {
            loop_geodesic.push(geodesics.len());
            geodesics.push(Geodesic { ends: None, crossings: Vec::new() });
        }

        let mut edges = Vec::new();
        let mut push_link = |a: Port, b: Port, sides: [CellId; 2], g: GeodesicId| {
            if a < b {
                edges.push(MedialEdge { sides, geodesic: g });
            }
        };
        for p in 0..np {
            let sides = [self.segment_cell(p), self.segment_cell(p + 1)];
            push_link(Port::Boundary(p), self.boundary[p], sides, point_geodesic[p]);
        }
        for (c, x) in self.crossings.iter().enumerate() {
            let Some(x) = x else { continue };
            for k in 0..4u8 {
                let sides = [x.cells[k as usize], x.cells[(k as usize + 3) % 4]];
                push_link(Port::Slot(c, k), x.links[k as usize], sides, strands[c][k as usize % 2]);
            }
        }
        for (l, g) in self.free_loops.iter().zip(&loop_geodesic) {
            edges.push(MedialEdge { sides: [l.inside, l.host], geodesic: *g });
        }

        let mut adjacency = vec![Vec::new(); self.cells.len()];
        for e in &edges {
            let [a, b] = e.sides;
            if !adjacency[a].contains(&(b, e.geodesic)) {
                adjacency[a].push((b, e.geodesic));
                adjacency[b].push((a, e.geodesic));
            }
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        let mut boundary_cell = vec![false; self.cells.len()];
        for &s in &self.segments {
            boundary_cell[s] = true;
        }

        self.geodesics = geodesics;
        self.strands = strands;
        self.point_geodesic = point_geodesic;
        self.loop_geodesic = loop_geodesic;
        self.edges = edges;
        self.adjacency = adjacency;
        self.boundary_cell = boundary_cell;
        self.sides = OnceLock::new();
    }

    pub fn link(&self, p: Port) -> Port {
        match p {
            Port::Slot(c, k) => self.crossings[c].as_ref().expect("live crossing").links[k as usize],
            Port::Boundary(q) => self.boundary[q],
        }
    }

    /// Cell of segment `k` (taken modulo the segment count).
    pub fn segment_cell(&self, k: usize) -> CellId {
        self.segments[k % self.segments.len()]
    }

    pub fn segments(&self) -> &[CellId] {
        &self.segments
    }

    pub fn boundary_links(&self) -> &[Port] {
        &self.boundary
    }

    pub fn boundary_point_count(&self) -> usize {
        self.boundary.len()
    }

    pub fn crossing(&self, c: CrossingId) -> Option<&Crossing> {
        self.crossings.get(c).and_then(Option::as_ref)
    }

    pub fn crossing_ids(&self) -> impl Iterator<Item = CrossingId> + '_ {
        self.crossings.iter().enumerate().filter(|(_, x)| x.is_some()).map(|(i, _)| i)
    }

    pub fn crossings(&self) -> impl Iterator<Item = (CrossingId, &Crossing)> + '_ {
        self.crossings.iter().enumerate().filter_map(|(i, x)| x.as_ref().map(|x| (i, x)))
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.iter().filter(|x| x.is_some()).count()
    }

    /// Upper bound on crossing ids, including tombstones.
    pub fn crossing_capacity(&self) -> usize {
        self.crossings.len()
    }

    pub fn cell(&self, c: CellId) -> Option<&Cell> {
        self.cells.get(c).and_then(Option::as_ref)
    }

    pub fn cell_ids(&self) -> impl Iterator<Item = CellId> + '_ {
        self.cells.iter().enumerate().filter(|(_, x)| x.is_some()).map(|(i, _)| i)
    }

    pub fn cell_count(&self) -> usize {
        self.cells.iter().filter(|x| x.is_some()).count()
    }

    /// Upper bound on cell ids, including tombstones.
    pub fn cell_capacity(&self) -> usize {
        self.cells.len()
    }

    pub fn color(&self, c: CellId) -> Color {
        self.cells[c].as_ref().expect("live cell").color
    }

    pub fn is_boundary_cell(&self, c: CellId) -> bool {
        self.boundary_cell.get(c).copied().unwrap_or(false)
    }

    /// Boundary cells in order of first appearance along the boundary.
    pub fn boundary_cells(&self) -> Vec<CellId> {
        let mut seen = BTreeSet::new();
        self.segments.iter().copied().filter(|c| seen.insert(*c)).collect()
    }

    pub fn free_loops(&self) -> &[FreeLoop] {
        &self.free_loops
    }

    pub fn geodesics(&self) -> &[Geodesic] {
        &self.geodesics
    }

    pub fn geodesic(&self, g: GeodesicId) -> &Geodesic {
        &self.geodesics[g]
    }

    /// The geodesics through a crossing: `[strand of slots 0/2, strand of slots 1/3]`.
    pub fn strands(&self, c: CrossingId) -> [GeodesicId; 2] {
        self.strands[c]
    }

    pub fn geodesic_at_point(&self, p: usize) -> GeodesicId {
        self.point_geodesic[p]
    }

    pub fn geodesic_of_loop(&self, l: usize) -> GeodesicId {
        self.loop_geodesic[l]
    }

    pub fn edges(&self) -> &[MedialEdge] {
        &self.edges
    }

    /// Neighbors of a cell with the geodesic crossed to reach each.
    pub fn neighbors(&self, c: CellId) -> &[(CellId, GeodesicId)] {
        &self.adjacency[c]
    }

    pub fn adjacent(&self, a: CellId, b: CellId) -> bool {
        self.adjacency[a].iter().any(|&(x, _)| x == b)
    }

    /// Cells around a crossing rotated so the first is black: `[w, x, y, z]` with `w, y` black.
    pub fn consistency_cells(&self, c: CrossingId) -> [CellId; 4] {
        let x = self.crossings[c].as_ref().expect("live crossing");
        let r = if self.color(x.cells[0]) == Color::Black { 0 } else { 1 };
        [x.cells[r], x.cells[(r + 1) % 4], x.cells[(r + 2) % 4], x.cells[(r + 3) % 4]]
    }

    /// For a critical graph: for every geodesic, which side each cell lies on. `None` when some
    /// geodesic fails to split the cells consistently.
    pub fn sides(&self) -> Option<&Vec<Vec<bool>>> {
        self.sides.get_or_init(|| self.compute_sides()).as_ref()
    }

    fn compute_sides(&self) -> Option<Vec<Vec<bool>>> {
        let start = self.cell_ids().next()?;
        let mut all = Vec::with_capacity(self.geodesics.len());
        for g in 0..self.geodesics.len() {
            let mut side: Vec<Option<bool>> = vec![None; self.cells.len()];
            side[start] = Some(false);
            let mut stack = vec![start];
            while let Some(a) = stack.pop() {
                let sa = side[a].expect("visited");
                for &(b, h) in &self.adjacency[a] {
                    let want = if h == g { !sa } else { sa };
                    match side[b] {
                        None => {
                            side[b] = Some(want);
                            stack.push(b);
                        }
                        Some(s) if s != want => return None,
                        Some(_) => {}
                    }
                }
            }
            all.push(side.into_iter().map(|s| s.unwrap_or(false)).collect());
        }
        Some(all)
    }

    /// Whether geodesic `g` separates cells `a` and `b`. Requires consistent sides.
    pub fn separates(&self, g: GeodesicId, a: CellId, b: CellId) -> Option<bool> {
        self.sides().map(|s| s[g][a] != s[g][b])
    }

    /// Raw link data, suitable for [`MedialGraph::from_links`].
    pub fn link_data(&self) -> (Vec<Option<[Port; 4]>>, Vec<Port>) {
        (self.crossings.iter().map(|x| x.as_ref().map(|x| x.links)).collect(), self.boundary.clone())
    }

    pub fn stats(&self) -> MedialStats {
        MedialStats {
            geodesics: self.geodesics.len(),
            crossings: self.crossing_count(),
            cells: self.cell_count(),
            boundary_points: self.boundary.len(),
            boundary_cells: self.boundary_cells().len(),
            closed_geodesics: self.geodesics.iter().filter(|g| g.is_closed()).count(),
            semicritical: check_semicritical(self).is_ok(),
            critical: check_critical(self).is_ok(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MedialStats {
    pub geodesics: usize,
    pub crossings: usize,
    pub cells: usize,
    pub boundary_points: usize,
    pub boundary_cells: usize,
    pub closed_geodesics: usize,
    pub semicritical: bool,
    pub critical: bool,
}

impl fmt::Display for MedialStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "geodesics: {}", self.geodesics)?;
        writeln!(f, "closed geodesics: {}", self.closed_geodesics)?;
        writeln!(f, "crossings: {}", self.crossings)?;
        writeln!(f, "cells: {} ({} on the boundary)", self.cells, self.boundary_cells)?;
        writeln!(f, "boundary points: {}", self.boundary_points)?;
        writeln!(f, "semicritical: {}", self.semicritical)?;
        write!(f, "critical: {}", self.critical)
    }
}
