use std::fmt;

use fixedbitset::FixedBitSet;
use medial::{CellId, CrossingId, MedialGraph};

use crate::CellsetError;

/// A set of cells of one medial graph.
#[derive(Clone)]
pub struct CellSet<'m> {
    medial: &'m MedialGraph,
    bits: FixedBitSet,
}

impl<'m> CellSet<'m> {
    pub fn empty(medial: &'m MedialGraph) -> Self {
        CellSet { medial, bits: FixedBitSet::with_capacity(medial.cell_capacity()) }
    }

    pub fn all(medial: &'m MedialGraph) -> Self {
        let mut s = Self::empty(medial);
        for c in medial.cell_ids() {
            s.bits.insert(c);
        }
        s
    }

    pub fn from_cells(medial: &'m MedialGraph, cells: impl IntoIterator<Item = CellId>) -> Result<Self, CellsetError> {
        let mut s = Self::empty(medial);
        for c in cells {
            s.insert(c)?;
        }
        Ok(s)
    }

    pub fn medial(&self) -> &'m MedialGraph {
        self.medial
    }

    pub fn insert(&mut self, c: CellId) -> Result<bool, CellsetError> {
        if self.medial.cell(c).is_none() {
            return Err(CellsetError::NoSuchCell(c));
        }
        Ok(!self.bits.put(c))
    }

    pub fn remove(&mut self, c: CellId) {
        if c < self.bits.len() {
            self.bits.set(c, false);
        }
    }

    pub fn contains(&self, c: CellId) -> bool {
        self.bits.contains(c)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = CellId> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<CellId> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union_with(&mut self, other: &CellSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &CellSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn complement(&self) -> CellSet<'m> {
        let mut s = CellSet::all(self.medial);
        s.bits.difference_with(&self.bits);
        s
    }

    /// Positions around crossing `c` whose cell is missing from the set.
    pub(crate) fn missing_at(&self, c: CrossingId) -> impl Iterator<Item = usize> + '_ {
        let cells = self.medial.crossing(c).expect("live crossing").cells;
        (0..4).filter(move |&k| !self.contains(cells[k]))
    }
}

impl PartialEq for CellSet<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.medial, other.medial) && self.bits == other.bits
    }
}

impl fmt::Debug for CellSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Crossings with all four surrounding cells in `s`.
pub fn surrounded(s: &CellSet) -> usize {
    s.medial().crossing_ids().filter(|&c| s.missing_at(c).next().is_none()).count()
}

/// `|S|` minus the number of fully surrounded crossings.
pub fn rank(s: &CellSet) -> isize {
    s.len() as isize - surrounded(s) as isize
}

/// One simple extension: `cell` joined the set because the other three cells around `crossing`
/// were already present.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Extension {
    pub cell: CellId,
    pub crossing: CrossingId,
    /// No other crossing forced the same cell at the same moment.
    pub safe: bool,
}

#[derive(Debug, Clone)]
pub struct Closure<'m> {
    pub set: CellSet<'m>,
    pub trace: Vec<Extension>,
    pub safe: bool,
}

pub fn closure<'m>(s: &CellSet<'m>) -> Closure<'m> {
    let order: Vec<CrossingId> = s.medial().crossing_ids().collect();
    closure_in_order(s, &order)
}

/// Closure by repeated scans over `order`; crossings missing from `order` are scanned last.
pub fn closure_in_order<'m>(s: &CellSet<'m>, order: &[CrossingId]) -> Closure<'m> {
    let m = s.medial();
    let mut scan: Vec<CrossingId> = order.iter().copied().filter(|&c| m.crossing(c).is_some()).collect();
    scan.extend(m.crossing_ids().filter(|c| !order.contains(c)));
    let mut set = s.clone();
    let mut trace = Vec::new();
    loop {
        let mut grew = false;
        for &c in &scan {
            let missing: Vec<usize> = set.missing_at(c).collect();
            let [k] = missing[..] else { continue };
            let cell = m.crossing(c).expect("live crossing").cells[k];
            let completed = m
                .crossing_ids()
                .filter(|&o| {
                    let cells = m.crossing(o).expect("live crossing").cells;
                    cells.contains(&cell) && cells.iter().all(|&x| x == cell || set.contains(x))
                })
                .count();
            set.insert(cell).expect("cell of a live crossing");
            trace.push(Extension { cell, crossing: c, safe: completed == 1 });
            grew = true;
        }
        if !grew {
            break;
        }
    }
    let safe = rank(&set) == rank(s);
    Closure { set, trace, safe }
}

pub fn is_closed(s: &CellSet) -> bool {
    s.medial().crossing_ids().all(|c| s.missing_at(c).count() != 1)
}
