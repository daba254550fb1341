use std::collections::VecDeque;

use medial::{CellId, GeodesicId, MedialGraph};

use crate::{require_critical, CellSet, CellsetError};

/// Cells on one side of geodesic `g`: the side containing `cell`.
pub fn halfplane<'m>(m: &'m MedialGraph, g: GeodesicId, cell: CellId) -> Result<CellSet<'m>, CellsetError> {
    let sides = require_critical(m)?;
    let side = sides.get(g).ok_or(CellsetError::NoSuchGeodesic(g))?;
    m.cell(cell).ok_or(CellsetError::NoSuchCell(cell))?;
    CellSet::from_cells(m, m.cell_ids().filter(|&c| side[c] == side[cell]))
}

/// Convexity through the boundary test: whenever `a` in the set has a neighbour `b` outside it
/// across `g`, the whole set lies on `a`'s side of `g`.
pub fn is_convex(s: &CellSet) -> Result<bool, CellsetError> {
    let m = s.medial();
    let sides = require_critical(m)?;
    for a in s.iter() {
        for &(b, g) in m.neighbors(a) {
            if !s.contains(b) && s.iter().any(|x| sides[g][x] != sides[g][a]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Intersection of every pseudo halfplane containing the set.
pub fn convex_closure<'m>(s: &CellSet<'m>) -> Result<CellSet<'m>, CellsetError> {
    let m = s.medial();
    let sides = require_critical(m)?;
    if s.is_empty() {
        return Ok(s.clone());
    }
    let mut out = CellSet::all(m);
    for side in sides {
        for keep in [false, true] {
            if s.iter().all(|c| side[c] == keep) {
                let h = CellSet::from_cells(m, m.cell_ids().filter(|&c| side[c] == keep))?;
                out.intersect_with(&h);
            }
        }
    }
    Ok(out)
}

/// Length of a shortest path of adjacent cells.
pub fn dist(m: &MedialGraph, a: CellId, b: CellId) -> Result<usize, CellsetError> {
    for c in [a, b] {
        m.cell(c).ok_or(CellsetError::NoSuchCell(c))?;
    }
    let mut seen = vec![usize::MAX; m.cell_capacity()];
    seen[a] = 0;
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            return Ok(seen[x]);
        }
        for &(y, _) in m.neighbors(x) {
            if seen[y] == usize::MAX {
                seen[y] = seen[x] + 1;
                queue.push_back(y);
            }
        }
    }
    unreachable!("medial graphs are connected")
}

/// Number of geodesics separating `a` from `b`.
pub fn dist_sep(m: &MedialGraph, a: CellId, b: CellId) -> Result<usize, CellsetError> {
    let sides = require_critical(m)?;
    for c in [a, b] {
        m.cell(c).ok_or(CellsetError::NoSuchCell(c))?;
    }
    Ok(sides.iter().filter(|s| s[a] != s[b]).count())
}

pub fn components<'m>(s: &CellSet<'m>) -> Vec<CellSet<'m>> {
    let m = s.medial();
    let mut left = s.clone();
    let mut out = Vec::new();
    loop {
        let first = left.iter().next();
        let Some(start) = first else { break };
        let mut comp = CellSet::empty(m);
        let mut stack = vec![start];
        left.remove(start);
        while let Some(x) = stack.pop() {
            comp.insert(x).expect("cell of the set");
            for &(y, _) in m.neighbors(x) {
                if left.contains(y) {
                    left.remove(y);
                    stack.push(y);
                }
            }
        }
        out.push(comp);
    }
    out
}

pub fn is_connected(s: &CellSet) -> bool {
    components(s).len() <= 1
}
