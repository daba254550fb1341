use std::collections::BTreeMap;

use medial::{CellId, CrossingId, MedialGraph};
use network_core::{Bijection, ConductanceSpec, Network};

use crate::{closure_in_order, CellSet, CellsetError};

const TOLERANCE: f64 = 1e-9;

/// Partial map from cells to reals.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Labelling {
    pub values: BTreeMap<CellId, f64>,
}

impl Labelling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (CellId, f64)>) -> Self {
        Labelling { values: pairs.into_iter().collect() }
    }

    pub fn get(&self, c: CellId) -> Option<f64> {
        self.values.get(&c).copied()
    }

    pub fn set(&mut self, c: CellId, value: f64) {
        self.values.insert(c, value);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn domain<'m>(&self, m: &'m MedialGraph) -> Result<CellSet<'m>, CellsetError> {
        CellSet::from_cells(m, self.values.keys().copied())
    }

    /// `φ(z) − φ(x) − γ(φ(w) − φ(y))` at crossing `c`, when all four cells are labelled.
    pub fn residual(&self, m: &MedialGraph, c: CrossingId, gamma: &impl Bijection) -> Option<f64> {
        let [w, x, y, z] = m.consistency_cells(c).map(|k| self.get(k));
        Some(z? - x? - gamma.eval(w? - y?))
    }

    /// Check the consistency equation at every fully labelled crossing, relative to the size of the
    /// labels involved.
    pub fn check<G: Bijection>(&self, m: &MedialGraph, gamma: impl Fn(CrossingId) -> Option<G>) -> Result<(), CellsetError> {
        for c in m.crossing_ids() {
            if m.consistency_cells(c).iter().all(|k| self.values.contains_key(k)) {
                let g = gamma(c).ok_or(CellsetError::MissingConductance(c))?;
                let r = self.residual(m, c, &g).expect("fully labelled");
                let scale = m.consistency_cells(c).iter().filter_map(|&k| self.get(k)).fold(1.0, |a: f64, v| a.max(v.abs()));
                if !(r.abs() <= TOLERANCE * scale) {
                    return Err(CellsetError::Inconsistent { crossing: c, residual: r });
                }
            }
        }
        Ok(())
    }
}

/// Solve the consistency equation for the one unknown among `[w, x, y, z]`.
pub fn solve_missing(values: [Option<f64>; 4], gamma: &impl Bijection) -> Option<(usize, f64)> {
    let missing: Vec<usize> = (0..4).filter(|&k| values[k].is_none()).collect();
    let [k] = missing[..] else { return None };
    let v = |i: usize| values[i].unwrap_or(0.0);
    let solved = match k {
        0 => v(2) + gamma.inverse(v(3) - v(1)),
        1 => v(3) - gamma.eval(v(0) - v(2)),
        2 => v(0) - gamma.inverse(v(3) - v(1)),
        _ => v(1) + gamma.eval(v(0) - v(2)),
    };
    Some((k, solved))
}

/// Extend a labelling of a safe set to its closure using the network's conductances.
pub fn propagate(labels: &Labelling, net: &Network, m: &MedialGraph) -> Result<Labelling, CellsetError> {
    let order: Vec<CrossingId> = m.crossing_ids().collect();
    propagate_with(labels, m, &order, |c| network_gamma(net, m, c))
}

pub(crate) fn network_gamma(net: &Network, m: &MedialGraph, c: CrossingId) -> Option<ConductanceSpec> {
    let e = m.crossing(c)?.edge?;
    net.edges.get(e)?.conductance.clone()
}

/// [`propagate`] with explicit conductance lookup and crossing scan order.
pub fn propagate_with<G: Bijection>(
    labels: &Labelling,
    m: &MedialGraph,
    order: &[CrossingId],
    gamma: impl Fn(CrossingId) -> Option<G>,
) -> Result<Labelling, CellsetError> {
    let s = labels.domain(m)?;
    labels.check(m, &gamma)?;
    let cl = closure_in_order(&s, order);
    if let Some(bad) = cl.trace.iter().find(|e| !e.safe) {
        return Err(CellsetError::NotSafe { cell: bad.cell });
    }
    let mut out = labels.clone();
    for ext in &cl.trace {
        let g = gamma(ext.crossing).ok_or(CellsetError::MissingConductance(ext.crossing))?;
        let cells = m.consistency_cells(ext.crossing);
        let (k, value) = solve_missing(cells.map(|c| out.get(c)), &g).expect("one cell missing at a simple extension");
        debug_assert_eq!(cells[k], ext.cell);
        out.set(cells[k], value);
    }
    out.check(m, &gamma)?;
    Ok(out)
}
