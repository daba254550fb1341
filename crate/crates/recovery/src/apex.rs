use cellset::{build_recovery_sets, Labelling};
use forward::{BoundaryOracle, OracleError};
use medial::{ApexCells, CellId, Color, CrossingId, MedialGraph};

use crate::RecoveryError;

/// Everything needed to evaluate the conductance at one apex through an oracle.
///
/// Setting `x` on the black cell of `{b, d}` and zero beyond `g` reads `γ(±x)`; setting it on the
/// white cell reads `γ⁻¹(±x)`.
#[derive(Debug, Clone)]
pub struct ApexProbe {
    pub cells: ApexCells,
    /// The consistency cells `[w, x, y, z]` of the apex.
    pub quad: [CellId; 4],
    pub black: CellId,
    pub white: CellId,
    black_set: Vec<CellId>,
    white_set: Vec<CellId>,
}

impl ApexProbe {
    /// Probe for boundary triangle `b`.
    pub fn new(m: &MedialGraph, b: CellId) -> Result<Self, RecoveryError> {
        let cells = m.apex_cells(b)?;
        let (black, white) = if m.color(cells.b) == Color::Black { (cells.b, cells.d) } else { (cells.d, cells.b) };
        let black_set = build_recovery_sets(m, black, cells.g)?.s.to_vec();
        let white_set = build_recovery_sets(m, white, cells.g)?.s.to_vec();
        Ok(ApexProbe { cells, quad: m.consistency_cells(cells.apex), black, white, black_set, white_set })
    }

    /// Probe for the first boundary triangle whose apex is `apex`.
    pub fn at(m: &MedialGraph, apex: CrossingId) -> Result<Self, RecoveryError> {
        let (b, _) = m.triangles().into_iter().find(|&(_, a)| a == apex).ok_or(RecoveryError::NotApex(apex))?;
        Self::new(m, b)
    }

    /// `(φ(w) − φ(y), φ(z) − φ(x))` when `a` and `c` are zero.
    fn reading(&self, oracle: &dyn BoundaryOracle, set: &[CellId], cell: CellId, v: f64) -> Result<(f64, f64), OracleError> {
        let known = Labelling::from_pairs(set.iter().map(|&c| (c, if c == cell { v } else { 0.0 })));
        let got = oracle.answer(&known, &[self.cells.b, self.cells.d])?;
        let value = |c: CellId| {
            if c == self.cells.b {
                got[0]
            } else if c == self.cells.d {
                got[1]
            } else {
                0.0
            }
        };
        let [w, x, y, z] = self.quad.map(value);
        Ok((w - y, z - x))
    }

    /// `γ(t)` from one oracle query.
    pub fn eval(&self, oracle: &dyn BoundaryOracle, t: f64) -> Result<f64, OracleError> {
        if t == 0.0 {
            return Ok(0.0);
        }
        let (arg, val) = self.reading(oracle, &self.black_set, self.black, t)?;
        Ok(if arg == t { val } else { -val })
    }

    /// `γ⁻¹(s)` from one oracle query.
    pub fn inverse(&self, oracle: &dyn BoundaryOracle, s: f64) -> Result<f64, OracleError> {
        if s == 0.0 {
            return Ok(0.0);
        }
        let (arg, val) = self.reading(oracle, &self.white_set, self.white, s)?;
        Ok(if val == s { arg } else { -arg })
    }
}

/// The conductance at a smoothed apex, as the wrapped oracle sees it.
#[derive(Debug, Clone, PartialEq)]
pub enum ApexFunction {
    /// `γ(x) = c x`.
    Linear(f64),
    /// Odd piecewise-linear interpolation of probed points `[x, γ(x)]`, `x > 0`; nothing beyond the
    /// largest probe.
    Sampled(Vec<[f64; 2]>),
    /// Every value is asked of the parent oracle.
    Live,
}

/// Odd piecewise-linear interpolation through the origin and the probed points; the inverse reads
/// the same table backwards. Arguments beyond the last point are refused.
fn interpolate(table: &[[f64; 2]], t: f64, inverse: bool) -> Result<f64, OracleError> {
    let mut pts: Vec<[f64; 2]> = table.iter().map(|p| [p[0].abs(), p[1] * p[0].signum()]).collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]));
    pts.insert(0, [0.0, 0.0]);
    if inverse {
        pts.iter_mut().for_each(|p| p.swap(0, 1));
    }
    let orient = pts.last().map_or(1.0, |p| p[0].signum());
    let limit = pts.last().map_or(0.0, |p| p[0].abs());
    if !pts.windows(2).all(|w| (w[1][0] - w[0][0]) * orient > 0.0) {
        return Err(OracleError::ProbeInsufficient { x: t, limit });
    }
    let u = t.abs() * orient;
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if (u - a[0]) * orient >= 0.0 && (b[0] - u) * orient >= -1e-12 * limit {
            let y = a[1] + (b[1] - a[1]) * (u - a[0]) / (b[0] - a[0]);
            return Ok(t.signum() * orient * y);
        }
    }
    Err(OracleError::ProbeInsufficient { x: t, limit })
}

impl ApexFunction {
    pub fn eval(&self, probe: &ApexProbe, parent: &dyn BoundaryOracle, t: f64) -> Result<f64, OracleError> {
        match self {
            ApexFunction::Linear(c) => Ok(c * t),
            ApexFunction::Sampled(table) => interpolate(table, t, false),
            ApexFunction::Live => probe.eval(parent, t),
        }
    }

    pub fn inverse(&self, probe: &ApexProbe, parent: &dyn BoundaryOracle, s: f64) -> Result<f64, OracleError> {
        match self {
            ApexFunction::Linear(c) => Ok(s / c),
            ApexFunction::Sampled(table) => interpolate(table, s, true),
            ApexFunction::Live => probe.inverse(parent, s),
        }
    }
}

/// `[x, γ(x)]` for each probe `x` at the apex of a boundary triangle.
pub fn recover_apex(oracle: &dyn BoundaryOracle, apex: CrossingId, probes: &[f64]) -> Result<Vec<[f64; 2]>, RecoveryError> {
    check_probes(probes)?;
    let probe = ApexProbe::at(oracle.medial(), apex)?;
    probes.iter().map(|&x| Ok([x, probe.eval(oracle, x)?])).collect()
}

pub(crate) fn check_probes(probes: &[f64]) -> Result<(), RecoveryError> {
    if probes.is_empty() {
        return Err(RecoveryError::NoProbes);
    }
    match probes.iter().find(|x| **x == 0.0 || !x.is_finite()) {
        Some(&x) => Err(RecoveryError::BadProbe(x)),
        None => Ok(()),
    }
}
