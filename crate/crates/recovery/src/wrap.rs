use cellset::Labelling;
use forward::{BoundaryOracle, OracleError};
use medial::{CellId, CrossingId, MedialGraph};

use crate::apex::{ApexFunction, ApexProbe};
use crate::RecoveryError;

fn check_wanted(m: &MedialGraph, wanted: &[CellId]) -> Result<(), OracleError> {
    match wanted.iter().find(|&&c| m.cell(c).is_none() || !m.is_boundary_cell(c)) {
        Some(&c) => Err(OracleError::NotBoundary(c)),
        None => Ok(()),
    }
}

/// Oracle for the medial graph with one boundary triangle smoothed, answering through the oracle
/// of the graph before smoothing.
///
/// Labellings of the two graphs correspond one to one: the triangle `b` is recovered from `a`, `c`
/// and `d` by the consistency equation at the old apex, and every other cell keeps its value.
pub struct UncrossedOracle<'a> {
    parent: Box<dyn BoundaryOracle + 'a>,
    medial: MedialGraph,
    probe: ApexProbe,
    gamma: ApexFunction,
    /// `c` already touched the boundary before smoothing.
    c_on_boundary: bool,
}

pub fn wrap_uncrossed_oracle<'a>(
    parent: Box<dyn BoundaryOracle + 'a>,
    apex: CrossingId,
    gamma: ApexFunction,
) -> Result<UncrossedOracle<'a>, RecoveryError> {
    let probe = ApexProbe::at(parent.medial(), apex)?;
    let medial = parent.medial().uncross_triangle(probe.cells.b)?;
    let c_on_boundary = parent.medial().is_boundary_cell(probe.cells.c);
    Ok(UncrossedOracle { parent, medial, probe, gamma, c_on_boundary })
}

impl UncrossedOracle<'_> {
    pub fn gamma(&self) -> &ApexFunction {
        &self.gamma
    }

    /// Value of `c` from the other three apex cells.
    fn solve_c(&self, vals: [Option<f64>; 4]) -> Result<f64, OracleError> {
        let v = |i: usize| vals[i].expect("three apex cells known");
        let k = self.probe.quad.iter().position(|&x| x == self.probe.cells.c).expect("c at the apex");
        let parent: &dyn BoundaryOracle = &*self.parent;
        let (g, p) = (&self.gamma, &self.probe);
        Ok(match k {
            0 => v(2) + g.inverse(p, parent, v(3) - v(1))?,
            1 => v(3) - g.eval(p, parent, v(0) - v(2))?,
            2 => v(0) - g.inverse(p, parent, v(3) - v(1))?,
            _ => v(1) + g.eval(p, parent, v(0) - v(2))?,
        })
    }
}

impl BoundaryOracle for UncrossedOracle<'_> {
    fn medial(&self) -> &MedialGraph {
        &self.medial
    }

    fn answer(&self, known: &Labelling, wanted: &[CellId]) -> Result<Vec<f64>, OracleError> {
        check_wanted(&self.medial, wanted)?;
        let ac = self.probe.cells;
        let solve = wanted.contains(&ac.c) && known.get(ac.c).is_none() && !self.c_on_boundary;
        let mut ask: Vec<CellId> = wanted.iter().copied().filter(|&w| w != ac.c || self.c_on_boundary).collect();
        if solve {
            ask.extend([ac.a, ac.b, ac.d]);
        }
        ask.sort_unstable();
        ask.dedup();
        let got = self.parent.answer(known, &ask)?;
        let found = |c: CellId| ask.binary_search(&c).ok().map(|i| got[i]);
        let c_value = if solve {
            let vals = self.probe.quad.map(|x| if x == ac.c { None } else { found(x) });
            Some(self.solve_c(vals)?)
        } else {
            None
        };
        Ok(wanted
            .iter()
            .map(|&w| match found(w) {
                Some(v) => v,
                None => known.get(w).or(c_value).expect("every wanted cell answered"),
            })
            .collect())
    }
}

/// Oracle for the medial graph with a boundary digon or an empty circle removed. The removed cell
/// lies on no crossing, so any value will do; it is set to zero.
pub struct FilledOracle<'a> {
    parent: Box<dyn BoundaryOracle + 'a>,
    medial: MedialGraph,
    cell: CellId,
}

pub fn wrap_digon_oracle<'a>(parent: Box<dyn BoundaryOracle + 'a>, digon: CellId) -> Result<FilledOracle<'a>, RecoveryError> {
    let medial = parent.medial().remove_digon(digon)?;
    Ok(FilledOracle { parent, medial, cell: digon })
}

/// Remove free loop `l`, which must not enclose another loop.
pub fn wrap_circle_oracle<'a>(parent: Box<dyn BoundaryOracle + 'a>, l: usize) -> Result<FilledOracle<'a>, RecoveryError> {
    let cell = parent.medial().free_loops().get(l).map(|x| x.inside);
    let medial = parent.medial().remove_free_loop(l)?;
    Ok(FilledOracle { parent, medial, cell: cell.expect("loop exists once removal succeeded") })
}

impl FilledOracle<'_> {
    pub fn removed(&self) -> CellId {
        self.cell
    }
}

impl BoundaryOracle for FilledOracle<'_> {
    fn medial(&self) -> &MedialGraph {
        &self.medial
    }

    fn answer(&self, known: &Labelling, wanted: &[CellId]) -> Result<Vec<f64>, OracleError> {
        check_wanted(&self.medial, wanted)?;
        let mut full = known.clone();
        full.set(self.cell, 0.0);
        self.parent.answer(&full, wanted)
    }
}
