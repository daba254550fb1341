use std::sync::atomic::{AtomicUsize, Ordering};

use cellset::{propagate, CellsetError, Labelling};
use medial::{CellId, MedialGraph};
use network_core::{Network, NetworkError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Cellset(#[from] CellsetError),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error("cell {0} is not a boundary cell")]
    NotBoundary(CellId),
    #[error("the known values do not determine cell {0}")]
    Undetermined(CellId),
    #[error("recovered conductance is only known on [-{limit}, {limit}]; needed at {x}")]
    ProbeInsufficient { x: f64, limit: f64 },
}

/// Access to the boundary relation of a medial graph with hidden conductances.
///
/// `known` labels a safe set of cells whose closure is every cell; the answer is the value of the
/// unique extending labelling at each `wanted` boundary cell.
pub trait BoundaryOracle {
    fn medial(&self) -> &MedialGraph;

    fn answer(&self, known: &Labelling, wanted: &[CellId]) -> Result<Vec<f64>, OracleError>;

    fn boundary_labelling(&self, known: &Labelling) -> Result<Labelling, OracleError> {
        let cells = self.medial().boundary_cells();
        let values = self.answer(known, &cells)?;
        Ok(Labelling::from_pairs(cells.into_iter().zip(values)))
    }
}

impl<T: BoundaryOracle + ?Sized> BoundaryOracle for &T {
    fn medial(&self) -> &MedialGraph {
        (**self).medial()
    }

    fn answer(&self, known: &Labelling, wanted: &[CellId]) -> Result<Vec<f64>, OracleError> {
        (**self).answer(known, wanted)
    }
}

impl<T: BoundaryOracle + ?Sized> BoundaryOracle for Box<T> {
    fn medial(&self) -> &MedialGraph {
        (**self).medial()
    }

    fn answer(&self, known: &Labelling, wanted: &[CellId]) -> Result<Vec<f64>, OracleError> {
        (**self).answer(known, wanted)
    }
}

/// Oracle backed by a network whose conductances are hidden from the caller.
#[derive(Debug)]
pub struct NetworkOracle {
    net: Network,
    medial: MedialGraph,
    queries: AtomicUsize,
}

pub fn make_oracle(net: &Network, m: MedialGraph) -> Result<NetworkOracle, OracleError> {
    let report = network_core::validate_network(net);
    if !report.is_ok() {
        return Err(NetworkError::Invalid(report.violations).into());
    }
    net.conductances()?;
    Ok(NetworkOracle { net: net.clone(), medial: m, queries: AtomicUsize::new(0) })
}

impl NetworkOracle {
    pub fn queries(&self) -> usize {
        self.queries.load(Ordering::Relaxed)
    }
}

impl BoundaryOracle for NetworkOracle {
    fn medial(&self) -> &MedialGraph {
        &self.medial
    }

    fn answer(&self, known: &Labelling, wanted: &[CellId]) -> Result<Vec<f64>, OracleError> {
        self.queries.fetch_add(1, Ordering::Relaxed);
        if let Some(&c) = wanted.iter().find(|&&c| self.medial.cell(c).is_none() || !self.medial.is_boundary_cell(c)) {
            return Err(OracleError::NotBoundary(c));
        }
        let full = propagate(known, &self.net, &self.medial)?;
        wanted.iter().map(|&c| full.get(c).ok_or(OracleError::Undetermined(c))).collect()
    }
}

/// Boundary voltages and net boundary currents encoded by a labelling of a network's medial graph:
/// vertex `i` owns segment `2i`, and the current entering at `i` is the covoltage drop across it.
pub fn boundary_currents_from_labelling(m: &MedialGraph, labels: &Labelling) -> Option<(Vec<f64>, Vec<f64>)> {
    let np = m.boundary_point_count();
    let n = np / 2;
    let seg = |k: usize| labels.get(m.segment_cell(k % np));
    let mut volts = Vec::with_capacity(n);
    let mut currents = Vec::with_capacity(n);
    for i in 0..n {
        volts.push(seg(2 * i)?);
        currents.push(seg(2 * i + np - 1)? - seg(2 * i + 1)?);
    }
    Some((volts, currents))
}
