use forward::BoundaryOracle;
use medial::{build_medial, check_critical, check_semicritical};
use network_core::Network;

use crate::apex::{check_probes, recover_apex, ApexFunction};
use crate::result::{EdgeRecovery, RecoveryResult, Step, StepKind};
use crate::wrap::{wrap_circle_oracle, wrap_digon_oracle, wrap_uncrossed_oracle};
use crate::RecoveryError;

/// How a recovered apex conductance is handed to the wrapped oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApexMode {
    /// Slope from the first probe.
    Linear,
    /// Interpolation through the probes; fails beyond the largest one.
    Sampled,
    /// Fresh oracle queries for every value.
    Live,
}

/// Which boundary triangle to strip when several are available.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleOrder {
    First,
    Last,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryOptions {
    pub probes: Vec<f64>,
    pub mode: ApexMode,
    pub order: TriangleOrder,
}

impl RecoveryOptions {
    pub fn linear(probes: Vec<f64>) -> Self {
        RecoveryOptions { probes, mode: ApexMode::Linear, order: TriangleOrder::First }
    }

    pub fn pointwise(probes: Vec<f64>) -> Self {
        RecoveryOptions { probes, mode: ApexMode::Live, order: TriangleOrder::First }
    }
}

/// Recover every edge of `shape` from `oracle`, which must answer for `build_medial(shape)`.
pub fn recover_network(shape: &Network, oracle: &dyn BoundaryOracle, opts: &RecoveryOptions) -> Result<RecoveryResult, RecoveryError> {
    check_probes(&opts.probes)?;
    let m = build_medial(shape)?;
    check_semicritical(&m).map_err(RecoveryError::NotRecoverable)?;
    if m != *oracle.medial() {
        return Err(RecoveryError::ShapeMismatch);
    }
    let mut out = RecoveryResult::default();
    let mut cur: Box<dyn BoundaryOracle + '_> = Box::new(oracle);

    while let Some(l) = innermost_loop(cur.medial()) {
        let w = wrap_circle_oracle(cur, l)?;
        out.log.push(Step { kind: StepKind::Circle, cell: w.removed(), crossing: None, edge: None });
        cur = Box::new(w);
    }
    check_critical(cur.medial()).map_err(RecoveryError::NotRecoverable)?;

    loop {
        if let Some(&d) = cur.medial().digons().first() {
            out.log.push(Step { kind: StepKind::Digon, cell: d, crossing: None, edge: None });
            cur = Box::new(wrap_digon_oracle(cur, d)?);
            continue;
        }
        let triangles = cur.medial().triangles();
        let pick = match opts.order {
            TriangleOrder::First => triangles.first(),
            TriangleOrder::Last => triangles.last(),
        };
        let Some(&(b, apex)) = pick else { break };
        let samples = recover_apex(&*cur, apex, &opts.probes)?;
        let edge = cur.medial().crossing(apex).and_then(|x| x.edge).map(|e| shape.edges[e].id.clone());
        let (slope, gamma) = match opts.mode {
            ApexMode::Linear => {
                let c = samples[0][1] / samples[0][0];
                (Some(c), ApexFunction::Linear(c))
            }
            ApexMode::Sampled => (None, ApexFunction::Sampled(samples.clone())),
            ApexMode::Live => (None, ApexFunction::Live),
        };
        if let Some(id) = &edge {
            out.edges.insert(id.clone(), EdgeRecovery { samples, slope });
        }
        out.log.push(Step { kind: StepKind::Apex, cell: b, crossing: Some(apex), edge });
        cur = Box::new(wrap_uncrossed_oracle(cur, apex, gamma)?);
    }
    if cur.medial().crossing_count() > 0 {
        let witness = check_critical(cur.medial()).err();
        return Err(witness.map_or(RecoveryError::ShapeMismatch, RecoveryError::NotRecoverable));
    }
    match shape.edges.iter().find(|e| !out.edges.contains_key(&e.id)) {
        Some(e) => Err(RecoveryError::MissedEdge(e.id.clone())),
        None => Ok(out),
    }
}

fn innermost_loop(m: &medial::MedialGraph) -> Option<usize> {
    let loops = m.free_loops();
    (0..loops.len()).find(|&l| !loops.iter().any(|o| o.host == loops[l].inside))
}
