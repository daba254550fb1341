use std::collections::BTreeMap;

use medial::{CellId, CrossingId};
use network_core::Network;
use serde::Serialize;
use serde_json::{json, Value};

/// Recovered conductance of one edge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeRecovery {
    /// `[x, γ(x)]` per probe.
    pub samples: Vec<[f64; 2]>,
    /// Present when recovery ran in linear mode.
    pub slope: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Digon,
    Circle,
    Apex,
}

/// One stripping step, in the order taken.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Step {
    pub kind: StepKind,
    pub cell: CellId,
    pub crossing: Option<CrossingId>,
    pub edge: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct RecoveryResult {
    pub edges: BTreeMap<String, EdgeRecovery>,
    pub log: Vec<Step>,
}

impl RecoveryResult {
    pub fn slope(&self, edge: &str) -> Option<f64> {
        self.edges.get(edge)?.slope
    }

    /// Edge id → `{"kind":"linear","c":…}` or `{"kind":"pointwise","samples":[[x,y],…]}`, plus the
    /// stripping log.
    pub fn to_json(&self) -> Value {
        let edges: serde_json::Map<String, Value> = self
            .edges
            .iter()
            .map(|(id, r)| {
                let v = match r.slope {
                    Some(c) => json!({"kind": "linear", "c": c}),
                    None => json!({"kind": "pointwise", "samples": r.samples}),
                };
                (id.clone(), v)
            })
            .collect();
        json!({"edges": edges, "log": self.log})
    }

    /// Largest relative error of any recovered value against the hidden network.
    pub fn max_relative_error(&self, hidden: &Network) -> Option<f64> {
        let mut worst = 0.0f64;
        for e in &hidden.edges {
            let r = self.edges.get(&e.id)?;
            let spec = e.conductance.as_ref()?;
            if let (Some(c), Some(h)) = (r.slope, spec.slope()) {
                worst = worst.max((c - h).abs() / h.abs());
            }
            for &[x, y] in &r.samples {
                let want = spec.eval(x);
                worst = worst.max((y - want).abs() / want.abs());
            }
        }
        Some(worst)
    }
}
