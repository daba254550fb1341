//! Circular planar networks: a graph embedded in a disk with its boundary vertices in counterclockwise
//! order on the circle, a rotation system, and one odd conductance function per edge.
//!
//! The embedding is always part of the input. [`validate_network`] checks it; [`Embedding`] is the
//! index-resolved view the other crates work with.

mod conductance;
mod embedding;
mod faces;
mod network;
mod validate;
pub mod samples;

pub use conductance::{Bijection, ConductanceSpec, ResistanceSpec, SpecError};
pub use embedding::{edge_of, rev, Dart, Embedding, RotationMap};
pub use faces::{trace_faces, DirectedEdge, FaceTrace, FaceWalk};
pub use network::{Edge, EdgeEnd, End, Network};
pub use validate::{validate_network, ValidationReport, Violation, ViolationKind};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetworkError {
    #[error("invalid network: {}", .0.iter().map(|v| v.message.as_str()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("inconsistent rotation system: {0}")]
    InconsistentRotation(String),
    #[error("edge {0} has no conductance")]
    MissingConductance(String),
    #[error("edge {0} is not linear")]
    NotLinear(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("boundary data: {0}")]
    BadBoundaryData(String),
}

pub fn eval_conductance(spec: &ConductanceSpec, x: f64) -> f64 {
    spec.eval(x)
}

pub fn eval_inverse(spec: &ConductanceSpec, y: f64) -> f64 {
    spec.inverse(y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Voltage,
    Current,
}

/// Values on boundary vertices, tagged as voltages or net currents.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    pub role: Role,
    pub values: BTreeMap<String, f64>,
}

impl BoundaryData {
    pub fn voltages(pairs: impl IntoIterator<Item = (String, f64)>) -> Self {
        BoundaryData { role: Role::Voltage, values: pairs.into_iter().collect() }
    }

    pub fn currents(pairs: impl IntoIterator<Item = (String, f64)>) -> Self {
        BoundaryData { role: Role::Current, values: pairs.into_iter().collect() }
    }

    /// Values in boundary order; every boundary vertex must be present.
    pub fn ordered(&self, net: &Network) -> Result<Vec<f64>, NetworkError> {
        for k in self.values.keys() {
            if !net.is_boundary(k) {
                return Err(NetworkError::BadBoundaryData(format!("{k} is not a boundary vertex")));
            }
        }
        net.boundary
            .iter()
            .map(|b| self.values.get(b).copied().ok_or_else(|| NetworkError::BadBoundaryData(format!("missing value for {b}"))))
            .collect()
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, NetworkError> {
        let obj = value.as_object().ok_or_else(|| NetworkError::BadBoundaryData("expected a JSON object".into()))?;
        let role = match obj.get("role").and_then(|r| r.as_str()) {
            Some("voltage") => Role::Voltage,
            Some("current") => Role::Current,
            other => return Err(NetworkError::BadBoundaryData(format!("role must be \"voltage\" or \"current\", got {other:?}"))),
        };
        let mut values = BTreeMap::new();
        for (k, v) in obj {
            if k == "role" {
                continue;
            }
            let x = v.as_f64().ok_or_else(|| NetworkError::BadBoundaryData(format!("value for {k} is not a number")))?;
            values.insert(k.clone(), x);
        }
        Ok(BoundaryData { role, values })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert("role".into(), serde_json::to_value(self.role).expect("role serializes"));
        for (k, v) in &self.values {
            obj.insert(k.clone(), serde_json::json!(v));
        }
        serde_json::Value::Object(obj)
    }
}
