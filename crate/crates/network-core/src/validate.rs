use std::fmt;

use serde::Serialize;

use crate::embedding::resolve;
use crate::network::Network;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    DuplicateVertex,
    DuplicateEdge,
    DanglingEndpoint,
    UnknownRotationVertex,
    RotationForeignEnd,
    RotationDuplicateEnd,
    RotationMissingEnd,
    AmbiguousLoopEnd,
    FloatingComponent,
    EulerMismatch,
    InvalidConductance,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Vertex or edge id where the problem was found.
    pub location: String,
    pub message: String,
}

impl Violation {
    pub(crate) fn new(kind: ViolationKind, location: &str, message: String) -> Self {
        Violation { kind, location: location.to_string(), message }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return writeln!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "{}: {}", v.location, v.message)?;
        }
        Ok(())
    }
}

/// Check the vertex partition, the rotation system and the disk embedding.
///
/// The Euler check runs on the graph closed up by the boundary circle: one arc between each pair of
/// circularly consecutive boundary vertices. Interior vertices without edges are allowed; any other
/// component that never reaches the boundary is reported as floating.
pub fn validate_network(net: &Network) -> ValidationReport {
    let (emb, mut violations) = resolve(net);
    if let Some(emb) = emb {
        let closed = emb.closed();
        let (label, count) = closed.components();
        let boundary_component = if emb.n_boundary > 0 { Some(label[0]) } else { None };
        for (v, vid) in net.vertex_ids().enumerate() {
            if label[v] != usize::MAX && Some(label[v]) != boundary_component {
                violations.push(Violation::new(
                    ViolationKind::FloatingComponent,
                    vid,
                    format!("vertex {vid} lies in a component that does not reach the boundary"),
                ));
            }
        }
        let vertices = label.iter().filter(|&&l| l != usize::MAX).count() as i64;
        let edges = closed.n_edges() as i64;
        let faces = closed.faces().len() as i64;
        let expected = 2 * count as i64;
        if count > 0 && vertices - edges + faces != expected {
            violations.push(Violation::new(
                ViolationKind::EulerMismatch,
                "embedding",
                format!(
                    "Euler check failed: V - E + F = {vertices} - {edges} + {faces} = {}, expected {expected}",
                    vertices - edges + faces
                ),
            ));
        }
    }
    for e in &net.edges {
        if let Some(spec) = &e.conductance {
            if let Err(err) = spec.validate() {
                violations.push(Violation::new(ViolationKind::InvalidConductance, &e.id, format!("invalid conductance: {err}")));
            }
        }
    }
    ValidationReport { violations }
}
