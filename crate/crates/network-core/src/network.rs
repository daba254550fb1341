use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::conductance::{ConductanceSpec, ResistanceSpec};

/// Which endpoint of an edge an edge-end refers to: `A` is `u`, `B` is `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    A,
    B,
}

/// An entry of a rotation list. The end tag is only required for self-loops.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct EdgeEnd {
    pub edge: String,
    pub end: Option<End>,
}

impl EdgeEnd {
    pub fn plain(edge: impl Into<String>) -> Self {
        EdgeEnd { edge: edge.into(), end: None }
    }

    pub fn tagged(edge: impl Into<String>, end: End) -> Self {
        EdgeEnd { edge: edge.into(), end: Some(end) }
    }
}

impl fmt::Display for EdgeEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.end {
            None => write!(f, "{}", self.edge),
            Some(End::A) => write!(f, "{}:a", self.edge),
            Some(End::B) => write!(f, "{}:b", self.edge),
        }
    }
}

impl TryFrom<String> for EdgeEnd {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        match s.rsplit_once(':') {
            Some((e, "a")) => Ok(EdgeEnd::tagged(e, End::A)),
            Some((e, "b")) => Ok(EdgeEnd::tagged(e, End::B)),
            Some((_, tag)) => Err(format!("unknown end tag {tag:?} in {s:?}")),
            None => Ok(EdgeEnd::plain(s)),
        }
    }
}

impl From<EdgeEnd> for String {
    fn from(e: EdgeEnd) -> String {
        e.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub u: String,
    pub v: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conductance: Option<ConductanceSpec>,
}

/// A circular planar network as read from disk: ids are strings and nothing is checked.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Network {
    pub boundary: Vec<String>,
    #[serde(default)]
    pub interior: Vec<String>,
    #[serde(default)]
    pub edges: Vec<Edge>,
    #[serde(default)]
    pub rotations: BTreeMap<String, Vec<EdgeEnd>>,
}

impl Network {
    /// Boundary ids first, then interior ids; this is the vertex index order used everywhere.
    pub fn vertex_ids(&self) -> impl Iterator<Item = &str> {
        self.boundary.iter().chain(self.interior.iter()).map(String::as_str)
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_ids().position(|v| v == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn is_boundary(&self, id: &str) -> bool {
        self.boundary.iter().any(|b| b == id)
    }

    /// A copy with every conductance removed.
    pub fn shape(&self) -> Network {
        let mut n = self.clone();
        for e in &mut n.edges {
            e.conductance = None;
        }
        n
    }

    pub fn conductances(&self) -> Result<Vec<&ConductanceSpec>, crate::NetworkError> {
        self.edges
            .iter()
            .map(|e| e.conductance.as_ref().ok_or_else(|| crate::NetworkError::MissingConductance(e.id.clone())))
            .collect()
    }

    /// ρ_e = γ_e⁻¹ for every edge.
    pub fn resistances(&self) -> Result<Vec<ResistanceSpec>, crate::NetworkError> {
        Ok(self.conductances()?.into_iter().map(ResistanceSpec::from_conductance).collect())
    }

    /// All conductances linear; returns the slopes.
    pub fn linear_slopes(&self) -> Result<Vec<f64>, crate::NetworkError> {
        self.conductances()?
            .into_iter()
            .zip(&self.edges)
            .map(|(s, e)| s.slope().ok_or_else(|| crate::NetworkError::NotLinear(e.id.clone())))
            .collect()
    }

    /// A fresh id not used by any vertex or edge.
    pub fn fresh_id(&self, prefix: &str) -> String {
        (0..)
            .map(|k| format!("{prefix}{k}"))
            .find(|id| self.vertex_index(id).is_none() && self.edge_index(id).is_none())
            .expect("unbounded range")
    }
}
