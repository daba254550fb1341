use serde::Serialize;

use crate::embedding::{rev, Dart, Embedding};
use crate::network::Network;
use crate::NetworkError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirectedEdge {
    pub edge: String,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FaceWalk {
    pub darts: Vec<DirectedEdge>,
    pub outer: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FaceTrace {
    pub faces: Vec<FaceWalk>,
}

impl FaceTrace {
    pub fn outer(&self) -> &FaceWalk {
        self.faces.iter().find(|f| f.outer).expect("trace always marks an outer face")
    }
}

/// Face boundary walks of the embedded graph itself, without the boundary circle.
///
/// The outer face is the walk through the gap of the first boundary vertex that has edges, i.e. the
/// corner between the last and first entries of its rotation. A graph without such a vertex gets an
/// empty outer walk.
pub fn trace_faces(net: &Network) -> Result<FaceTrace, NetworkError> {
    let emb = Embedding::new(net).map_err(|e| match e {
        NetworkError::Invalid(v) => NetworkError::InconsistentRotation(v.iter().map(|x| x.message.clone()).collect::<Vec<_>>().join("; ")),
        other => other,
    })?;
    let g = &emb.graph;
    let ids: Vec<&str> = net.vertex_ids().collect();
    let outer_dart: Option<Dart> = (0..emb.n_boundary).find(|&v| !g.rotation[v].is_empty()).map(|v| rev(g.rotation[v][0]));
    let mut faces: Vec<FaceWalk> = g
        .faces()
        .into_iter()
        .map(|walk| FaceWalk {
            outer: outer_dart.is_some_and(|o| walk.contains(&o)),
            darts: walk
                .iter()
                .map(|&d| DirectedEdge {
                    edge: net.edges[d / 2].id.clone(),
                    from: ids[g.tail(d)].to_string(),
                    to: ids[g.head(d)].to_string(),
                })
                .collect(),
        })
        .collect();
    if outer_dart.is_none() {
        faces.push(FaceWalk { darts: Vec::new(), outer: true });
    }
    Ok(FaceTrace { faces })
}
