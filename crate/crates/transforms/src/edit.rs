use network_core::{ConductanceSpec, Edge, EdgeEnd, Network, NetworkError};

use crate::TransformError;

pub(crate) fn slope(net: &Network, edge: &str) -> Result<f64, TransformError> {
    let e = net.edge(edge).ok_or_else(|| TransformError::NotApplicable(format!("no edge {edge}")))?;
    let spec = e.conductance.as_ref().ok_or_else(|| NetworkError::MissingConductance(edge.to_string()))?;
    Ok(spec.slope().ok_or_else(|| NetworkError::NotLinear(edge.to_string()))?)
}

pub(crate) fn require_interior(net: &Network, v: &str) -> Result<(), TransformError> {
    if net.interior.iter().any(|x| x == v) {
        Ok(())
    } else if net.is_boundary(v) {
        Err(TransformError::NotApplicable(format!("{v} is a boundary vertex")))
    } else {
        Err(NetworkError::UnknownVertex(v.to_string()).into())
    }
}

pub(crate) fn require_vertex(net: &Network, v: &str) -> Result<(), TransformError> {
    match net.vertex_index(v) {
        Some(_) => Ok(()),
        None => Err(NetworkError::UnknownVertex(v.to_string()).into()),
    }
}

pub(crate) fn other_end<'a>(e: &'a Edge, v: &str) -> &'a str {
    if e.u == v {
        &e.v
    } else {
        &e.u
    }
}

/// Edges at interior `hub` in rotation order with their far ends; self-loops are refused.
pub(crate) fn spokes(net: &Network, hub: &str) -> Result<Vec<(String, String)>, TransformError> {
    require_interior(net, hub)?;
    let rot = net.rotations.get(hub).cloned().unwrap_or_default();
    let mut out = Vec::new();
    for end in rot {
        let e = net.edge(&end.edge).ok_or_else(|| TransformError::NotApplicable(format!("no edge {}", end.edge)))?;
        if e.u == e.v {
            return Err(TransformError::NotApplicable(format!("{hub} carries self-loop {}", e.id)));
        }
        out.push((e.id.clone(), other_end(e, hub).to_string()));
    }
    Ok(out)
}

pub(crate) fn edges_between(net: &Network, u: &str, v: &str) -> Vec<String> {
    net.edges
        .iter()
        .filter(|e| (e.u == u && e.v == v) || (e.u == v && e.v == u))
        .map(|e| e.id.clone())
        .collect()
}

pub(crate) fn single_edge_between(net: &Network, u: &str, v: &str) -> Result<Option<String>, TransformError> {
    let found = edges_between(net, u, v);
    match found.len() {
        0 => Ok(None),
        1 => Ok(found.into_iter().next()),
        _ => Err(TransformError::NotApplicable(format!("{} edges join {u} and {v}", found.len()))),
    }
}

pub(crate) fn add_edge(net: &mut Network, u: &str, v: &str, c: f64) -> String {
    let id = net.fresh_id("e");
    net.edges.push(Edge { id: id.clone(), u: u.into(), v: v.into(), conductance: Some(ConductanceSpec::linear(c)) });
    id
}

/// Drop edge `id` and every rotation entry that names it.
pub(crate) fn remove_edge(net: &mut Network, id: &str) {
    net.edges.retain(|e| e.id != id);
    for rot in net.rotations.values_mut() {
        rot.retain(|x| x.edge != id);
    }
}

pub(crate) fn remove_vertex(net: &mut Network, v: &str) {
    net.interior.retain(|x| x != v);
    net.rotations.remove(v);
}

pub(crate) fn position(net: &Network, v: &str, edge: &str) -> Option<usize> {
    net.rotations.get(v)?.iter().position(|x| x.edge == edge)
}

/// Replace the entry of `edge` in the rotation at `v` by `with`, in order.
pub(crate) fn splice(net: &mut Network, v: &str, edge: &str, with: &[String]) {
    let k = position(net, v, edge).expect("edge end present in rotation");
    let rot = net.rotations.get_mut(v).expect("rotation present");
    rot.splice(k..=k, with.iter().map(EdgeEnd::plain));
}

pub(crate) fn insert_after(net: &mut Network, v: &str, k: usize, edge: &str) {
    let rot = net.rotations.entry(v.to_string()).or_default();
    rot.insert(k + 1, EdgeEnd::plain(edge));
}
