//! Small hand-embedded networks used throughout the test suites and the CLI docs.

use std::collections::BTreeMap;

use crate::{ConductanceSpec, Edge, EdgeEnd, Network};

fn edge(id: &str, u: &str, v: &str, c: Option<ConductanceSpec>) -> Edge {
    Edge { id: id.into(), u: u.into(), v: v.into(), conductance: c }
}

fn rotations(entries: &[(&str, &[&str])]) -> BTreeMap<String, Vec<EdgeEnd>> {
    entries
        .iter()
        .map(|(v, list)| (v.to_string(), list.iter().map(|e| EdgeEnd::try_from(e.to_string()).expect("valid end")).collect()))
        .collect()
}

fn strings(ids: &[&str]) -> Vec<String> {
    ids.iter().map(|s| s.to_string()).collect()
}

/// Hub `h` joined to boundary leaves `v1, v2, v3` by `e1, e2, e3`.
pub fn star3(c: [ConductanceSpec; 3]) -> Network {
    let [c1, c2, c3] = c;
    Network {
        boundary: strings(&["v1", "v2", "v3"]),
        interior: strings(&["h"]),
        edges: vec![edge("e1", "v1", "h", Some(c1)), edge("e2", "v2", "h", Some(c2)), edge("e3", "v3", "h", Some(c3))],
        rotations: rotations(&[("h", &["e1", "e2", "e3"]), ("v1", &["e1"]), ("v2", &["e2"]), ("v3", &["e3"])]),
    }
}

pub fn star3_linear(c: [f64; 3]) -> Network {
    star3(c.map(ConductanceSpec::linear))
}

/// One edge `e1` between boundary vertices `v1` and `v2`.
pub fn single_edge(c: ConductanceSpec) -> Network {
    Network {
        boundary: strings(&["v1", "v2"]),
        interior: vec![],
        edges: vec![edge("e1", "v1", "v2", Some(c))],
        rotations: rotations(&[("v1", &["e1"]), ("v2", &["e1"])]),
    }
}

/// Two parallel edges between boundary vertices `v1` and `v2`.
pub fn parallel_pair(c1: f64, c2: f64) -> Network {
    Network {
        boundary: strings(&["v1", "v2"]),
        interior: vec![],
        edges: vec![
            edge("e1", "v1", "v2", Some(ConductanceSpec::linear(c1))),
            edge("e2", "v1", "v2", Some(ConductanceSpec::linear(c2))),
        ],
        rotations: rotations(&[("v1", &["e1", "e2"]), ("v2", &["e2", "e1"])]),
    }
}

/// `v1 –e1– m –e2– v2` with `m` interior.
pub fn series_pair(c1: f64, c2: f64) -> Network {
    Network {
        boundary: strings(&["v1", "v2"]),
        interior: strings(&["m"]),
        edges: vec![
            edge("e1", "v1", "m", Some(ConductanceSpec::linear(c1))),
            edge("e2", "m", "v2", Some(ConductanceSpec::linear(c2))),
        ],
        rotations: rotations(&[("v1", &["e1"]), ("m", &["e1", "e2"]), ("v2", &["e2"])]),
    }
}

/// Triangle on boundary vertices `v1, v2, v3` with edges `e12, e23, e31`.
pub fn triangle(c: [f64; 3]) -> Network {
    Network {
        boundary: strings(&["v1", "v2", "v3"]),
        interior: vec![],
        edges: vec![
            edge("e12", "v1", "v2", Some(ConductanceSpec::linear(c[0]))),
            edge("e23", "v2", "v3", Some(ConductanceSpec::linear(c[1]))),
            edge("e31", "v3", "v1", Some(ConductanceSpec::linear(c[2]))),
        ],
        rotations: rotations(&[("v1", &["e12", "e31"]), ("v2", &["e23", "e12"]), ("v3", &["e31", "e23"])]),
    }
}

/// The critical six-edge gadget electrically equivalent to a K4 on `v1..v4`: hub `o` with spokes
/// `c, d, e, f` to `v1, v2, v3, v4`, plus `a = v1v2` and `b = v1v3`. Boundary order is `v1, v2, v4, v3`.
/// Edges whose conductance is zero are left out.
pub fn k4_gadget(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Network {
    let mut edges = Vec::new();
    let lin = ConductanceSpec::linear;
    if a != 0.0 {
        edges.push(edge("a", "v1", "v2", Some(lin(a))));
    }
    if b != 0.0 {
        edges.push(edge("b", "v1", "v3", Some(lin(b))));
    }
    edges.push(edge("c", "v1", "o", Some(lin(c))));
    edges.push(edge("d", "v2", "o", Some(lin(d))));
    edges.push(edge("e", "v3", "o", Some(lin(e))));
    edges.push(edge("f", "v4", "o", Some(lin(f))));
    let keep = |list: &[&'static str]| -> Vec<&'static str> {
        list.iter().copied().filter(|x| edges.iter().any(|e| e.id == *x)).collect()
    };
    let v1 = keep(&["a", "c", "b"]);
    let v2 = keep(&["d", "a"]);
    let v3 = keep(&["b", "e"]);
    Network {
        boundary: strings(&["v1", "v2", "v4", "v3"]),
        interior: strings(&["o"]),
        rotations: rotations(&[("v1", &v1), ("v2", &v2), ("v3", &v3), ("v4", &["f"]), ("o", &["c", "d", "f", "e"])]),
        edges,
    }
}
