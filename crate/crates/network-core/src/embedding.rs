use std::collections::{HashMap, HashSet};

use crate::network::{End, Network};
use crate::validate::{Violation, ViolationKind};

/// A half-edge. Dart `2e` leaves `ends[e][0]`, dart `2e + 1` leaves `ends[e][1]`.
pub type Dart = usize;

pub fn rev(d: Dart) -> Dart {
    d ^ 1
}

pub fn edge_of(d: Dart) -> usize {
    d / 2
}

/// A combinatorial map: edges with endpoints and a counterclockwise cyclic order of darts at each vertex.
#[derive(Debug, Clone)]
pub struct RotationMap {
    pub ends: Vec<[usize; 2]>,
    pub rotation: Vec<Vec<Dart>>,
    pos: Vec<usize>,
}

impl RotationMap {
    /// Every dart must appear exactly once, at its tail. Callers guarantee this.
    pub fn new(ends: Vec<[usize; 2]>, rotation: Vec<Vec<Dart>>) -> Self {
        let mut pos = vec![usize::MAX; 2 * ends.len()];
        for rot in &rotation {
            for (i, &d) in rot.iter().enumerate() {
                pos[d] = i;
            }
        }
        debug_assert!(pos.iter().all(|&p| p != usize::MAX));
        RotationMap { ends, rotation, pos }
    }

    pub fn n_vertices(&self) -> usize {
        self.rotation.len()
    }

    pub fn n_edges(&self) -> usize {
        self.ends.len()
    }

    pub fn tail(&self, d: Dart) -> usize {
        self.ends[d / 2][d % 2]
    }

    pub fn head(&self, d: Dart) -> usize {
        self.ends[d / 2][1 - d % 2]
    }

    /// The dart following `d` around the face on its left.
    pub fn next_in_face(&self, d: Dart) -> Dart {
        let r = rev(d);
        let rot = &self.rotation[self.tail(r)];
        rot[(self.pos[r] + rot.len() - 1) % rot.len()]
    }

    /// Face boundary walks, each listed from its least dart.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen = vec![false; 2 * self.ends.len()];
        let mut faces = Vec::new();
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                walk.push(d);
                d = self.next_in_face(d);
            }
            faces.push(walk);
        }
        faces
    }

    /// Connected components over vertices with at least one dart; returns a component label per vertex
    /// (`usize::MAX` for isolated vertices) and the component count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n_vertices()];
        let mut count = 0;
        for s in 0..self.n_vertices() {
            if label[s] != usize::MAX || self.rotation[s].is_empty() {
                continue;
            }
            let mut stack = vec![s];
            label[s] = count;
            while let Some(v) = stack.pop() {
                for &d in &self.rotation[v] {
                    let w = self.head(d);
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }
}

/// A network with ids resolved to indices and its rotation system checked for structural soundness.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub n_boundary: usize,
    /// Γ alone. Boundary rotation lists are read cyclically.
    pub graph: RotationMap,
}

impl Embedding {
    pub fn new(net: &Network) -> Result<Embedding, crate::NetworkError> {
        let (emb, violations) = resolve(net);
        match emb {
            Some(e) => Ok(e),
            None => Err(crate::NetworkError::Invalid(violations)),
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.graph.n_vertices()
    }

    pub fn n_edges(&self) -> usize {
        self.graph.n_edges()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.graph.rotation[v].len()
    }

    /// Γ⁺: Γ plus one arc edge `v_i → v_{i+1}` per boundary vertex, numbered after the network edges.
    /// At `v_i` the rotation becomes `[arc_i out, Γ list…, arc_{i-1} back]`.
    pub fn closed(&self) -> RotationMap {
        let n = self.n_boundary;
        let e = self.n_edges();
        let mut ends = self.graph.ends.clone();
        for i in 0..n {
            ends.push([i, (i + 1) % n]);
        }
        let mut rotation = self.graph.rotation.clone();
        for (i, rot) in rotation.iter_mut().enumerate().take(n) {
            let out = 2 * (e + i);
            let back = 2 * (e + (i + n - 1) % n) + 1;
            rot.insert(0, out);
            rot.push(back);
        }
        RotationMap::new(ends, rotation)
    }

    /// Index of the arc edge leaving boundary vertex `i` in [`Embedding::closed`].
    pub fn arc(&self, i: usize) -> usize {
        self.n_edges() + i
    }
}

/// Resolve ids and check the structural invariants. Returns the embedding when none are violated.
pub(crate) fn resolve(net: &Network) -> (Option<Embedding>, Vec<Violation>) {
    let mut out = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, v) in net.vertex_ids().enumerate() {
        if index.insert(v, i).is_some() {
            out.push(Violation::new(ViolationKind::DuplicateVertex, v, format!("vertex id {v} appears more than once")));
        }
    }
    let mut edge_index: HashMap<&str, usize> = HashMap::new();
    let mut ends = Vec::with_capacity(net.edges.len());
    for (k, e) in net.edges.iter().enumerate() {
        if edge_index.insert(e.id.as_str(), k).is_some() {
            out.push(Violation::new(ViolationKind::DuplicateEdge, &e.id, format!("edge id {} appears more than once", e.id)));
        }
        let mut pair = [usize::MAX; 2];
        for (slot, end) in [&e.u, &e.v].into_iter().enumerate() {
            match index.get(end.as_str()) {
                Some(&i) => pair[slot] = i,
                None => out.push(Violation::new(
                    ViolationKind::DanglingEndpoint,
                    &e.id,
                    format!("dangling endpoint: edge {} references unknown vertex {end}", e.id),
                )),
            }
        }
        ends.push(pair);
    }
    for key in net.rotations.keys() {
        if !index.contains_key(key.as_str()) {
            out.push(Violation::new(ViolationKind::UnknownRotationVertex, key, format!("rotation given for unknown vertex {key}")));
        }
    }
    if !out.is_empty() {
        return (None, out);
    }

    let n_vertices = index.len();
    let mut rotation = vec![Vec::new(); n_vertices];
    let mut placed: HashSet<usize> = HashSet::new();
    for (v, vid) in net.vertex_ids().enumerate() {
        let Some(list) = net.rotations.get(vid) else { continue };
        for entry in list {
            let Some(&k) = edge_index.get(entry.edge.as_str()) else {
                out.push(Violation::new(
                    ViolationKind::RotationForeignEnd,
                    vid,
                    format!("rotation of {vid} lists unknown edge {}", entry.edge),
                ));
                continue;
            };
            let [a, b] = ends[k];
            let dart = match entry.end {
                Some(End::A) if a == v => 2 * k,
                Some(End::B) if b == v => 2 * k + 1,
                None if a == v && b == v => {
                    out.push(Violation::new(
                        ViolationKind::AmbiguousLoopEnd,
                        vid,
                        format!("self-loop {} at {vid} needs an end tag", entry.edge),
                    ));
                    continue;
                }
                None if a == v => 2 * k,
                None if b == v => 2 * k + 1,
                _ => {
                    out.push(Violation::new(
                        ViolationKind::RotationForeignEnd,
                        vid,
                        format!("rotation of {vid} lists {entry}, which is not incident to {vid}"),
                    ));
                    continue;
                }
            };
            if !placed.insert(dart) {
                out.push(Violation::new(
                    ViolationKind::RotationDuplicateEnd,
                    vid,
                    format!("edge-end {entry} appears twice in the rotation of {vid}"),
                ));
                continue;
            }
            rotation[v].push(dart);
        }
    }
    for (k, e) in net.edges.iter().enumerate() {
        for (s, vid) in [(0, &e.u), (1, &e.v)] {
            if !placed.contains(&(2 * k + s)) {
                out.push(Violation::new(
                    ViolationKind::RotationMissingEnd,
                    vid,
                    format!("edge-end of {} at {vid} is missing from its rotation", e.id),
                ));
            }
        }
    }
    if !out.is_empty() {
        return (None, out);
    }
    let emb = Embedding { n_boundary: net.boundary.len(), graph: RotationMap::new(ends, rotation) };
    (Some(emb), out)
}
