use network_core::{ConductanceSpec, Network, NetworkError, ViolationKind};

/// Index view of a network, planar or not: vertices in boundary-then-interior order, edge endpoints as indices.
pub(crate) struct Graph<'a> {
    pub n_boundary: usize,
    pub ids: Vec<&'a str>,
    pub ends: Vec<[usize; 2]>,
    pub specs: Vec<&'a ConductanceSpec>,
    /// Non-loop incidences per vertex: (edge, other end, +1 when the vertex is the edge's `u`).
    pub incident: Vec<Vec<(usize, usize, f64)>>,
}

impl<'a> Graph<'a> {
    pub fn new(net: &'a Network) -> Result<Self, NetworkError> {
        let violations: Vec<_> = network_core::validate_network(net)
            .violations
            .into_iter()
            .filter(|v| v.kind != ViolationKind::EulerMismatch)
            .collect();
        if !violations.is_empty() {
            return Err(NetworkError::Invalid(violations));
        }
        let ids: Vec<&str> = net.vertex_ids().collect();
        let specs = net.conductances()?;
        let ends: Vec<[usize; 2]> = net
            .edges
            .iter()
            .map(|e| [net.vertex_index(&e.u).expect("validated"), net.vertex_index(&e.v).expect("validated")])
            .collect();
        let mut incident = vec![Vec::new(); ids.len()];
        for (e, &[u, v]) in ends.iter().enumerate() {
            if u != v {
                incident[u].push((e, v, 1.0));
                incident[v].push((e, u, -1.0));
            }
        }
        Ok(Graph { n_boundary: net.boundary.len(), ids, ends, specs, incident })
    }

    pub fn n_vertices(&self) -> usize {
        self.ids.len()
    }

    /// Net current leaving vertex `v` into the network.
    pub fn outflow(&self, v: usize, phi: &[f64]) -> f64 {
        self.incident[v].iter().map(|&(e, u, _)| self.specs[e].eval(phi[v] - phi[u])).sum()
    }

    pub fn pseudopower(&self, phi: &[f64]) -> f64 {
        self.ends.iter().zip(&self.specs).map(|(&[u, v], s)| s.integral(phi[u] - phi[v])).sum()
    }

    /// Connected components as lists of vertex indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n_vertices()];
        let mut out = Vec::new();
        for s in 0..self.n_vertices() {
            if comp[s] != usize::MAX {
                continue;
            }
            let k = out.len();
            comp[s] = k;
            let mut members = vec![s];
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                i += 1;
                for &(_, y, _) in &self.incident[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = k;
                        members.push(y);
                    }
                }
            }
            out.push(members);
        }
        out
    }
}
