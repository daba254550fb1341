use nalgebra::DMatrix;
use network_core::{Network, NetworkError};

use crate::graph::Graph;
use crate::ForwardError;

/// Linear map from boundary voltages to net boundary currents.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseMatrix {
    pub boundary: Vec<String>,
    pub matrix: DMatrix<f64>,
}

impl ResponseMatrix {
    pub fn apply(&self, voltages: &[f64]) -> Vec<f64> {
        (&self.matrix * nalgebra::DVector::from_column_slice(voltages)).iter().copied().collect()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.matrix.row_iter().map(|r| r.iter().copied().collect()).collect()
    }

    pub fn max_abs_diff(&self, other: &ResponseMatrix) -> f64 {
        (&self.matrix - &other.matrix).abs().max()
    }

    pub fn max_row_sum(&self) -> f64 {
        self.matrix.row_iter().map(|r| r.sum().abs()).fold(0.0, f64::max)
    }

    pub fn asymmetry(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).abs().max()
    }
}

/// Schur complement of the Kirchhoff matrix onto the boundary. Interior vertices without edges
/// carry no current and are dropped.
pub fn response_matrix(net: &Network) -> Result<ResponseMatrix, ForwardError> {
    let g = Graph::new(net)?;
    let slopes: Vec<f64> = net
        .edges
        .iter()
        .zip(&g.specs)
        .map(|(e, s)| s.slope().ok_or_else(|| NetworkError::NotLinear(e.id.clone())))
        .collect::<Result<_, _>>()?;
    let nb = g.n_boundary;
    let interior: Vec<usize> = (nb..g.n_vertices()).filter(|&v| !g.incident[v].is_empty()).collect();
    let mut slot = vec![usize::MAX; g.n_vertices()];
    for v in 0..nb {
        slot[v] = v;
    }
    for (i, &v) in interior.iter().enumerate() {
        slot[v] = nb + i;
    }
    let n = nb + interior.len();
    let mut k = DMatrix::<f64>::zeros(n, n);
    for (&[u, v], &c) in g.ends.iter().zip(&slopes) {
        if u == v {
            continue;
        }
        let (a, b) = (slot[u], slot[v]);
        k[(a, a)] += c;
        k[(b, b)] += c;
        k[(a, b)] -= c;
        k[(b, a)] -= c;
    }
    let kbb = k.view((0, 0), (nb, nb)).into_owned();
    if interior.is_empty() {
        return Ok(ResponseMatrix { boundary: net.boundary.clone(), matrix: kbb });
    }
    let ni = interior.len();
    let kbi = k.view((0, nb), (nb, ni)).into_owned();
    let kii = k.view((nb, nb), (ni, ni)).into_owned();
    let sv = kii.clone().singular_values();
    let (smax, smin) = (sv.max(), sv.min());
    if !(smin > 1e-12 * smax.max(1e-300)) {
        return Err(ForwardError::SingularInterior);
    }
    let x = kii.lu().solve(&kbi.transpose()).ok_or(ForwardError::SingularInterior)?;
    Ok(ResponseMatrix { boundary: net.boundary.clone(), matrix: kbb - &kbi * x })
}
