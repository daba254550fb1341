use std::collections::BTreeMap;

use network_core::{BoundaryData, Network, NetworkError, Role};

use crate::graph::Graph;
use crate::ForwardError;

#[derive(Debug, Clone)]
pub struct DirichletOptions {
    /// Largest KCL residual accepted at an interior vertex.
    pub tolerance: f64,
    pub max_steps: usize,
    /// Starting voltages for interior vertices, in `net.interior` order. Defaults to zero.
    pub initial: Option<Vec<f64>>,
}

impl Default for DirichletOptions {
    fn default() -> Self {
        DirichletOptions { tolerance: 1e-10, max_steps: 1_000_000, initial: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverState {
    /// Voltage per vertex, boundary vertices first.
    pub voltages: Vec<f64>,
    pub pseudopower: f64,
    /// KCL residual per interior vertex.
    pub residuals: Vec<f64>,
    pub steps: usize,
    /// Coordinate updates undone because they raised the pseudopower.
    pub rejected: usize,
    /// Pseudopower after each full sweep.
    pub history: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct DirichletSolution {
    pub voltages: BTreeMap<String, f64>,
    /// Current along each edge from `u` to `v`.
    pub edge_currents: BTreeMap<String, f64>,
    /// Net current into the network at each boundary vertex.
    pub boundary_currents: Vec<f64>,
    pub state: SolverState,
}

pub fn solve_dirichlet(net: &Network, f: &BoundaryData) -> Result<DirichletSolution, ForwardError> {
    solve_dirichlet_with(net, f, &DirichletOptions::default())
}

pub fn solve_dirichlet_with(net: &Network, f: &BoundaryData, opts: &DirichletOptions) -> Result<DirichletSolution, ForwardError> {
    let g = Graph::new(net)?;
    if f.role != Role::Voltage {
        return Err(NetworkError::BadBoundaryData("Dirichlet data must be voltages".into()).into());
    }
    let boundary = f.ordered(net)?;
    for (e, s) in net.edges.iter().zip(&g.specs) {
        if !s.is_monotone() {
            return Err(ForwardError::NonMonotone(e.id.clone()));
        }
    }
    let bound = boundary.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let nb = g.n_boundary;
    let mut phi = boundary.clone();
    match &opts.initial {
        Some(init) if init.len() == g.n_vertices() - nb => phi.extend(init.iter().map(|x| x.clamp(-bound, bound))),
        Some(_) => return Err(NetworkError::BadBoundaryData("initial guess must cover every interior vertex".into()).into()),
        None => phi.resize(g.n_vertices(), 0.0),
    }
    let free: Vec<usize> = (nb..g.n_vertices()).filter(|&v| !g.incident[v].is_empty()).collect();

    let local_q = |v: usize, phi: &[f64]| -> f64 { g.incident[v].iter().map(|&(e, u, _)| g.specs[e].integral(phi[v] - phi[u])).sum() };
    let max_residual = |phi: &[f64]| free.iter().map(|&v| g.outflow(v, phi).abs()).fold(0.0, f64::max);

    let mut steps = 0;
    let mut rejected = 0;
    let mut history = vec![g.pseudopower(&phi)];
    let mut residual = max_residual(&phi);
    while residual >= opts.tolerance {
        for &v in &free {
            if steps >= opts.max_steps {
                return Err(ForwardError::NoConvergence { steps, residual });
            }
            steps += 1;
            let old = phi[v];
            let before = local_q(v, &phi);
            phi[v] = coordinate_root(|t| g.incident[v].iter().map(|&(e, u, _)| g.specs[e].eval(t - phi[u])).sum(), bound);
            let after = local_q(v, &phi);
            if after > before + 1e-13 * (1.0 + before.abs()) {
                phi[v] = old;
                rejected += 1;
            }
        }
        history.push(g.pseudopower(&phi));
        residual = max_residual(&phi);
    }

    let residuals = (nb..g.n_vertices()).map(|v| g.outflow(v, &phi)).collect();
    let boundary_currents = (0..nb).map(|v| g.outflow(v, &phi)).collect();
    let edge_currents = net.edges.iter().zip(&g.ends).zip(&g.specs).map(|((e, &[u, v]), s)| (e.id.clone(), s.eval(phi[u] - phi[v]))).collect();
    let voltages = g.ids.iter().zip(&phi).map(|(id, &x)| (id.to_string(), x)).collect();
    let state = SolverState { pseudopower: g.pseudopower(&phi), voltages: phi, residuals, steps, rejected, history };
    Ok(DirichletSolution { voltages, edge_currents, boundary_currents, state })
}

/// Root of a nondecreasing function on `[-bound, bound]` by bisection.
fn coordinate_root(h: impl Fn(f64) -> f64, bound: f64) -> f64 {
    let (mut lo, mut hi) = (-bound, bound);
    if h(lo) >= 0.0 {
        return lo;
    }
    if h(hi) <= 0.0 {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if h(lo).abs() <= h(hi).abs() {
        lo
    } else {
        hi
    }
}
