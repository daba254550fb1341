use std::collections::BTreeMap;

use network_core::{BoundaryData, Network, NetworkError, ResistanceSpec, Role};

use crate::graph::Graph;
use crate::ForwardError;

#[derive(Debug, Clone)]
pub struct NeumannOptions {
    /// Largest voltage-drop sum accepted around a fundamental cycle.
    pub tolerance: f64,
    pub max_steps: usize,
}

impl Default for NeumannOptions {
    fn default() -> Self {
        NeumannOptions { tolerance: 1e-10, max_steps: 1_000_000 }
    }
}

#[derive(Debug, Clone)]
pub struct NeumannSolution {
    /// Voltages with the least vertex id of each component at zero.
    pub voltages: BTreeMap<String, f64>,
    pub boundary_voltages: Vec<f64>,
    /// Current along each edge from `u` to `v`.
    pub edge_currents: BTreeMap<String, f64>,
    /// Largest voltage-drop sum around a fundamental cycle.
    pub cycle_residual: f64,
    pub steps: usize,
}

pub fn solve_neumann(net: &Network, f: &BoundaryData) -> Result<NeumannSolution, ForwardError> {
    solve_neumann_with(net, f, &NeumannOptions::default())
}

/// Currents are a tree flow carrying the boundary injections plus one circulation per
/// fundamental cycle; the circulations minimise the total resistive energy.
pub fn solve_neumann_with(net: &Network, f: &BoundaryData, opts: &NeumannOptions) -> Result<NeumannSolution, ForwardError> {
    let g = Graph::new(net)?;
    if f.role != Role::Current {
        return Err(NetworkError::BadBoundaryData("Neumann data must be currents".into()).into());
    }
    for (e, s) in net.edges.iter().zip(&g.specs) {
        if !s.is_monotone() {
            return Err(ForwardError::NonMonotone(e.id.clone()));
        }
    }
    let rho: Vec<ResistanceSpec> = g.specs.iter().map(|s| ResistanceSpec::from_conductance(s)).collect();
    let mut inject = f.ordered(net)?;
    inject.resize(g.n_vertices(), 0.0);
    let scale = 1.0 + inject.iter().map(|x| x.abs()).sum::<f64>();

    let n = g.n_vertices();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let mut in_tree = vec![false; g.ends.len()];
    let mut visited = vec![false; n];
    for comp in g.components() {
        let root = *comp.iter().min_by_key(|&&v| g.ids[v]).expect("nonempty component");
        let sum: f64 = comp.iter().map(|&v| inject[v]).sum();
        if sum.abs() > 1e-9 * scale {
            return Err(ForwardError::BadCurrentSum { vertex: g.ids[root].to_string(), sum });
        }
        let start = order.len();
        order.push(root);
        visited[root] = true;
        let mut i = start;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for &(e, y, _) in &g.incident[x] {
                if !visited[y] {
                    visited[y] = true;
                    parent[y] = Some((x, e));
                    depth[y] = depth[x] + 1;
                    in_tree[e] = true;
                    order.push(y);
                }
            }
        }
    }

    // tree flow: the edge to the parent carries everything injected below
    let mut current = vec![0.0; g.ends.len()];
    let mut below = inject.clone();
    for &v in order.iter().rev() {
        if let Some((p, e)) = parent[v] {
            current[e] = if g.ends[e][0] == v { below[v] } else { -below[v] };
            below[p] += below[v];
        }
    }

    let cycles: Vec<Vec<(usize, f64)>> =
        (0..g.ends.len()).filter(|&e| !in_tree[e]).map(|e| fundamental_cycle(&g, e, &parent, &depth)).collect();
    let drop_sum = |cycle: &[(usize, f64)], current: &[f64]| cycle.iter().map(|&(e, s)| s * rho[e].eval(current[e])).sum::<f64>();
    let worst = |current: &[f64]| cycles.iter().map(|c| drop_sum(c, current).abs()).fold(0.0, f64::max);

    let mut steps = 0;
    let mut residual = worst(&current);
    while residual >= opts.tolerance {
        for cycle in &cycles {
            if steps >= opts.max_steps {
                return Err(ForwardError::NoConvergence { steps, residual });
            }
            steps += 1;
            let shifted = |t: f64| cycle.iter().map(|&(e, s)| s * rho[e].eval(current[e] + s * t)).sum::<f64>();
            let t = monotone_root(shifted, scale);
            for &(e, s) in cycle {
                current[e] += s * t;
            }
        }
        residual = worst(&current);
    }

    let mut phi = vec![0.0; n];
    for &v in &order {
        if let Some((p, e)) = parent[v] {
            let along = if g.ends[e][0] == p { current[e] } else { -current[e] };
            phi[v] = phi[p] - rho[e].eval(along);
        }
    }
    Ok(NeumannSolution {
        boundary_voltages: phi[..g.n_boundary].to_vec(),
        voltages: g.ids.iter().zip(&phi).map(|(id, &x)| (id.to_string(), x)).collect(),
        edge_currents: net.edges.iter().zip(&current).map(|(e, &c)| (e.id.clone(), c)).collect(),
        cycle_residual: residual,
        steps,
    })
}

/// Non-tree edge `e` followed by the tree path back to its tail, as (edge, orientation) pairs.
fn fundamental_cycle(g: &Graph, e: usize, parent: &[Option<(usize, usize)>], depth: &[usize]) -> Vec<(usize, f64)> {
    let [u, v] = g.ends[e];
    let mut cycle = vec![(e, 1.0)];
    if u == v {
        return cycle;
    }
    let step = |x: usize| parent[x].expect("not the root");
    let orient = |edge: usize, from: usize| if g.ends[edge][0] == from { 1.0 } else { -1.0 };
    let (mut a, mut b) = (v, u);
    let mut tail = Vec::new();
    while a != b {
        if depth[a] >= depth[b] {
            let (p, pe) = step(a);
            cycle.push((pe, orient(pe, a)));
            a = p;
        } else {
            let (p, pe) = step(b);
            tail.push((pe, orient(pe, p)));
            b = p;
        }
    }
    cycle.extend(tail.into_iter().rev());
    cycle
}

/// Root of a nondecreasing function, bracketing outward from zero first.
fn monotone_root(h: impl Fn(f64) -> f64, scale: f64) -> f64 {
    let h0 = h(0.0);
    if h0 == 0.0 {
        return 0.0;
    }
    let mut width = scale;
    let (mut lo, mut hi) = if h0 > 0.0 { (-width, 0.0) } else { (0.0, width) };
    while (h0 > 0.0 && h(lo) > 0.0) || (h0 < 0.0 && h(hi) < 0.0) {
        width *= 2.0;
        if h0 > 0.0 {
            lo = -width;
        } else {
            hi = width;
        }
        assert!(width.is_finite(), "nondecreasing resistances always change sign");
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
