//! Seeded random circular planar networks.
//!
//! Shapes grow from isolated boundary vertices by four local moves that keep the embedding planar:
//! a boundary spike, an edge between neighbouring boundary vertices, a parallel copy of an edge and
//! the subdivision of an edge. Only the first two are used for critical shapes, and each move is
//! kept only if the medial graph stays critical.

use medial::{build_medial, check_critical};
use network_core::{ConductanceSpec, Edge, EdgeEnd, Network};
use rand::Rng;

fn empty(n: usize) -> Network {
    let boundary: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let rotations = boundary.iter().map(|b| (b.clone(), Vec::new())).collect();
    Network { boundary, interior: vec![], edges: vec![], rotations }
}

fn new_edge(net: &mut Network, u: &str, v: &str) -> String {
    let id = net.fresh_id("e");
    net.edges.push(Edge { id: id.clone(), u: u.into(), v: v.into(), conductance: None });
    id
}

/// Boundary vertex `i` moves inside and a new boundary leaf takes its place on the circle.
pub fn add_spike(net: &mut Network, i: usize) {
    let old = net.boundary[i].clone();
    let leaf = net.fresh_id("v");
    net.boundary[i] = leaf.clone();
    net.interior.push(old.clone());
    let e = new_edge(net, &old, &leaf);
    net.rotations.entry(old).or_default().push(EdgeEnd::plain(&e));
    net.rotations.insert(leaf, vec![EdgeEnd::plain(e)]);
}

/// An edge hugging the boundary arc from vertex `i` to vertex `i + 1`.
pub fn add_boundary_edge(net: &mut Network, i: usize) {
    let n = net.boundary.len();
    let (u, w) = (net.boundary[i].clone(), net.boundary[(i + 1) % n].clone());
    let e = new_edge(net, &u, &w);
    net.rotations.entry(u).or_default().insert(0, EdgeEnd::plain(&e));
    net.rotations.entry(w).or_default().push(EdgeEnd::plain(e));
}

fn place(net: &Network, v: &str, e: &str) -> usize {
    net.rotations[v].iter().position(|x| x.edge == e).expect("edge end in rotation")
}

/// A second edge beside edge `k`, bounding an empty digon with it.
pub fn add_parallel(net: &mut Network, k: usize) {
    let Edge { id, u, v, .. } = net.edges[k].clone();
    let e = new_edge(net, &u, &v);
    let pu = place(net, &u, &id);
    net.rotations.get_mut(&u).expect("rotation").insert(pu + 1, EdgeEnd::plain(&e));
    let pv = place(net, &v, &id);
    net.rotations.get_mut(&v).expect("rotation").insert(pv, EdgeEnd::plain(e));
}

/// Split edge `k` by a new interior vertex.
pub fn subdivide(net: &mut Network, k: usize) {
    let Edge { id, v, .. } = net.edges[k].clone();
    let mid = net.fresh_id("i");
    net.interior.push(mid.clone());
    net.edges[k].v = mid.clone();
    let e = new_edge(net, &mid, &v);
    let pv = place(net, &v, &id);
    net.rotations.get_mut(&v).expect("rotation")[pv] = EdgeEnd::plain(&e);
    net.rotations.insert(mid, vec![EdgeEnd::plain(id), EdgeEnd::plain(e)]);
}

fn is_critical(net: &Network) -> bool {
    build_medial(net).map(|m| check_critical(&m).is_ok()).unwrap_or(false)
}

/// A circular planar shape with `2..=max_boundary` boundary vertices and at most `max_edges`
/// edges, critical or not. Edges carry no conductance.
pub fn random_network<R: Rng>(rng: &mut R, max_boundary: usize, max_edges: usize) -> Network {
    let mut net = empty(rng.gen_range(2..=max_boundary.max(2)));
    let target = rng.gen_range(0..=max_edges);
    while net.edges.len() < target {
        let n = net.boundary.len();
        let m = net.edges.len();
        let loops = |k: usize| net.edges[k].u == net.edges[k].v;
        match rng.gen_range(0..8) {
            0..=2 => add_spike(&mut net, rng.gen_range(0..n)),
            3..=5 => add_boundary_edge(&mut net, rng.gen_range(0..n)),
            6 if m > 0 => {
                let k = rng.gen_range(0..m);
                if !loops(k) {
                    add_parallel(&mut net, k);
                }
            }
            7 if m > 0 => {
                let k = rng.gen_range(0..m);
                if !loops(k) {
                    subdivide(&mut net, k);
                }
            }
            _ => {}
        }
    }
    net
}

/// A critical circular planar shape with `2..=max_boundary` boundary vertices and
/// `1..=max_edges` edges. Edges carry no conductance.
pub fn random_critical_network<R: Rng>(rng: &mut R, max_boundary: usize, max_edges: usize) -> Network {
    loop {
        let mut net = empty(rng.gen_range(2..=max_boundary.max(2)));
        let target = rng.gen_range(1..=max_edges.max(1));
        for _ in 0..20 * target {
            if net.edges.len() >= target {
                break;
            }
            let mut next = net.clone();
            let i = rng.gen_range(0..next.boundary.len());
            if rng.gen_bool(0.5) {
                add_spike(&mut next, i);
            } else {
                add_boundary_edge(&mut next, i);
            }
            if is_critical(&next) {
                net = next;
            }
        }
        if !net.edges.is_empty() {
            return net;
        }
    }
}

/// Copy of `net` with every edge's conductance drawn from `spec`.
pub fn with_conductances(net: &Network, mut spec: impl FnMut(&Edge) -> ConductanceSpec) -> Network {
    let mut out = net.clone();
    for e in &mut out.edges {
        e.conductance = Some(spec(e));
    }
    out
}

/// Slope with magnitude uniform in `[lo, hi]`, negated with probability one half when `signed`.
pub fn random_slope<R: Rng>(rng: &mut R, lo: f64, hi: f64, signed: bool) -> f64 {
    let c = rng.gen_range(lo..=hi);
    if signed && rng.gen_bool(0.5) {
        -c
    } else {
        c
    }
}

/// Odd piecewise-linear bijection with three breakpoints; decreasing when `decreasing`.
pub fn random_pwl<R: Rng>(rng: &mut R, decreasing: bool) -> ConductanceSpec {
    let sign = if decreasing { -1.0 } else { 1.0 };
    let mut points = Vec::new();
    let (mut x, mut y) = (0.0, 0.0);
    for _ in 0..3 {
        let dx = rng.gen_range(0.25..1.0);
        let s = sign * rng.gen_range(0.2..5.0);
        x += dx;
        y += s * dx;
        points.push([x, y]);
    }
    ConductanceSpec::pwl(points, sign * rng.gen_range(0.2..5.0))
}
