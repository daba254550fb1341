use network_core::{EdgeEnd, Network};
use serde::Serialize;

use crate::edit::{add_edge, remove_edge, remove_vertex, require_vertex, single_edge_between, slope, spokes};
use crate::{Rewrite, TransformError, TransformKind, TransformRecord};

/// Vertex pairs of a K4 on `v1..v4`, in the order `λ12, λ13, λ14, λ23, λ24, λ34`.
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// The six-edge planar gadget: hub spokes `c, d, e, f` to `v1..v4`, plus `a = v1v2` and `b = v1v3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct K4Gadget {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

fn degenerate(what: &str, x: f64) -> TransformError {
    TransformError::DegenerateDenominator(format!("{what} = {x}"))
}

/// `λ12 = a + cd/σ`, `λ13 = b + ce/σ`, the rest `c_i c_j / σ`, with `σ = c + d + e + f`.
pub fn k4_from_gadget(g: &K4Gadget) -> Result<[f64; 6], TransformError> {
    let s = g.c + g.d + g.e + g.f;
    if s == 0.0 || !s.is_finite() {
        return Err(degenerate("c + d + e + f", s));
    }
    Ok([g.a + g.c * g.d / s, g.b + g.c * g.e / s, g.c * g.f / s, g.d * g.e / s, g.d * g.f / s, g.e * g.f / s])
}

/// Inverse of [`k4_from_gadget`].
pub fn gadget_from_k4(l: [f64; 6]) -> Result<K4Gadget, TransformError> {
    let [l12, l13, l14, l23, l24, l34] = l;
    for (name, x) in [("λ12", l12), ("λ13", l13), ("λ14", l14), ("λ23", l23), ("λ24", l24), ("λ34", l34)] {
        if x == 0.0 || !x.is_finite() {
            return Err(degenerate(name, x));
        }
    }
    let q = l14 * l23 + l23 * l24 + l23 * l34 + l24 * l34;
    if q == 0.0 {
        return Err(degenerate("q", q));
    }
    Ok(K4Gadget {
        a: l12 - l14 * l23 / l34,
        b: l13 - l14 * l23 / l24,
        c: q * l14 / (l24 * l34),
        d: q / l34,
        e: q / l24,
        f: q / l23,
    })
}

/// Rewrite rotation lists at `v`: drop the entries of `gone`, and put `with` where the first of
/// them stood.
fn respray(net: &mut Network, v: &str, gone: &[String], with: &[String]) {
    let rot = net.rotations.entry(v.to_string()).or_default();
    let k = rot.iter().position(|x| gone.contains(&x.edge)).unwrap_or(rot.len());
    let before = rot[..k].iter().filter(|x| !gone.contains(&x.edge)).count();
    rot.retain(|x| !gone.contains(&x.edge));
    rot.splice(before..before, with.iter().map(EdgeEnd::plain));
}

fn distinct(v: &[&str]) -> Result<(), TransformError> {
    for i in 0..v.len() {
        if v[..i].contains(&v[i]) {
            return Err(TransformError::NotApplicable(format!("vertex {} repeated", v[i])));
        }
    }
    Ok(())
}

/// Replace the K4 on `v` by the planar gadget; a zero `a` or `b` leaves that edge out.
pub fn k4_to_planar(net: &Network, v: [&str; 4]) -> Rewrite {
    for x in v {
        require_vertex(net, x)?;
    }
    distinct(&v)?;
    let mut k4 = Vec::new();
    for (i, j) in PAIRS {
        let e = single_edge_between(net, v[i], v[j])?
            .ok_or_else(|| TransformError::NotApplicable(format!("no edge joins {} and {}", v[i], v[j])))?;
        k4.push(e);
    }
    let l: Vec<f64> = k4.iter().map(|e| slope(net, e)).collect::<Result<_, _>>()?;
    let g = gadget_from_k4(l.clone().try_into().expect("six slopes"))?;
    let scale = l.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let keep = |x: f64| x.abs() > 1e-12 * scale;

    let mut out = net.clone();
    let hub = out.fresh_id("o");
    out.interior.push(hub.clone());
    let mut new = Vec::new();
    let mut add = |out: &mut Network, u: &str, w: &str, c: f64| {
        let id = add_edge(out, u, w, c);
        new.push((id.clone(), c));
        id
    };
    let a = keep(g.a).then(|| add(&mut out, v[0], v[1], g.a));
    let b = keep(g.b).then(|| add(&mut out, v[0], v[2], g.b));
    let c = add(&mut out, v[0], &hub, g.c);
    let d = add(&mut out, v[1], &hub, g.d);
    let e = add(&mut out, v[2], &hub, g.e);
    let f = add(&mut out, v[3], &hub, g.f);
    let lists: [Vec<String>; 4] = [
        [a.clone(), Some(c.clone()), b.clone()].into_iter().flatten().collect(),
        [Some(d.clone()), a].into_iter().flatten().collect(),
        [b, Some(e.clone())].into_iter().flatten().collect(),
        vec![f.clone()],
    ];
    for (x, list) in v.iter().zip(&lists) {
        respray(&mut out, x, &k4, list);
    }
    out.rotations.insert(hub.clone(), [c, d, f, e].into_iter().map(EdgeEnd::plain).collect());
    for x in &k4 {
        remove_edge(&mut out, x);
    }
    let mut vertices: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    vertices.push(hub);
    let old = k4.into_iter().zip(l).collect();
    Ok((out, TransformRecord { kind: TransformKind::K4ToPlanar, vertices, old, new }))
}

/// Replace the star at `hub` (plus optional edges `v1v2`, `v1v3`) by a K4 on the spoke ends.
fn star_to_k4(net: &Network, hub: &str, v: [&str; 4], extra: bool, kind: TransformKind) -> Rewrite {
    let sp = spokes(net, hub)?;
    if sp.len() != 4 {
        return Err(TransformError::NotApplicable(format!("{hub} has degree {}, not 4", sp.len())));
    }
    distinct(&v)?;
    let mut spoke = Vec::new();
    for x in v {
        let found: Vec<&String> = sp.iter().filter(|(_, y)| y == x).map(|(e, _)| e).collect();
        match found[..] {
            [e] => spoke.push(e.clone()),
            _ => return Err(TransformError::NotApplicable(format!("{hub} must have exactly one spoke to {x}"))),
        }
    }
    let ab = if extra {
        [single_edge_between(net, v[0], v[1])?, single_edge_between(net, v[0], v[2])?]
    } else {
        [None, None]
    };
    let value = |e: &Option<String>| e.as_deref().map(|e| slope(net, e)).transpose().map(|x| x.unwrap_or(0.0));
    let cs: Vec<f64> = spoke.iter().map(|e| slope(net, e)).collect::<Result<_, _>>()?;
    let g = K4Gadget { a: value(&ab[0])?, b: value(&ab[1])?, c: cs[0], d: cs[1], e: cs[2], f: cs[3] };
    let l = k4_from_gadget(&g)?;

    let mut out = net.clone();
    let mut ids = vec![vec![String::new(); 4]; 4];
    let mut new = Vec::new();
    for (k, (i, j)) in PAIRS.into_iter().enumerate() {
        let id = add_edge(&mut out, v[i], v[j], l[k]);
        ids[i][j] = id.clone();
        ids[j][i] = id.clone();
        new.push((id, l[k]));
    }
    let ring: Vec<usize> = sp.iter().map(|(_, y)| v.iter().position(|x| x == y).expect("spoke end")).collect();
    let gone: Vec<String> = spoke.iter().cloned().chain(ab.iter().flatten().cloned()).collect();
    for (p, &i) in ring.iter().enumerate() {
        let list: Vec<String> = (1..4).map(|s| ids[i][ring[(p + s) % 4]].clone()).collect();
        respray(&mut out, v[i], &gone, &list);
    }
    for x in &gone {
        remove_edge(&mut out, x);
    }
    remove_vertex(&mut out, hub);
    let mut vertices: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    vertices.push(hub.to_string());
    let mut old: Vec<(String, f64)> = spoke.into_iter().zip(cs).collect();
    if let Some(a) = &ab[0] {
        old.push((a.clone(), g.a));
    }
    if let Some(b) = &ab[1] {
        old.push((b.clone(), g.b));
    }
    Ok((out, TransformRecord { kind, vertices, old, new }))
}

/// Replace the gadget around `hub` by a K4 on `v = [v1, v2, v3, v4]`. `a` and `b` are the edges
/// `v1v2` and `v1v3` when present.
pub fn planar_to_k4(net: &Network, hub: &str, v: [&str; 4]) -> Rewrite {
    star_to_k4(net, hub, v, true, TransformKind::PlanarToK4)
}

/// Replace a degree-4 star by a K4 with `λ_ij = c_i c_j / σ`.
pub fn star_mesh_4(net: &Network, hub: &str) -> Rewrite {
    let sp = spokes(net, hub)?;
    let v: Vec<&str> = sp.iter().map(|(_, x)| x.as_str()).collect();
    let v: [&str; 4] = v
        .try_into()
        .map_err(|v: Vec<&str>| TransformError::NotApplicable(format!("{hub} has degree {}, not 4", v.len())))?;
    star_to_k4(net, hub, v, false, TransformKind::StarMesh4)
}
