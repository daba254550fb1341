use network_core::{ConductanceSpec, Network};

use crate::edit::{
    add_edge, insert_after, position, remove_edge, remove_vertex, require_interior, require_vertex, single_edge_between, slope, splice,
    spokes,
};
use crate::{Rewrite, TransformError, TransformKind, TransformRecord};

fn nonzero(x: f64, what: &str) -> Result<f64, TransformError> {
    if x == 0.0 || !x.is_finite() {
        Err(TransformError::DegenerateDenominator(format!("{what} = {x}")))
    } else {
        Ok(x)
    }
}

/// Replace the degree-3 star at `hub` by a triangle on its neighbours: `c_ij = c_i c_j / σ`.
pub fn wye_delta(net: &Network, hub: &str) -> Rewrite {
    let sp = spokes(net, hub)?;
    if sp.len() != 3 {
        return Err(TransformError::NotApplicable(format!("{hub} has degree {}, not 3", sp.len())));
    }
    let n: Vec<&str> = sp.iter().map(|(_, v)| v.as_str()).collect();
    if n[0] == n[1] || n[1] == n[2] || n[0] == n[2] {
        return Err(TransformError::NotApplicable(format!("{hub} has a repeated neighbour")));
    }
    let c: Vec<f64> = sp.iter().map(|(e, _)| slope(net, e)).collect::<Result<_, _>>()?;
    let sigma = nonzero(c[0] + c[1] + c[2], "c1 + c2 + c3")?;
    let mut out = net.clone();
    let mut tri = Vec::new();
    let mut new = Vec::new();
    for i in 0..3 {
        let j = (i + 1) % 3;
        let cij = c[i] * c[j] / sigma;
        let id = add_edge(&mut out, n[i], n[j], cij);
        new.push((id.clone(), cij));
        tri.push(id);
    }
    for i in 0..3 {
        let with = [tri[i].clone(), tri[(i + 2) % 3].clone()];
        splice(&mut out, n[i], &sp[i].0, &with);
    }
    for (e, _) in &sp {
        remove_edge(&mut out, e);
    }
    remove_vertex(&mut out, hub);
    let mut vertices = vec![hub.to_string()];
    vertices.extend(n.iter().map(|s| s.to_string()));
    let old = sp.iter().map(|(e, _)| e.clone()).zip(c).collect();
    Ok((out, TransformRecord { kind: TransformKind::YDelta, vertices, old, new }))
}

/// `e` directly precedes `f` counterclockwise at `v`; boundary lists do not wrap.
fn precedes(net: &Network, v: &str, e: &str, f: &str) -> bool {
    let (Some(i), Some(j)) = (position(net, v, e), position(net, v, f)) else { return false };
    let len = net.rotations[v].len();
    j == i + 1 || (!net.is_boundary(v) && i + 1 == len && j == 0)
}

/// Replace the triangular face on `triangle` by a star: `c_i = (c12c13 + c12c23 + c13c23) / c_jk`
/// with `c_jk` the side opposite vertex `i`.
pub fn delta_wye(net: &Network, triangle: [&str; 3]) -> Rewrite {
    for v in triangle {
        require_vertex(net, v)?;
    }
    if triangle[0] == triangle[1] || triangle[1] == triangle[2] || triangle[0] == triangle[2] {
        return Err(TransformError::NotApplicable("triangle vertices must be distinct".into()));
    }
    let side = |a: &str, b: &str| -> Result<String, TransformError> {
        single_edge_between(net, a, b)?.ok_or_else(|| TransformError::NotApplicable(format!("no edge joins {a} and {b}")))
    };
    let [p0, p1, p2] = triangle;
    let n = if precedes(net, p0, &side(p0, p1)?, &side(p0, p2)?) {
        [p0, p1, p2]
    } else {
        [p0, p2, p1]
    };
    let e: Vec<String> = (0..3).map(|i| side(n[i], n[(i + 1) % 3])).collect::<Result<_, _>>()?;
    for i in 0..3 {
        if !precedes(net, n[i], &e[i], &e[(i + 2) % 3]) {
            return Err(TransformError::NotApplicable(format!("{} {} {} does not bound a face", n[0], n[1], n[2])));
        }
    }
    let c: Vec<f64> = e.iter().map(|x| slope(net, x)).collect::<Result<_, _>>()?;
    let q = nonzero(c[0] * c[1] + c[1] * c[2] + c[2] * c[0], "c12c13 + c12c23 + c13c23")?;
    let mut out = net.clone();
    let hub = out.fresh_id("o");
    out.interior.push(hub.clone());
    let mut new = Vec::new();
    let mut star = Vec::new();
    for i in 0..3 {
        let ci = q / c[(i + 1) % 3];
        let id = add_edge(&mut out, &hub, n[i], ci);
        let k = position(&out, n[i], &e[i]).expect("side present");
        insert_after(&mut out, n[i], k, &id);
        new.push((id.clone(), ci));
        star.push(network_core::EdgeEnd::plain(id));
    }
    out.rotations.insert(hub.clone(), star);
    for x in &e {
        remove_edge(&mut out, x);
    }
    let mut vertices = vec![hub];
    vertices.extend(n.iter().map(|s| s.to_string()));
    let old = e.into_iter().zip(c).collect();
    Ok((out, TransformRecord { kind: TransformKind::DeltaY, vertices, old, new }))
}

/// Merge the two edges at a degree-2 interior vertex into one of conductance `c1 c2 / (c1 + c2)`.
pub fn series_reduce(net: &Network, v: &str) -> Rewrite {
    let sp = spokes(net, v)?;
    if sp.len() != 2 {
        return Err(TransformError::NotApplicable(format!("{v} has degree {}, not 2", sp.len())));
    }
    let (u, w) = (sp[0].1.as_str(), sp[1].1.as_str());
    if u == w {
        return Err(TransformError::NotApplicable(format!("both edges at {v} lead to {u}")));
    }
    let c1 = slope(net, &sp[0].0)?;
    let c2 = slope(net, &sp[1].0)?;
    let s = nonzero(c1 + c2, "c1 + c2")?;
    let c = c1 * c2 / s;
    let mut out = net.clone();
    let id = add_edge(&mut out, u, w, c);
    splice(&mut out, u, &sp[0].0, std::slice::from_ref(&id));
    splice(&mut out, w, &sp[1].0, std::slice::from_ref(&id));
    remove_edge(&mut out, &sp[0].0);
    remove_edge(&mut out, &sp[1].0);
    remove_vertex(&mut out, v);
    let record = TransformRecord {
        kind: TransformKind::Series,
        vertices: vec![v.to_string(), u.to_string(), w.to_string()],
        old: vec![(sp[0].0.clone(), c1), (sp[1].0.clone(), c2)],
        new: vec![(id, c)],
    };
    Ok((out, record))
}

/// Fold `e2` into the parallel edge `e1`, which takes conductance `c1 + c2`.
pub fn parallel_reduce(net: &Network, e1: &str, e2: &str) -> Rewrite {
    let find = |id: &str| net.edge(id).ok_or_else(|| TransformError::NotApplicable(format!("no edge {id}")));
    let (a, b) = (find(e1)?, find(e2)?);
    if e1 == e2 || a.u == a.v {
        return Err(TransformError::NotApplicable(format!("{e1} and {e2} are not a parallel pair")));
    }
    let same = (a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u);
    if !same {
        return Err(TransformError::NotApplicable(format!("{e1} and {e2} do not share endpoints")));
    }
    let (c1, c2) = (slope(net, e1)?, slope(net, e2)?);
    let c = nonzero(c1 + c2, "c1 + c2")?;
    let vertices = vec![a.u.clone(), a.v.clone()];
    let mut out = net.clone();
    remove_edge(&mut out, e2);
    out.edges.iter_mut().find(|e| e.id == e1).expect("kept edge").conductance = Some(ConductanceSpec::linear(c));
    let record = TransformRecord {
        kind: TransformKind::Parallel,
        vertices,
        old: vec![(e1.to_string(), c1), (e2.to_string(), c2)],
        new: vec![(e1.to_string(), c)],
    };
    Ok((out, record))
}

/// Delete a self-loop; it carries no current.
pub fn remove_self_loop(net: &Network, e: &str) -> Rewrite {
    let edge = net.edge(e).ok_or_else(|| TransformError::NotApplicable(format!("no edge {e}")))?;
    if edge.u != edge.v {
        return Err(TransformError::NotApplicable(format!("{e} is not a self-loop")));
    }
    let old = edge.conductance.as_ref().and_then(ConductanceSpec::slope).map(|c| (e.to_string(), c)).into_iter().collect();
    let vertices = vec![edge.u.clone()];
    let mut out = net.clone();
    remove_edge(&mut out, e);
    Ok((out, TransformRecord { kind: TransformKind::RemoveSelfLoop, vertices, old, new: vec![] }))
}

/// Delete an interior vertex with no edges; in the medial graph this removes an empty circle.
pub fn remove_isolated(net: &Network, v: &str) -> Rewrite {
    require_interior(net, v)?;
    if net.edges.iter().any(|e| e.u == v || e.v == v) {
        return Err(TransformError::NotApplicable(format!("{v} is not isolated")));
    }
    let mut out = net.clone();
    remove_vertex(&mut out, v);
    Ok((out, TransformRecord { kind: TransformKind::RemoveCircle, vertices: vec![v.to_string()], old: vec![], new: vec![] }))
}
