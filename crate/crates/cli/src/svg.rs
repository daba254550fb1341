use std::f64::consts::TAU;
use std::fmt::Write;

use medial::{MedialGraph, Port};
use nalgebra::{DMatrix, DVector};
use network_core::Network;

type Point = [f64; 2];

fn on_circle(angle: f64) -> Point {
    [angle.cos(), angle.sin()]
}

/// Boundary vertices equally spaced on the unit circle, interior vertices at the average of their
/// neighbours.
pub fn tutte_layout(net: &Network) -> Vec<Point> {
    let nb = net.boundary.len();
    let n = nb + net.interior.len();
    let mut pos: Vec<Point> = (0..nb).map(|i| on_circle(TAU * i as f64 / nb as f64)).collect();
    let ni = n - nb;
    if ni == 0 {
        return pos;
    }
    let mut l = DMatrix::<f64>::identity(ni, ni) * 1e-9;
    let mut rhs = [DVector::<f64>::zeros(ni), DVector::<f64>::zeros(ni)];
    for e in &net.edges {
        let (Some(u), Some(v)) = (net.vertex_index(&e.u), net.vertex_index(&e.v)) else { continue };
        if u == v {
            continue;
        }
        for (a, b) in [(u, v), (v, u)] {
            if a < nb {
                continue;
            }
            l[(a - nb, a - nb)] += 1.0;
            if b < nb {
                for d in 0..2 {
                    rhs[d][a - nb] += pos[b][d];
                }
            } else {
                l[(a - nb, b - nb)] -= 1.0;
            }
        }
    }
    let lu = l.lu();
    let xs: Vec<DVector<f64>> = rhs.iter().map(|r| lu.solve(r).unwrap_or_else(|| DVector::zeros(ni))).collect();
    pos.extend((0..ni).map(|k| [xs[0][k], xs[1][k]]));
    pos
}

fn boundary_point(p: usize, nb: usize) -> Point {
    let step = TAU / nb.max(1) as f64;
    let i = p / 2;
    let third = if p % 2 == 0 { 1.0 } else { 2.0 };
    on_circle(step * (i as f64 + third / 3.0))
}

fn line(svg: &mut String, a: Point, b: Point, class: &str) {
    writeln!(svg, r#"<line class="{class}" x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}"/>"#, a[0], -a[1], b[0], -b[1]).expect("write to string");
}

/// The network in grey and its medial graph in red, one crossing at each edge midpoint.
pub fn medial_svg(net: &Network, m: &MedialGraph) -> String {
    let pos = tutte_layout(net);
    let nb = net.boundary.len();
    let mid = |e: usize| {
        let (u, v) = (net.vertex_index(&net.edges[e].u).unwrap_or(0), net.vertex_index(&net.edges[e].v).unwrap_or(0));
        [(pos[u][0] + pos[v][0]) / 2.0, (pos[u][1] + pos[v][1]) / 2.0]
    };
    let at = |port: Port| match port {
        Port::Slot(c, _) => mid(m.crossing(c).and_then(|x| x.edge).unwrap_or(0)),
        Port::Boundary(p) => boundary_point(p, nb),
    };
    let mut svg = String::new();
    writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#).expect("write to string");
    writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="-1.2 -1.2 2.4 2.4" width="480" height="480">"#).expect("write to string");
    writeln!(svg, "<style>.net{{stroke:#999;stroke-width:0.01}} .med{{stroke:#c22;stroke-width:0.008;fill:none}} .disk{{stroke:#333;stroke-width:0.005;fill:none}}</style>").expect("write to string");
    writeln!(svg, r#"<circle class="disk" cx="0" cy="0" r="1"/>"#).expect("write to string");
    for e in &net.edges {
        if let (Some(u), Some(v)) = (net.vertex_index(&e.u), net.vertex_index(&e.v)) {
            line(&mut svg, pos[u], pos[v], "net");
        }
    }
    for (c, x) in m.crossings() {
        for (k, &link) in x.links.iter().enumerate() {
            let here = Port::Slot(c, k as u8);
            let keep = match link {
                Port::Slot(d, j) => (c, k as u8) < (d, j),
                Port::Boundary(_) => true,
            };
            if keep {
                line(&mut svg, at(here), at(link), "med");
            }
        }
    }
    for (p, &link) in m.boundary_links().iter().enumerate() {
        if let Port::Boundary(q) = link {
            if p < q {
                line(&mut svg, boundary_point(p, nb), boundary_point(q, nb), "med");
            }
        }
    }
    for l in m.free_loops() {
        if let Some(v) = m.cell(l.inside).and_then(|c| c.vertex) {
            writeln!(svg, r#"<circle class="med" cx="{:.4}" cy="{:.4}" r="0.05"/>"#, pos[v][0], -pos[v][1]).expect("write to string");
        }
    }
    for (i, p) in pos.iter().enumerate() {
        let fill = if i < nb { "#000" } else { "#fff" };
        writeln!(svg, r##"<circle cx="{:.4}" cy="{:.4}" r="0.025" fill="{fill}" stroke="#000" stroke-width="0.005"/>"##, p[0], -p[1]).expect("write to string");
    }
    svg.push_str("</svg>\n");
    svg
}
