//! Exhaustive generation of critical medial graphs.
//!
//! Every critical graph with a crossing has a boundary triangle or digon, and undoing either
//! leaves a smaller critical graph. So all critical graphs are reached from the empty one by
//! [`add_digon`] and [`cross_adjacent`].

use std::collections::{BTreeSet, HashSet};

use crate::{Color, MedialGraph, Port};

/// Encoding of the link structure that is invariant under relabelling crossings and rotating
/// their slots. With `rotate` the boundary labelling is also quotiented by rotation.
pub fn canonical_key(m: &MedialGraph, rotate: bool) -> Vec<u32> {
    let np = m.boundary_point_count();
    let shifts: Vec<usize> = if rotate && np > 0 { (0..np).collect() } else { vec![0] };
    shifts.into_iter().map(|r| key_from(m, r)).min().expect("at least one shift")
}

fn key_from(m: &MedialGraph, shift: usize) -> Vec<u32> {
    let np = m.boundary_point_count();
    let nc = m.crossing_capacity();
    let mut id = vec![u32::MAX; nc];
    let mut offset = vec![0u8; nc];
    let mut order = Vec::new();
    let visit = |p: Port, id: &mut Vec<u32>, offset: &mut Vec<u8>, order: &mut Vec<usize>| {
        if let Port::Slot(c, k) = p {
            if id[c] == u32::MAX {
                id[c] = order.len() as u32;
                offset[c] = k;
                order.push(c);
            }
        }
    };
    let actual = |q: usize| (q + shift) % np;
    for q in 0..np {
        visit(m.boundary_links()[actual(q)], &mut id, &mut offset, &mut order);
    }
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        let x = m.crossing(c).expect("live");
        for s in 0..4u8 {
            visit(x.links[((s + offset[c]) % 4) as usize], &mut id, &mut offset, &mut order);
        }
        i += 1;
    }
    let enc = |p: Port| -> u32 {
        match p {
            Port::Boundary(q) => ((q + np - shift) % np) as u32,
            Port::Slot(c, k) => np as u32 + 4 * id[c] + ((k + 4 - offset[c]) % 4) as u32,
        }
    };
    let mut key = vec![np as u32, order.len() as u32, m.free_loops().len() as u32];
    for q in 0..np {
        key.push(enc(m.boundary_links()[actual(q)]));
    }
    for &c in &order {
        let x = m.crossing(c).expect("live");
        for s in 0..4u8 {
            key.push(enc(x.links[((s + offset[c]) % 4) as usize]));
        }
    }
    key
}

/// Add a crossing-free geodesic with both ends in segment `k`.
pub fn add_digon(m: &MedialGraph, k: usize) -> MedialGraph {
    let np = m.boundary_point_count();
    let k = if np == 0 { 0 } else { k % np };
    let shift = |p: Port| match p {
        Port::Boundary(q) if q >= k => Port::Boundary(q + 2),
        other => other,
    };
    let (crossings, boundary) = m.link_data();
    let crossings = crossings.into_iter().map(|x| x.map(|l| l.map(shift))).collect();
    let mut new_boundary: Vec<Port> = boundary.into_iter().map(shift).collect();
    new_boundary.insert(k, Port::Boundary(k));
    new_boundary.insert(k, Port::Boundary(k + 1));
    MedialGraph::from_links(crossings, new_boundary, &[], Color::Black).expect("adding a digon keeps the graph valid")
}

/// Cross the geodesics ending at boundary points `p` and `p + 1` just inside the boundary.
/// Returns `None` unless they are distinct geodesics that do not already cross.
pub fn cross_adjacent(m: &MedialGraph, p: usize) -> Option<MedialGraph> {
    let np = m.boundary_point_count();
    if np < 2 {
        return None;
    }
    let q = (p + 1) % np;
    let (g, h) = (m.geodesic_at_point(p), m.geodesic_at_point(q));
    if g == h || m.crossing_ids().any(|c| m.strands(c).contains(&g) && m.strands(c).contains(&h)) {
        return None;
    }
    let (mut crossings, mut boundary) = m.link_data();
    let x = crossings.len();
    let (pp, qq) = (boundary[p], boundary[q]);
    crossings.push(Some([qq, pp, Port::Boundary(p), Port::Boundary(q)]));
    let mut set = |at: Port, to: Port| match at {
        Port::Slot(c, k) => crossings[c].as_mut().expect("live")[k as usize] = to,
        Port::Boundary(r) => boundary[r] = to,
    };
    set(pp, Port::Slot(x, 1));
    set(qq, Port::Slot(x, 0));
    boundary[p] = Port::Slot(x, 2);
    boundary[q] = Port::Slot(x, 3);
    Some(MedialGraph::from_links(crossings, boundary, &[], Color::Black).expect("crossing adjacent strands keeps the graph valid"))
}

/// All critical medial graphs with at most `max_geodesics` geodesics, one per isomorphism class
/// (boundary labelling up to rotation when `rotate`), ordered by size.
pub fn enumerate_critical(max_geodesics: usize, rotate: bool) -> Vec<MedialGraph> {
    enumerate_bounded(max_geodesics, usize::MAX, rotate)
}

/// All critical medial graphs with at most `max_cells` cells.
pub fn enumerate_critical_by_cells(max_cells: usize, rotate: bool) -> Vec<MedialGraph> {
    enumerate_bounded(usize::MAX, max_cells, rotate)
}

fn enumerate_bounded(max_geodesics: usize, max_cells: usize, rotate: bool) -> Vec<MedialGraph> {
    let empty = MedialGraph::from_links(Vec::new(), Vec::new(), &[], Color::Black).expect("empty graph");
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(canonical_key(&empty, rotate));
    let mut out = vec![empty];
    let mut i = 0;
    while i < out.len() {
        let m = out[i].clone();
        i += 1;
        let np = m.boundary_point_count();
        let mut next = Vec::new();
        if m.cell_count() >= max_cells {
            continue;
        }
        if m.geodesics().len() < max_geodesics {
            for k in 0..np.max(1) {
                next.push(add_digon(&m, k));
            }
        }
        for p in 0..np {
            if let Some(x) = cross_adjacent(&m, p) {
                next.push(x);
            }
        }
        for x in next {
            if seen.insert(canonical_key(&x, rotate)) {
                out.push(x);
            }
        }
    }
    out.sort_by_key(|m| (m.geodesics().len(), m.crossing_count()));
    out
}

/// Distinct endpoint pairings realised by a list of graphs.
pub fn pairings(graphs: &[MedialGraph]) -> BTreeSet<Vec<usize>> {
    graphs.iter().map(endpoint_pairing).collect()
}

/// For each boundary point, the boundary point at the other end of its geodesic.
pub fn endpoint_pairing(m: &MedialGraph) -> Vec<usize> {
    (0..m.boundary_point_count())
        .map(|p| {
            let ends = m.geodesic(m.geodesic_at_point(p)).ends.expect("open geodesic");
            if ends[0] == p {
                ends[1]
            } else {
                ends[0]
            }
        })
        .collect()
}
