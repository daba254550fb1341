use std::collections::VecDeque;

use network_core::{validate_network, Embedding, Network, NetworkError};

use crate::{Cell, CellId, Color, Crossing, CrossingId, FreeLoop, MedialError, MedialGraph, Port};

/// Where a free loop sits: in the cell of a boundary segment or in the cell at a crossing corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopHost {
    Segment(usize),
    Corner(CrossingId, u8),
}

impl MedialGraph {
    /// Build a medial graph from its links.
    ///
    /// `crossings[c]` gives the port each slot of crossing `c` links to (`None` leaves a tombstone);
    /// `boundary[p]` gives the port boundary point `p` links to. Cells are traced from the planar
    /// map and colored starting from segment 0. Every crossing must be reachable from the boundary.
    pub fn from_links(
        crossings: Vec<Option<[Port; 4]>>,
        boundary: Vec<Port>,
        loops: &[LoopHost],
        segment0: Color,
    ) -> Result<MedialGraph, MedialError> {
        let (links, segments, cells) = trace_cells(&crossings, &boundary)?;
        let mut cell_count = cells.iter().flatten().flatten().chain(segments.iter()).max().map_or(0, |m| m + 1);
        let mut colors = two_color(&cells, &segments, cell_count, segment0)?;
        let mut free_loops = Vec::new();
        for host in loops {
            let host = match *host {
                LoopHost::Segment(k) => *segments.get(k).ok_or_else(|| MedialError::Invalid(format!("no segment {k}")))?,
                LoopHost::Corner(c, k) => cells
                    .get(c)
                    .and_then(|x| x.as_ref())
                    .map(|x| x[k as usize % 4])
                    .ok_or_else(|| MedialError::Invalid(format!("no crossing {c}")))?,
            };
            free_loops.push(FreeLoop { inside: cell_count, host });
            colors.push(colors[host].flip());
            cell_count += 1;
        }
        let crossings = links
            .into_iter()
            .zip(cells)
            .map(|(l, c)| match (l, c) {
                (Some(links), Some(cells)) => Some(Crossing { links, cells, edge: None }),
                _ => None,
            })
            .collect();
        let cells = colors.into_iter().map(|color| Some(Cell { color, vertex: None })).collect();
        Ok(MedialGraph::assemble(crossings, boundary, segments, free_loops, cells))
    }
}

type Traced = (Vec<Option<[Port; 4]>>, Vec<CellId>, Vec<Option<[CellId; 4]>>);

fn trace_cells(crossings: &[Option<[Port; 4]>], boundary: &[Port]) -> Result<Traced, MedialError> {
    let nc = crossings.len();
    let m = boundary.len();
    let bad = |s: String| Err(MedialError::Invalid(s));

    let port_ok = |p: Port| match p {
        Port::Slot(c, k) => c < nc && crossings[c].is_some() && k < 4,
        Port::Boundary(q) => q < m,
    };
    let link = |p: Port| match p {
        Port::Slot(c, k) => crossings[c].expect("checked")[k as usize],
        Port::Boundary(q) => boundary[q],
    };
    let mut all_ports: Vec<Port> = (0..m).map(Port::Boundary).collect();
    for (c, x) in crossings.iter().enumerate() {
        if x.is_some() {
            all_ports.extend((0..4).map(|k| Port::Slot(c, k)));
        }
    }
    for &p in &all_ports {
        let q = link(p);
        if !port_ok(q) {
            return bad(format!("{p:?} links to nonexistent {q:?}"));
        }
        if q == p || link(q) != p {
            return bad(format!("links at {p:?} are not a matching"));
        }
    }
    let live = crossings.iter().filter(|x| x.is_some()).count();
    if m == 0 {
        if live > 0 {
            return bad("crossings without boundary points".into());
        }
        return Ok((crossings.to_vec(), vec![0], vec![None; nc]));
    }

    // darts: crossing slot (c, k) -> 4c + k; boundary point p slot j -> base + 3p + j,
    // with point rotation [to next point, inward, to previous point].
    let base = 4 * nc;
    let port_dart = |p: Port| match p {
        Port::Slot(c, k) => 4 * c + k as usize,
        Port::Boundary(q) => base + 3 * q + 1,
    };
    let twin = |d: usize| -> usize {
        if d < base {
            port_dart(crossings[d / 4].expect("live")[d % 4])
        } else {
            let (p, j) = ((d - base) / 3, (d - base) % 3);
            match j {
                0 => base + 3 * ((p + 1) % m) + 2,
                1 => port_dart(boundary[p]),
                _ => base + 3 * ((p + m - 1) % m),
            }
        }
    };
    let next = |d: usize| -> usize {
        let t = twin(d);
        if t < base {
            4 * (t / 4) + (t % 4 + 3) % 4
        } else {
            let (p, j) = ((t - base) / 3, (t - base) % 3);
            base + 3 * p + (j + 2) % 3
        }
    };
    let n_darts = base + 3 * m;
    let live_dart = |d: usize| d >= base || crossings[d / 4].is_some();
    let mut face = vec![usize::MAX; n_darts];
    let mut n_faces = 0;
    for s in 0..n_darts {
        if !live_dart(s) || face[s] != usize::MAX {
            continue;
        }
        let mut d = s;
        while face[d] == usize::MAX {
            face[d] = n_faces;
            d = next(d);
        }
        n_faces += 1;
    }

    // connectivity from the boundary
    let mut reached = vec![false; nc];
    let mut queue: VecDeque<Port> = (0..m).map(|p| boundary[p]).collect();
    while let Some(p) = queue.pop_front() {
        if let Port::Slot(c, _) = p {
            if !reached[c] {
                reached[c] = true;
                queue.extend(crossings[c].expect("live").iter().copied());
            }
        }
    }
    if (0..nc).any(|c| crossings[c].is_some() && !reached[c]) {
        return bad("some crossings are not connected to the boundary".into());
    }
    let vertices = (live + m) as i64;
    let edges = ((4 * live + m) / 2 + m) as i64;
    if vertices - edges + n_faces as i64 != 2 {
        return bad(format!("link structure is not planar (V - E + F = {})", vertices - edges + n_faces as i64));
    }

    let outer = face[base + 2];
    let mut cell_of_face = vec![usize::MAX; n_faces];
    let mut next_cell = 0;
    let mut cell = |f: usize| -> Result<CellId, MedialError> {
        if f == outer {
            return Err(MedialError::Invalid("a crossing corner lies outside the boundary curve".into()));
        }
        if cell_of_face[f] == usize::MAX {
            cell_of_face[f] = next_cell;
            next_cell += 1;
        }
        Ok(cell_of_face[f])
    };
    let segments = (0..m).map(|k| cell(face[base + 3 * ((k + m - 1) % m)])).collect::<Result<Vec<_>, _>>()?;
    let mut cells = vec![None; nc];
    for c in 0..nc {
        if crossings[c].is_some() {
            let mut around = [0; 4];
            for (k, slot) in around.iter_mut().enumerate() {
                *slot = cell(face[4 * c + k])?;
            }
            cells[c] = Some(around);
        }
    }
    Ok((crossings.to_vec(), segments, cells))
}

fn two_color(cells: &[Option<[CellId; 4]>], segments: &[CellId], n_cells: usize, segment0: Color) -> Result<Vec<Color>, MedialError> {
    let mut adj = vec![Vec::new(); n_cells];
    let m = segments.len();
    if m > 1 {
        for p in 0..m {
            let (a, b) = (segments[p], segments[(p + 1) % m]);
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    for x in cells.iter().flatten() {
        for k in 0..4 {
            let (a, b) = (x[k], x[(k + 3) % 4]);
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut color: Vec<Option<Color>> = vec![None; n_cells];
    color[segments[0]] = Some(segment0);
    let mut queue = VecDeque::from([segments[0]]);
    while let Some(a) = queue.pop_front() {
        let ca = color[a].expect("queued cells are colored");
        for &b in &adj[a] {
            match color[b] {
                None => {
                    color[b] = Some(ca.flip());
                    queue.push_back(b);
                }
                Some(cb) if cb == ca => return Err(MedialError::NotColorable),
                Some(_) => {}
            }
        }
    }
    color.into_iter().map(|c| c.ok_or_else(|| MedialError::Invalid("unreachable cell".into()))).collect()
}

/// The medial graph of a validated network. Vertex cells are black, face cells white.
///
/// Crossing `e` sits on network edge `e = (u, v)` with slots `[(left, u), (right, u), (right, v),
/// (left, v)]`, so its cells are `[u, right face, v, left face]`. Boundary point `2i` lies just after
/// boundary vertex `v_i`, and segment `2i` is the cell of `v_i`.
pub fn build_medial(net: &Network) -> Result<MedialGraph, MedialError> {
    let report = validate_network(net);
    if !report.is_ok() {
        return Err(MedialError::Network(NetworkError::Invalid(report.violations)));
    }
    let emb = Embedding::new(net)?;
    let n_edges = emb.n_edges();
    let n = emb.n_boundary;
    let closed = emb.closed();
    let tail_port = |d: usize| -> Port {
        let (e, s) = (d / 2, d % 2);
        if e < n_edges {
            Port::Slot(e, if s == 0 { 0 } else { 2 })
        } else {
            Port::Boundary(2 * (e - n_edges))
        }
    };
    let head_port = |d: usize| -> Port {
        let (e, s) = (d / 2, d % 2);
        if e < n_edges {
            Port::Slot(e, if s == 0 { 3 } else { 1 })
        } else {
            Port::Boundary(2 * (e - n_edges) + 1)
        }
    };
    let mut crossings = vec![[Port::Boundary(0); 4]; n_edges];
    let mut boundary = vec![Port::Boundary(0); 2 * n];
    let mut set = |a: Port, b: Port| match a {
        Port::Slot(c, k) => crossings[c][k as usize] = b,
        Port::Boundary(p) => boundary[p] = b,
    };
    let outer_dart = if n > 0 { Some(2 * emb.arc(0) + 1) } else { None };
    for walk in closed.faces() {
        if outer_dart.is_some_and(|o| walk.contains(&o)) {
            continue;
        }
        for (i, &d1) in walk.iter().enumerate() {
            let d2 = walk[(i + 1) % walk.len()];
            let (a, b) = (head_port(d1), tail_port(d2));
            set(a, b);
            set(b, a);
        }
    }
    let isolated: Vec<usize> = (n..emb.n_vertices()).filter(|&v| emb.degree(v) == 0).collect();
    let loops: Vec<LoopHost> = isolated.iter().map(|_| LoopHost::Segment(if n > 0 { 1 } else { 0 })).collect();
    let seg0 = if n > 0 { Color::Black } else { Color::White };
    let mut m = MedialGraph::from_links(crossings.into_iter().map(Some).collect(), boundary, &loops, seg0)?;

    for (e, x) in m.crossings.iter_mut().enumerate() {
        x.as_mut().expect("one crossing per edge").edge = Some(e);
    }
    for (e, ends) in emb.graph.ends.iter().enumerate() {
        let cells = m.crossings[e].as_ref().expect("live").cells;
        for (slot, v) in [(0, ends[0]), (2, ends[1])] {
            let cell = m.cells[cells[slot]].as_mut().expect("live");
            debug_assert_eq!(cell.color, Color::Black);
            cell.vertex = Some(v);
        }
    }
    for i in 0..n {
        let c = m.segments[2 * i];
        m.cells[c].as_mut().expect("live").vertex = Some(i);
    }
    for (l, &v) in isolated.iter().enumerate() {
        let c = m.free_loops[l].inside;
        m.cells[c].as_mut().expect("live").vertex = Some(v);
    }
    Ok(m)
}
