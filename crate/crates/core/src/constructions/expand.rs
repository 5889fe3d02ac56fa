//! Weighted graphs to simple ones: an edge of weight `w > 1` becomes `w`
//! internally disjoint 2-paths between its ends.
//!
//! In a drawing the copies run as parallel lanes along the original edge,
//! lane 0 on its right, and every crossing of two edges becomes a grid of
//! `w(e) * w(f)` crossings. The middle vertex of each 2-path sits on the
//! first segment of the edge. Unit-weight edges are kept as they are.

use crate::drawing::{DartRef, Drawing, DrawingError, NodeKind};
use crate::graph::{Graph, WeightedGraph};

#[derive(Debug, Clone, Copy)]
enum Piece {
    /// The edge itself, unit weight.
    Whole(usize),
    /// Lane `k` of a heavy edge: first half up to the middle vertex, then
    /// the rest.
    Split { first: usize, second: usize },
}

struct Layout {
    graph: Graph,
    lanes: Vec<Vec<Piece>>,
    colors: Vec<crate::graph::EdgeColor>,
}

fn layout(g: &WeightedGraph, starts: Option<&[usize]>) -> Result<Layout, DrawingError> {
    let base = &g.graph;
    let mut graph = Graph::with_vertices(base.labels());
    let mut lanes = Vec::with_capacity(base.edge_count());
    let mut colors = Vec::new();
    for (e, &(a, b)) in base.edges().iter().enumerate() {
        let w = g.weight(e);
        let (u, v) = match starts {
            Some(s) if s[e] == b => (b, a),
            _ => (a, b),
        };
        if w == 1 {
            lanes.push(vec![Piece::Whole(graph.add_edge(u, v)?)]);
            colors.push(g.color(e));
            continue;
        }
        let mut row = Vec::new();
        for k in 0..w {
            let label = format!("{}~{}.{}", base.label(a), base.label(b), k);
            if graph.vertex(&label).is_some() {
                return Err(DrawingError::MalformedMap(format!("label {label} already in use")));
            }
            let x = graph.add_vertex(&label);
            let first = graph.add_edge(u, x)?;
            let second = graph.add_edge(x, v)?;
            colors.extend([g.color(e), g.color(e)]);
            row.push(Piece::Split { first, second });
        }
        lanes.push(row);
    }
    Ok(Layout { graph, lanes, colors })
}

/// The unit-weight graph of `g`.
pub fn expand_graph(g: &WeightedGraph) -> Result<WeightedGraph, DrawingError> {
    let l = layout(g, None)?;
    let m = l.graph.edge_count();
    Ok(WeightedGraph::new(l.graph, vec![1; m], l.colors)?)
}

/// Expands `g` and, if given, a drawing of it. The drawing's unit crossing
/// count equals the weighted count of the input drawing.
pub fn expand_weighted(
    g: &WeightedGraph,
    d: Option<&Drawing>,
) -> Result<(WeightedGraph, Option<Drawing>), DrawingError> {
    let Some(d) = d else { return Ok((expand_graph(g)?, None)) };
    if d.graph().labeled_edge_set() != g.graph.labeled_edge_set() || d.graph().labels() != g.graph.labels() {
        return Err(DrawingError::MalformedMap("drawing is not a drawing of the given graph".into()));
    }
    if d.graph().edges() != g.graph.edges() || d.weights() != g.weights() {
        return Err(DrawingError::MalformedMap("drawing and graph disagree on edge order or weights".into()));
    }
    let out = expand_drawing(d)?;
    let m = out.graph().edge_count();
    let wg = WeightedGraph::new(out.graph().clone(), vec![1; m], out.colors().to_vec())?;
    Ok((wg, Some(out)))
}

/// Expands a weighted drawing into a unit-weight one.
pub fn expand_drawing(d: &Drawing) -> Result<Drawing, DrawingError> {
    let report = d.is_good();
    if !report.passes() {
        return Err(DrawingError::MalformedMap("expansion needs a good drawing".into()));
    }
    let src = d.graph();
    let m = src.edge_count();
    let wg = WeightedGraph::new(src.clone(), d.weights().to_vec(), d.colors().to_vec())?;
    let starts: Vec<usize> = (0..m)
        .map(|e| match d.node_kind(d.chain(e)[0]) {
            NodeKind::Real { vertex } => vertex,
            NodeKind::Crossing { .. } => unreachable!("chains start at vertices"),
        })
        .collect();
    let lay = layout(&wg, Some(&starts))?;
    let graph = lay.graph;
    let w = |e: usize| d.weight(e) as usize;
    let heavy = |e: usize| w(e) > 1;

    // lane positions: `block[e][j]` is the lane index of chain node j of e
    // (for crossings, the first grid node of its block)
    let mut block: Vec<Vec<usize>> = Vec::with_capacity(m);
    for e in 0..m {
        let chain = d.chain(e);
        let mut pos = vec![0usize; chain.len()];
        let mut p = if heavy(e) { 2 } else { 1 };
        for j in 1..chain.len() - 1 {
            pos[j] = p;
            let NodeKind::Crossing { edges } = d.node_kind(chain[j]) else { unreachable!() };
            let f = if edges[0] == e { edges[1] } else { edges[0] };
            p += w(f);
        }
        pos[chain.len() - 1] = p;
        block.push(pos);
    }
    let lane_len = |e: usize| block[e][block[e].len() - 1] + 1;

    // node ids: original vertices, middle vertices, then grid crossings
    let mut nodes: Vec<NodeKind> = (0..graph.vertex_count()).map(|v| NodeKind::Real { vertex: v }).collect();
    let mut lane_nodes: Vec<Vec<Vec<usize>>> =
        (0..m).map(|e| (0..w(e)).map(|_| vec![usize::MAX; lane_len(e)]).collect()).collect();
    for e in 0..m {
        let chain = d.chain(e);
        let (first, last) = (chain[0], chain[chain.len() - 1]);
        let (vs, ve) = (kind_vertex(d, first), kind_vertex(d, last));
        for k in 0..w(e) {
            let lane = &mut lane_nodes[e][k];
            lane[0] = vs;
            *lane.last_mut().unwrap() = ve;
            if let Piece::Split { first, .. } = lay.lanes[e][k] {
                let (a, b) = graph.edge(first);
                lane[1] = if a == vs { b } else { a };
            }
        }
    }

    struct Grid {
        e: usize,
        f: usize,
        je: usize,
        jf: usize,
        north: bool,
    }
    let mut grids = Vec::new();
    for (c, [e, f]) in d.crossings() {
        let je = d.chain(e).iter().position(|&x| x == c).unwrap();
        let jf = d.chain(f).iter().position(|&x| x == c).unwrap();
        let rot = d.map().rotation(c);
        let e_out = d.dart(e, je, false);
        let i = rot.iter().position(|&x| x == e_out).unwrap();
        let north = rot[(i + 1) % 4] == d.dart(f, jf, false);
        grids.push(Grid { e, f, je, jf, north });
    }
    // rank of lane j of f along a lane of e, and of lane i of e along f
    let rank_e = |g: &Grid, j: usize| if g.north { w(g.f) - 1 - j } else { j };
    let rank_f = |g: &Grid, i: usize| if g.north { i } else { w(g.e) - 1 - i };
    for g in &grids {
        for i in 0..w(g.e) {
            for j in 0..w(g.f) {
                let x = nodes.len();
                nodes.push(NodeKind::Crossing { edges: [0, 0] });
                lane_nodes[g.e][i][block[g.e][g.je] + rank_e(g, j)] = x;
                lane_nodes[g.f][j][block[g.f][g.jf] + rank_f(g, i)] = x;
            }
        }
    }

    // chains, and the dart of each lane step
    let mut chains = vec![Vec::new(); graph.edge_count()];
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    // step p of lane (e,k) runs from lane[p] to lane[p+1]
    let step = |e: usize, k: usize, p: usize| -> (usize, usize) {
        match lay.lanes[e][k] {
            Piece::Whole(id) => (id, p),
            Piece::Split { first, second } => {
                if p == 0 {
                    (first, 0)
                } else {
                    (second, p - 1)
                }
            }
        }
    };
    for e in 0..m {
        for k in 0..w(e) {
            let lane = &lane_nodes[e][k];
            match lay.lanes[e][k] {
                Piece::Whole(id) => chains[id] = lane.clone(),
                Piece::Split { first, second } => {
                    chains[first] = lane[..2].to_vec();
                    chains[second] = lane[1..].to_vec();
                }
            }
            for p in 1..lane.len() - 1 {
                if matches!(nodes[lane[p]], NodeKind::Crossing { .. }) {
                    owners[lane[p]].push(step(e, k, p).0);
                }
            }
        }
    }
    for (x, o) in owners.iter().enumerate() {
        if let [a, b] = o[..] {
            nodes[x] = NodeKind::Crossing { edges: [a, b] };
        }
    }
    let fwd = |e: usize, k: usize, p: usize| {
        let (id, seg) = step(e, k, p);
        DartRef(id, seg, 0)
    };
    let back = |e: usize, k: usize, p: usize| {
        let (id, seg) = step(e, k, p - 1);
        DartRef(id, seg, 1)
    };

    let mut rotation: Vec<Vec<DartRef>> = vec![Vec::new(); nodes.len()];
    for n in 0..d.node_count() {
        let NodeKind::Real { vertex } = d.node_kind(n) else { continue };
        for &x in d.map().rotation(n) {
            let DartRef(e, seg, rev) = d.dart_ref(x);
            if rev == 0 && seg == 0 {
                rotation[vertex].extend((0..w(e)).map(|k| fwd(e, k, 0)));
            } else {
                let last = lane_len(e) - 1;
                rotation[vertex].extend((0..w(e)).rev().map(|k| back(e, k, last)));
            }
        }
    }
    for e in (0..m).filter(|&e| heavy(e)) {
        for k in 0..w(e) {
            let x = lane_nodes[e][k][1];
            rotation[x] = vec![back(e, k, 1), fwd(e, k, 1)];
        }
    }
    for g in &grids {
        for i in 0..w(g.e) {
            for j in 0..w(g.f) {
                let pe = block[g.e][g.je] + rank_e(g, j);
                let pf = block[g.f][g.jf] + rank_f(g, i);
                let x = lane_nodes[g.e][i][pe];
                let (north, south) =
                    if g.north { (fwd(g.f, j, pf), back(g.f, j, pf)) } else { (back(g.f, j, pf), fwd(g.f, j, pf)) };
                rotation[x] = vec![fwd(g.e, i, pe), north, back(g.e, i, pe), south];
            }
        }
    }

    // the outer face lies right of lane 0 (forward) or left of the last lane
    let outer = d
        .outer_darts()
        .iter()
        .map(|&x| {
            let DartRef(e, seg, rev) = d.dart_ref(x);
            let p = block[e][seg + 1];
            if rev == 0 {
                fwd(e, 0, p - 1)
            } else {
                back(e, w(e) - 1, p)
            }
        })
        .collect();

    let colors = lay.colors;
    Ok(Drawing::new(graph, nodes, chains, rotation, outer, None)?.with_colors(colors))
}

fn kind_vertex(d: &Drawing, n: usize) -> usize {
    match d.node_kind(n) {
        NodeKind::Real { vertex } => vertex,
        NodeKind::Crossing { .. } => unreachable!("chains end at vertices"),
    }
}
