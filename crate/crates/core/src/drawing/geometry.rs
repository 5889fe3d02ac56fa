//! Building drawings from polyline geometry.
//!
//! Coordinates only serve to derive the combinatorial map: intersections
//! become crossing nodes and rotations come from the directions of the
//! segments leaving each node. Inputs are assumed to be in general position
//! (no three curves through a point, no crossing at a bend).

use std::cmp::Ordering;
use std::f64::consts::PI;

use super::{DartRef, Drawing, DrawingError, NodeKind};
use crate::graph::Graph;

pub type Point = (f64, f64);

const EPS: f64 = 1e-9;

/// A graph with a point per vertex and a polyline per edge.
#[derive(Debug, Clone)]
pub struct PolylineDrawing {
    pub graph: Graph,
    pub positions: Vec<Point>,
    /// Interior bend points of each edge, listed from the edge's first
    /// endpoint to its second.
    pub bends: Vec<Vec<Point>>,
    pub weights: Option<Vec<u64>>,
}

/// Proper intersection of segments `p0p1` and `q0q1`: parameters along both,
/// strictly inside each.
pub fn segment_intersection(p0: Point, p1: Point, q0: Point, q1: Point) -> Option<(f64, f64)> {
    let r = (p1.0 - p0.0, p1.1 - p0.1);
    let s = (q1.0 - q0.0, q1.1 - q0.1);
    let denom = r.0 * s.1 - r.1 * s.0;
    if denom.abs() < 1e-15 {
        return None;
    }
    let qp = (q0.0 - p0.0, q0.1 - p0.1);
    let t = (qp.0 * s.1 - qp.1 * s.0) / denom;
    let u = (qp.0 * r.1 - qp.1 * r.0) / denom;
    (t > EPS && t < 1.0 - EPS && u > EPS && u < 1.0 - EPS).then_some((t, u))
}

fn angle(from: Point, to: Point) -> f64 {
    let a = (to.1 - from.1).atan2(to.0 - from.0);
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

struct Event {
    param: f64,
    node: usize,
    /// direction of travel along the edge at the crossing
    heading: f64,
}

impl PolylineDrawing {
    /// Straight-line drawing: no bends.
    pub fn straight(graph: Graph, positions: Vec<Point>) -> Self {
        let m = graph.edge_count();
        Self { graph, positions, bends: vec![Vec::new(); m], weights: None }
    }

    pub fn polyline(&self, e: usize) -> Vec<Point> {
        let (u, v) = self.graph.edge(e);
        let mut pts = vec![self.positions[u]];
        pts.extend(self.bends[e].iter().copied());
        pts.push(self.positions[v]);
        pts
    }

    /// Planarizes the geometry into a [`Drawing`].
    pub fn to_drawing(&self) -> Result<Drawing, DrawingError> {
        let g = &self.graph;
        let m = g.edge_count();
        let polys: Vec<Vec<Point>> = (0..m).map(|e| self.polyline(e)).collect();

        let mut nodes: Vec<NodeKind> = (0..g.vertex_count()).map(|v| NodeKind::Real { vertex: v }).collect();
        let mut node_pos: Vec<Point> = self.positions.clone();
        let mut events: Vec<Vec<Event>> = (0..m).map(|_| Vec::new()).collect();

        for e in 0..m {
            for f in e..m {
                for i in 0..polys[e].len() - 1 {
                    let j0 = if e == f { i + 2 } else { 0 };
                    for j in j0..polys[f].len() - 1 {
                        let (p0, p1) = (polys[e][i], polys[e][i + 1]);
                        let (q0, q1) = (polys[f][j], polys[f][j + 1]);
                        if let Some((t, u)) = segment_intersection(p0, p1, q0, q1) {
                            let x = nodes.len();
                            nodes.push(NodeKind::Crossing { edges: [e, f] });
                            node_pos.push((p0.0 + t * (p1.0 - p0.0), p0.1 + t * (p1.1 - p0.1)));
                            events[e].push(Event { param: i as f64 + t, node: x, heading: angle(p0, p1) });
                            events[f].push(Event { param: j as f64 + u, node: x, heading: angle(q0, q1) });
                        }
                    }
                }
            }
        }

        // darts with their outgoing angle, per node
        let mut at_node: Vec<Vec<(f64, DartRef)>> = vec![Vec::new(); nodes.len()];
        let mut chains = Vec::with_capacity(m);
        for e in 0..m {
            let (u, v) = g.edge(e);
            events[e].sort_by(|a, b| a.param.partial_cmp(&b.param).unwrap_or(Ordering::Equal));
            let mut chain = vec![u];
            chain.extend(events[e].iter().map(|ev| ev.node));
            chain.push(v);
            let poly = &polys[e];
            let k = chain.len() - 1; // number of strands
            at_node[u].push((angle(poly[0], poly[1]), DartRef(e, 0, 0)));
            at_node[v].push((angle(poly[poly.len() - 1], poly[poly.len() - 2]), DartRef(e, k - 1, 1)));
            for (idx, ev) in events[e].iter().enumerate() {
                let seg = idx + 1; // strand leaving the crossing forward
                at_node[ev.node].push((ev.heading, DartRef(e, seg, 0)));
                at_node[ev.node].push(((ev.heading + PI) % (2.0 * PI), DartRef(e, seg - 1, 1)));
            }
            chains.push(chain);
        }

        let mut rotation = Vec::with_capacity(nodes.len());
        for darts in &mut at_node {
            darts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
            rotation.push(darts.iter().map(|x| x.1).collect::<Vec<_>>());
        }

        // outer dart per component: at the leftmost node, the first dart
        // counterclockwise from due west
        let comp = components(&nodes, &chains);
        let mut outer = Vec::new();
        let mut done = std::collections::HashSet::new();
        let mut order: Vec<usize> = (0..nodes.len()).filter(|&n| !at_node[n].is_empty()).collect();
        order.sort_by(|&a, &b| node_pos[a].partial_cmp(&node_pos[b]).unwrap_or(Ordering::Equal));
        for n in order {
            if !done.insert(comp[n]) {
                continue;
            }
            let darts = &at_node[n];
            let pick = darts.iter().find(|x| x.0 > PI).unwrap_or(&darts[0]);
            outer.push(pick.1);
        }

        Drawing::new(g.clone(), nodes, chains, rotation, outer, self.weights.clone())
    }
}

fn components(nodes: &[NodeKind], chains: &[Vec<usize>]) -> Vec<usize> {
    let mut uf = crate::planar_map::UnionFind::new(nodes.len());
    for c in chains {
        for w in c.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    (0..nodes.len()).map(|n| uf.find(n)).collect()
}
