//! Subdividing a drawing so that every crossing sits on a short edge.
//!
//! Each edge gets one new vertex just before and one just after each of its
//! crossings. Afterwards every crossed edge is crossed exactly once, and
//! every edge is drawn as a chain of at most two strands.

use crate::drawing::{DartRef, Drawing, DrawingError, NodeKind};
use crate::graph::Graph;

#[derive(Debug, Clone)]
pub struct Subdivision {
    pub graph: Graph,
    pub drawing: Drawing,
    /// Number of subdivision vertices placed on each original edge.
    pub per_edge: Vec<usize>,
    /// Original edge of every new edge.
    pub origin: Vec<usize>,
}

impl Subdivision {
    /// Number of original edges that received subdivision vertices.
    pub fn subdivided_edges(&self) -> usize {
        self.per_edge.iter().filter(|&&k| k > 0).count()
    }

    /// Largest number of subdivision vertices on one original edge.
    pub fn max_per_edge(&self) -> usize {
        self.per_edge.iter().copied().max().unwrap_or(0)
    }
}

pub fn subdivide_for_straightening(d: &Drawing) -> Result<Subdivision, DrawingError> {
    if !d.is_good().passes() {
        return Err(DrawingError::MalformedMap("subdivision needs a good drawing".into()));
    }
    let src = d.graph();
    let m = src.edge_count();
    let mut graph = Graph::with_vertices(src.labels());
    let mut nodes: Vec<NodeKind> = (0..d.node_count()).map(|n| d.node_kind(n)).collect();
    // pieces[e][i] is new edge E_i of e; E_{2j-1} carries the j-th crossing
    let mut pieces: Vec<Vec<usize>> = Vec::with_capacity(m);
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut origin = Vec::new();
    let mut weights = Vec::new();
    let mut colors = Vec::new();
    let mut per_edge = Vec::with_capacity(m);
    let mut sub_nodes: Vec<Vec<usize>> = Vec::with_capacity(m);
    for e in 0..m {
        let chain = d.chain(e);
        let r = chain.len() - 2;
        let vertex = |n: usize| match d.node_kind(n) {
            NodeKind::Real { vertex } => vertex,
            NodeKind::Crossing { .. } => unreachable!("chains end at vertices"),
        };
        // s[0] = start, s[1..=2r] new, s[2r+1] = end (as graph vertices)
        let mut s = vec![vertex(chain[0])];
        let mut s_nodes = vec![chain[0]];
        let (a, b) = src.edge(e);
        for i in 1..=2 * r {
            let v = graph.add_vertex(&format!("{}~{}/{}", src.label(a), src.label(b), i));
            s.push(v);
            s_nodes.push(nodes.len());
            nodes.push(NodeKind::Real { vertex: v });
        }
        s.push(vertex(chain[r + 1]));
        s_nodes.push(chain[r + 1]);
        let mut row = Vec::with_capacity(2 * r + 1);
        for i in 0..=2 * r {
            let id = graph.add_edge(s[i], s[i + 1])?;
            row.push(id);
            origin.push(e);
            weights.push(d.weight(e));
            colors.push(d.colors()[e]);
            let c = if i % 2 == 1 {
                vec![s_nodes[i], chain[i.div_ceil(2)], s_nodes[i + 1]]
            } else {
                vec![s_nodes[i], s_nodes[i + 1]]
            };
            chains.push(c);
        }
        pieces.push(row);
        per_edge.push(2 * r);
        sub_nodes.push(s_nodes);
    }
    // crossings now lie on the odd pieces
    for (x, [e, f]) in d.crossings() {
        let piece = |g: usize| {
            let j = d.chain(g).iter().position(|&y| y == x).unwrap();
            pieces[g][2 * j - 1]
        };
        nodes[x] = NodeKind::Crossing { edges: [piece(e), piece(f)] };
    }

    // old dart (e, seg, rev) -> new dart with the same tail
    let map_dart = |r: DartRef| -> DartRef {
        let DartRef(e, seg, rev) = r;
        let k = d.chain(e).len() - 2;
        if rev == 0 {
            if seg == 0 {
                DartRef(pieces[e][0], 0, 0)
            } else {
                DartRef(pieces[e][2 * seg - 1], 1, 0)
            }
        } else if seg == k {
            DartRef(pieces[e][2 * k], 0, 1)
        } else {
            DartRef(pieces[e][2 * seg + 1], 0, 1)
        }
    };
    let mut rotation: Vec<Vec<DartRef>> = vec![Vec::new(); nodes.len()];
    for n in 0..d.node_count() {
        rotation[n] = d.map().rotation(n).iter().map(|&x| map_dart(d.dart_ref(x))).collect();
    }
    for e in 0..m {
        let s_nodes = &sub_nodes[e];
        for i in 1..s_nodes.len() - 1 {
            let before = pieces[e][i - 1];
            let last_seg = chains[before].len() - 2;
            rotation[s_nodes[i]] = vec![DartRef(before, last_seg, 1), DartRef(pieces[e][i], 0, 0)];
        }
    }
    let outer = d.outer_darts().iter().map(|&x| map_dart(d.dart_ref(x))).collect();
    let drawing = Drawing::new(graph.clone(), nodes, chains, rotation, outer, Some(weights))?.with_colors(colors);
    let bound = 2 * m;
    assert!(per_edge.iter().all(|&k| k <= bound), "subdivision exceeds 2|E| on an edge");
    Ok(Subdivision { graph, drawing, per_edge, origin })
}
