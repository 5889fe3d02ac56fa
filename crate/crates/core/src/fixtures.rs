//! Small drawings used by the acceptance suite, the tests and the CLI.

use crate::drawing::{Drawing, PolylineDrawing};
use crate::graph::{complete, Graph};

fn straight(g: Graph, pos: &[(f64, f64)]) -> Drawing {
    PolylineDrawing::straight(g, pos.to_vec()).to_drawing().expect("fixture geometry")
}

/// K4 as a triangle with a center point, no crossings.
pub fn straight_k4() -> Drawing {
    straight(complete(4), &[(0.0, 0.0), (4.0, 0.0), (2.0, 3.5), (2.0, 1.2)])
}

/// K5 with straight edges and a single crossing.
pub fn straight_k5() -> Drawing {
    straight(complete(5), &[(0.0, 0.0), (6.0, 0.0), (3.0, 6.0), (2.6, 1.6), (3.3, 2.2)])
}

/// Two disjoint 2-paths `p1 u p2` and `q1 v q2` crossing twice so that only
/// `u` and `v` see the unbounded face.
pub fn clam() -> Drawing {
    let mut g = Graph::with_vertices(&["u", "v", "p1", "p2", "q1", "q2"]);
    for (a, b) in [(0, 2), (0, 3), (1, 4), (1, 5)] {
        g.add_edge(a, b).unwrap();
    }
    PolylineDrawing {
        graph: g,
        positions: vec![(0.0, 0.0), (4.0, 0.0), (2.4, 0.55), (2.4, -0.55), (1.6, 0.55), (1.6, -0.55)],
        bends: vec![vec![(1.0, 3.0)], vec![(1.0, -3.0)], vec![(3.0, 3.0)], vec![(3.0, -3.0)]],
        weights: None,
    }
    .to_drawing()
    .expect("fixture geometry")
}

/// An edge whose polyline loops over itself once.
pub fn self_crossing() -> Drawing {
    let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
    PolylineDrawing {
        graph: g,
        positions: vec![(0.0, 0.0), (4.0, 0.0)],
        bends: vec![vec![(3.0, 0.0), (2.0, 2.0), (1.5, -1.0)]],
        weights: None,
    }
    .to_drawing()
    .expect("fixture geometry")
}

/// Edges `uv` and `uw` leave `u` and cross each other.
pub fn adjacent_crossing() -> Drawing {
    let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
    PolylineDrawing {
        graph: g,
        positions: vec![(0.0, 0.0), (4.0, 1.0), (4.0, -1.0)],
        bends: vec![vec![(2.0, -1.0)], vec![(2.0, 1.0)]],
        weights: None,
    }
    .to_drawing()
    .expect("fixture geometry")
}

/// Two independent edges crossing twice.
pub fn double_crossing() -> Drawing {
    let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
    PolylineDrawing {
        graph: g,
        positions: vec![(0.0, 0.0), (4.0, 0.0), (1.0, -1.0), (3.0, -1.0)],
        bends: vec![vec![], vec![(1.0, 1.0), (3.0, 1.0)]],
        weights: None,
    }
    .to_drawing()
    .expect("fixture geometry")
}

/// Two crossing edges with weights 2 and 3.
pub fn weighted_pair() -> Drawing {
    let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
    PolylineDrawing {
        graph: g,
        positions: vec![(0.0, 0.0), (2.0, 2.0), (0.0, 2.0), (2.0, 0.0)],
        bends: vec![vec![], vec![]],
        weights: Some(vec![2, 3]),
    }
    .to_drawing()
    .expect("fixture geometry")
}

/// A straight-line drawing of a random connected graph on `n` vertices
/// with `extra` edges beyond a spanning tree, points in general position.
pub fn random_straight<R: rand::Rng>(rng: &mut R, n: usize, extra: usize) -> Drawing {
    random_geometry(rng, n, extra).to_drawing().expect("fixture geometry")
}

/// The point set and graph behind [`random_straight`].
pub fn random_geometry<R: rand::Rng>(rng: &mut R, n: usize, extra: usize) -> PolylineDrawing {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let mut free: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|p| !edges.contains(p)).collect();
    for _ in 0..extra.min(free.len()) {
        let i = rng.gen_range(0..free.len());
        edges.push(free.swap_remove(i));
    }
    loop {
        let pos: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0))).collect();
        if general_position(&pos) {
            return PolylineDrawing::straight(Graph::from_edges(n, &edges).unwrap(), pos);
        }
    }
}

fn general_position(pos: &[(f64, f64)]) -> bool {
    let n = pos.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (p, q, r) = (pos[a], pos[b], pos[c]);
                let area = (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0);
                if area.abs() < 1e-3 {
                    return false;
                }
            }
        }
    }
    true
}
