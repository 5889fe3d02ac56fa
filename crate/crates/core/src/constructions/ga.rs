//! The weighted gadget graph built from a wiring diagram.
//!
//! Every wire `l_i` is tripled: `l'_i` just above it becomes the blue path
//! `P_i` from `u_i` to `y_i`, `l''_i` just below becomes the blue path `Q_i`
//! from `v_i` to `z_i`, and `l_i` itself is the red edge `e_i` from `a_i` to
//! `b_i`. All crossings between blue curves become degree-4 vertices. A black
//! cycle through the ends and two apexes `a`, `b` close off the drawing.
//!
//! In the canonical drawing the diagram is mirrored vertically (wire 1 runs
//! along the bottom at the left) so that the ends along the left side read
//! `v_1 a_1 u_1 v_2 ...` from bottom to top, and along the right side
//! `y_1 b_1 z_1 y_2 ...` from top to bottom, which is the order of the cycle.

use serde::Serialize;

use crate::arrangement::WiringDiagram;
use crate::drawing::{Drawing, DrawingError, Point, PolylineDrawing};
use crate::graph::{EdgeColor, Graph, WeightedGraph};

const ROW: f64 = 10.0;
const LAYER: f64 = 10.0;
const OFFSET: f64 = 1.0;
const APEX: f64 = 10.0;

/// Weight of the black edges.
pub fn black_weight(s: usize, m: u64) -> u64 {
    pcr_value(s, m) + 2 * m
}

/// `C(s,2)(1+4m)`.
pub fn pcr_value(s: usize, m: u64) -> u64 {
    let pairs = (s * s.saturating_sub(1) / 2) as u64;
    pairs * (1 + 4 * m)
}

/// `C(s,2)(1+4m) + m`, a lower bound on the rectilinear crossing number when
/// the arrangement is not stretchable.
pub fn rcr_lower_bound(s: usize, m: u64) -> u64 {
    pcr_value(s, m) + m
}

#[derive(Debug, Clone)]
pub struct GaInstance {
    pub s: usize,
    pub m: u64,
    pub graph: WeightedGraph,
    pub geometry: PolylineDrawing,
    pub drawing: Drawing,
    /// Vertices of the black cycle in order.
    pub cycle: Vec<usize>,
    /// `red[i]` is the edge `e_{i+1}`.
    pub red: Vec<usize>,
    /// Edges of `P_{i+1}` and `Q_{i+1}`, in order from the left.
    pub upper: Vec<Vec<usize>>,
    pub lower: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub black: usize,
    pub red_red: usize,
    pub red_blue: usize,
    pub blue_blue: usize,
    pub weighted: u64,
}

impl GaInstance {
    /// Crossings of the canonical drawing by color.
    pub fn tally(&self) -> Tally {
        let d = &self.drawing;
        let colors = self.graph.colors();
        let mut t = Tally { black: 0, red_red: 0, red_blue: 0, blue_blue: 0, weighted: d.weighted_crossing_count() };
        for (_, [e, f]) in d.crossings() {
            let (ce, cf) = (colors[e], colors[f]);
            if ce == EdgeColor::Black || cf == EdgeColor::Black {
                t.black += 1;
            }
            match (ce, cf) {
                (EdgeColor::Red, EdgeColor::Red) => t.red_red += 1,
                (EdgeColor::Red, EdgeColor::Blue) | (EdgeColor::Blue, EdgeColor::Red) => t.red_blue += 1,
                (EdgeColor::Blue, EdgeColor::Blue) => t.blue_blue += 1,
                _ => {}
            }
        }
        t
    }

    /// Whether, for all `i != j`, the ends of `e_i` alternate along the cycle
    /// with those of `e_j`, `P_j` and `Q_j`.
    pub fn ends_alternate(&self) -> bool {
        let g = &self.graph.graph;
        let pos = |label: String| -> usize {
            let v = g.vertex(&label).expect("gadget vertex");
            self.cycle.iter().position(|&c| c == v).expect("vertex on the cycle")
        };
        let interleave = |a: (usize, usize), b: (usize, usize)| {
            let inside = |x: usize| a.0.min(a.1) < x && x < a.0.max(a.1);
            inside(b.0) != inside(b.1)
        };
        (1..=self.s).all(|i| {
            let e = (pos(format!("a{i}")), pos(format!("b{i}")));
            (1..=self.s).filter(|&j| j != i).all(|j| {
                [("a", "b"), ("u", "y"), ("v", "z")]
                    .iter()
                    .all(|(l, r)| interleave(e, (pos(format!("{l}{j}")), pos(format!("{r}{j}")))))
            })
        })
    }
}

/// Copy of a wire: `+1` above (blue, upper), `0` the wire (red), `-1` below.
type Copy = i8;

fn copy_name(c: Copy) -> &'static str {
    if c > 0 {
        "p"
    } else {
        "q"
    }
}

pub fn build_ga(arr: &WiringDiagram, m: u64) -> Result<GaInstance, DrawingError> {
    assert!(m >= 1, "m must be positive");
    let s = arr.wires();
    let layers = arr.crossing_count();
    let cols = layers.max(1);
    let width = cols as f64 * LAYER;
    // mirrored rows: diagram row r is drawn at height (r - 1) * ROW
    let row_of: Vec<Vec<usize>> = (0..=cols)
        .map(|k| {
            let rows = arr.rows_at(k.min(layers));
            let mut r = vec![0; s + 1];
            for (idx, &w) in rows.iter().enumerate() {
                r[w] = idx;
            }
            r
        })
        .collect();
    let y_at = |k: usize, w: usize, c: Copy| row_of[k][w] as f64 * ROW + c as f64 * OFFSET;
    let point_at = |k: usize, w: usize, c: Copy| -> Point { (k as f64 * LAYER, y_at(k, w, c)) };

    let mut g = Graph::new();
    let mut weights = Vec::new();
    let mut colors = Vec::new();
    let mut positions: Vec<Point> = Vec::new();
    let mut bends: Vec<Vec<Point>> = Vec::new();
    let add_vertex = |g: &mut Graph, positions: &mut Vec<Point>, label: String, p: Point| -> usize {
        let v = g.add_vertex(&label);
        positions.push(p);
        v
    };
    let black = black_weight(s, m);

    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 1..=s {
        for (name, c) in [("v", -1), ("a", 0), ("u", 1)] {
            left.push(add_vertex(&mut g, &mut positions, format!("{name}{i}"), point_at(0, i, c)));
        }
    }
    for i in 1..=s {
        for (name, c) in [("y", 1), ("b", 0), ("z", -1)] {
            right.push(add_vertex(&mut g, &mut positions, format!("{name}{i}"), point_at(cols, i, c)));
        }
    }
    let mid = (s.saturating_sub(1)) as f64 * ROW / 2.0;
    let apex_a = add_vertex(&mut g, &mut positions, "a".into(), (-APEX, mid));
    let apex_b = add_vertex(&mut g, &mut positions, "b".into(), (width + APEX, mid));

    let mut add_edge = |g: &mut Graph, u: usize, v: usize, w: u64, c: EdgeColor, b: Vec<Point>| -> usize {
        let e = g.add_edge(u, v).expect("gadget edges are simple");
        weights.push(w);
        colors.push(c);
        bends.push(b);
        e
    };

    // black cycle: up the left side, over the top, down the right, back below
    let mut cycle = left.clone();
    cycle.extend(right.iter().copied());
    for w in left.windows(2).chain(right.windows(2)) {
        add_edge(&mut g, w[0], w[1], black, EdgeColor::Black, Vec::new());
    }
    let top = s as f64 * ROW;
    let bottom = -ROW;
    add_edge(&mut g, left[3 * s - 1], right[0], black, EdgeColor::Black, vec![(0.0, top), (width, top)]);
    add_edge(&mut g, right[3 * s - 1], left[0], black, EdgeColor::Black, vec![(width, bottom), (0.0, bottom)]);
    for &v in &left {
        add_edge(&mut g, apex_a, v, black, EdgeColor::Black, Vec::new());
    }
    for &v in &right {
        add_edge(&mut g, apex_b, v, black, EdgeColor::Black, Vec::new());
    }

    // red edges follow their wires
    let mut red = Vec::new();
    for i in 1..=s {
        let b: Vec<Point> = (1..cols).map(|k| point_at(k, i, 0)).collect();
        red.push(add_edge(&mut g, left[3 * (i - 1) + 1], right[3 * (i - 1) + 1], 1, EdgeColor::Red, b));
    }

    // blue crossings, as (x, vertex) per copy
    let mut stops: Vec<Vec<(f64, usize)>> = vec![Vec::new(); 2 * (s + 1)];
    let slot = |w: usize, c: Copy| 2 * w + usize::from(c > 0);
    for (k, (i, j)) in arr.crossing_list() {
        for ci in [1, -1] {
            for cj in [1, -1] {
                let (a0, a1) = (y_at(k, i, ci), y_at(k + 1, i, ci));
                let (b0, b1) = (y_at(k, j, cj), y_at(k + 1, j, cj));
                let t = (b0 - a0) / ((a1 - a0) - (b1 - b0));
                let p = ((k as f64 + t) * LAYER, a0 + t * (a1 - a0));
                let label = format!("c{i}{}_{j}{}", copy_name(ci), copy_name(cj));
                let v = add_vertex(&mut g, &mut positions, label, p);
                stops[slot(i, ci)].push((p.0, v));
                stops[slot(j, cj)].push((p.0, v));
            }
        }
    }
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for i in 1..=s {
        for c in [1, -1] {
            let start = left[3 * (i - 1) + if c > 0 { 2 } else { 0 }];
            let end = right[3 * (i - 1) + if c > 0 { 0 } else { 2 }];
            let mut path = vec![(0.0, start)];
            let mut mids = stops[slot(i, c)].clone();
            mids.sort_by(|p, q| p.0.total_cmp(&q.0));
            path.extend(mids);
            path.push((width, end));
            let mut edges = Vec::new();
            for w in path.windows(2) {
                let b: Vec<Point> = (1..cols)
                    .filter(|&k| (k as f64 * LAYER) > w[0].0 && (k as f64 * LAYER) < w[1].0)
                    .map(|k| point_at(k, i, c))
                    .collect();
                edges.push(add_edge(&mut g, w[0].1, w[1].1, m, EdgeColor::Blue, b));
            }
            if c > 0 {
                upper.push(edges);
            } else {
                lower.push(edges);
            }
        }
    }

    let graph = WeightedGraph::new(g.clone(), weights.clone(), colors.clone())?;
    let geometry = PolylineDrawing { graph: g, positions, bends, weights: Some(weights) };
    let drawing = geometry.to_drawing()?.with_colors(colors);
    Ok(GaInstance { s, m, graph, geometry, drawing, cycle, red, upper, lower })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{new_wiring, non_pappus_9};

    #[test]
    fn two_wires() {
        let ga = build_ga(&new_wiring(2, &[1]).unwrap(), 1).unwrap();
        assert_eq!(black_weight(2, 1), 7);
        let t = ga.tally();
        assert_eq!(t, Tally { black: 0, red_red: 1, red_blue: 4, blue_blue: 0, weighted: 5 });
        assert_eq!(ga.graph.graph.vertex_count(), 6 * 2 + 2 + 4);
        assert!(ga.drawing.is_good().passes());
        assert!(ga.ends_alternate());
    }

    #[test]
    fn non_pappus_counts() {
        let arr = non_pappus_9();
        for m in [1, 2, 3] {
            let ga = build_ga(&arr, m).unwrap();
            let t = ga.tally();
            assert_eq!(t.weighted, pcr_value(9, m));
            assert_eq!((t.black, t.red_red, t.red_blue, t.blue_blue), (0, 36, 144, 0));
        }
        assert_eq!(black_weight(9, 1), 182);
    }

    #[test]
    fn formulas() {
        assert_eq!(pcr_value(9, 1), 180);
        assert_eq!(pcr_value(2, 1), 5);
        assert_eq!(pcr_value(1, 7), 0);
        assert_eq!(rcr_lower_bound(9, 1), 181);
        assert_eq!(rcr_lower_bound(9, 2), 326);
        assert_eq!(rcr_lower_bound(2, 1), 6);
    }
}
