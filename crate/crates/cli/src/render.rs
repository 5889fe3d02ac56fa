//! SVG and DOT output. Layout is cosmetic only.

use std::fmt::Write;

use pcr_core::arrangement::WiringDiagram;
use pcr_core::{Drawing, EdgeColor, NodeKind, Point, PolylineDrawing, WeightedGraph};

const SCALE: f64 = 200.0;
const MARGIN: f64 = 30.0;

fn stroke(c: EdgeColor) -> &'static str {
    match c {
        EdgeColor::Black => "#000000",
        EdgeColor::Blue => "#1f5fbf",
        EdgeColor::Red => "#c8281e",
        EdgeColor::Plain => "#555555",
    }
}

fn width(w: u64) -> f64 {
    1.0 + (w as f64).log2().min(4.0)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

struct Canvas {
    body: String,
    min: Point,
    max: Point,
}

impl Canvas {
    fn new(points: &[Point]) -> Self {
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min = (min.0.min(p.0), min.1.min(p.1));
            max = (max.0.max(p.0), max.1.max(p.1));
        }
        if points.is_empty() {
            min = (0.0, 0.0);
            max = (1.0, 1.0);
        }
        Self { body: String::new(), min, max }
    }

    fn span(&self) -> f64 {
        (self.max.0 - self.min.0).max(self.max.1 - self.min.1).max(1e-9)
    }

    /// Flips y so that larger y is drawn higher.
    fn at(&self, p: Point) -> Point {
        let s = SCALE * 4.0 / self.span();
        (MARGIN + (p.0 - self.min.0) * s, MARGIN + (self.max.1 - p.1) * s)
    }

    fn polyline(&mut self, pts: &[Point], color: &str, w: f64, title: &str) {
        let coords: Vec<String> = pts.iter().map(|&p| self.at(p)).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="{w:.2}"><title>{}</title></polyline>"#,
            coords.join(" "),
            escape(title)
        );
    }

    fn dot(&mut self, p: Point, label: Option<&str>) {
        let (x, y) = self.at(p);
        let _ = writeln!(self.body, r##"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="#ffffff" stroke="#000000"/>"##);
        if let Some(l) = label {
            let _ = writeln!(
                self.body,
                r#"<text x="{:.2}" y="{:.2}" font-size="11">{}</text>"#,
                x + 5.0,
                y - 5.0,
                escape(l)
            );
        }
    }

    fn finish(self) -> String {
        let s = SCALE * 4.0 / self.span();
        let w = (self.max.0 - self.min.0) * s + 2.0 * MARGIN;
        let h = (self.max.1 - self.min.1) * s + 2.0 * MARGIN;
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.2} {h:.2}\">\n<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n{}</svg>\n",
            self.body
        )
    }
}

/// Wires as polylines over unit-width layers; each switch is an X.
pub fn wiring_svg(w: &WiringDiagram) -> String {
    let s = w.wires();
    let layers = w.crossing_count();
    let mut ys: Vec<Vec<f64>> = vec![Vec::with_capacity(layers + 1); s + 1];
    for layer in 0..=layers {
        for (r, &wire) in w.rows_at(layer).iter().enumerate() {
            ys[wire].push(-(r as f64));
        }
    }
    let right = layers as f64 + 1.0;
    let mut c = Canvas::new(&[(-1.0, 0.0), (right, 1.0 - s as f64)]);
    for (wire, ys) in ys.iter().enumerate().skip(1) {
        let mut pts = vec![(-1.0, ys[0])];
        pts.extend(ys.iter().enumerate().map(|(i, &y)| (i as f64, y)));
        pts.push((right, ys[layers]));
        c.polyline(&pts, "#000000", 1.5, &format!("wire {wire}"));
        c.dot(pts[0], Some(&wire.to_string()));
    }
    c.finish()
}

/// A drawing with its own geometry.
pub fn geometry_svg(g: &PolylineDrawing, weights: &[u64], colors: &[EdgeColor]) -> String {
    let mut pts = g.positions.clone();
    pts.extend(g.bends.iter().flatten().copied());
    let mut c = Canvas::new(&pts);
    for e in 0..g.graph.edge_count() {
        let (a, b) = g.graph.edge(e);
        let title = format!("{}-{} w={}", g.graph.label(a), g.graph.label(b), weights[e]);
        c.polyline(&g.polyline(e), stroke(colors[e]), width(weights[e]), &title);
    }
    for (v, &p) in g.positions.iter().enumerate() {
        c.dot(p, Some(g.graph.label(v)));
    }
    c.finish()
}

/// Barycentric placement of the planarization: the outer boundary of each
/// component on a circle, every other node at the mean of its neighbors.
pub fn layout(d: &Drawing) -> Vec<Point> {
    let map = d.map();
    let n = map.node_count();
    let (count, comp) = map.components();
    let mut pos = vec![(0.0, 0.0); n];
    let mut fixed = vec![false; n];
    for c in 0..count {
        let center = (3.0 * c as f64, 0.0);
        let outer = d.outer_darts().iter().copied().find(|&x| comp[map.tail(x)] == c);
        let mut ring: Vec<usize> = Vec::new();
        if let Some(x) = outer {
            for y in map.orbit(x) {
                let t = map.tail(y);
                if !ring.contains(&t) {
                    ring.push(t);
                }
            }
        }
        let k = ring.len().max(1) as f64;
        for (i, &v) in ring.iter().enumerate() {
            let a = std::f64::consts::TAU * i as f64 / k;
            pos[v] = (center.0 + a.cos(), center.1 - a.sin());
            fixed[v] = true;
        }
        for v in 0..n {
            if comp[v] == c && !fixed[v] {
                pos[v] = center;
            }
        }
    }
    for _ in 0..2000 {
        for v in 0..n {
            if fixed[v] || map.degree(v) == 0 {
                continue;
            }
            let rot = map.rotation(v);
            let (sx, sy) = rot.iter().fold((0.0, 0.0), |(sx, sy), &x| {
                let p = pos[map.head(x)];
                (sx + p.0, sy + p.1)
            });
            pos[v] = (sx / rot.len() as f64, sy / rot.len() as f64);
        }
    }
    pos
}

pub fn drawing_svg(d: &Drawing) -> String {
    let pos = layout(d);
    let mut c = Canvas::new(&pos);
    let g = d.graph();
    for e in 0..g.edge_count() {
        let pts: Vec<Point> = d.chain(e).iter().map(|&v| pos[v]).collect();
        let (a, b) = g.edge(e);
        let title = format!("{}-{} w={}", g.label(a), g.label(b), d.weight(e));
        c.polyline(&pts, stroke(d.colors()[e]), width(d.weight(e)), &title);
    }
    for (v, &p) in pos.iter().enumerate() {
        if let NodeKind::Real { vertex } = d.node_kind(v) {
            c.dot(p, Some(g.label(vertex)));
        }
    }
    c.finish()
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn color_attr(c: EdgeColor) -> String {
    match c {
        EdgeColor::Plain => String::new(),
        _ => format!(", color={}", quote(stroke(c))),
    }
}

pub fn graph_dot(g: &WeightedGraph) -> String {
    let mut out = String::from("graph G {\n");
    for l in g.graph.labels() {
        let _ = writeln!(out, "  {};", quote(l));
    }
    for (e, &(a, b)) in g.graph.edges().iter().enumerate() {
        let _ = writeln!(
            out,
            "  {} -- {} [label={}{}];",
            quote(g.graph.label(a)),
            quote(g.graph.label(b)),
            g.weight(e),
            color_attr(g.color(e))
        );
    }
    out.push_str("}\n");
    out
}

/// The planarization; crossing nodes are drawn as points.
pub fn drawing_dot(d: &Drawing) -> String {
    let map = d.map();
    let g = d.graph();
    let name = |v: usize| match d.node_kind(v) {
        NodeKind::Real { vertex } => quote(g.label(vertex)),
        NodeKind::Crossing { .. } => format!("\"x{v}\""),
    };
    let mut out = String::from("graph G {\n");
    for v in 0..map.node_count() {
        if matches!(d.node_kind(v), NodeKind::Crossing { .. }) {
            let _ = writeln!(out, "  {} [shape=point];", name(v));
        } else {
            let _ = writeln!(out, "  {};", name(v));
        }
    }
    for s in 0..map.strand_count() {
        let x = 2 * s;
        let e = d.edge_of_dart(x);
        let _ = writeln!(
            out,
            "  {} -- {} [label={}{}];",
            name(map.tail(x)),
            name(map.head(x)),
            d.weight(e),
            color_attr(d.colors()[e])
        );
    }
    out.push_str("}\n");
    out
}
