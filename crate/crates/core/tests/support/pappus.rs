//! Regeneration of the bundled 9-wire non-Pappus arrangement.
//!
//! Start from a Pappus configuration (lines `g`, `h`, the six joins
//! `A_i B_j` and the Pappus line `L`, with nine triple points). Near it, the
//! nine concurrency determinants `D_t` are linear functions of the line
//! parameters to first order, and Pappus's theorem makes them linearly
//! dependent: `sum_t lambda_t dD_t = 0`. Perturbing the lines so that the
//! first eight determinants take the signs of `lambda` forces the ninth to the
//! opposite sign. Sweeping the perturbed lines gives a stretchable simple
//! arrangement; flipping the ninth triangle gives the sign pattern of
//! `lambda` on all nine triples, which no line arrangement near the
//! configuration has.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};

pub const LINES: usize = 9;

/// Line `y = m x + c`.
#[derive(Debug, Clone, Copy)]
pub struct Line {
    pub m: f64,
    pub c: f64,
}

fn join(p: (f64, f64), q: (f64, f64)) -> Line {
    let m = (q.1 - p.1) / (q.0 - p.0);
    Line { m, c: p.1 - m * p.0 }
}

fn meet(a: Line, b: Line) -> (f64, f64) {
    let x = (b.c - a.c) / (a.m - b.m);
    (x, a.m * x + a.c)
}

/// Index of the join `A_i B_j`.
fn ab(i: usize, j: usize) -> usize {
    const ORDER: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
    2 + ORDER.iter().position(|&p| p == (i, j)).unwrap()
}

/// The Pappus configuration and its nine triple points (line indices). The
/// last triple is the one on the Pappus line through `A_0B_1 ∩ A_1B_0`.
pub fn configuration() -> (Vec<Line>, Vec<[usize; 3]>) {
    let a = [0.0, 1.3, 3.7].map(|x| (x, 0.0));
    let b = [0.5, 2.0, 4.0].map(|x| (x, 2.0 + 0.3 * x));
    let mut lines = vec![Line { m: 0.0, c: 0.0 }, Line { m: 0.3, c: 2.0 }];
    for (i, j) in [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)] {
        lines.push(join(a[i], b[j]));
    }
    let c = |i: usize, j: usize| meet(lines[ab(i, j)], lines[ab(j, i)]);
    let pappus = join(c(0, 2), c(1, 2));
    lines.push(pappus);
    let mut triples = Vec::new();
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        triples.push([0, ab(i, j), ab(i, k)]);
        triples.push([1, ab(j, i), ab(k, i)]);
    }
    for (i, j) in [(0, 2), (1, 2), (0, 1)] {
        triples.push([ab(i, j), ab(j, i), 8]);
    }
    (lines, triples)
}

fn det3(r: [[f64; 3]; 3]) -> f64 {
    r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
}

fn row(l: Line) -> [f64; 3] {
    [l.m, -1.0, l.c]
}

/// Zero iff the three lines are concurrent.
pub fn concurrency(lines: &[Line], t: [usize; 3]) -> f64 {
    det3(t.map(|i| row(lines[i])))
}

/// Derivatives of every `D_t` with respect to `(m_0, c_0, m_1, c_1, ...)`.
pub fn jacobian(lines: &[Line], triples: &[[usize; 3]]) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(triples.len(), 2 * lines.len());
    for (r, t) in triples.iter().enumerate() {
        for (slot, &l) in t.iter().enumerate() {
            for (k, unit) in [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]].into_iter().enumerate() {
                let mut rows = t.map(|i| row(lines[i]));
                rows[slot] = unit;
                j[(r, 2 * l + k)] = det3(rows);
            }
        }
    }
    j
}

/// Left null vector of the Jacobian, normalized to unit length.
pub fn dependency(j: &DMatrix<f64>) -> DVector<f64> {
    let svd = j.clone().svd(true, false);
    let u = svd.u.unwrap();
    let (k, _) =
        svd.singular_values.iter().enumerate().fold((0, f64::MAX), |acc, (i, &s)| if s < acc.1 { (i, s) } else { acc });
    let mut sorted: Vec<f64> = svd.singular_values.iter().copied().collect();
    sorted.sort_by(f64::total_cmp);
    assert!(sorted[0] < 1e-9 * sorted[8], "Jacobian has full rank");
    assert!(sorted[1] > 1e-6 * sorted[8], "Jacobian rank below 8");
    u.column(k).into_owned()
}

pub struct Generated {
    pub lines: Vec<Line>,
    pub triples: Vec<[usize; 3]>,
    pub lambda: DVector<f64>,
    /// Wire label (1-based, top to bottom at the left) of each line.
    pub label: Vec<usize>,
    /// Switches of the swept perturbed lines.
    pub realizable: Vec<usize>,
    /// The same with the last triangle flipped.
    pub non_pappus: Vec<usize>,
}

pub fn generate() -> Generated {
    let (base, triples) = configuration();
    for &t in &triples {
        assert!(concurrency(&base, t).abs() < 1e-9);
    }
    let jac = jacobian(&base, &triples);
    let lambda = dependency(&jac);
    let eps = 1e-3;
    let rhs = DVector::from_iterator(8, (0..8).map(|t| eps * lambda[t].signum()));
    let sub = jac.rows(0, 8).into_owned();
    let delta = sub.svd(true, true).solve(&rhs, 1e-12).unwrap();
    let lines: Vec<Line> =
        base.iter().enumerate().map(|(i, l)| Line { m: l.m + delta[2 * i], c: l.c + delta[2 * i + 1] }).collect();
    for t in 0..8 {
        assert_eq!(concurrency(&lines, triples[t]).signum(), lambda[t].signum());
    }
    assert_eq!(concurrency(&lines, triples[8]).signum(), -lambda[8].signum());

    // top at the left means smallest slope
    let mut by_slope: Vec<usize> = (0..LINES).collect();
    by_slope.sort_by(|&a, &b| lines[a].m.total_cmp(&lines[b].m));
    let mut label = vec![0; LINES];
    for (rank, &l) in by_slope.iter().enumerate() {
        label[l] = rank + 1;
    }

    // sweep, keeping the last triangle's three crossings together
    let last = triples[8];
    let mut events: Vec<(f64, f64, usize, usize)> = Vec::new();
    let x_of = |a: usize, b: usize| meet(lines[a], lines[b]).0;
    let tri_x = [(last[0], last[1]), (last[0], last[2]), (last[1], last[2])]
        .iter()
        .map(|&(a, b)| x_of(a, b))
        .fold(f64::MAX, f64::min);
    for a in 0..LINES {
        for b in a + 1..LINES {
            let x = x_of(a, b);
            let key = if last.contains(&a) && last.contains(&b) { tri_x } else { x };
            events.push((key, x, a, b));
        }
    }
    events.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    let mut rows: Vec<usize> = by_slope.clone();
    let mut realizable = Vec::new();
    let mut tri_layers = Vec::new();
    for &(_, _, a, b) in &events {
        let pa = rows.iter().position(|&l| l == a).unwrap();
        let pb = rows.iter().position(|&l| l == b).unwrap();
        assert_eq!(pa.abs_diff(pb), 1, "sweep order is not a wiring order");
        if last.contains(&a) && last.contains(&b) {
            tri_layers.push(realizable.len());
        }
        realizable.push(pa.min(pb) + 1);
        rows.swap(pa, pb);
    }
    let first = tri_layers[0];
    assert_eq!(tri_layers, vec![first, first + 1, first + 2]);
    let (p, q) = (realizable[first], realizable[first + 1]);
    assert!(p.abs_diff(q) == 1 && realizable[first + 2] == p, "triangle is not a braid");
    let mut non_pappus = realizable.clone();
    non_pappus[first..first + 3].copy_from_slice(&[q, p, q]);
    Generated { lines, triples, lambda, label, realizable, non_pappus }
}

/// For three wires `a < b < c`: whether the middle wire crosses `a` before `c`.
pub fn orientation(wires: usize, switches: &[usize], t: [usize; 3]) -> bool {
    let mut t = t;
    t.sort_unstable();
    let mut rows: Vec<usize> = (1..=wires).collect();
    let mut first_ab = None;
    let mut first_bc = None;
    for (layer, &p) in switches.iter().enumerate() {
        let (x, y) = (rows[p - 1].min(rows[p]), rows[p - 1].max(rows[p]));
        if (x, y) == (t[0], t[1]) {
            first_ab = Some(layer);
        }
        if (x, y) == (t[1], t[2]) {
            first_bc = Some(layer);
        }
        rows.swap(p - 1, p);
    }
    first_ab.unwrap() < first_bc.unwrap()
}
