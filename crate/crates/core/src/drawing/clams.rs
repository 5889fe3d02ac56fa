//! Clams: two disjoint 2-paths drawn with exactly two faces, the unbounded
//! one touching only the two middle vertices. Any drawing containing one is
//! not pseudolinear.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Drawing, DrawingError};

/// A path `ends[0] - middle - ends[1]` given by vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoPath {
    pub middle: usize,
    pub ends: [usize; 2],
}

impl TwoPath {
    pub fn new(a: usize, middle: usize, b: usize) -> Self {
        Self { middle, ends: [a.min(b), a.max(b)] }
    }

    fn vertices(&self) -> [usize; 3] {
        [self.ends[0], self.middle, self.ends[1]]
    }

    fn edges(&self, d: &Drawing) -> Option<[usize; 2]> {
        let g = d.graph();
        Some([g.edge_between(self.middle, self.ends[0])?, g.edge_between(self.middle, self.ends[1])?])
    }
}

/// Decides whether the restriction of `d` to `p ∪ q` is a clam.
pub fn detect_clam(d: &Drawing, p: TwoPath, q: TwoPath) -> Result<bool, DrawingError> {
    let describe = || format!("{p:?} / {q:?}");
    let (pe, qe) = match (p.edges(d), q.edges(d)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(DrawingError::NotDisjointPaths(describe())),
    };
    let pv = p.vertices();
    let qv = q.vertices();
    if pv[0] == pv[2] || qv[0] == qv[2] || pv.iter().any(|v| qv.contains(v)) {
        return Err(DrawingError::NotDisjointPaths(describe()));
    }
    let kept = [pe[0], pe[1], qe[0], qe[1]];

    // two trees need at least two mutual crossings to enclose a face
    let mutual = d
        .crossings()
        .iter()
        .filter(|(_, [e, f])| (pe.contains(e) && qe.contains(f)) || (qe.contains(e) && pe.contains(f)))
        .count();
    if mutual < 2 {
        return Ok(false);
    }

    let map = d.map();
    let removed: Vec<bool> = map.strands().iter().map(|s| !kept.contains(&s.edge)).collect();
    let (table, class) = map.regions_without(&removed, d.outer_darts());

    // each class of faces of the full map is one region of the restriction
    let mut regions = class.clone();
    regions.sort_unstable();
    regions.dedup();
    if regions.len() != 2 {
        return Ok(false);
    }

    let outer_class = class[table.face_of[d.outer_darts()[0]]];
    let touches_outer = |v: usize| {
        let n = d.real_node(v);
        map.rotation(n).iter().any(|&x| class[table.face_of[x]] == outer_class)
    };
    let outer_vertices: Vec<usize> = pv.iter().chain(qv.iter()).copied().filter(|&v| touches_outer(v)).collect();
    let mut expected = vec![p.middle, q.middle];
    expected.sort_unstable();
    let mut got = outer_vertices;
    got.sort_unstable();
    Ok(got == expected)
}

/// Every pair of vertex-disjoint 2-paths whose restriction is a clam.
pub fn scan_clams(d: &Drawing) -> Vec<(TwoPath, TwoPath)> {
    let g = d.graph();
    let mut partners = vec![Vec::new(); g.edge_count()];
    for (_, [e, f]) in d.crossings() {
        partners[e].push(f);
        partners[f].push(e);
    }
    let mut found = Vec::new();
    for v in 0..g.vertex_count() {
        let nb = g.neighbors(v);
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                let p = TwoPath::new(nb[i], v, nb[j]);
                let pe = p.edges(d).unwrap();
                // the other path needs an edge crossing one of these
                let mut cands = BTreeSet::new();
                for &f in pe.iter().flat_map(|&a| &partners[a]) {
                    let (x, y) = g.edge(f);
                    for (mid, end) in [(x, y), (y, x)] {
                        for w in g.neighbors(mid) {
                            if w != end {
                                cands.insert(TwoPath::new(end, mid, w));
                            }
                        }
                    }
                }
                for q in cands.into_iter().filter(|q| *q > p) {
                    if p.vertices().iter().any(|v| q.vertices().contains(v)) {
                        continue;
                    }
                    let qe = q.edges(d).unwrap();
                    let hits = pe.iter().map(|&a| qe.iter().filter(|b| partners[a].contains(b)).count()).sum::<usize>();
                    if hits >= 2 && detect_clam(d, p, q).unwrap_or(false) {
                        found.push((p, q));
                    }
                }
            }
        }
    }
    found.sort();
    found
}
