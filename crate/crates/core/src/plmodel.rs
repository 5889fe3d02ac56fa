//! Pseudolinear models: plane graphs that certify a pseudolinear drawing.
//!
//! A model is a plane graph `H` whose degree-1 terminals `t_1..t_2m` appear
//! in this cyclic order around the outer face, covered by paths
//! `P_i: t_i -> t_{i+m}`. Each path holds exactly two distinguished vertices
//! `u_i, v_i` (the ends of an edge of the induced graph) and any two paths
//! share exactly one vertex, a degree-4 crossing unless it is distinguished.
//!
//! A vertex interior to the `u_i..v_i` stretches of two different paths is
//! special: it is a crossing of two edges. Vertices interior to only one
//! such stretch are places where an edge passes over another curve's
//! extension and do not count.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drawing::{ArrNode, Curve, DartRef, Drawing, DrawingError, ExtensionWitness, NodeKind};
use crate::graph::{Graph, GraphError};
use crate::planar_map::{strand_of, twin, Dart, PlanarMap, UnionFind};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("model does not verify: {0}")]
    NotVerified(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("malformed model: {0}")]
    Malformed(String),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A pseudolinear model. Darts follow the planar map convention: strand `s`
/// runs from `edges[s].0` to `edges[s].1` as dart `2s`.
#[derive(Debug, Clone)]
pub struct PseudolinearModel {
    map: PlanarMap<(), ()>,
    outer: Dart,
    terminals: Vec<usize>,
    distinguished: Vec<usize>,
    paths: Vec<Vec<usize>>,
    labels: Vec<String>,
}

/// Outcome of [`PseudolinearModel::verify`]. Each flag is one condition of
/// the model definition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelReport {
    pub plane: bool,
    pub terminals_degree_one: bool,
    pub terminals_avoid_distinguished: bool,
    pub outer_order: bool,
    pub union_of_paths: bool,
    pub path_ends: bool,
    pub two_distinguished_per_path: bool,
    pub pairwise_single_meeting: bool,
    pub problems: Vec<String>,
}

impl ModelReport {
    pub fn passes(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Certificate file form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelJson {
    pub plane_graph: PlaneGraphJson,
    pub terminals: Vec<usize>,
    pub distinguished: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
    /// Vertex names for `distinguished`, in the same order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

/// Rotation system of a plane graph. `rotation[v]` lists darts leaving `v`
/// counterclockwise; dart `2s` runs along `edges[s]`, `2s + 1` against it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneGraphJson {
    pub nodes: usize,
    pub edges: Vec<[usize; 2]>,
    pub rotation: Vec<Vec<usize>>,
    pub outer: usize,
}

impl PseudolinearModel {
    pub fn node_count(&self) -> usize {
        self.map.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.map.strand_count()
    }

    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }

    pub fn distinguished(&self) -> &[usize] {
        &self.distinguished
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn map(&self) -> &PlanarMap<(), ()> {
        &self.map
    }

    pub fn outer_dart(&self) -> Dart {
        self.outer
    }

    /// Builds the model of a drawing from one of its extension witnesses:
    /// crossings and arc crossings become degree-4 vertices, and the ends of
    /// the curves on the circle become the terminals.
    pub fn from_drawing(d: &Drawing, w: &ExtensionWitness) -> Result<Self, ModelError> {
        crate::drawing::verify_witness(d, w).map_err(|e| ModelError::InvalidWitness(e.to_string()))?;
        let wm = &w.map;
        let mut map = PlanarMap::new();
        for _ in 0..wm.node_count() {
            map.add_node(());
        }
        let mut new_dart = vec![usize::MAX; wm.dart_count()];
        for s in 0..wm.strand_count() {
            if *wm.strand(s) == Curve::Circle {
                continue;
            }
            let t = map.add_strand(wm.tail(2 * s), wm.head(2 * s), ());
            new_dart[2 * s] = 2 * t;
            new_dart[2 * s + 1] = 2 * t + 1;
        }
        for n in 0..wm.node_count() {
            let rot: Vec<Dart> = wm.rotation(n).iter().map(|&x| new_dart[x]).filter(|&x| x != usize::MAX).collect();
            map.set_rotation(n, &rot);
        }

        let m = d.graph().edge_count();
        let owners = w.boundary_curves();
        let terminals = w.boundary.clone();
        let mut paths = Vec::with_capacity(m);
        for i in 0..m {
            let mut p = w.curves[owners[i]].clone();
            if p[0] != terminals[i] {
                p.reverse();
            }
            paths.push(p);
        }
        let distinguished: Vec<usize> = (0..d.graph().vertex_count()).map(|v| d.real_node(v)).collect();
        debug_assert!(distinguished.iter().all(|&n| matches!(wm.node(n), ArrNode::Real(_))));
        let outer = match terminals.first() {
            Some(&t) => map.rotation(t)[0],
            None => 0,
        };
        Ok(Self { map, outer, terminals, distinguished, paths, labels: d.graph().labels().to_vec() })
    }

    pub fn verify(&self) -> ModelReport {
        let mut r = ModelReport {
            plane: true,
            terminals_degree_one: true,
            terminals_avoid_distinguished: true,
            outer_order: true,
            union_of_paths: true,
            path_ends: true,
            two_distinguished_per_path: true,
            pairwise_single_meeting: true,
            problems: Vec::new(),
        };
        let map = &self.map;
        let n = map.node_count();
        let m = self.paths.len();
        let in_range = |v: &usize| *v < n;

        if let Err(e) = map.rotation_consistent() {
            r.plane = false;
            r.problems.push(format!("rotation system: {e}"));
        } else if !map.is_spherical() {
            r.plane = false;
            r.problems.push("rotation system is not a plane embedding".into());
        }
        let (_, comp) = map.components();
        let used: HashSet<usize> = (0..n).filter(|&x| map.degree(x) > 0).map(|x| comp[x]).collect();
        if used.len() > 1 {
            r.plane = false;
            r.problems.push("plane graph is disconnected".into());
        }
        if !self.terminals.iter().chain(&self.distinguished).all(in_range) || !self.paths.iter().flatten().all(in_range)
        {
            r.plane = false;
            r.problems.push("node index out of range".into());
            return r;
        }

        if self.terminals.len() != 2 * m {
            r.path_ends = false;
            r.problems.push(format!("{} terminals for {m} paths", self.terminals.len()));
        }
        for &t in &self.terminals {
            if map.degree(t) != 1 {
                r.terminals_degree_one = false;
                r.problems.push(format!("terminal {t} has degree {}", map.degree(t)));
            }
        }
        let dist: HashSet<usize> = self.distinguished.iter().copied().collect();
        if dist.len() != self.distinguished.len() {
            r.terminals_avoid_distinguished = false;
            r.problems.push("distinguished set lists a vertex twice".into());
        }
        if self.terminals.iter().any(|t| dist.contains(t)) {
            r.terminals_avoid_distinguished = false;
            r.problems.push("a terminal is distinguished".into());
        }
        let tset: HashSet<usize> = self.terminals.iter().copied().collect();
        if tset.len() != self.terminals.len() {
            r.terminals_degree_one = false;
            r.problems.push("terminal listed twice".into());
        }

        if r.plane && m > 0 {
            if self.outer >= map.dart_count() {
                r.outer_order = false;
                r.problems.push("outer dart out of range".into());
            } else {
                let walk: Vec<usize> =
                    map.orbit(self.outer).iter().map(|&x| map.tail(x)).filter(|v| tset.contains(v)).collect();
                if !same_cycle(&walk, &self.terminals) {
                    r.outer_order = false;
                    r.problems.push("outer face does not visit the terminals in order".into());
                }
            }
        }

        // union of paths: each path step is a strand, each strand used once
        let mut strand_at: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for s in 0..map.strand_count() {
            let (a, b) = (map.tail(2 * s), map.head(2 * s));
            strand_at.entry((a.min(b), a.max(b))).or_default().push(s);
        }
        let mut uses = vec![0usize; map.strand_count()];
        let mut on_path = vec![false; n];
        for (i, p) in self.paths.iter().enumerate() {
            if p.len() < 2 {
                r.union_of_paths = false;
                r.problems.push(format!("path {i} is too short"));
                continue;
            }
            if p.iter().collect::<HashSet<_>>().len() != p.len() {
                r.union_of_paths = false;
                r.problems.push(format!("path {i} repeats a vertex"));
            }
            for w in p.windows(2) {
                match strand_at.get(&(w[0].min(w[1]), w[0].max(w[1]))) {
                    Some(ss) if ss.len() == 1 => uses[ss[0]] += 1,
                    _ => {
                        r.union_of_paths = false;
                        r.problems.push(format!("path {i} steps {}-{} along no single edge", w[0], w[1]));
                    }
                }
            }
            for &v in p {
                on_path[v] = true;
            }
            if self.terminals.len() == 2 * m && (p[0] != self.terminals[i] || p[p.len() - 1] != self.terminals[i + m]) {
                r.path_ends = false;
                r.problems.push(format!("path {i} does not run from t_{} to t_{}", i + 1, i + m + 1));
            }
            let k = p.iter().filter(|v| dist.contains(v)).count();
            if k != 2 {
                r.two_distinguished_per_path = false;
                r.problems.push(format!("path {i} contains {k} distinguished vertices"));
            }
        }
        if let Some(s) = uses.iter().position(|&u| u != 1) {
            r.union_of_paths = false;
            r.problems.push(format!("edge {s} is covered {} times", uses[s]));
        }
        // isolated distinguished vertices stand for isolated graph vertices
        if let Some(v) = (0..n).find(|&v| !on_path[v] && !(dist.contains(&v) && map.degree(v) == 0)) {
            r.union_of_paths = false;
            r.problems.push(format!("vertex {v} lies on no path"));
        }

        let sets: Vec<HashSet<usize>> = self.paths.iter().map(|p| p.iter().copied().collect()).collect();
        for i in 0..m {
            for j in i + 1..m {
                let common: Vec<usize> = self.paths[i].iter().copied().filter(|v| sets[j].contains(v)).collect();
                if common.len() != 1 {
                    r.pairwise_single_meeting = false;
                    r.problems.push(format!("paths {i} and {j} share {} vertices", common.len()));
                } else if !dist.contains(&common[0]) && map.degree(common[0]) != 4 {
                    r.pairwise_single_meeting = false;
                    r.problems.push(format!(
                        "paths {i} and {j} meet at vertex {} of degree {}",
                        common[0],
                        map.degree(common[0])
                    ));
                }
            }
        }
        r
    }

    fn require_verified(&self) -> Result<(), ModelError> {
        let r = self.verify();
        match r.problems.first() {
            None => Ok(()),
            Some(p) => Err(ModelError::NotVerified(p.clone())),
        }
    }

    /// Positions of the two distinguished vertices on each path.
    fn stretches(&self) -> Vec<(usize, usize)> {
        let dist: HashSet<usize> = self.distinguished.iter().copied().collect();
        self.paths
            .iter()
            .map(|p| {
                let idx: Vec<usize> = (0..p.len()).filter(|&k| dist.contains(&p[k])).collect();
                (idx[0], idx[1])
            })
            .collect()
    }

    /// Special vertices in increasing order; their number is the crossing
    /// count certified by the model.
    pub fn special_vertices(&self) -> Result<Vec<usize>, ModelError> {
        self.require_verified()?;
        Ok(self.special_unchecked())
    }

    fn special_unchecked(&self) -> Vec<usize> {
        let mut seen = vec![0u8; self.map.node_count()];
        for (p, (a, b)) in self.paths.iter().zip(self.stretches()) {
            for &v in &p[a + 1..b] {
                seen[v] += 1;
            }
        }
        (0..seen.len()).filter(|&v| seen[v] >= 2).collect()
    }

    fn vertex_label(&self, i: usize) -> String {
        self.labels.get(i).cloned().unwrap_or_else(|| self.distinguished[i].to_string())
    }

    /// The graph on the distinguished vertices with one edge per path.
    pub fn induced_graph(&self) -> Result<Graph, ModelError> {
        self.require_verified()?;
        self.induced_unchecked()
    }

    fn induced_unchecked(&self) -> Result<Graph, ModelError> {
        let labels: Vec<String> = (0..self.distinguished.len()).map(|i| self.vertex_label(i)).collect();
        let mut g = Graph::with_vertices(&labels);
        let index: HashMap<usize, usize> = self.distinguished.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        for (p, (a, b)) in self.paths.iter().zip(self.stretches()) {
            g.add_edge(index[&p[a]], index[&p[b]])?;
        }
        Ok(g)
    }

    /// Drops every vertex that is neither distinguished nor special and
    /// turns the special vertices into crossings.
    pub fn to_drawing(&self) -> Result<Drawing, ModelError> {
        self.require_verified()?;
        let map = &self.map;
        let graph = self.induced_unchecked()?;
        let special = self.special_unchecked();
        let stretches = self.stretches();

        // new node ids: distinguished vertices first, then special ones
        let mut id = vec![usize::MAX; map.node_count()];
        for (i, &v) in self.distinguished.iter().enumerate() {
            id[v] = i;
        }
        for (k, &v) in special.iter().enumerate() {
            id[v] = self.distinguished.len() + k;
        }
        let mut owner: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, (p, &(a, b))) in self.paths.iter().zip(&stretches).enumerate() {
            for &v in &p[a + 1..b] {
                owner.entry(v).or_default().push(i);
            }
        }
        let mut nodes: Vec<NodeKind> = (0..self.distinguished.len()).map(|i| NodeKind::Real { vertex: i }).collect();
        for v in &special {
            let o = &owner[v];
            nodes.push(NodeKind::Crossing { edges: [o[0], o[1]] });
        }

        let strand_between = |a: usize, b: usize| -> Dart {
            map.rotation(a).iter().copied().find(|&x| map.head(x) == b).expect("verified path step")
        };
        let mut chains = Vec::with_capacity(self.paths.len());
        let mut dart_ref: HashMap<Dart, DartRef> = HashMap::new();
        let mut kept = vec![false; map.strand_count()];
        for (i, (p, &(a, b))) in self.paths.iter().zip(&stretches).enumerate() {
            let sub = &p[a..=b];
            let mut chain = vec![id[sub[0]]];
            let mut seg = 0;
            for k in 0..sub.len() - 1 {
                let x = strand_between(sub[k], sub[k + 1]);
                kept[strand_of(x)] = true;
                if id[sub[k]] != usize::MAX {
                    dart_ref.insert(x, DartRef(i, seg, 0));
                }
                if id[sub[k + 1]] != usize::MAX {
                    dart_ref.insert(twin(x), DartRef(i, seg, 1));
                    chain.push(id[sub[k + 1]]);
                    seg += 1;
                }
            }
            chains.push(chain);
        }

        let mut rotation = vec![Vec::new(); nodes.len()];
        for v in 0..map.node_count() {
            if id[v] == usize::MAX {
                continue;
            }
            rotation[id[v]] = map.rotation(v).iter().filter_map(|x| dart_ref.get(x).copied()).collect();
        }

        // the outer face of the drawing is the region holding the terminals
        let removed: Vec<bool> = kept.iter().map(|k| !k).collect();
        let (table, class) = map.regions_without(&removed, &[]);
        let outer_class = class[table.face_of[self.outer]];
        let mut uf = UnionFind::new(nodes.len());
        for c in &chains {
            for w in c.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let mut outer = Vec::new();
        let mut done = BTreeSet::new();
        let mut darts: Vec<(&Dart, &DartRef)> = dart_ref.iter().collect();
        darts.sort_by_key(|(x, _)| **x);
        let mut pending: BTreeSet<usize> = chains.iter().map(|c| uf.find(c[0])).collect();
        for (&x, &r) in darts {
            let c = uf.find(id[map.tail(x)]);
            if class[table.face_of[x]] == outer_class && done.insert(c) {
                outer.push(r);
                pending.remove(&c);
            }
        }
        if !pending.is_empty() {
            return Err(ModelError::Malformed("a component of the drawing is enclosed by another".into()));
        }
        Ok(Drawing::new(graph, nodes, chains, rotation, outer, None)?)
    }

    pub fn to_json(&self) -> ModelJson {
        let map = &self.map;
        ModelJson {
            plane_graph: PlaneGraphJson {
                nodes: map.node_count(),
                edges: (0..map.strand_count()).map(|s| [map.tail(2 * s), map.head(2 * s)]).collect(),
                rotation: (0..map.node_count()).map(|v| map.rotation(v).to_vec()).collect(),
                outer: self.outer,
            },
            terminals: self.terminals.clone(),
            distinguished: self.distinguished.clone(),
            paths: self.paths.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Reads a certificate. Only index ranges are checked here; everything
    /// else is left to [`verify`](Self::verify).
    pub fn from_json(json: &ModelJson) -> Result<Self, ModelError> {
        let pg = &json.plane_graph;
        let bad = |s: &str| ModelError::Malformed(s.to_string());
        if pg.rotation.len() != pg.nodes {
            return Err(bad("one rotation per node expected"));
        }
        if pg.edges.iter().flatten().any(|&v| v >= pg.nodes) {
            return Err(bad("edge endpoint out of range"));
        }
        if pg.rotation.iter().flatten().any(|&x| x >= 2 * pg.edges.len()) {
            return Err(bad("dart out of range"));
        }
        if !json.labels.is_empty() && json.labels.len() != json.distinguished.len() {
            return Err(bad("one label per distinguished vertex expected"));
        }
        let mut map = PlanarMap::new();
        for _ in 0..pg.nodes {
            map.add_node(());
        }
        for [a, b] in &pg.edges {
            map.add_strand(*a, *b, ());
        }
        for (v, rot) in pg.rotation.iter().enumerate() {
            map.set_rotation(v, rot);
        }
        Ok(Self {
            map,
            outer: pg.outer,
            terminals: json.terminals.clone(),
            distinguished: json.distinguished.clone(),
            paths: json.paths.clone(),
            labels: json.labels.clone(),
        })
    }
}

/// True if `a` equals `b` read cyclically in either direction.
fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let k = a.len();
    if k == 0 {
        return true;
    }
    let Some(r) = a.iter().position(|&x| x == b[0]) else { return false };
    (0..k).all(|i| a[(r + i) % k] == b[i]) || (0..k).all(|i| a[(r + k - i) % k] == b[i])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_match_up_to_rotation_and_reversal() {
        assert!(same_cycle(&[3, 1, 2], &[1, 2, 3]));
        assert!(same_cycle(&[3, 2, 1], &[1, 2, 3]));
        assert!(!same_cycle(&[1, 3, 2, 4], &[1, 2, 3, 4]));
    }
}
