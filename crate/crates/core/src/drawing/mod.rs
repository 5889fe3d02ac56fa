//! Good drawings of (weighted) graphs, stored as planar maps.
//!
//! A drawing is the planarization of a drawing in the plane: every vertex is
//! a `Real` node, every crossing a degree-4 `Crossing` node, and each edge is
//! a chain of strands between its endpoints. Rotations are counterclockwise;
//! the unbounded face is named by one dart per connected component, and
//! components are assumed to lie side by side (none nested in a bounded face
//! of another).

mod clams;
mod extension;
mod geometry;
mod sweep;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeColor, Graph, GraphError};
use crate::planar_map::{strand_of, Dart, PlanarMap};

pub use clams::{detect_clam, scan_clams, TwoPath};
pub use extension::{
    find_extension, find_extension_with, verify_witness, ArrNode, Curve, ExtensionOutcome, ExtensionWitness,
    SearchOptions, WitnessError,
};
pub use geometry::{Point, PolylineDrawing};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DrawingError {
    #[error("malformed map: {0}")]
    MalformedMap(String),
    #[error("Euler's formula fails: {nodes} nodes, {strands} strands, {faces} faces, {components} components")]
    EulerViolation { nodes: usize, strands: usize, faces: usize, components: usize },
    #[error("the two 2-paths are not vertex-disjoint paths of the graph: {0}")]
    NotDisjointPaths(String),
    #[error("drawing must be connected (ignoring isolated vertices)")]
    NotConnected,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// What a node of the planarization stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum NodeKind {
    Real { vertex: usize },
    Crossing { edges: [usize; 2] },
}

/// Owner of a strand: segment `seg` of edge `edge`, counted from the first
/// node of the edge's chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StrandRef {
    pub edge: usize,
    pub seg: usize,
}

/// A dart in file form: segment `seg` of `edge`, traversed against the chain
/// direction when `rev` is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DartRef(pub usize, pub usize, pub u8);

#[derive(Debug, Clone)]
pub struct Drawing {
    graph: Graph,
    weights: Vec<u64>,
    colors: Vec<EdgeColor>,
    chains: Vec<Vec<usize>>,
    strand_base: Vec<usize>,
    map: PlanarMap<NodeKind, StrandRef>,
    real_node: Vec<usize>,
    outer: Vec<Dart>,
}

/// Good-drawing diagnosis.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GoodnessReport {
    /// Edges that cross themselves.
    pub self_crossings: Vec<usize>,
    /// Pairs of edges with a common endpoint that cross.
    pub adjacent_crossings: Vec<(usize, usize)>,
    /// Pairs of edges that cross more than once.
    pub double_crossings: Vec<(usize, usize)>,
}

impl GoodnessReport {
    pub fn passes(&self) -> bool {
        self.self_crossings.is_empty() && self.adjacent_crossings.is_empty() && self.double_crossings.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    /// Node sequence of the boundary walk(s); the outer face of a drawing
    /// with several components concatenates one walk per component.
    pub nodes: Vec<usize>,
    pub darts: Vec<Dart>,
    pub outer: bool,
}

impl Drawing {
    /// Assembles and validates a drawing.
    ///
    /// `nodes[i]` tags map node `i`; `chains[e]` lists the nodes along edge `e`
    /// from one endpoint to the other; `rotation[i]` gives the darts leaving
    /// node `i` counterclockwise; `outer` names one dart of the unbounded face
    /// per component that has edges.
    pub fn new(
        graph: Graph,
        nodes: Vec<NodeKind>,
        chains: Vec<Vec<usize>>,
        rotation: Vec<Vec<DartRef>>,
        outer: Vec<DartRef>,
        weights: Option<Vec<u64>>,
    ) -> Result<Self, DrawingError> {
        let m = graph.edge_count();
        let malformed = |s: String| DrawingError::MalformedMap(s);
        if chains.len() != m {
            return Err(malformed(format!("{} chains for {} edges", chains.len(), m)));
        }
        if rotation.len() != nodes.len() {
            return Err(malformed(format!("{} rotations for {} nodes", rotation.len(), nodes.len())));
        }
        let weights = weights.unwrap_or_else(|| vec![1; m]);
        if weights.len() != m || weights.contains(&0) {
            return Err(malformed("weights must be positive, one per edge".into()));
        }

        let mut real_node = vec![usize::MAX; graph.vertex_count()];
        for (i, k) in nodes.iter().enumerate() {
            match *k {
                NodeKind::Real { vertex } => {
                    if vertex >= graph.vertex_count() || real_node[vertex] != usize::MAX {
                        return Err(malformed(format!("node {i}: bad or duplicate vertex {vertex}")));
                    }
                    real_node[vertex] = i;
                }
                NodeKind::Crossing { edges } => {
                    if edges.iter().any(|&e| e >= m) {
                        return Err(malformed(format!("node {i}: crossing names unknown edge")));
                    }
                }
            }
        }
        if let Some(v) = real_node.iter().position(|&n| n == usize::MAX) {
            return Err(malformed(format!("vertex {} has no node", graph.label(v))));
        }

        let mut map = PlanarMap::new();
        for k in &nodes {
            map.add_node(*k);
        }
        let mut strand_base = Vec::with_capacity(m);
        let mut occurrences = vec![0usize; nodes.len()];
        for (e, chain) in chains.iter().enumerate() {
            let (u, v) = graph.edge(e);
            if chain.len() < 2 {
                return Err(malformed(format!("edge {e}: chain too short")));
            }
            let (first, last) = (chain[0], chain[chain.len() - 1]);
            let ends_ok =
                (first == real_node[u] && last == real_node[v]) || (first == real_node[v] && last == real_node[u]);
            if !ends_ok {
                return Err(malformed(format!("edge {e}: chain does not join its endpoints")));
            }
            for &x in &chain[1..chain.len() - 1] {
                match nodes.get(x) {
                    Some(NodeKind::Crossing { edges }) if edges.contains(&e) => occurrences[x] += 1,
                    _ => return Err(malformed(format!("edge {e}: interior node {x} is not one of its crossings"))),
                }
            }
            strand_base.push(map.strand_count());
            for (seg, w) in chain.windows(2).enumerate() {
                map.add_strand(w[0], w[1], StrandRef { edge: e, seg });
            }
        }
        for (i, k) in nodes.iter().enumerate() {
            if let NodeKind::Crossing { .. } = k {
                if occurrences[i] != 2 {
                    return Err(malformed(format!(
                        "crossing node {i} lies on {} chain passes, expected 2",
                        occurrences[i]
                    )));
                }
            }
        }

        let to_dart = |r: &DartRef| -> Result<Dart, DrawingError> {
            let DartRef(e, seg, rev) = *r;
            if e >= m || seg + 1 >= chains[e].len() || rev > 1 {
                return Err(DrawingError::MalformedMap(format!("bad dart reference {r:?}")));
            }
            Ok(2 * (strand_base[e] + seg) + rev as usize)
        };
        for (i, rot) in rotation.iter().enumerate() {
            let darts = rot.iter().map(to_dart).collect::<Result<Vec<_>, _>>()?;
            map.set_rotation(i, &darts);
        }
        map.rotation_consistent().map_err(malformed)?;

        // crossing nodes: degree 4, passes alternate
        for (i, k) in nodes.iter().enumerate() {
            if let NodeKind::Crossing { .. } = k {
                let rot = map.rotation(i);
                if rot.len() != 4 {
                    return Err(malformed(format!("crossing node {i} has degree {}", rot.len())));
                }
                let pass = |d: Dart| {
                    // the pass through i is identified by (edge, position of i in the chain)
                    let sr = map.strand(strand_of(d));
                    let pos = if d & 1 == 0 { sr.seg } else { sr.seg + 1 };
                    (sr.edge, pos)
                };
                let p: Vec<_> = rot.iter().map(|&d| pass(d)).collect();
                if p[0] != p[2] || p[1] != p[3] || p[0] == p[1] {
                    return Err(malformed(format!("crossing node {i} does not alternate its two strands")));
                }
            }
        }

        let outer = outer.iter().map(to_dart).collect::<Result<Vec<_>, _>>()?;
        let (count, comp) = map.components();
        let mut has_outer = vec![0usize; count];
        for &d in &outer {
            has_outer[comp[map.tail(d)]] += 1;
        }
        for n in 0..map.node_count() {
            let c = comp[n];
            let needs = usize::from(map.degree(n) > 0);
            if needs == 1 && has_outer[c] != 1 {
                return Err(malformed(format!("component of node {n} needs exactly one outer dart")));
            }
        }

        let d = Self { graph, weights, colors: vec![EdgeColor::Plain; m], chains, strand_base, map, real_node, outer };
        d.check_euler()?;
        Ok(d)
    }

    pub fn with_colors(mut self, colors: Vec<EdgeColor>) -> Self {
        assert_eq!(colors.len(), self.graph.edge_count());
        self.colors = colors;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight(&self, e: usize) -> u64 {
        self.weights[e]
    }

    pub fn colors(&self) -> &[EdgeColor] {
        &self.colors
    }

    pub fn map(&self) -> &PlanarMap<NodeKind, StrandRef> {
        &self.map
    }

    pub fn chain(&self, e: usize) -> &[usize] {
        &self.chains[e]
    }

    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    pub fn node_kind(&self, n: usize) -> NodeKind {
        *self.map.node(n)
    }

    pub fn node_count(&self) -> usize {
        self.map.node_count()
    }

    pub fn real_node(&self, v: usize) -> usize {
        self.real_node[v]
    }

    pub fn outer_darts(&self) -> &[Dart] {
        &self.outer
    }

    /// Dart of segment `seg` of edge `e`, forward along the chain.
    pub fn dart(&self, e: usize, seg: usize, rev: bool) -> Dart {
        2 * (self.strand_base[e] + seg) + usize::from(rev)
    }

    pub fn dart_ref(&self, d: Dart) -> DartRef {
        let sr = self.map.strand(strand_of(d));
        DartRef(sr.edge, sr.seg, (d & 1) as u8)
    }

    pub fn edge_of_dart(&self, d: Dart) -> usize {
        self.map.strand(strand_of(d)).edge
    }

    /// Crossing nodes as (node, edge pair).
    pub fn crossings(&self) -> Vec<(usize, [usize; 2])> {
        (0..self.map.node_count())
            .filter_map(|n| match self.map.node(n) {
                NodeKind::Crossing { edges } => Some((n, *edges)),
                _ => None,
            })
            .collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings().len()
    }

    /// Number of crossings on edge `e`.
    pub fn crossings_on(&self, e: usize) -> usize {
        self.chains[e].len() - 2
    }

    /// Sum over crossings of the product of the two edges' weights.
    pub fn weighted_crossing_count(&self) -> u64 {
        self.crossings().iter().map(|(_, [e, f])| self.weights[*e] * self.weights[*f]).sum()
    }

    pub fn is_good(&self) -> GoodnessReport {
        let mut report = GoodnessReport::default();
        let mut pairs = std::collections::BTreeMap::<(usize, usize), usize>::new();
        for (_, [e, f]) in self.crossings() {
            if e == f {
                if !report.self_crossings.contains(&e) {
                    report.self_crossings.push(e);
                }
                continue;
            }
            let key = (e.min(f), e.max(f));
            if self.graph.adjacent_edges(e, f) && !report.adjacent_crossings.contains(&key) {
                report.adjacent_crossings.push(key);
            }
            *pairs.entry(key).or_default() += 1;
        }
        report.double_crossings = pairs.into_iter().filter(|&(_, c)| c > 1).map(|(k, _)| k).collect();
        report
    }

    fn check_euler(&self) -> Result<(), DrawingError> {
        let faces = self.faces_unchecked();
        let (components, _) = self.map.components();
        let (n, s, f) = (self.map.node_count(), self.map.strand_count(), faces.len());
        if n + f != s + 1 + components || !self.map.is_spherical() {
            return Err(DrawingError::EulerViolation { nodes: n, strands: s, faces: f, components });
        }
        Ok(())
    }

    fn faces_unchecked(&self) -> Vec<Face> {
        let table = self.map.face_table();
        let outer_faces: Vec<usize> = self.outer.iter().map(|&d| table.face_of[d]).collect();
        let mut faces = Vec::new();
        let mut outer = Face { nodes: Vec::new(), darts: Vec::new(), outer: true };
        for (fi, orbit) in table.orbits.iter().enumerate() {
            let nodes: Vec<usize> = orbit.iter().map(|&d| self.map.tail(d)).collect();
            if outer_faces.contains(&fi) {
                outer.nodes.extend(nodes);
                outer.darts.extend(orbit);
            } else {
                faces.push(Face { nodes, darts: orbit.clone(), outer: false });
            }
        }
        faces.insert(0, outer);
        faces
    }

    /// Faces traced from the rotation system, outer face first. Drawings
    /// without edges have the single outer face.
    pub fn faces(&self) -> Result<Vec<Face>, DrawingError> {
        self.check_euler()?;
        Ok(self.faces_unchecked())
    }

    /// True if the drawing is connected once isolated vertices are dropped.
    pub fn is_connected(&self) -> bool {
        let (_, comp) = self.map.components();
        let mut seen = None;
        for n in 0..self.map.node_count() {
            if self.map.degree(n) == 0 {
                continue;
            }
            match seen {
                None => seen = Some(comp[n]),
                Some(c) if c != comp[n] => return false,
                _ => {}
            }
        }
        true
    }

    /// The other dart of the same edge at a crossing node: the continuation
    /// of the pass that arrives along `twin(d)`.
    pub fn opposite(&self, d: Dart) -> Dart {
        let rot = self.map.rotation(self.map.tail(d));
        let i = rot.iter().position(|&x| x == d).unwrap();
        rot[(i + 2) % 4]
    }

    pub fn to_json(&self) -> DrawingJson {
        let mut nodes = Vec::new();
        let mut rotation = Vec::new();
        for n in 0..self.map.node_count() {
            nodes.push(*self.map.node(n));
            rotation.push(self.map.rotation(n).iter().map(|&d| self.dart_ref(d)).collect());
        }
        let edges = self
            .graph
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| DrawingEdgeJson {
                ends: [self.graph.label(u).to_string(), self.graph.label(v).to_string()],
                weight: (self.weights[e] != 1).then_some(self.weights[e]),
                color: (self.colors[e] != EdgeColor::Plain).then_some(self.colors[e]),
                chain: self.chains[e].clone(),
            })
            .collect();
        DrawingJson {
            vertices: self.graph.labels().to_vec(),
            edges,
            nodes,
            rotation,
            outer_face: self.outer.iter().map(|&d| self.dart_ref(d)).collect(),
        }
    }

    pub fn from_json(json: &DrawingJson) -> Result<Self, DrawingError> {
        let mut graph = Graph::with_vertices(&json.vertices);
        let mut weights = Vec::new();
        let mut colors = Vec::new();
        for e in &json.edges {
            let a = graph.vertex(&e.ends[0]).ok_or_else(|| GraphError::UnknownVertex(e.ends[0].clone()))?;
            let b = graph.vertex(&e.ends[1]).ok_or_else(|| GraphError::UnknownVertex(e.ends[1].clone()))?;
            graph.add_edge(a, b)?;
            weights.push(e.weight.unwrap_or(1));
            colors.push(e.color.unwrap_or_default());
        }
        let chains = json.edges.iter().map(|e| e.chain.clone()).collect();
        let d = Self::new(
            graph,
            json.nodes.clone(),
            chains,
            json.rotation.clone(),
            json.outer_face.clone(),
            Some(weights),
        )?;
        Ok(d.with_colors(colors))
    }

    /// Rebuilds this drawing with different weights.
    pub fn reweighted(&self, weights: Vec<u64>) -> Result<Self, DrawingError> {
        let mut json = self.to_json();
        for (e, w) in json.edges.iter_mut().zip(weights) {
            e.weight = Some(w);
        }
        Self::from_json(&json)
    }
}

/// File form of a drawing. Node ids index `nodes`; darts are
/// `[edge, segment, reversed]` triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawingJson {
    pub vertices: Vec<String>,
    pub edges: Vec<DrawingEdgeJson>,
    pub nodes: Vec<NodeKind>,
    pub rotation: Vec<Vec<DartRef>>,
    pub outer_face: Vec<DartRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawingEdgeJson {
    pub ends: [String; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<EdgeColor>,
    pub chain: Vec<usize>,
}

#[cfg(test)]
mod tests;
