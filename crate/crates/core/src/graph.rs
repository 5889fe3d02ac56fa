//! Abstract graphs with string vertex labels, optionally weighted and colored.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {0}-{1} is a loop")]
    Loop(String, String),
    #[error("edge {0}-{1} appears more than once")]
    Parallel(String, String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge weight must be at least 1 (edge {0})")]
    ZeroWeight(usize),
    #[error("weight/color vector length {0} does not match edge count {1}")]
    LengthMismatch(usize, usize),
}

/// A simple undirected graph. Vertices are identified by index and carry a
/// unique string label; edges are stored once, in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    by_ends: HashMap<(usize, usize), usize>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices<S: AsRef<str>>(labels: &[S]) -> Self {
        let mut g = Self::new();
        for l in labels {
            g.add_vertex(l.as_ref());
        }
        g
    }

    /// Builds a graph on vertices `0..n` labeled by their index.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut g = Self::with_vertices(&labels);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Returns the index of `label`, adding the vertex if needed.
    pub fn add_vertex(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        i
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize, GraphError> {
        if u == v {
            return Err(GraphError::Loop(self.labels[u].clone(), self.labels[v].clone()));
        }
        if self.edge_between(u, v).is_some() {
            return Err(GraphError::Parallel(self.labels[u].clone(), self.labels[v].clone()));
        }
        self.edges.push((u, v));
        self.by_ends.insert((u.min(v), u.max(v)), self.edges.len() - 1);
        Ok(self.edges.len() - 1)
    }

    pub fn add_edge_by_label(&mut self, u: &str, v: &str) -> Result<usize, GraphError> {
        let a = self.add_vertex(u);
        let b = self.add_vertex(v);
        self.add_edge(a, b)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.by_ends.get(&(u.min(v), u.max(v))).copied()
    }

    /// True if the two edges share an endpoint.
    pub fn adjacent_edges(&self, e: usize, f: usize) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        a == c || a == d || b == c || b == d
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Edge set as unordered label pairs; used for labeled-isomorphism checks.
    pub fn labeled_edge_set(&self) -> BTreeSet<(String, String)> {
        self.edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (self.labels[a].clone(), self.labels[b].clone());
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> GraphJson {
        let mut adjacency: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for l in &self.labels {
            adjacency.insert(l.clone(), Vec::new());
        }
        for &(a, b) in &self.edges {
            adjacency.get_mut(&self.labels[a]).unwrap().push(self.labels[b].clone());
        }
        GraphJson { adjacency }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        let mut g = Graph::new();
        for v in json.adjacency.keys() {
            g.add_vertex(v);
        }
        for (u, nbrs) in &json.adjacency {
            for v in nbrs {
                let a = g.vertex(u).unwrap();
                let b = g.vertex(v).ok_or_else(|| GraphError::UnknownVertex(v.clone()))?;
                // adjacency lists may be symmetric; keep the first listing
                if a != b && g.edge_between(a, b).is_some() {
                    continue;
                }
                g.add_edge(a, b)?;
            }
        }
        Ok(g)
    }
}

/// Graph JSON: adjacency list keyed by vertex id. Each edge may be listed
/// from one or both ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub adjacency: BTreeMap<String, Vec<String>>,
}

/// Role tag of an edge in the gadget constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum EdgeColor {
    Black,
    Blue,
    Red,
    #[default]
    Plain,
}

/// A graph with a positive integer weight and a color per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    pub graph: Graph,
    weights: Vec<u64>,
    colors: Vec<EdgeColor>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<u64>, colors: Vec<EdgeColor>) -> Result<Self, GraphError> {
        let m = graph.edge_count();
        if weights.len() != m {
            return Err(GraphError::LengthMismatch(weights.len(), m));
        }
        if colors.len() != m {
            return Err(GraphError::LengthMismatch(colors.len(), m));
        }
        if let Some(e) = weights.iter().position(|&w| w == 0) {
            return Err(GraphError::ZeroWeight(e));
        }
        Ok(Self { graph, weights, colors })
    }

    pub fn unit(graph: Graph) -> Self {
        let m = graph.edge_count();
        Self { graph, weights: vec![1; m], colors: vec![EdgeColor::Plain; m] }
    }

    pub fn weight(&self, e: usize) -> u64 {
        self.weights[e]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn color(&self, e: usize) -> EdgeColor {
        self.colors[e]
    }

    pub fn colors(&self) -> &[EdgeColor] {
        &self.colors
    }

    pub fn to_json(&self) -> WeightedGraphJson {
        WeightedGraphJson {
            vertices: self.graph.labels().to_vec(),
            edges: self
                .graph
                .edges()
                .iter()
                .enumerate()
                .map(|(e, &(a, b))| WeightedEdgeJson {
                    ends: [self.graph.label(a).to_string(), self.graph.label(b).to_string()],
                    weight: self.weights[e],
                    color: self.colors[e],
                })
                .collect(),
        }
    }

    pub fn from_json(json: &WeightedGraphJson) -> Result<Self, GraphError> {
        let mut g = Graph::with_vertices(&json.vertices);
        let mut weights = Vec::new();
        let mut colors = Vec::new();
        for e in &json.edges {
            let a = g.vertex(&e.ends[0]).ok_or_else(|| GraphError::UnknownVertex(e.ends[0].clone()))?;
            let b = g.vertex(&e.ends[1]).ok_or_else(|| GraphError::UnknownVertex(e.ends[1].clone()))?;
            g.add_edge(a, b)?;
            weights.push(e.weight);
            colors.push(e.color);
        }
        Self::new(g, weights, colors)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedGraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<WeightedEdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedEdgeJson {
    pub ends: [String; 2],
    pub weight: u64,
    #[serde(default)]
    pub color: EdgeColor,
}

/// Complete graph on `n` vertices labeled `0..n`.
pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, &edges).expect("complete graph is simple")
}

/// Complete bipartite graph; left side `0..a`, right side `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j));
        }
    }
    Graph::from_edges(a + b, &edges).expect("complete bipartite graph is simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_parallels() {
        let mut g = Graph::with_vertices(&["a", "b"]);
        assert!(g.add_edge(0, 0).is_err());
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(GraphError::Parallel("b".into(), "a".into())));
    }

    #[test]
    fn json_round_trip_accepts_symmetric_lists() {
        let g = complete(4);
        let back = Graph::from_json(&g.to_json()).unwrap();
        assert_eq!(back.labeled_edge_set(), g.labeled_edge_set());

        let json: GraphJson = serde_json::from_str(r#"{"adjacency":{"x":["y"],"y":["x","z"],"z":[]}}"#).unwrap();
        let g = Graph::from_json(&json).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn weighted_rejects_zero_weight() {
        let g = complete(3);
        assert_eq!(WeightedGraph::new(g, vec![1, 0, 2], vec![EdgeColor::Plain; 3]), Err(GraphError::ZeroWeight(1)));
    }

    #[test]
    fn kuratowski_sizes() {
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(complete_bipartite(3, 3).edge_count(), 9);
    }
}
