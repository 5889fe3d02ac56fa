//! Replacing edges by bundles of internally disjoint 2-paths.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubstituteError {
    #[error("parameters violate k >= 4 and m >= k (k = {k}, m = {m})")]
    ParameterViolation { m: usize, k: usize },
    #[error("edge {0} is not an edge of the graph")]
    UnknownEdge(usize),
    #[error("the special edge is one of the heavy edges")]
    SpecialIsHeavy,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Replaces every edge in `heavy` by `m` internally disjoint 2-paths and
/// `special_edge` by `k - 3` of them. Other edges are copied unchanged.
pub fn substitute_heavy(
    g: &Graph,
    heavy: &[usize],
    m: usize,
    special_edge: usize,
    k: usize,
) -> Result<Graph, SubstituteError> {
    if k < 4 || m < k {
        return Err(SubstituteError::ParameterViolation { m, k });
    }
    let count = g.edge_count();
    if let Some(&e) = heavy.iter().find(|&&e| e >= count) {
        return Err(SubstituteError::UnknownEdge(e));
    }
    if special_edge >= count {
        return Err(SubstituteError::UnknownEdge(special_edge));
    }
    if heavy.contains(&special_edge) {
        return Err(SubstituteError::SpecialIsHeavy);
    }
    let mut out = Graph::with_vertices(g.labels());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let copies = if heavy.contains(&e) {
            m
        } else if e == special_edge {
            k - 3
        } else {
            out.add_edge(u, v)?;
            continue;
        };
        for i in 0..copies {
            let x = out.add_vertex(&format!("{}~{}.{}", g.label(u), g.label(v), i));
            out.add_edge(u, x)?;
            out.add_edge(x, v)?;
        }
    }
    Ok(out)
}
