//! Exact crossing numbers of small graphs.
//!
//! A graph has a drawing with at most `k` crossings iff some set of at most
//! `k` pairs of independent edges, with an order of the crossings along
//! each edge, planarizes to a planar graph. Touching instead of crossing at
//! a planarization vertex can always be removed, so planarity of the
//! planarized graph is all that is tested.
//!
//! Assignments are enumerated by size, then lexicographically by pair set,
//! then by per-edge order. The budget counts planarity tests in that order,
//! so results do not depend on how many threads evaluate them.

use itertools::Itertools;
use petgraph::graph::UnGraph;
use rayon::prelude::*;
use serde::Serialize;

use crate::graph::Graph;

/// Planarity of the graph (linear-time LR test).
pub fn is_planar(g: &Graph) -> bool {
    let mut pg = UnGraph::<(), ()>::with_capacity(g.vertex_count(), g.edge_count());
    let ids: Vec<_> = (0..g.vertex_count()).map(|_| pg.add_node(())).collect();
    for &(u, v) in g.edges() {
        pg.add_edge(ids[u], ids[v], ());
    }
    rustworkx_core::planar::is_planar(&pg)
}

/// Crossing pairs and, for every edge, the order of its crossings from its
/// first endpoint to its second.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingAssignment {
    pub pairs: Vec<(usize, usize)>,
    /// `orders[e]` lists indices into `pairs`.
    pub orders: Vec<Vec<usize>>,
}

impl CrossingAssignment {
    /// Planarized graph: crossing `i` becomes vertex `n + i`.
    pub fn planarize(&self, g: &Graph) -> UnGraph<(), ()> {
        let n = g.vertex_count();
        let mut pg = UnGraph::<(), ()>::with_capacity(n + self.pairs.len(), g.edge_count() + 2 * self.pairs.len());
        let ids: Vec<_> = (0..n + self.pairs.len()).map(|_| pg.add_node(())).collect();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let mut prev = u;
            for &c in &self.orders[e] {
                pg.add_edge(ids[prev], ids[n + c], ());
                prev = n + c;
            }
            pg.add_edge(ids[prev], ids[v], ());
        }
        pg
    }

    pub fn is_realizable(&self, g: &Graph) -> bool {
        rustworkx_core::planar::is_planar(&self.planarize(g))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes(CrossingAssignment),
    No,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrossingNumber {
    Exact(usize, CrossingAssignment),
    /// Every count below `lower` was ruled out before the budget ran out.
    BudgetExceeded {
        lower: usize,
    },
}

impl CrossingNumber {
    pub fn value(&self) -> Option<usize> {
        match self {
            CrossingNumber::Exact(k, _) => Some(*k),
            CrossingNumber::BudgetExceeded { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleOptions {
    /// Maximum number of planarity tests.
    pub budget: u64,
    /// Worker threads; 1 evaluates in the calling thread.
    pub jobs: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self { budget: 50_000_000, jobs: 1 }
    }
}

const BATCH: usize = 2048;

struct Search<'a> {
    g: &'a Graph,
    pairs: Vec<(usize, usize)>,
    left: u64,
    pool: Option<rayon::ThreadPool>,
}

enum Step {
    Found(CrossingAssignment),
    Exhausted,
    Budget,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, opts: &OracleOptions) -> Self {
        let m = g.edge_count();
        let pairs =
            (0..m).flat_map(|e| (e + 1..m).map(move |f| (e, f))).filter(|&(e, f)| !g.adjacent_edges(e, f)).collect();
        let pool = (opts.jobs > 1)
            .then(|| rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build().expect("thread pool"));
        Self { g, pairs, left: opts.budget, pool }
    }

    /// Fewest crossings allowed by Euler's formula for the planarization.
    fn euler_bound(&self) -> usize {
        let (n, m) = (self.g.vertex_count() as i64, self.g.edge_count() as i64);
        if n < 3 {
            return 0;
        }
        (m - 3 * n + 6).max(0) as usize
    }

    /// Tries every assignment with exactly `j` pairs.
    fn level(&mut self, j: usize) -> Step {
        let m = self.g.edge_count();
        let mut batch: Vec<CrossingAssignment> = Vec::with_capacity(BATCH);
        let combos = (0..self.pairs.len()).combinations(j);
        for combo in combos {
            let chosen: Vec<(usize, usize)> = combo.iter().map(|&i| self.pairs[i]).collect();
            let mut on_edge: Vec<Vec<usize>> = vec![Vec::new(); m];
            for (i, &(e, f)) in chosen.iter().enumerate() {
                on_edge[e].push(i);
                on_edge[f].push(i);
            }
            let busy: Vec<usize> = (0..m).filter(|&e| on_edge[e].len() > 1).collect();
            let perms: Vec<Vec<Vec<usize>>> =
                busy.iter().map(|&e| on_edge[e].iter().copied().permutations(on_edge[e].len()).collect()).collect();
            for choice in mixed_radix(perms.iter().map(Vec::len).collect()) {
                let mut orders = on_edge.clone();
                for (slot, &e) in busy.iter().enumerate() {
                    orders[e] = perms[slot][choice[slot]].clone();
                }
                batch.push(CrossingAssignment { pairs: chosen.clone(), orders });
                if batch.len() == BATCH {
                    if let Some(step) = self.flush(&mut batch) {
                        return step;
                    }
                }
            }
        }
        self.flush(&mut batch).unwrap_or(Step::Exhausted)
    }

    fn flush(&mut self, batch: &mut Vec<CrossingAssignment>) -> Option<Step> {
        let over = batch.len() as u64 > self.left;
        if over {
            batch.truncate(self.left as usize);
        }
        self.left -= batch.len() as u64;
        let g = self.g;
        let hit = match &self.pool {
            Some(pool) => pool.install(|| batch.par_iter().position_first(|a| a.is_realizable(g))),
            None => batch.iter().position(|a| a.is_realizable(g)),
        };
        let out = match hit {
            Some(i) => Some(Step::Found(batch.swap_remove(i))),
            None if over => Some(Step::Budget),
            None => None,
        };
        batch.clear();
        out
    }
}

/// Every choice vector below `lens`, first digit fastest.
fn mixed_radix(lens: Vec<usize>) -> impl Iterator<Item = Vec<usize>> {
    let total: usize = lens.iter().product();
    (0..total).map(move |mut x| {
        lens.iter()
            .map(|&l| {
                let d = x % l;
                x /= l;
                d
            })
            .collect()
    })
}

/// Decides whether `g` can be drawn with at most `k` crossings.
pub fn crossing_number_leq(g: &Graph, k: usize, opts: &OracleOptions) -> Decision {
    let mut s = Search::new(g, opts);
    let start = s.euler_bound();
    for j in start..=k.min(s.pairs.len()) {
        match s.level(j) {
            Step::Found(a) => return Decision::Yes(a),
            Step::Budget => return Decision::BudgetExceeded,
            Step::Exhausted => {}
        }
    }
    Decision::No
}

/// The crossing number of `g` with an optimal assignment.
pub fn crossing_number(g: &Graph, opts: &OracleOptions) -> CrossingNumber {
    let mut s = Search::new(g, opts);
    let start = s.euler_bound();
    for j in start..=s.pairs.len() {
        match s.level(j) {
            Step::Found(a) => return CrossingNumber::Exact(j, a),
            Step::Budget => return CrossingNumber::BudgetExceeded { lower: j },
            Step::Exhausted => {}
        }
    }
    unreachable!("crossing every independent pair always planarizes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite};

    #[test]
    fn kuratowski_graphs_are_not_planar() {
        assert!(is_planar(&complete(4)));
        assert!(!is_planar(&complete(5)));
        assert!(!is_planar(&complete_bipartite(3, 3)));
    }

    #[test]
    fn small_complete_graphs() {
        let o = OracleOptions::default();
        assert_eq!(crossing_number(&complete(4), &o).value(), Some(0));
        assert_eq!(crossing_number(&complete(5), &o).value(), Some(1));
        assert_eq!(crossing_number_leq(&complete(5), 0, &o), Decision::No);
        assert!(matches!(crossing_number_leq(&complete_bipartite(3, 3), 1, &o), Decision::Yes(_)));
    }

    #[test]
    fn budget_is_reported() {
        let o = OracleOptions { budget: 3, jobs: 1 };
        assert_eq!(crossing_number(&complete(6), &o), CrossingNumber::BudgetExceeded { lower: 3 });
    }
}
