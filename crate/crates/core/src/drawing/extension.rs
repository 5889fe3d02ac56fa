//! Extending a drawing to a pseudoline arrangement.
//!
//! The drawing sits inside a disk; every edge is prolonged at both ends by
//! an arc running to the boundary circle. The result is a pseudoline
//! arrangement exactly when every two prolonged curves meet once, crossing
//! there, and each curve ends at an antipodal pair of boundary points. Since
//! two arcs of a disk cross an odd number of times exactly when their ends
//! interleave, "every pair meets exactly once" already forces the antipodal
//! boundary pattern.
//!
//! The search prolongs one arc at a time, choosing at each step which strand
//! of the current face to cross or which stretch of the circle to end on, and
//! backtracks as soon as two curves would meet twice. Curves are completed
//! in order, and a finished curve must meet every earlier finished curve.

use std::collections::HashSet;

use super::sweep::{self, SweepOutcome};
use super::{Drawing, DrawingError, NodeKind};
use crate::planar_map::{strand_of, twin, Dart, PlanarMap};

/// Node of an extended drawing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArrNode {
    /// A vertex of the drawn graph.
    Real(usize),
    /// A crossing of two edges, present in the original drawing.
    Crossing,
    /// A crossing involving at least one extension arc.
    ArcCrossing,
    /// Where a curve meets the boundary circle.
    Boundary,
}

/// Owner of a strand in an extended drawing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Curve {
    /// Part of edge `e` itself.
    Edge(usize),
    /// Extension of edge `e` beyond the first (`0`) or last (`1`) node of
    /// its chain.
    Arc(usize, u8),
    Circle,
}

impl Curve {
    pub fn id(self) -> Option<usize> {
        match self {
            Curve::Edge(e) | Curve::Arc(e, _) => Some(e),
            Curve::Circle => None,
        }
    }
}

/// A drawing together with extension arcs and the boundary circle.
///
/// Nodes `0..drawing_nodes` are the nodes of the original drawing, in the
/// same order. `curves[e]` lists the nodes of the prolonged edge `e` from
/// boundary to boundary, passing the drawing's chain of `e` forward.
/// `boundary` lists the boundary nodes in circle order.
#[derive(Debug, Clone)]
pub struct ExtensionWitness {
    pub map: PlanarMap<ArrNode, Curve>,
    pub curves: Vec<Vec<usize>>,
    pub boundary: Vec<usize>,
    pub drawing_nodes: usize,
}

impl ExtensionWitness {
    /// For each curve end, the curves its extension arc crosses, in order
    /// from the edge outwards.
    pub fn corridors(&self) -> Vec<[Vec<usize>; 2]> {
        let mut out = Vec::new();
        for (e, nodes) in self.curves.iter().enumerate() {
            let first_real = nodes.iter().position(|&n| matches!(self.map.node(n), ArrNode::Real(_))).unwrap();
            let last_real = nodes.iter().rposition(|&n| matches!(self.map.node(n), ArrNode::Real(_))).unwrap();
            let crossed = |n: usize| -> usize {
                self.curves.iter().enumerate().find(|&(f, c)| f != e && c.contains(&n)).map(|(f, _)| f).unwrap()
            };
            let before: Vec<usize> = nodes[1..first_real].iter().rev().map(|&n| crossed(n)).collect();
            let after: Vec<usize> = nodes[last_real + 1..nodes.len() - 1].iter().map(|&n| crossed(n)).collect();
            out.push([before, after]);
        }
        out
    }

    /// Edge index owning each boundary node, in circle order.
    pub fn boundary_curves(&self) -> Vec<usize> {
        self.boundary
            .iter()
            .map(|&b| {
                let d = self.map.rotation(b).iter().copied().find(|&d| self.map.strand(strand_of(d)).id().is_some());
                self.map.strand(strand_of(d.expect("boundary node without arc"))).id().unwrap()
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub enum ExtensionOutcome {
    Witness(Box<ExtensionWitness>),
    Infeasible,
    BudgetExceeded,
}

impl ExtensionOutcome {
    pub fn witness(&self) -> Option<&ExtensionWitness> {
        match self {
            ExtensionOutcome::Witness(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ExtensionOutcome::Witness(_) => "witness",
            ExtensionOutcome::Infeasible => "infeasible",
            ExtensionOutcome::BudgetExceeded => "budget exceeded",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Maximum number of search steps (face visits).
    pub budget: u64,
    /// Order in which curves are completed; defaults to a breadth-first
    /// order of the edges starting from the outer face.
    pub curve_order: Option<Vec<usize>>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { budget: 5_000_000, curve_order: None }
    }
}

/// Searches for an extension witness with the default options and the given
/// step budget.
pub fn find_extension(d: &Drawing, budget: u64) -> Result<ExtensionOutcome, DrawingError> {
    find_extension_with(d, &SearchOptions { budget, ..Default::default() })
}

pub fn find_extension_with(d: &Drawing, opts: &SearchOptions) -> Result<ExtensionOutcome, DrawingError> {
    if !d.is_connected() {
        return Err(DrawingError::NotConnected);
    }
    let d = d.clone();
    let opts = opts.clone();
    // deep recursion: one frame per crossing of every arc
    let outcome = std::thread::Builder::new()
        .stack_size(256 << 20)
        .spawn(move || Search::new(&d, &opts).run())
        .expect("spawn search thread")
        .join()
        .expect("search thread panicked");
    Ok(outcome)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Found,
    Fail,
    Budget,
}

/// An entry of the target rotation at a vertex: edge `e`, or its arc.
type Item = (usize, bool);

struct Search<'a> {
    d: &'a Drawing,
    map: PlanarMap<ArrNode, Curve>,
    m: usize,
    meet: Vec<u8>,
    jobs: Vec<(usize, u8)>,
    arcs_done: Vec<u8>,
    configs: Vec<Option<Vec<Item>>>,
    circle: bool,
    outer: Dart,
    steps: u64,
    budget: u64,
    failed: HashSet<Vec<u32>>,
    result: Option<PlanarMap<ArrNode, Curve>>,
}

impl<'a> Search<'a> {
    fn new(d: &'a Drawing, opts: &SearchOptions) -> Self {
        let src = d.map();
        let mut map = PlanarMap::new();
        for n in 0..src.node_count() {
            map.add_node(match *src.node(n) {
                NodeKind::Real { vertex } => ArrNode::Real(vertex),
                NodeKind::Crossing { .. } => ArrNode::Crossing,
            });
        }
        for s in 0..src.strand_count() {
            map.add_strand(src.tail(2 * s), src.tail(2 * s + 1), Curve::Edge(src.strand(s).edge));
        }
        for n in 0..src.node_count() {
            map.set_rotation(n, src.rotation(n));
        }

        let g = d.graph();
        let m = g.edge_count();
        let mut meet = vec![0u8; m * m];
        for e in 0..m {
            for f in 0..m {
                if e != f && g.adjacent_edges(e, f) {
                    meet[e * m + f] = 1;
                }
            }
        }
        for (_, [e, f]) in d.crossings() {
            meet[e * m + f] = meet[e * m + f].saturating_add(1);
            if e != f {
                meet[f * m + e] = meet[f * m + e].saturating_add(1);
            }
        }

        let order = opts.curve_order.clone().unwrap_or_else(|| default_order(d));
        let jobs = order.iter().flat_map(|&e| [(e, 0u8), (e, 1u8)]).collect();
        Self {
            d,
            map,
            m,
            meet,
            jobs,
            arcs_done: vec![0; m],
            configs: vec![None; g.vertex_count()],
            circle: false,
            outer: d.outer_darts().first().copied().unwrap_or(0),
            steps: 0,
            budget: opts.budget,
            failed: HashSet::new(),
            result: None,
        }
    }

    fn run(mut self) -> ExtensionOutcome {
        // a pair that already meets twice cannot be repaired
        let self_cross = (0..self.m).any(|e| self.meet[e * self.m + e] > 0);
        if self_cross || self.meet.iter().any(|&c| c > 1) {
            return ExtensionOutcome::Infeasible;
        }
        if self.m >= 2 {
            match sweep::extend(self.d, self.budget) {
                SweepOutcome::Found(map) => {
                    let w = assemble(self.d, map);
                    if verify_witness(self.d, &w).is_ok() {
                        return ExtensionOutcome::Witness(Box::new(w));
                    }
                }
                SweepOutcome::NoSweep => return ExtensionOutcome::Infeasible,
                SweepOutcome::Unknown(used) => self.budget = self.budget.saturating_sub(used),
            }
        }
        match self.job(0) {
            Flow::Found => {
                let map = self.result.take().unwrap();
                ExtensionOutcome::Witness(Box::new(assemble(self.d, map)))
            }
            Flow::Fail => ExtensionOutcome::Infeasible,
            Flow::Budget => ExtensionOutcome::BudgetExceeded,
        }
    }

    fn meets(&self, e: usize, f: usize) -> u8 {
        self.meet[e * self.m + f]
    }

    fn bump(&mut self, e: usize, f: usize, up: bool) {
        for k in [e * self.m + f, f * self.m + e] {
            if up {
                self.meet[k] += 1;
            } else {
                self.meet[k] -= 1;
            }
        }
    }

    fn job(&mut self, idx: usize) -> Flow {
        if idx == self.jobs.len() {
            let ok = (0..self.m).all(|e| (0..self.m).all(|f| e == f || self.meets(e, f) == 1));
            if ok {
                self.result = Some(self.map.clone());
                return Flow::Found;
            }
            return Flow::Fail;
        }
        let (e, end) = self.jobs[idx];
        let chain = self.d.chain(e);
        let node = if end == 0 { chain[0] } else { chain[chain.len() - 1] };
        let vertex = match self.map.node(node) {
            ArrNode::Real(v) => *v,
            _ => unreachable!("chains end at vertices"),
        };
        if self.configs[vertex].is_some() {
            return self.start_arc(idx, node, vertex);
        }
        let items: Vec<Item> = self.map.rotation(node).iter().map(|&d| self.item(d)).collect();
        for cfg in vertex_configurations(&items) {
            self.steps += 1;
            if self.steps > self.budget {
                self.configs[vertex] = None;
                return Flow::Budget;
            }
            self.configs[vertex] = Some(cfg);
            let r = self.start_arc(idx, node, vertex);
            if r != Flow::Fail {
                return r;
            }
        }
        self.configs[vertex] = None;
        Flow::Fail
    }

    fn item(&self, d: Dart) -> Item {
        match *self.map.strand(strand_of(d)) {
            Curve::Edge(f) => (f, false),
            Curve::Arc(f, _) => (f, true),
            Curve::Circle => unreachable!("circle never touches a vertex"),
        }
    }

    fn start_arc(&mut self, idx: usize, node: usize, vertex: usize) -> Flow {
        let (e, _) = self.jobs[idx];
        let target = self.configs[vertex].as_ref().unwrap();
        let present: Vec<(Item, Dart)> = self.map.rotation(node).iter().map(|&d| (self.item(d), d)).collect();
        let at = target.iter().position(|&it| it == (e, true)).unwrap();
        let k = target.len();
        let corner = (1..k)
            .map(|i| target[(at + i) % k])
            .find_map(|it| present.iter().find(|p| p.0 == it).map(|p| p.1))
            .unwrap();
        if !self.circle {
            return self.route(idx, corner, None);
        }
        let plan = self.plan(idx, corner);
        if !plan.iter().any(|&t| t) {
            return Flow::Fail;
        }
        self.route(idx, corner, Some(&plan))
    }

    /// Boundary nodes in circle order, and the position of each.
    fn boundary_order(&self) -> (Vec<usize>, Vec<usize>) {
        let map = &self.map;
        let mut order = Vec::new();
        let mut pos = vec![usize::MAX; map.node_count()];
        let Some(start) = (self.drawing_nodes()..map.node_count()).find(|&n| *map.node(n) == ArrNode::Boundary) else {
            return (order, pos);
        };
        let mut n = start;
        loop {
            pos[n] = order.len();
            order.push(n);
            let d = map
                .rotation(n)
                .iter()
                .copied()
                .find(|&d| d & 1 == 0 && *map.strand(strand_of(d)) == Curve::Circle)
                .unwrap();
            n = map.head(d);
            if n == start {
                break;
            }
        }
        (order, pos)
    }

    fn drawing_nodes(&self) -> usize {
        self.d.node_count()
    }

    /// Circle darts (facing inwards) on which the arc now starting at `corner`
    /// may end. Every finished curve is a chord of the disk; the arc must end
    /// on the far side of the chords its curve still has to meet, if it is the
    /// curve's last arc, and on the near side of the chords already met.
    fn plan(&self, idx: usize, corner: Dart) -> Vec<bool> {
        let (e, _) = self.jobs[idx];
        let last = self.arcs_done[e] == 1;
        let map = &self.map;
        let (order, pos) = self.boundary_order();
        let slots = order.len();
        let mut ends: Vec<Vec<usize>> = vec![Vec::new(); self.m];
        for &b in &order {
            for &d in map.rotation(b) {
                if let Some(f) = map.strand(strand_of(d)).id() {
                    ends[f].push(pos[b]);
                }
            }
        }
        let slot_of = |y: Dart| pos[map.tail(twin(y))];
        // (start, end, wanted side) per constraining chord; a slot k lies
        // inside chord (p, q) when p <= k < q
        let mut wanted: Vec<(usize, usize, bool)> = Vec::new();
        for f in 0..self.m {
            if f == e || self.arcs_done[f] < 2 {
                continue;
            }
            let met = self.meets(e, f) > 0;
            if !met && !last {
                continue;
            }
            let (p, q) = (ends[f][0].min(ends[f][1]), ends[f][0].max(ends[f][1]));
            let side = self.side_of(corner, f, &|y| {
                let k = slot_of(y);
                p <= k && k < q
            });
            wanted.push((p, q, if met { side } else { !side }));
        }
        let ok_slot: Vec<bool> = (0..slots).map(|k| wanted.iter().all(|&(p, q, w)| (p <= k && k < q) == w)).collect();
        let mut target = vec![false; map.dart_count()];
        for s in 0..map.strand_count() {
            if *map.strand(s) == Curve::Circle {
                let y = 2 * s + 1;
                target[y] = ok_slot[slot_of(y)];
            }
        }
        target
    }

    /// Side of curve `f` that the face at `corner` lies on, named by `inside`
    /// evaluated at any inward circle dart on that side.
    fn side_of(&self, corner: Dart, f: usize, inside: &dyn Fn(Dart) -> bool) -> bool {
        let map = &self.map;
        let mut seen = vec![false; map.dart_count()];
        let mut queue = vec![corner];
        for &x in &map.orbit(corner) {
            seen[x] = true;
        }
        while let Some(d) = queue.pop() {
            for x in map.orbit(d) {
                let c = *map.strand(strand_of(x));
                if c == Curve::Circle {
                    if x & 1 == 1 {
                        return inside(x);
                    }
                    continue;
                }
                if c.id() == Some(f) || seen[twin(x)] {
                    continue;
                }
                for y in map.orbit(twin(x)) {
                    seen[y] = true;
                }
                queue.push(twin(x));
            }
        }
        unreachable!("every face inside the circle reaches it")
    }

    /// Number of strands to cross from each face to reach a target dart,
    /// crossing only curves that `e` may still meet.
    fn distances(&self, e: usize, target: &[bool]) -> Vec<u32> {
        let map = &self.map;
        let mut dist = vec![u32::MAX; map.dart_count()];
        let mut queue = std::collections::VecDeque::new();
        for (y, _) in target.iter().enumerate().filter(|p| *p.1) {
            if dist[y] == u32::MAX {
                for x in map.orbit(y) {
                    dist[x] = 0;
                }
                queue.push_back(y);
            }
        }
        while let Some(d) = queue.pop_front() {
            let here = dist[d];
            for x in map.orbit(d) {
                let Some(g) = map.strand(strand_of(x)).id() else { continue };
                if g == e || self.meets(e, g) > 0 || dist[twin(x)] != u32::MAX {
                    continue;
                }
                for y in map.orbit(twin(x)) {
                    dist[y] = here + 1;
                }
                queue.push_back(twin(x));
            }
        }
        dist
    }

    /// Necessary condition for the unfinished curves: each must still be able
    /// to end at two boundary slots separated by every finished curve, on the
    /// sides where its drawn part lies.
    fn lookahead(&self) -> Option<Vec<usize>> {
        let map = &self.map;
        let (order, pos) = self.boundary_order();
        let slots = order.len();
        let mut options = vec![usize::MAX; self.m];
        if slots == 0 {
            return Some(options);
        }
        let mut ends: Vec<Vec<usize>> = vec![Vec::new(); self.m];
        for &b in &order {
            for &d in map.rotation(b) {
                if let Some(f) = map.strand(strand_of(d)).id() {
                    ends[f].push(pos[b]);
                }
            }
        }
        let chords: Vec<usize> = (0..self.m).filter(|&f| self.arcs_done[f] == 2).collect();
        let words = chords.len().div_ceil(64);
        // side masks of slots, and of every dart's face
        let mut slot_mask = vec![vec![0u64; words]; slots];
        let mut face_mask = vec![vec![0u64; words]; map.dart_count()];
        let slot_of = |y: Dart| pos[map.tail(twin(y))];
        for (c, &f) in chords.iter().enumerate() {
            let (p, q) = (ends[f][0].min(ends[f][1]), ends[f][0].max(ends[f][1]));
            for (k, mask) in slot_mask.iter_mut().enumerate() {
                if p <= k && k < q {
                    mask[c / 64] |= 1 << (c % 64);
                }
            }
            let removed: Vec<bool> = map.strands().iter().map(|s| *s != Curve::Circle && s.id() != Some(f)).collect();
            let (table, class) = map.regions_without(&removed, &[]);
            let mut class_side = vec![None; table.orbits.len()];
            for s in 0..map.strand_count() {
                if *map.strand(s) == Curve::Circle {
                    let y = 2 * s + 1;
                    let k = slot_of(y);
                    class_side[class[table.face_of[y]]] = Some(p <= k && k < q);
                }
            }
            for d in 0..map.dart_count() {
                if class_side[class[table.face_of[d]]] == Some(true) {
                    face_mask[d][c / 64] |= 1 << (c % 64);
                }
            }
        }
        let g = self.d.graph();
        let incident = |f: usize, v: usize| {
            let (a, b) = g.edge(f);
            a == v || b == v
        };
        let bit = |mask: &[u64], c: usize| mask[c / 64] >> (c % 64) & 1 == 1;
        for e in 0..self.m {
            if self.arcs_done[e] == 2 {
                continue;
            }
            let chain = self.d.chain(e);
            // constraints per end: (chord, side) for met chords not through that end
            let end_rule = |node: usize| -> Vec<(usize, bool)> {
                let vertex = match map.node(node) {
                    ArrNode::Real(v) => *v,
                    _ => unreachable!(),
                };
                let probe = map.rotation(node)[0];
                chords
                    .iter()
                    .enumerate()
                    .filter(|&(_, &f)| self.meets(e, f) > 0 && !incident(f, vertex))
                    .map(|(c, _)| (c, bit(&face_mask[probe], c)))
                    .collect()
            };
            let fits = |k: usize, rule: &[(usize, bool)]| rule.iter().all(|&(c, side)| bit(&slot_mask[k], c) == side);
            let complement = |a: &[u64], b: &[u64]| (0..chords.len()).all(|c| bit(a, c) != bit(b, c));
            let second = end_rule(chain[chain.len() - 1]);
            let count = if self.arcs_done[e] == 0 {
                let first = end_rule(chain[0]);
                (0..slots)
                    .filter(|&k| fits(k, &first))
                    .filter(|&k1| (0..slots).any(|k2| fits(k2, &second) && complement(&slot_mask[k1], &slot_mask[k2])))
                    .count()
            } else {
                // arcs are made first end first, so the last end is pending
                let b = ends[e][0];
                (0..slots).filter(|&k2| fits(k2, &second) && complement(&slot_mask[b], &slot_mask[k2])).count()
            };
            if count == 0 {
                return None;
            }
            options[e] = count;
        }
        Some(options)
    }

    fn route(&mut self, idx: usize, tip: Dart, plan: Option<&Vec<bool>>) -> Flow {
        self.steps += 1;
        if self.steps > self.budget {
            return Flow::Budget;
        }
        let (e, end) = self.jobs[idx];
        let orbit = self.map.orbit(tip);
        let dist = plan.map(|t| self.distances(e, t));
        if let Some(dist) = &dist {
            if dist[tip] == u32::MAX {
                return Flow::Fail;
            }
        }

        // stop at the circle
        match plan {
            Some(target) => {
                for &y in &orbit {
                    if y < target.len() && target[y] {
                        let r = self.end_on_circle(idx, tip, y);
                        if r != Flow::Fail {
                            return r;
                        }
                    }
                }
            }
            None => {
                if orbit.contains(&self.outer) {
                    let r = self.create_circle(idx, tip);
                    if r != Flow::Fail {
                        return r;
                    }
                }
            }
        }

        // cross a strand of the face, heading for the target
        let mut options: Vec<(u32, bool, Dart, usize)> = Vec::new();
        for &x in &orbit {
            let Some(f) = self.map.strand(strand_of(x)).id() else { continue };
            if f == e || self.meets(e, f) > 0 {
                continue;
            }
            let far = dist.as_ref().map_or(0, |d| d[twin(x)]);
            if far == u32::MAX {
                continue;
            }
            options.push((far, self.arcs_done[f] < 2, x, f));
        }
        options.sort_by_key(|o| (o.0, o.1));
        for (_, _, x, f) in options {
            let s = strand_of(x);
            let (xn, s2) = self.map.split_strand(s, ArrNode::ArcCrossing);
            let (near, far) = if x & 1 == 0 { (2 * s2, 2 * s + 1) } else { (2 * s + 1, 2 * s2) };
            let a = self.map.connect(tip, near, Curve::Arc(e, end));
            self.bump(e, f, true);
            let r = self.route(idx, far, plan);
            if r != Flow::Fail {
                return r;
            }
            self.bump(e, f, false);
            self.map.undo_connect(a);
            self.map.undo_split(s, xn, s2);
        }
        Flow::Fail
    }

    fn end_on_circle(&mut self, idx: usize, tip: Dart, y: Dart) -> Flow {
        let (e, end) = self.jobs[idx];
        let s = strand_of(y);
        let (b, s2) = self.map.split_strand(s, ArrNode::Boundary);
        let a = self.map.connect(tip, 2 * s + 1, Curve::Arc(e, end));
        let r = self.arc_finished(idx);
        if r == Flow::Fail {
            self.map.undo_connect(a);
            self.map.undo_split(s, b, s2);
        }
        r
    }

    fn create_circle(&mut self, idx: usize, tip: Dart) -> Flow {
        let (e, end) = self.jobs[idx];
        let tip_node = self.map.tail(tip);
        let b = self.map.add_node(ArrNode::Boundary);
        let sc = self.map.add_strand(b, b, Curve::Circle);
        let sa = self.map.add_strand(tip_node, b, Curve::Arc(e, end));
        self.map.set_rotation(b, &[2 * sc, 2 * sa + 1, 2 * sc + 1]);
        self.map.insert_before(tip_node, 2 * sa, tip);
        self.circle = true;
        let r = self.arc_finished(idx);
        if r == Flow::Fail {
            self.circle = false;
            self.map.detach(2 * sa);
            self.map.set_rotation(b, &[]);
            self.map.pop_strand();
            self.map.pop_strand();
            self.map.pop_node();
        }
        r
    }

    /// Continues with the unfinished curve that has the fewest admissible
    /// ends, ties broken by the initial order.
    fn next_curve(&mut self, idx: usize, options: &[usize]) -> Flow {
        if idx == self.jobs.len() {
            return self.job(idx);
        }
        let pick = (idx / 2..self.jobs.len() / 2).min_by_key(|&j| (options[self.jobs[2 * j].0], j)).unwrap();
        self.jobs.swap(2 * pick, idx);
        self.jobs.swap(2 * pick + 1, idx + 1);
        let r = self.job(idx);
        if r == Flow::Fail {
            self.jobs.swap(2 * pick, idx);
            self.jobs.swap(2 * pick + 1, idx + 1);
        }
        r
    }

    fn arc_finished(&mut self, idx: usize) -> Flow {
        let (e, _) = self.jobs[idx];
        self.arcs_done[e] += 1;
        let r = if self.arcs_done[e] == 2 {
            let complete = (0..self.m).all(|f| f == e || self.arcs_done[f] < 2 || self.meets(e, f) == 1);
            let options = if complete { self.lookahead() } else { None };
            match options {
                None => Flow::Fail,
                Some(options) => {
                    let key = self.state_key();
                    if self.failed.contains(&key) {
                        Flow::Fail
                    } else {
                        let r = self.next_curve(idx + 1, &options);
                        if r == Flow::Fail {
                            self.failed.insert(key);
                        }
                        r
                    }
                }
            }
        } else {
            self.job(idx + 1)
        };
        if r == Flow::Fail {
            self.arcs_done[e] -= 1;
        }
        r
    }

    /// Canonical encoding of the search state: the map traversed from dart 0
    /// (which never moves) plus the vertex configurations chosen so far.
    fn state_key(&self) -> Vec<u32> {
        let map = &self.map;
        let mut num = vec![u32::MAX; map.dart_count()];
        let mut order = Vec::with_capacity(map.dart_count());
        let mut key = Vec::with_capacity(4 * map.dart_count());
        if map.dart_count() > 0 {
            num[0] = 0;
            order.push(0);
        }
        let mut i = 0;
        while i < order.len() {
            let d = order[i];
            i += 1;
            for nb in [twin(d), map.rot_next(d)] {
                if num[nb] == u32::MAX {
                    num[nb] = order.len() as u32;
                    order.push(nb);
                }
                key.push(num[nb]);
            }
            key.push(match map.node(map.tail(d)) {
                ArrNode::Real(v) => 4 + *v as u32,
                ArrNode::Crossing => 1,
                ArrNode::ArcCrossing => 2,
                ArrNode::Boundary => 3,
            });
            key.push(match map.strand(strand_of(d)) {
                Curve::Edge(e) => 3 * *e as u32,
                Curve::Arc(e, k) => 3 * *e as u32 + 1 + *k as u32,
                Curve::Circle => u32::MAX,
            });
        }
        key.push(u32::MAX);
        for cfg in &self.configs {
            match cfg {
                None => key.push(u32::MAX - 1),
                Some(items) => key.extend(items.iter().map(|&(e, a)| 2 * e as u32 + u32::from(a))),
            }
        }
        key
    }
}

/// Edges ordered breadth-first from the outer face: edges on the outer
/// boundary first, then edges sharing a vertex or crossing with earlier ones.
fn default_order(d: &Drawing) -> Vec<usize> {
    let m = d.graph().edge_count();
    let mut order = Vec::with_capacity(m);
    let mut seen = vec![false; m];
    let table = d.map().face_table();
    for &od in d.outer_darts() {
        for &x in &table.orbits[table.face_of[od]] {
            let e = d.edge_of_dart(x);
            if !std::mem::replace(&mut seen[e], true) {
                order.push(e);
            }
        }
    }
    let mut i = 0;
    loop {
        while i < order.len() {
            let e = order[i];
            i += 1;
            let mut next: Vec<usize> = (0..m)
                .filter(|&f| !seen[f])
                .filter(|&f| {
                    d.graph().adjacent_edges(e, f)
                        || d.crossings().iter().any(|(_, p)| p.contains(&e) && p.contains(&f))
                })
                .collect();
            next.sort_unstable();
            for f in next {
                seen[f] = true;
                order.push(f);
            }
        }
        match (0..m).find(|&f| !seen[f]) {
            Some(f) => {
                seen[f] = true;
                order.push(f);
            }
            None => break,
        }
    }
    order
}

/// All target rotations at a vertex whose edges appear in the ccw order
/// `edges`: each curve through the vertex occupies two opposite positions of
/// a rotation of length `2k`, so that every two of them cross there.
fn vertex_configurations(edges: &[Item]) -> impl Iterator<Item = Vec<Item>> + '_ {
    let k = edges.len();
    let count = 1u128.checked_shl(k as u32 - 1).unwrap_or(u128::MAX);
    (0..count).map(move |mask| {
        // antipodal pair j (j = 1..k) takes its edge at j or at j + k
        let mut positions: Vec<usize> = vec![0];
        for j in 1..k {
            positions.push(if (mask >> (j - 1)) & 1 == 1 { j + k } else { j });
        }
        positions.sort_unstable();
        let mut target = vec![(usize::MAX, false); 2 * k];
        for (slot, &(e, _)) in positions.iter().zip(edges) {
            target[*slot] = (e, false);
            target[(*slot + k) % (2 * k)] = (e, true);
        }
        target
    })
}

fn walk(map: &PlanarMap<ArrNode, Curve>, start: usize, label: Curve, stop: impl Fn(&ArrNode) -> bool) -> Vec<usize> {
    let mut path = vec![start];
    let mut came: Option<Dart> = None;
    let mut n = start;
    loop {
        let next =
            map.rotation(n).iter().copied().find(|&d| *map.strand(strand_of(d)) == label && Some(twin(d)) != came);
        let Some(d) = next else { break };
        n = map.head(d);
        came = Some(d);
        path.push(n);
        if stop(map.node(n)) {
            break;
        }
    }
    path
}

fn assemble(d: &Drawing, map: PlanarMap<ArrNode, Curve>) -> ExtensionWitness {
    let mut curves = Vec::new();
    for e in 0..d.graph().edge_count() {
        let chain = d.chain(e);
        let (u, v) = (chain[0], chain[chain.len() - 1]);
        let mut before = walk(&map, u, Curve::Arc(e, 0), |k| *k == ArrNode::Boundary);
        before.reverse();
        let middle = walk(&map, u, Curve::Edge(e), |k| matches!(k, ArrNode::Real(_)));
        let after = walk(&map, v, Curve::Arc(e, 1), |k| *k == ArrNode::Boundary);
        let mut c = before;
        c.extend_from_slice(&middle[1..]);
        c.extend_from_slice(&after[1..]);
        curves.push(c);
    }
    let mut boundary = Vec::new();
    if let Some(start) = (0..map.node_count()).find(|&n| *map.node(n) == ArrNode::Boundary) {
        let mut n = start;
        loop {
            boundary.push(n);
            let d = map
                .rotation(n)
                .iter()
                .copied()
                .find(|&d| d & 1 == 0 && *map.strand(strand_of(d)) == Curve::Circle)
                .unwrap();
            n = map.head(d);
            if n == start {
                break;
            }
        }
    }
    ExtensionWitness { map, curves, boundary, drawing_nodes: d.node_count() }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("witness map is not a connected planar map: {0}")]
    NotPlanar(String),
    #[error("curve {0} is malformed: {1}")]
    BadCurve(usize, String),
    #[error("witness does not contain the drawing: {0}")]
    DrawingMismatch(String),
    #[error("curves {0} and {1} meet {2} times")]
    PairCount(usize, usize, usize),
    #[error("curves meeting at node {0} do not cross there")]
    NotTransversal(usize),
    #[error("boundary points are not antipodal: {0}")]
    NotAntipodal(String),
}

/// Checks a witness against a drawing from scratch, using only the witness
/// map and the drawing.
pub fn verify_witness(d: &Drawing, w: &ExtensionWitness) -> Result<(), WitnessError> {
    let map = &w.map;
    let m = d.graph().edge_count();
    map.rotation_consistent().map_err(WitnessError::NotPlanar)?;
    if !map.is_spherical() {
        return Err(WitnessError::NotPlanar("Euler characteristic is not 2".into()));
    }
    let (comps, comp) = map.components();
    let used: HashSet<usize> = (0..map.node_count()).filter(|&n| map.degree(n) > 0).map(|n| comp[n]).collect();
    if used.len() > 1 || (comps > 1 && m > 0 && used.is_empty()) {
        return Err(WitnessError::NotPlanar("map is disconnected".into()));
    }
    if w.curves.len() != m || w.drawing_nodes != d.node_count() {
        return Err(WitnessError::DrawingMismatch("curve or node count differs".into()));
    }

    // curves are simple boundary-to-boundary walks covering their strands
    let mut strand_uses = vec![0usize; map.strand_count()];
    for (e, nodes) in w.curves.iter().enumerate() {
        let bad = |s: &str| WitnessError::BadCurve(e, s.to_string());
        if nodes.len() < 4 {
            return Err(bad("too short"));
        }
        if map.node(nodes[0]) != &ArrNode::Boundary || map.node(nodes[nodes.len() - 1]) != &ArrNode::Boundary {
            return Err(bad("does not end on the boundary"));
        }
        let mut distinct = nodes.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != nodes.len() {
            return Err(bad("repeats a node"));
        }
        for pair in nodes.windows(2) {
            let s = map
                .rotation(pair[0])
                .iter()
                .copied()
                .find(|&x| map.head(x) == pair[1] && map.strand(strand_of(x)).id() == Some(e))
                .ok_or_else(|| bad("consecutive nodes are not joined by one of its strands"))?;
            strand_uses[strand_of(s)] += 1;
        }
        for &n in &nodes[1..nodes.len() - 1] {
            if map.node(n) == &ArrNode::Boundary {
                return Err(bad("touches the boundary in its interior"));
            }
        }
        // the drawing's chain appears in order between the two vertices
        let in_drawing: Vec<usize> = nodes.iter().copied().filter(|&n| n < w.drawing_nodes).collect();
        if in_drawing != d.chain(e) {
            return Err(WitnessError::DrawingMismatch(format!("edge {e} does not follow its chain")));
        }
    }
    for s in 0..map.strand_count() {
        let expected = usize::from(map.strand(s).id().is_some());
        if strand_uses[s] != expected {
            return Err(WitnessError::BadCurve(
                map.strand(s).id().unwrap_or(usize::MAX),
                "strand not covered once".into(),
            ));
        }
    }

    // the drawing's own rotations are preserved
    let neighbor = |x: Dart| -> (usize, usize) {
        let e = map.strand(strand_of(x)).id().unwrap();
        let mut cur = x;
        while map.head(cur) >= w.drawing_nodes {
            let h = map.head(cur);
            let rot = map.rotation(h);
            if rot.len() != 4 {
                return (e, usize::MAX);
            }
            let i = rot.iter().position(|&y| y == twin(cur)).unwrap();
            cur = rot[(i + 2) % rot.len()];
        }
        (e, map.head(cur))
    };
    for n in 0..d.node_count() {
        let got: Vec<(usize, usize)> = map
            .rotation(n)
            .iter()
            .copied()
            .filter(|&x| matches!(map.strand(strand_of(x)), Curve::Edge(_)))
            .map(neighbor)
            .collect();
        let want: Vec<(usize, usize)> =
            d.map().rotation(n).iter().map(|&x| (d.edge_of_dart(x), d.map().head(x))).collect();
        if !cyclic_eq(&got, &want) {
            return Err(WitnessError::DrawingMismatch(format!("rotation at node {n} differs")));
        }
    }

    // the circle lies in the drawing's outer face
    if m > 0 {
        let removed: Vec<bool> = map.strands().iter().map(|c| !matches!(c, Curve::Edge(_))).collect();
        let (table, class) = map.regions_without(&removed, &[]);
        let inner_circle = (0..map.dart_count())
            .find(|&x| x & 1 == 1 && *map.strand(strand_of(x)) == Curve::Circle)
            .ok_or_else(|| WitnessError::NotAntipodal("no circle".into()))?;
        let x = d.outer_darts()[0];
        let target = (d.edge_of_dart(x), d.map().head(x));
        let outer = map
            .rotation(d.map().tail(x))
            .iter()
            .copied()
            .find(|&y| matches!(map.strand(strand_of(y)), Curve::Edge(_)) && neighbor(y) == target)
            .ok_or_else(|| WitnessError::DrawingMismatch("outer face dart missing".into()))?;
        if class[table.face_of[inner_circle]] != class[table.face_of[outer]] {
            return Err(WitnessError::DrawingMismatch("boundary circle is not in the outer face".into()));
        }
    }

    // pairwise exactly one common node, where they cross
    for e in 0..m {
        for f in e + 1..m {
            let common: Vec<usize> = w.curves[e].iter().copied().filter(|n| w.curves[f].contains(n)).collect();
            if common.len() != 1 {
                return Err(WitnessError::PairCount(e, f, common.len()));
            }
            let n = common[0];
            let rot = map.rotation(n);
            let k = rot.len();
            let pos = |c: usize| -> Vec<usize> {
                (0..k).filter(|&i| map.strand(strand_of(rot[i])).id() == Some(c)).collect()
            };
            let (pe, pf) = (pos(e), pos(f));
            if pe.len() != 2 || pf.len() != 2 {
                return Err(WitnessError::NotTransversal(n));
            }
            let inside = |i: usize| (pe[0] < i) == (i < pe[1]);
            if inside(pf[0]) == inside(pf[1]) {
                return Err(WitnessError::NotTransversal(n));
            }
        }
    }

    // boundary order
    let b = &w.boundary;
    if b.len() != 2 * m {
        return Err(WitnessError::NotAntipodal(format!("{} boundary points for {m} curves", b.len())));
    }
    for (i, &n) in b.iter().enumerate() {
        let next = b[(i + 1) % b.len()];
        let joined = map.rotation(n).iter().any(|&x| *map.strand(strand_of(x)) == Curve::Circle && map.head(x) == next);
        if !joined {
            return Err(WitnessError::NotAntipodal("boundary list does not follow the circle".into()));
        }
    }
    let owners = w.boundary_curves();
    for i in 0..m {
        if owners[i] != owners[i + m] {
            return Err(WitnessError::NotAntipodal(format!(
                "position {i} holds curve {} but {} is opposite",
                owners[i],
                owners[i + m]
            )));
        }
    }
    Ok(())
}

fn cyclic_eq<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    a.is_empty() || (0..a.len()).any(|r| (0..a.len()).all(|i| a[(i + r) % a.len()] == b[i]))
}
