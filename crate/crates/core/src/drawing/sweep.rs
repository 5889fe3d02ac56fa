//! Extension through a left-to-right sweep.
//!
//! A pseudoline arrangement can be drawn as a wiring diagram, so a drawing
//! that extends is the planarization of an x-monotone drawing. Its nodes can
//! then be swept from left to right: the strands a node receives from the
//! left form a contiguous run of the sweep line, in rotation order, and a
//! crossing node receives exactly one strand of each edge. If no such sweep
//! exists the drawing does not extend.
//!
//! Given a sweep, the extension arcs are threaded in as extra wires. Right
//! arcs go in during a forward pass and left arcs during a backward pass.
//! An arc moves only when the gap it sits in closes, and it never crosses a
//! curve it has already met. Pairs that are still apart at the far right
//! cross there.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;

use super::extension::{ArrNode, Curve};
use super::{Drawing, NodeKind, Point, PolylineDrawing};
use crate::graph::Graph;
use crate::planar_map::{twin, Dart, PlanarMap};

#[derive(Debug, Clone)]
enum Event {
    /// Crossing node; `upper` lies above `lower` just before it.
    Cross { upper: usize, lower: usize },
    /// A vertex whose left edges sit at frontier positions `at..`, or which
    /// opens in gap `at` when it has none. Edges listed top to bottom.
    Vertex { vertex: usize, at: usize, left: Vec<usize>, right: Vec<usize> },
}

pub(super) enum SweepOutcome {
    Found(PlanarMap<ArrNode, Curve>),
    /// No sweep exists.
    NoSweep,
    /// Gave up; the number of steps used.
    Unknown(u64),
}

/// Sweeps found before giving up on threading.
const SWEEP_TRIES: usize = 64;

pub(super) fn extend(d: &Drawing, budget: u64) -> SweepOutcome {
    let mut sw = Sweeper::new(d, budget);
    let mut found = None;
    let mut tries = 0;
    let mut weave_steps = 0u64;
    let res = sw.go(&mut |events: &[Event]| {
        tries += 1;
        let left = budget.saturating_sub(weave_steps) / 4;
        let mut w = Weave::new(d, events, left);
        let flow = w.forward(0);
        weave_steps += w.steps;
        if flow == Flow::Found {
            let (start, ops) = w.result.take().unwrap();
            if let Some(map) = realize(d, &start, &ops) {
                found = Some(map);
                return true;
            }
        }
        tries >= SWEEP_TRIES || weave_steps >= budget
    });
    let used = sw.steps + weave_steps;
    match (found, res) {
        (Some(map), _) => SweepOutcome::Found(map),
        // threading is not exhaustive, so only a missing sweep is conclusive
        (None, Ok(false)) if tries == 0 => SweepOutcome::NoSweep,
        _ => SweepOutcome::Unknown(used),
    }
}

enum Halt {
    Stop,
    Budget,
}

enum Move {
    Source { v: usize, corner: usize, gap: usize },
    Pass { v: usize, top: usize, at: usize, k: usize },
}

struct Sweeper<'a> {
    d: &'a Drawing,
    region: Vec<usize>,
    outer: usize,
    swept: Vec<bool>,
    todo: usize,
    frontier: Vec<Dart>,
    events: Vec<Event>,
    dead: HashSet<(Vec<bool>, Vec<Dart>)>,
    steps: u64,
    budget: u64,
}

impl<'a> Sweeper<'a> {
    fn new(d: &'a Drawing, budget: u64) -> Self {
        let map = d.map();
        let (table, class) = map.regions_without(&vec![false; map.strand_count()], d.outer_darts());
        let region: Vec<usize> = table.face_of.iter().map(|&f| class[f]).collect();
        let outer = d.outer_darts().first().map_or(usize::MAX, |&x| region[x]);
        let swept: Vec<bool> = (0..map.node_count()).map(|n| map.degree(n) == 0).collect();
        let todo = swept.iter().filter(|&&s| !s).count();
        Self {
            d,
            region,
            outer,
            swept,
            todo,
            frontier: Vec::new(),
            events: Vec::new(),
            dead: HashSet::new(),
            steps: 0,
            budget,
        }
    }

    fn gap_region(&self, g: usize) -> usize {
        if g == 0 || g == self.frontier.len() {
            self.outer
        } else {
            self.region[self.frontier[g - 1]]
        }
    }

    fn moves(&self) -> Vec<Move> {
        let map = self.d.map();
        let mut passes = Vec::new();
        let mut sources = Vec::new();
        for v in 0..map.node_count() {
            if self.swept[v] {
                continue;
            }
            let rot = map.rotation(v);
            let deg = rot.len();
            let is_left: Vec<bool> = rot.iter().map(|&x| self.swept[map.head(x)]).collect();
            let k = is_left.iter().filter(|&&l| l).count();
            let crossing = matches!(map.node(v), NodeKind::Crossing { .. });
            if crossing && k != 2 {
                continue;
            }
            if k == 0 {
                for corner in 0..deg {
                    let r = self.region[rot[corner]];
                    for gap in 0..=self.frontier.len() {
                        if self.gap_region(gap) == r {
                            sources.push(Move::Source { v, corner, gap });
                        }
                    }
                }
                continue;
            }
            for top in 0..deg {
                if !is_left[top] || (k < deg && is_left[(top + deg - 1) % deg]) {
                    continue;
                }
                let Some(at) = self.frontier.iter().position(|&f| f == twin(rot[top])) else { continue };
                if at + k <= self.frontier.len() && (0..k).all(|t| self.frontier[at + t] == twin(rot[(top + t) % deg]))
                {
                    // crossings and sinks have nothing left to decide
                    if crossing || k == deg {
                        return vec![Move::Pass { v, top, at, k }];
                    }
                    passes.push((deg - k, Move::Pass { v, top, at, k }));
                }
            }
        }
        // nodes with the fewest open neighbors first
        passes.sort_by_key(|p| p.0);
        passes.into_iter().map(|p| p.1).chain(sources).collect()
    }

    fn apply(&mut self, mv: &Move) -> usize {
        let map = self.d.map();
        let edge = |x: Dart| self.d.edge_of_dart(x);
        let (v, event) = match *mv {
            Move::Source { v, corner, gap } => {
                let rot = map.rotation(v);
                let deg = rot.len();
                let new: Vec<Dart> = (0..deg).rev().map(|j| rot[(corner + j) % deg]).collect();
                let right = new.iter().map(|&x| edge(x)).collect();
                self.frontier.splice(gap..gap, new);
                (v, Event::Vertex { vertex: vertex_of(map.node(v)), at: gap, left: Vec::new(), right })
            }
            Move::Pass { v, top, at, k } => {
                let rot = map.rotation(v);
                let deg = rot.len();
                let left: Vec<usize> = self.frontier[at..at + k].iter().map(|&x| edge(x)).collect();
                let new: Vec<Dart> = (k..deg).rev().map(|j| rot[(top + j) % deg]).collect();
                let right: Vec<usize> = new.iter().map(|&x| edge(x)).collect();
                self.frontier.splice(at..at + k, new);
                let event = match map.node(v) {
                    NodeKind::Crossing { .. } => Event::Cross { upper: left[0], lower: left[1] },
                    &NodeKind::Real { vertex } => Event::Vertex { vertex, at, left, right },
                };
                (v, event)
            }
        };
        self.swept[v] = true;
        self.todo -= 1;
        self.events.push(event);
        v
    }

    /// Depth-first search over sweeps; `found` is called on each complete
    /// sweep and returns true to stop. Returns whether the subtree held a
    /// complete sweep.
    fn go(&mut self, found: &mut dyn FnMut(&[Event]) -> bool) -> Result<bool, Halt> {
        if self.todo == 0 {
            return if found(&self.events) { Err(Halt::Stop) } else { Ok(true) };
        }
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Halt::Budget);
        }
        let key = (self.swept.clone(), self.frontier.clone());
        if self.dead.contains(&key) {
            return Ok(false);
        }
        let mut any = false;
        for mv in self.moves() {
            let saved = self.frontier.clone();
            let v = self.apply(&mv);
            let r = self.go(found);
            self.frontier = saved;
            self.swept[v] = false;
            self.todo += 1;
            self.events.pop();
            any |= r?;
        }
        if !any {
            self.dead.insert(key);
        }
        Ok(any)
    }
}

fn vertex_of(k: &NodeKind) -> usize {
    match *k {
        NodeKind::Real { vertex } => vertex,
        NodeKind::Crossing { .. } => unreachable!("crossing nodes are never sources"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Body(usize),
    Left(usize),
    Right(usize),
}

impl Tok {
    fn curve(self) -> usize {
        match self {
            Tok::Body(e) | Tok::Left(e) | Tok::Right(e) => e,
        }
    }
}

/// One step between consecutive columns of the wiring diagram.
#[derive(Debug, Clone)]
enum Op {
    Swap(usize),
    /// `take` wires from `at` meet at `vertex` and leave as `put`.
    Collapse {
        at: usize,
        take: usize,
        put: Vec<Tok>,
        vertex: usize,
    },
}

/// Decision levels responsible for a failure.
type Levels = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Flow {
    Found,
    Fail(Levels),
    Budget,
}

/// Threads the extension arcs through a sweep. Each event (forward) or
/// replayed step (backward) is a decision level; failures report the levels
/// that placed the arcs involved, and the search jumps straight back to the
/// latest of them.
struct Weave<'a> {
    events: &'a [Event],
    m: usize,
    meet: Vec<u8>,
    tokens: Vec<Tok>,
    backward: bool,
    level: usize,
    /// Levels at which each moving arc was placed or moved.
    touched: Vec<Levels>,
    /// Changes to `meet` and `touched`, undone on backtracking.
    trail: Vec<Undo>,
    fops: Vec<Op>,
    bops: Vec<Op>,
    forward_end: Vec<Tok>,
    steps: u64,
    budget: u64,
    result: Option<(Vec<Tok>, Vec<Op>)>,
}

struct Saved {
    tokens: Vec<Tok>,
    ops: usize,
    trail: usize,
}

enum Undo {
    Meet(usize, usize),
    Touch(usize),
}

fn union(a: &mut Levels, b: &[usize], drop: usize) {
    a.extend(b.iter().copied().filter(|&x| x != drop));
    a.sort_unstable();
    a.dedup();
}

impl<'a> Weave<'a> {
    fn new(d: &Drawing, events: &'a [Event], budget: u64) -> Self {
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
            meet[e * m + f] = 1;
            meet[f * m + e] = 1;
        }
        Self {
            events,
            m,
            meet,
            tokens: Vec::new(),
            backward: false,
            level: 0,
            touched: vec![Vec::new(); m],
            trail: Vec::new(),
            fops: Vec::new(),
            bops: Vec::new(),
            forward_end: Vec::new(),
            steps: 0,
            budget,
            result: None,
        }
    }

    fn log(&mut self, op: Op) {
        if self.backward {
            self.bops.push(op);
        } else {
            self.fops.push(op);
        }
    }

    fn save(&self) -> Saved {
        let ops = if self.backward { self.bops.len() } else { self.fops.len() };
        Saved { tokens: self.tokens.clone(), ops, trail: self.trail.len() }
    }

    fn restore(&mut self, s: Saved) {
        self.tokens = s.tokens;
        if self.backward {
            self.bops.truncate(s.ops);
        } else {
            self.fops.truncate(s.ops);
        }
        while self.trail.len() > s.trail {
            match self.trail.pop().unwrap() {
                Undo::Meet(a, b) => {
                    self.meet[a * self.m + b] = 0;
                    self.meet[b * self.m + a] = 0;
                }
                Undo::Touch(c) => {
                    self.touched[c].pop();
                }
            }
        }
    }

    fn pos(&self, t: Tok) -> usize {
        self.tokens.iter().position(|&x| x == t).expect("token present")
    }

    fn is_mover(&self, t: Tok) -> bool {
        if self.backward {
            matches!(t, Tok::Left(_))
        } else {
            matches!(t, Tok::Right(_))
        }
    }

    fn touch(&mut self, t: Tok) {
        if self.is_mover(t) {
            let l = self.level;
            let v = &mut self.touched[t.curve()];
            if v.last() != Some(&l) {
                v.push(l);
                self.trail.push(Undo::Touch(t.curve()));
            }
        }
    }

    /// Levels that decided where the given tokens are.
    fn blame(&self, toks: &[Tok]) -> Levels {
        let mut out = Vec::new();
        for &t in toks {
            if self.is_mover(t) {
                union(&mut out, &self.touched[t.curve()], usize::MAX);
            }
        }
        out
    }

    /// Swaps positions `j` and `j + 1`, which must not have met yet.
    fn cross(&mut self, j: usize) -> Result<(), Levels> {
        let (ta, tb) = (self.tokens[j], self.tokens[j + 1]);
        let (a, b) = (ta.curve(), tb.curve());
        if self.meet[a * self.m + b] != 0 {
            let mut c = self.blame(&[ta, tb]);
            union(&mut c, &[self.level], usize::MAX);
            return Err(c);
        }
        self.meet[a * self.m + b] = 1;
        self.meet[b * self.m + a] = 1;
        self.trail.push(Undo::Meet(a, b));
        self.touch(ta);
        self.touch(tb);
        self.tokens.swap(j, j + 1);
        self.log(Op::Swap(j));
        Ok(())
    }

    fn movers_between(&self, top: Tok, bottom: Tok) -> Vec<Tok> {
        let (p, q) = (self.pos(top), self.pos(bottom));
        if q <= p {
            return Vec::new();
        }
        self.tokens[p + 1..q].iter().copied().filter(|&t| self.is_mover(t)).collect()
    }

    /// Candidate exit directions (true = up) for the movers between `top`
    /// and `bottom`. A mover that met a base curve on each side is stuck;
    /// it is returned as the error.
    fn exits(&self, top: Tok, bottom: Tok, movers: &[Tok]) -> Result<Vec<Vec<bool>>, Tok> {
        let (p, q) = (self.pos(top), self.pos(bottom));
        let met = |a: Tok, b: Tok| self.meet[a.curve() * self.m + b.curve()] != 0;
        let mut forced: Vec<Option<bool>> = Vec::with_capacity(movers.len());
        for &t in movers {
            let j = self.pos(t);
            let base =
                |r: std::ops::Range<usize>| self.tokens[r].iter().filter(|&&x| !self.is_mover(x)).any(|&x| met(t, x));
            let up_ok = !base(p..j);
            let down_ok = !base(j + 1..q + 1);
            forced.push(match (up_ok, down_ok) {
                (false, false) => return Err(t),
                (true, false) => Some(true),
                (false, true) => Some(false),
                (true, true) => None,
            });
        }
        let k = movers.len();
        let mut out = Vec::new();
        let mut cur = vec![false; k];
        self.assign(movers, &forced, 0, &mut cur, &mut out);
        Ok(out)
    }

    fn assign(&self, movers: &[Tok], forced: &[Option<bool>], i: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        const LIMIT: usize = 12;
        if out.len() >= LIMIT {
            return;
        }
        if i == movers.len() {
            out.push(cur.clone());
            return;
        }
        let met = |a: Tok, b: Tok| self.meet[a.curve() * self.m + b.curve()] != 0;
        let options: &[bool] = match forced[i] {
            Some(true) => &[true],
            Some(false) => &[false],
            None => &[true, false],
        };
        for &up in options {
            // an up mover passes every down mover above it
            if up && (0..i).any(|h| !cur[h] && met(movers[h], movers[i])) {
                continue;
            }
            cur[i] = up;
            self.assign(movers, forced, i + 1, cur, out);
        }
    }

    /// Moves the movers out of the block between `top` and `bottom`.
    fn exit(&mut self, top: Tok, bottom: Tok, movers: &[Tok], up: &[bool]) -> Result<(), Levels> {
        for (i, &t) in movers.iter().enumerate() {
            if up[i] {
                while self.pos(t) > self.pos(top) {
                    self.cross(self.pos(t) - 1)?;
                }
            }
        }
        for (i, &t) in movers.iter().enumerate().rev() {
            if !up[i] {
                while self.pos(t) < self.pos(bottom) {
                    self.cross(self.pos(t))?;
                }
            }
        }
        Ok(())
    }

    fn tick(&mut self) -> bool {
        self.steps += 1;
        self.steps <= self.budget
    }

    fn collapse(&mut self, at: usize, take: usize, put: Vec<Tok>, vertex: usize) {
        for &t in &put {
            self.touch(t);
        }
        self.tokens.splice(at..at + take, put.iter().copied());
        self.log(Op::Collapse { at, take, put, vertex });
    }

    /// Runs `deeper` after each way of clearing the block between `top` and
    /// `bottom` and applying `then`, collecting conflicts.
    fn clear_block(&mut self, lv: usize, top: Tok, bottom: Tok, then: &mut dyn FnMut(&mut Self) -> Flow) -> Flow {
        let movers = self.movers_between(top, bottom);
        let options = match self.exits(top, bottom, &movers) {
            Ok(o) => o,
            Err(stuck) => return Flow::Fail(self.blame(&[stuck])),
        };
        if options.is_empty() {
            return Flow::Fail(self.blame(&movers));
        }
        let mut acc = Vec::new();
        for up in options {
            let s = self.save();
            self.level = lv;
            let r = match self.exit(top, bottom, &movers, &up) {
                Ok(()) => then(self),
                Err(c) => Flow::Fail(c),
            };
            self.restore(s);
            match r {
                Flow::Fail(c) => {
                    if !c.contains(&lv) {
                        return Flow::Fail(c);
                    }
                    union(&mut acc, &c, lv);
                }
                f => return f,
            }
        }
        Flow::Fail(acc)
    }

    fn forward(&mut self, i: usize) -> Flow {
        if i == self.events.len() {
            return self.start_backward();
        }
        if !self.tick() {
            return Flow::Budget;
        }
        match self.events[i].clone() {
            Event::Cross { upper, lower } => {
                let (top, bottom) = (Tok::Body(upper), Tok::Body(lower));
                self.clear_block(i, top, bottom, &mut |w: &mut Self| {
                    let j = w.pos(top);
                    w.tokens.swap(j, j + 1);
                    w.log(Op::Swap(j));
                    w.forward(i + 1)
                })
            }
            Event::Vertex { vertex, at, left, right } => {
                let bodies: Vec<Tok> = right.iter().map(|&e| Tok::Body(e)).collect();
                if left.is_empty() {
                    let base: Vec<usize> =
                        (0..self.tokens.len()).filter(|&j| matches!(self.tokens[j], Tok::Body(_))).collect();
                    let start = if at == 0 { 0 } else { base[at - 1] + 1 };
                    let end = base.get(at).copied().unwrap_or(self.tokens.len());
                    let mut acc = Vec::new();
                    for p in (start..=end).rev() {
                        let s = self.save();
                        self.level = i;
                        for j in start..end {
                            let t = self.tokens[j];
                            self.touch(t);
                        }
                        self.collapse(p, 0, bodies.clone(), vertex);
                        let r = self.forward(i + 1);
                        match r {
                            Flow::Fail(c) => {
                                self.restore(s);
                                if !c.contains(&i) {
                                    return Flow::Fail(c);
                                }
                                union(&mut acc, &c, i);
                            }
                            f => return f,
                        }
                    }
                    return Flow::Fail(acc);
                }
                let (top, bottom) = (Tok::Body(left[0]), Tok::Body(*left.last().unwrap()));
                let ghosts: Vec<Tok> = left.iter().rev().map(|&e| Tok::Right(e)).collect();
                let k = left.len();
                self.clear_block(i, top, bottom, &mut |w: &mut Self| {
                    let p = w.pos(top);
                    let mut acc = Vec::new();
                    for put in merges(&bodies, &ghosts) {
                        let s = w.save();
                        w.level = i;
                        w.collapse(p, k, put, vertex);
                        match w.forward(i + 1) {
                            Flow::Fail(c) => {
                                w.restore(s);
                                if !c.contains(&i) {
                                    return Flow::Fail(c);
                                }
                                union(&mut acc, &c, i);
                            }
                            f => return f,
                        }
                    }
                    Flow::Fail(acc)
                })
            }
        }
    }

    fn start_backward(&mut self) -> Flow {
        let all: Levels = (0..self.events.len()).collect();
        self.forward_end = self.tokens.clone();
        let s = self.save();
        self.backward = true;
        self.bops.clear();
        let outer = std::mem::replace(&mut self.touched, vec![Vec::new(); self.m]);
        let k = self.fops.len();
        let f = self.backward(k);
        self.backward = false;
        self.restore(s);
        self.touched = outer;
        match f {
            Flow::Fail(_) => Flow::Fail(all),
            f => f,
        }
    }

    fn backward(&mut self, k: usize) -> Flow {
        if k == 0 {
            return self.finish();
        }
        if !self.tick() {
            return Flow::Budget;
        }
        let lv = self.events.len() + 1 + (self.fops.len() - k);
        let base: Vec<usize> = (0..self.tokens.len()).filter(|&j| !self.is_mover(self.tokens[j])).collect();
        match self.fops[k - 1].clone() {
            Op::Swap(i) => {
                let (top, bottom) = (self.tokens[base[i]], self.tokens[base[i + 1]]);
                self.clear_block(lv, top, bottom, &mut |w: &mut Self| {
                    let j = w.pos(top);
                    w.tokens.swap(j, j + 1);
                    w.log(Op::Swap(j));
                    w.backward(k - 1)
                })
            }
            Op::Collapse { at, put, vertex, .. } => {
                let n = put.len();
                let (top, bottom) = (self.tokens[base[at]], self.tokens[base[at + n - 1]]);
                let new: Vec<Tok> = put
                    .iter()
                    .rev()
                    .map(|&t| match t {
                        Tok::Body(e) => Tok::Left(e),
                        Tok::Right(e) => Tok::Body(e),
                        Tok::Left(_) => unreachable!("left arcs are not part of the forward pass"),
                    })
                    .collect();
                self.clear_block(lv, top, bottom, &mut |w: &mut Self| {
                    let p = w.pos(top);
                    for &t in &new {
                        w.touch(t);
                    }
                    w.tokens.splice(p..p + n, new.iter().copied());
                    // recorded in forward orientation
                    w.log(Op::Collapse { at: p, take: new.len(), put: put.clone(), vertex });
                    w.backward(k - 1)
                })
            }
        }
    }

    /// Crosses the pairs still apart at the far right and checks that every
    /// pair met exactly once.
    fn finish(&mut self) -> Flow {
        let m = self.m;
        let all: Levels = (0..self.events.len()).collect();
        let start = self.tokens.clone();
        let mut rank = vec![0usize; m];
        for (i, t) in start.iter().enumerate() {
            rank[t.curve()] = m - 1 - i;
        }
        let mut ops: Vec<Op> = self.bops.iter().rev().cloned().collect();
        let mut col = self.forward_end.clone();
        let mut meet = self.meet.clone();
        loop {
            let mut changed = false;
            for j in 0..col.len().saturating_sub(1) {
                let (a, b) = (col[j].curve(), col[j + 1].curve());
                if rank[a] > rank[b] {
                    if meet[a * m + b] != 0 {
                        return Flow::Fail(all);
                    }
                    meet[a * m + b] = 1;
                    meet[b * m + a] = 1;
                    col.swap(j, j + 1);
                    ops.push(Op::Swap(j));
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if (0..m).any(|e| (0..m).any(|f| e != f && meet[e * m + f] != 1)) {
            return Flow::Fail(all);
        }
        self.result = Some((start, ops));
        Flow::Found
    }
}

/// All interleavings of `a` and `b` keeping each in order, those with `a`
/// earlier first.
fn merges<'x>(a: &'x [Tok], b: &'x [Tok]) -> impl Iterator<Item = Vec<Tok>> + 'x {
    let n = a.len() + b.len();
    (0..n).combinations(a.len()).map(move |at| {
        let (mut i, mut j) = (0, 0);
        (0..n)
            .map(|p| {
                if at.get(i) == Some(&p) {
                    i += 1;
                    a[i - 1]
                } else {
                    j += 1;
                    b[j - 1]
                }
            })
            .collect()
    })
}

/// Lays the wiring diagram out in the plane and planarizes it into an
/// extension map whose first nodes are those of `d`.
fn realize(d: &Drawing, start: &[Tok], ops: &[Op]) -> Option<PlanarMap<ArrNode, Curve>> {
    let g = d.graph();
    let (n, m) = (g.vertex_count(), g.edge_count());
    let idx = |t: Tok| match t {
        Tok::Body(e) => e,
        Tok::Left(e) => m + 2 * e,
        Tok::Right(e) => m + 2 * e + 1,
    };
    let mut polys: Vec<Vec<Point>> = vec![Vec::new(); 3 * m];
    let mut lv = vec![usize::MAX; m];
    let mut rv = vec![usize::MAX; m];
    let mut positions: Vec<Point> = (0..n).map(|v| (-10.0, 10.0 + v as f64)).collect();
    for (r, &t) in start.iter().enumerate() {
        polys[idx(t)].push((-2.0, -(r as f64)));
    }
    let mut col = start.to_vec();
    for (c, op) in ops.iter().enumerate() {
        let x = 2.0 * c as f64;
        for (r, &t) in col.iter().enumerate() {
            polys[idx(t)].push((x, -(r as f64)));
        }
        match op {
            Op::Swap(j) => col.swap(*j, j + 1),
            Op::Collapse { at, take, put, vertex } => {
                let lo = -(*at as f64 + (take + put.len()) as f64 / 2.0);
                let hi = 1.0 - *at as f64;
                let p = (x + 1.0, (lo + hi) / 2.0);
                positions[*vertex] = p;
                for &t in &col[*at..at + take] {
                    polys[idx(t)].push(p);
                    match t {
                        Tok::Body(e) => rv[e] = *vertex,
                        Tok::Left(e) => lv[e] = *vertex,
                        Tok::Right(_) => return None,
                    }
                }
                for &t in put {
                    polys[idx(t)].push(p);
                    match t {
                        Tok::Body(e) => lv[e] = *vertex,
                        Tok::Right(e) => rv[e] = *vertex,
                        Tok::Left(_) => return None,
                    }
                }
                col.splice(*at..at + take, put.iter().copied());
            }
        }
    }
    let last = 2.0 * ops.len() as f64;
    for (r, &t) in col.iter().enumerate() {
        polys[idx(t)].push((last, -(r as f64)));
        polys[idx(t)].push((last + 2.0, -(r as f64)));
    }
    if col.len() != m || lv.contains(&usize::MAX) || rv.contains(&usize::MAX) {
        return None;
    }

    let labels: Vec<String> = (0..n + 2 * m).map(|i| i.to_string()).collect();
    let mut aux = Graph::with_vertices(&labels);
    let lb = |e: usize| n + e;
    let rb = |e: usize| n + m + e;
    // interior points where the wire actually bends
    let inner = |p: &Vec<Point>| {
        let mut out: Vec<Point> = Vec::new();
        for i in 1..p.len() - 1 {
            let a = out.last().copied().unwrap_or(p[0]);
            let (b, c) = (p[i], p[i + 1]);
            if ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).abs() > 1e-12 {
                out.push(b);
            }
        }
        out
    };
    let mut bends = Vec::new();
    for e in 0..m {
        aux.add_edge(lv[e], rv[e]).ok()?;
        bends.push(inner(&polys[e]));
    }
    for e in 0..m {
        aux.add_edge(lb(e), lv[e]).ok()?;
        bends.push(inner(&polys[m + 2 * e]));
        aux.add_edge(rv[e], rb(e)).ok()?;
        bends.push(inner(&polys[m + 2 * e + 1]));
    }
    positions.resize(n + 2 * m, (0.0, 0.0));
    for (r, &t) in start.iter().enumerate() {
        positions[lb(t.curve())] = (-2.0, -(r as f64));
    }
    for (r, &t) in col.iter().enumerate() {
        positions[rb(t.curve())] = (last + 2.0, -(r as f64));
    }
    for w in start.windows(2) {
        aux.add_edge(lb(w[1].curve()), lb(w[0].curve())).ok()?;
        bends.push(Vec::new());
    }
    for w in col.windows(2) {
        aux.add_edge(rb(w[0].curve()), rb(w[1].curve())).ok()?;
        bends.push(Vec::new());
    }
    let (top, bottom) = (1.0, -(m as f64));
    aux.add_edge(lb(start[0].curve()), rb(col[0].curve())).ok()?;
    bends.push(vec![(-2.0, top), (last + 2.0, top)]);
    aux.add_edge(rb(col[m - 1].curve()), lb(start[m - 1].curve())).ok()?;
    bends.push(vec![(last + 2.0, bottom), (-2.0, bottom)]);

    let pd = PolylineDrawing { graph: aux, positions, bends, weights: None };
    let ad = pd.to_drawing().ok()?;
    let amap = ad.map();

    let pair_node: HashMap<(usize, usize), usize> =
        d.crossings().into_iter().map(|(x, [e, f])| ((e.min(f), e.max(f)), x)).collect();
    let mut new_id = vec![usize::MAX; amap.node_count()];
    let mut kinds = vec![ArrNode::Boundary; amap.node_count()];
    let mut next = d.node_count();
    let mut seen = vec![false; d.node_count()];
    for a in 0..amap.node_count() {
        let (id, kind) = match *amap.node(a) {
            NodeKind::Real { vertex } if vertex < n => (d.real_node(vertex), ArrNode::Real(vertex)),
            NodeKind::Crossing { edges: [e, f] } if e < m && f < m => {
                (*pair_node.get(&(e.min(f), e.max(f)))?, ArrNode::Crossing)
            }
            k => {
                next += 1;
                (next - 1, if matches!(k, NodeKind::Real { .. }) { ArrNode::Boundary } else { ArrNode::ArcCrossing })
            }
        };
        if id < seen.len() {
            if seen[id] {
                return None;
            }
            seen[id] = true;
        }
        new_id[a] = id;
        kinds[id] = kind;
    }
    if seen.contains(&false) {
        return None;
    }
    let end_at = |e: usize, v: usize| u8::from(d.chain(e)[0] != d.real_node(v));
    let mut map = PlanarMap::new();
    for k in kinds {
        map.add_node(k);
    }
    for s in 0..amap.strand_count() {
        let k = amap.strand(s).edge;
        let label = if k < m {
            Curve::Edge(k)
        } else if k < 3 * m {
            let e = (k - m) / 2;
            if (k - m) % 2 == 0 {
                Curve::Arc(e, end_at(e, lv[e]))
            } else {
                Curve::Arc(e, end_at(e, rv[e]))
            }
        } else {
            Curve::Circle
        };
        map.add_strand(new_id[amap.tail(2 * s)], new_id[amap.tail(2 * s + 1)], label);
    }
    for a in 0..amap.node_count() {
        map.set_rotation(new_id[a], amap.rotation(a));
    }
    Some(map)
}
