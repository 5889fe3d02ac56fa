//! Rotation-system planar maps.
//!
//! Every strand `s` owns two darts, `2s` (forward) and `2s + 1` (backward).
//! Rotations list the darts leaving a node in counterclockwise order. Faces
//! are traced with `face_next(d) = rot_next(twin(d))`, which keeps the traced
//! face on the right of every dart; a corner is named by the dart just
//! counterclockwise of it, so the corner before `c` lies in `orbit(c)`.

use smallvec::SmallVec;

pub type Dart = usize;

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn strand_of(d: Dart) -> usize {
    d >> 1
}

#[derive(Debug, Clone)]
pub struct PlanarMap<N, S> {
    nodes: Vec<N>,
    strands: Vec<S>,
    tail: Vec<usize>,
    rotation: Vec<SmallVec<[Dart; 4]>>,
}

impl<N, S> Default for PlanarMap<N, S> {
    fn default() -> Self {
        Self { nodes: Vec::new(), strands: Vec::new(), tail: Vec::new(), rotation: Vec::new() }
    }
}

/// Faces of a map: the orbit of every face and the face index of every dart.
#[derive(Debug, Clone)]
pub struct FaceTable {
    pub orbits: Vec<Vec<Dart>>,
    pub face_of: Vec<usize>,
}

impl<N, S> PlanarMap<N, S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, payload: N) -> usize {
        self.nodes.push(payload);
        self.rotation.push(SmallVec::new());
        self.nodes.len() - 1
    }

    /// Adds a strand from `a` to `b` without touching any rotation.
    pub fn add_strand(&mut self, a: usize, b: usize, payload: S) -> usize {
        self.strands.push(payload);
        self.tail.push(a);
        self.tail.push(b);
        self.strands.len() - 1
    }

    pub fn set_rotation(&mut self, node: usize, darts: &[Dart]) {
        self.rotation[node] = darts.iter().copied().collect();
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn strand_count(&self) -> usize {
        self.strands.len()
    }

    pub fn dart_count(&self) -> usize {
        self.tail.len()
    }

    pub fn node(&self, n: usize) -> &N {
        &self.nodes[n]
    }

    pub fn node_mut(&mut self, n: usize) -> &mut N {
        &mut self.nodes[n]
    }

    pub fn nodes(&self) -> &[N] {
        &self.nodes
    }

    pub fn strand(&self, s: usize) -> &S {
        &self.strands[s]
    }

    pub fn strands(&self) -> &[S] {
        &self.strands
    }

    pub fn tail(&self, d: Dart) -> usize {
        self.tail[d]
    }

    pub fn head(&self, d: Dart) -> usize {
        self.tail[twin(d)]
    }

    pub fn rotation(&self, n: usize) -> &[Dart] {
        &self.rotation[n]
    }

    pub fn degree(&self, n: usize) -> usize {
        self.rotation[n].len()
    }

    fn position(&self, d: Dart) -> usize {
        let rot = &self.rotation[self.tail[d]];
        rot.iter().position(|&x| x == d).expect("dart missing from its tail rotation")
    }

    /// Counterclockwise successor of `d` around its tail.
    pub fn rot_next(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.tail[d]];
        rot[(self.position(d) + 1) % rot.len()]
    }

    pub fn rot_prev(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.tail[d]];
        rot[(self.position(d) + rot.len() - 1) % rot.len()]
    }

    pub fn face_next(&self, d: Dart) -> Dart {
        self.rot_next(twin(d))
    }

    pub fn orbit(&self, d: Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut x = self.face_next(d);
        while x != d {
            out.push(x);
            x = self.face_next(x);
        }
        out
    }

    /// Checks that every dart occurs exactly once, in the rotation of its tail.
    pub fn rotation_consistent(&self) -> Result<(), String> {
        let mut seen = vec![false; self.tail.len()];
        for (n, rot) in self.rotation.iter().enumerate() {
            for &d in rot {
                if d >= self.tail.len() {
                    return Err(format!("node {n} lists unknown dart {d}"));
                }
                if self.tail[d] != n {
                    return Err(format!("dart {d} listed at node {n} but leaves node {}", self.tail[d]));
                }
                if std::mem::replace(&mut seen[d], true) {
                    return Err(format!("dart {d} listed twice"));
                }
            }
        }
        if let Some(d) = seen.iter().position(|&s| !s) {
            return Err(format!("dart {d} missing from rotation of node {}", self.tail[d]));
        }
        Ok(())
    }

    pub fn face_table(&self) -> FaceTable {
        let mut face_of = vec![usize::MAX; self.tail.len()];
        let mut orbits = Vec::new();
        for d in 0..self.tail.len() {
            if face_of[d] != usize::MAX {
                continue;
            }
            let orbit = self.orbit(d);
            for &x in &orbit {
                face_of[x] = orbits.len();
            }
            orbits.push(orbit);
        }
        FaceTable { orbits, face_of }
    }

    /// Connected component index per node (isolated nodes get their own).
    pub fn components(&self) -> (usize, Vec<usize>) {
        let n = self.nodes.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &d in &self.rotation[x] {
                    let y = self.head(d);
                    if comp[y] == usize::MAX {
                        comp[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    /// Per-component Euler check for the sphere: `n - s + orbits = 2` on
    /// every component with at least one strand.
    pub fn is_spherical(&self) -> bool {
        let (count, comp) = self.components();
        let faces = self.face_table();
        let mut balance = vec![0i64; count];
        let mut has_strand = vec![false; count];
        for c in &comp {
            balance[*c] += 1;
        }
        for s in 0..self.strands.len() {
            let c = comp[self.tail[2 * s]];
            balance[c] -= 1;
            has_strand[c] = true;
        }
        for orbit in &faces.orbits {
            balance[comp[self.tail[orbit[0]]]] += 1;
        }
        (0..count).all(|c| !has_strand[c] || balance[c] == 2)
    }

    /// Places `new` immediately clockwise of `before` in the rotation at
    /// `node`, i.e. into the corner named by `before`.
    pub fn insert_before(&mut self, node: usize, new: Dart, before: Dart) {
        let rot = &mut self.rotation[node];
        let i = rot.iter().position(|&x| x == before).expect("corner dart not at node");
        rot.insert(i, new);
    }

    pub fn push_dart(&mut self, node: usize, d: Dart) {
        self.rotation[node].push(d);
    }

    /// Joins the corners named by `ca` and `cb` (which must lie on a common
    /// face) with a new strand from `tail(ca)` to `tail(cb)`.
    pub fn connect(&mut self, ca: Dart, cb: Dart, payload: S) -> usize {
        let (a, b) = (self.tail[ca], self.tail[cb]);
        let s = self.add_strand(a, b, payload);
        self.insert_before(a, 2 * s, ca);
        self.insert_before(b, 2 * s + 1, cb);
        s
    }

    /// Splits strand `s` with a new node. The old strand keeps its tail and
    /// now ends at the new node; the returned strand runs from the new node to
    /// the old head, so dart directions are preserved.
    pub fn split_strand(&mut self, s: usize, payload: N) -> (usize, usize)
    where
        S: Clone,
    {
        let x = self.add_node(payload);
        let head = self.tail[2 * s + 1];
        let s2 = self.add_strand(x, head, self.strands[s].clone());
        // old backward dart now leaves x; the new backward dart replaces it at head
        let rot = &mut self.rotation[head];
        let i = rot.iter().position(|&d| d == 2 * s + 1).unwrap();
        rot[i] = 2 * s2 + 1;
        self.tail[2 * s + 1] = x;
        self.rotation[x] = SmallVec::from_slice(&[2 * s + 1, 2 * s2]);
        (x, s2)
    }

    /// Reverts the most recent [`connect`](Self::connect), which created `s`.
    pub fn undo_connect(&mut self, s: usize) {
        assert_eq!(s + 1, self.strands.len(), "undo out of order");
        for d in [2 * s, 2 * s + 1] {
            let rot = &mut self.rotation[self.tail[d]];
            let i = rot.iter().position(|&x| x == d).unwrap();
            rot.remove(i);
        }
        self.strands.pop();
        self.tail.truncate(2 * s);
    }

    /// Reverts the most recent [`split_strand`](Self::split_strand) of `s`,
    /// which created node `x` and strand `s2`.
    pub fn undo_split(&mut self, s: usize, x: usize, s2: usize) {
        assert_eq!(s2 + 1, self.strands.len(), "undo out of order");
        assert_eq!(x + 1, self.nodes.len(), "undo out of order");
        let head = self.tail[2 * s2 + 1];
        let rot = &mut self.rotation[head];
        let i = rot.iter().position(|&d| d == 2 * s2 + 1).unwrap();
        rot[i] = 2 * s + 1;
        self.tail[2 * s + 1] = head;
        self.strands.pop();
        self.tail.truncate(2 * s2);
        self.nodes.pop();
        self.rotation.pop();
    }

    /// Removes the most recently added node, which must have no darts.
    pub fn pop_node(&mut self) {
        assert!(self.rotation.last().is_some_and(|r| r.is_empty()));
        self.nodes.pop();
        self.rotation.pop();
    }

    /// Removes the most recently added strand, whose darts must already be
    /// out of every rotation.
    pub fn pop_strand(&mut self) {
        self.strands.pop();
        let n = self.tail.len();
        self.tail.truncate(n - 2);
    }

    /// Removes dart `d` from the rotation of its tail.
    pub fn detach(&mut self, d: Dart) {
        let rot = &mut self.rotation[self.tail[d]];
        let i = rot.iter().position(|&x| x == d).unwrap();
        rot.remove(i);
    }

    /// Regions left after deleting the strands flagged in `removed`. Returns
    /// the face table of the full map and a representative class per face;
    /// faces in the same class belong to the same region. `merged` lists
    /// darts whose faces are known to be one region (e.g. the outer faces of
    /// several components).
    pub fn regions_without(&self, removed: &[bool], merged: &[Dart]) -> (FaceTable, Vec<usize>) {
        let table = self.face_table();
        let mut uf = UnionFind::new(table.orbits.len());
        for (s, &r) in removed.iter().enumerate() {
            if r {
                uf.union(table.face_of[2 * s], table.face_of[2 * s + 1]);
            }
        }
        for w in merged.windows(2) {
            uf.union(table.face_of[w[0]], table.face_of[w[1]]);
        }
        let class = (0..table.orbits.len()).map(|f| uf.find(f)).collect();
        (table, class)
    }
}

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Triangle 0-1-2 drawn counterclockwise.
    fn triangle() -> PlanarMap<(), ()> {
        let mut m = PlanarMap::new();
        for _ in 0..3 {
            m.add_node(());
        }
        let s0 = m.add_strand(0, 1, ());
        let s1 = m.add_strand(1, 2, ());
        let s2 = m.add_strand(2, 0, ());
        m.set_rotation(0, &[2 * s0, 2 * s2 + 1]);
        m.set_rotation(1, &[2 * s1, 2 * s0 + 1]);
        m.set_rotation(2, &[2 * s2, 2 * s1 + 1]);
        m
    }

    #[test]
    fn triangle_has_two_faces() {
        let m = triangle();
        m.rotation_consistent().unwrap();
        assert_eq!(m.face_table().orbits.len(), 2);
        assert!(m.is_spherical());
    }

    #[test]
    fn splitting_keeps_faces_and_directions() {
        let mut m = triangle();
        let (x, s2) = m.split_strand(0, ());
        m.rotation_consistent().unwrap();
        assert_eq!(m.head(0), x);
        assert_eq!(m.head(2 * s2), 1);
        assert_eq!(m.face_table().orbits.len(), 2);
        assert!(m.is_spherical());
    }

    #[test]
    fn chord_splits_a_face() {
        let mut m = triangle();
        let (x, _) = m.split_strand(0, ());
        // corner at x on the side of dart 0's right face, corner at 2 on the same face
        let inner = m.face_table();
        let f = inner.face_of[2 * 3];
        let at2 = m.rotation(2).iter().copied().find(|&d| inner.face_of[d] == f).unwrap();
        m.connect(2 * 3, at2, ());
        assert!(m.is_spherical());
        assert_eq!(m.face_table().orbits.len(), 3);
        assert_eq!(m.degree(x), 3);
    }

    #[test]
    fn disconnected_map_violating_orientation_is_rejected() {
        // figure-eight rotation on one node with two loops interleaved: torus-like
        let mut m: PlanarMap<(), ()> = PlanarMap::new();
        m.add_node(());
        let a = m.add_strand(0, 0, ());
        let b = m.add_strand(0, 0, ());
        m.set_rotation(0, &[2 * a, 2 * b, 2 * a + 1, 2 * b + 1]);
        assert!(!m.is_spherical());
        m.set_rotation(0, &[2 * a, 2 * a + 1, 2 * b, 2 * b + 1]);
        assert!(m.is_spherical());
    }
}
