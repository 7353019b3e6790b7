//! Mutable undirected multigraph with stable vertex ids, plus the instance
//! type shared by every solver.

use std::fmt;

/// Stable handle to a vertex. Ids are dense indices assigned in insertion
/// order and stay valid across deletions of other vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u32);

impl VertexId {
    pub fn from_index(idx: usize) -> Self {
        VertexId(idx as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Fixed-capacity bitset over vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexSet {
    bits: Vec<u64>,
    len: usize,
}

impl VertexSet {
    pub fn with_capacity(n: usize) -> Self {
        VertexSet {
            bits: vec![0; n.div_ceil(64)],
            len: 0,
        }
    }

    fn grow(&mut self, idx: usize) {
        let words = idx / 64 + 1;
        if self.bits.len() < words {
            self.bits.resize(words, 0);
        }
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        let idx = v.index();
        self.grow(idx);
        let (w, b) = (idx / 64, idx % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        if fresh {
            self.bits[w] |= 1 << b;
            self.len += 1;
        }
        fresh
    }

    pub fn remove(&mut self, v: VertexId) -> bool {
        let idx = v.index();
        let (w, b) = (idx / 64, idx % 64);
        if w >= self.bits.len() || self.bits[w] & (1 << b) == 0 {
            return false;
        }
        self.bits[w] &= !(1 << b);
        self.len -= 1;
        true
    }

    pub fn contains(&self, v: VertexId) -> bool {
        let idx = v.index();
        let (w, b) = (idx / 64, idx % 64);
        w < self.bits.len() && self.bits[w] & (1 << b) != 0
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            (0..64)
                .filter(move |b| word & (1 << b) != 0)
                .map(move |b| VertexId((w * 64 + b) as u32))
        })
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<T: IntoIterator<Item = VertexId>>(iter: T) -> Self {
        let mut set = VertexSet::default();
        for v in iter {
            set.insert(v);
        }
        set
    }
}

/// Undirected multigraph. Adjacency entries are unique per neighbor and carry
/// edge multiplicity; self-loops are a per-vertex flag contributing 2 to the
/// degree and 1 to the edge count. Parallel edges beyond multiplicity 2 can
/// exist right after parsing; the reduction rules cap them.
#[derive(Debug, Clone, Default)]
pub struct MultiGraph {
    labels: Vec<String>,
    adj: Vec<Vec<(u32, u32)>>,
    loops: Vec<bool>,
    alive: Vec<bool>,
    n_live: usize,
    m_live: usize,
}

impl MultiGraph {
    pub fn new() -> Self {
        MultiGraph::default()
    }

    /// Builds a simple graph on `n` vertices labeled by their index.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = MultiGraph::new();
        for i in 0..n {
            g.add_vertex(i.to_string());
        }
        for &(u, v) in edges {
            g.add_edge_unit(VertexId(u as u32), VertexId(v as u32));
        }
        g
    }

    pub fn add_vertex(&mut self, label: String) -> VertexId {
        let id = VertexId(self.labels.len() as u32);
        self.labels.push(label);
        self.adj.push(Vec::new());
        self.loops.push(false);
        self.alive.push(true);
        self.n_live += 1;
        id
    }

    /// Fresh helper vertex with a synthesized label. Helper vertices are only
    /// ever created on solver-internal copies and never appear in solutions.
    pub fn add_aux_vertex(&mut self) -> VertexId {
        let label = format!("~{}", self.labels.len());
        self.add_vertex(label)
    }

    /// Adds one unit of multiplicity between `u` and `v` (a self-loop if they
    /// coincide). Multiplicity is not capped here.
    pub fn add_edge_unit(&mut self, u: VertexId, v: VertexId) {
        debug_assert!(self.is_live(u) && self.is_live(v));
        if u == v {
            // A loop is a loop; extra parallel loops change nothing.
            if !self.loops[u.index()] {
                self.loops[u.index()] = true;
                self.m_live += 1;
            }
            return;
        }
        self.m_live += 1;
        match self.adj[u.index()].iter_mut().find(|(w, _)| *w == v.0) {
            Some(entry) => entry.1 += 1,
            None => self.adj[u.index()].push((v.0, 1)),
        }
        match self.adj[v.index()].iter_mut().find(|(w, _)| *w == u.0) {
            Some(entry) => entry.1 += 1,
            None => self.adj[v.index()].push((u.0, 1)),
        }
    }

    /// Adds one unit of multiplicity but never beyond 2, mirroring the
    /// multiplicity cap maintained by the reduction rules.
    pub fn add_edge_capped(&mut self, u: VertexId, v: VertexId) {
        if u == v {
            self.add_edge_unit(u, v);
            return;
        }
        if self.multiplicity(u, v) < 2 {
            self.add_edge_unit(u, v);
        }
    }

    pub fn is_live(&self, v: VertexId) -> bool {
        v.index() < self.alive.len() && self.alive[v.index()]
    }

    pub fn n_live(&self) -> usize {
        self.n_live
    }

    /// Edge count; multiplicities counted, each self-loop counts once.
    pub fn m_live(&self) -> usize {
        self.m_live
    }

    pub fn capacity(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.index()]
    }

    pub fn has_loop(&self, v: VertexId) -> bool {
        self.loops[v.index()]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| VertexId(i as u32))
    }

    /// Distinct neighbors with multiplicities, in adjacency order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.adj[v.index()].iter().map(|&(w, m)| (VertexId(w), m))
    }

    pub fn distinct_neighbor_count(&self, v: VertexId) -> usize {
        self.adj[v.index()].len()
    }

    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> u32 {
        self.adj[u.index()]
            .iter()
            .find(|(w, _)| *w == v.0)
            .map_or(0, |&(_, m)| m)
    }

    /// Sum of incident multiplicities, plus 2 per self-loop.
    pub fn degree(&self, v: VertexId) -> usize {
        let base: u32 = self.adj[v.index()].iter().map(|&(_, m)| m).sum();
        base as usize + if self.loops[v.index()] { 2 } else { 0 }
    }

    pub fn set_multiplicity(&mut self, u: VertexId, v: VertexId, mult: u32) {
        debug_assert!(u != v && mult >= 1);
        let old = self.multiplicity(u, v);
        debug_assert!(old >= 1);
        for (a, b) in [(u, v), (v, u)] {
            if let Some(entry) = self.adj[a.index()].iter_mut().find(|(w, _)| *w == b.0) {
                entry.1 = mult;
            }
        }
        self.m_live = self.m_live + mult as usize - old as usize;
    }

    /// Removes all multiplicity between `u` and `v`.
    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) {
        let mult = self.multiplicity(u, v);
        debug_assert!(mult > 0);
        self.adj[u.index()].retain(|(w, _)| *w != v.0);
        self.adj[v.index()].retain(|(w, _)| *w != u.0);
        self.m_live -= mult as usize;
    }

    /// Removes one unit of multiplicity between `u` and `v`.
    pub fn remove_edge_unit(&mut self, u: VertexId, v: VertexId) {
        let mult = self.multiplicity(u, v);
        debug_assert!(mult > 0);
        if mult == 1 {
            self.remove_edge(u, v);
        } else {
            self.set_multiplicity(u, v, mult - 1);
        }
    }

    pub fn clear_loop(&mut self, v: VertexId) {
        if self.loops[v.index()] {
            self.loops[v.index()] = false;
            self.m_live -= 1;
        }
    }

    /// Deletes `v` and all incident edges. Returns the former distinct
    /// neighbors so the caller can feed them to its reduction queue.
    pub fn delete_vertex(&mut self, v: VertexId) -> Vec<VertexId> {
        assert!(self.is_live(v), "delete_vertex on dead vertex {v}");
        let entries = std::mem::take(&mut self.adj[v.index()]);
        let mut touched = Vec::with_capacity(entries.len());
        for (w, m) in entries {
            self.adj[w as usize].retain(|(x, _)| *x != v.0);
            self.m_live -= m as usize;
            touched.push(VertexId(w));
        }
        if self.loops[v.index()] {
            self.loops[v.index()] = false;
            self.m_live -= 1;
        }
        self.alive[v.index()] = false;
        self.n_live -= 1;
        touched
    }

    /// Removes a degree-2 vertex and joins its two edge endpoints. If both
    /// endpoints coincide the surviving vertex gains a self-loop. The new edge
    /// multiplicity is capped at 2. Returns the joined endpoints.
    pub fn suppress_vertex(&mut self, v: VertexId) -> (VertexId, VertexId) {
        assert!(self.is_live(v), "suppress_vertex on dead vertex {v}");
        assert!(
            self.degree(v) == 2 && !self.loops[v.index()],
            "suppress_vertex requires degree 2 without a loop, got degree {} at {v}",
            self.degree(v)
        );
        let entries = self.adj[v.index()].clone();
        let (u, w) = match entries.as_slice() {
            [(u, 2)] => (VertexId(*u), VertexId(*u)),
            [(u, 1), (w, 1)] => (VertexId(*u), VertexId(*w)),
            _ => unreachable!("degree-2 vertex with malformed adjacency"),
        };
        self.delete_vertex(v);
        if u == w {
            self.add_edge_unit(u, u);
        } else {
            self.add_edge_capped(u, w);
        }
        (u, w)
    }

    /// Replaces one unit of edge `u`-`v` by a path `u`-`w`-`v` through a fresh
    /// vertex `w`.
    pub fn subdivide_edge(&mut self, u: VertexId, v: VertexId) -> VertexId {
        assert!(u != v && self.multiplicity(u, v) >= 1);
        self.remove_edge_unit(u, v);
        let w = self.add_aux_vertex();
        self.add_edge_unit(u, w);
        self.add_edge_unit(w, v);
        w
    }

    /// True iff the graph (restricted to `restrict` when given) has no cycle.
    /// Any self-loop or multiplicity-2 edge inside the scope is a cycle.
    pub fn is_acyclic(&self, restrict: Option<&VertexSet>) -> bool {
        let in_scope = |v: VertexId| {
            self.is_live(v) && restrict.map_or(true, |r| r.contains(v))
        };
        let cap = self.capacity();
        let mut seen = vec![false; cap];
        let mut parent: Vec<u32> = vec![u32::MAX; cap];
        let mut stack = Vec::new();
        for root in self.vertices() {
            if !in_scope(root) || seen[root.index()] {
                continue;
            }
            seen[root.index()] = true;
            stack.push(root);
            while let Some(u) = stack.pop() {
                if self.loops[u.index()] {
                    return false;
                }
                for (w, m) in self.neighbors(u) {
                    if !in_scope(w) {
                        continue;
                    }
                    if m >= 2 {
                        return false;
                    }
                    if w.0 == parent[u.index()] {
                        continue;
                    }
                    if seen[w.index()] {
                        return false;
                    }
                    seen[w.index()] = true;
                    parent[w.index()] = u.0;
                    stack.push(w);
                }
            }
        }
        true
    }

    /// True iff deleting `x` leaves a forest.
    pub fn verify_solution(&self, x: &[VertexId]) -> bool {
        let excluded: VertexSet = x.iter().copied().collect();
        let rest: VertexSet = self
            .vertices()
            .filter(|v| !excluded.contains(*v))
            .collect();
        self.is_acyclic(Some(&rest))
    }

    /// Connected components as ascending vertex lists, in ascending order of
    /// their smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let cap = self.capacity();
        let mut seen = vec![false; cap];
        let mut out = Vec::new();
        for root in self.vertices() {
            if seen[root.index()] {
                continue;
            }
            let mut comp = vec![root];
            seen[root.index()] = true;
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for (w, _) in self.neighbors(u) {
                    if !seen[w.index()] {
                        seen[w.index()] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Full-scan audit of the adjacency and counter invariants. Used from
    /// debug assertions and property tests.
    pub fn check_consistency(&self) -> Result<(), String> {
        let mut n = 0;
        let mut m2 = 0;
        for v in self.vertices() {
            n += 1;
            for (w, mult) in self.neighbors(v) {
                if !self.is_live(w) {
                    return Err(format!("{v} adjacent to dead {w}"));
                }
                if mult == 0 {
                    return Err(format!("zero multiplicity entry at {v}"));
                }
                if self.multiplicity(w, v) != mult {
                    return Err(format!("asymmetric edge {v}-{w}"));
                }
                m2 += mult as usize;
            }
            if self.loops[v.index()] {
                m2 += 2;
            }
        }
        for (i, &a) in self.alive.iter().enumerate() {
            if !a && (!self.adj[i].is_empty() || self.loops[i]) {
                return Err(format!("dead vertex {i} keeps edges"));
            }
        }
        if n != self.n_live {
            return Err(format!("n_live {} != recount {n}", self.n_live));
        }
        if m2 / 2 != self.m_live {
            return Err(format!("m_live {} != recount {}", self.m_live, m2 / 2));
        }
        Ok(())
    }
}

/// A sub-problem: graph, undeletable set, remaining budget and the solution
/// vertices already committed (which are no longer in the graph).
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: MultiGraph,
    pub undeletable: VertexSet,
    pub budget: i64,
    /// Vertices exempt from degree-2 suppression; always a subset of
    /// `undeletable`.
    pub irreducible: VertexSet,
    /// Accumulated solution, in deletion order.
    pub forced: Vec<VertexId>,
    pub infeasible: bool,
}

impl Instance {
    pub fn new(graph: MultiGraph, budget: i64) -> Self {
        Instance {
            graph,
            undeletable: VertexSet::default(),
            budget,
            irreducible: VertexSet::default(),
            forced: Vec::new(),
            infeasible: false,
        }
    }

    /// Commits `v` to the solution: deletes it and pays one budget unit.
    /// Marks the instance infeasible instead if `v` is undeletable.
    /// Returns the former neighbors of `v` (empty when infeasible).
    pub fn force(&mut self, v: VertexId) -> Vec<VertexId> {
        if self.undeletable.contains(v) {
            self.infeasible = true;
            return Vec::new();
        }
        let touched = self.graph.delete_vertex(v);
        self.forced.push(v);
        self.budget -= 1;
        if self.budget < 0 {
            self.infeasible = true;
        }
        touched
    }

    pub fn mark_undeletable(&mut self, v: VertexId) {
        debug_assert!(self.graph.is_live(v));
        self.undeletable.insert(v);
    }

    pub fn mark_irreducible(&mut self, v: VertexId) {
        debug_assert!(self.undeletable.contains(v), "irreducible vertices live in U");
        self.irreducible.insert(v);
    }

    pub fn live_non_undeletable(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.graph
            .vertices()
            .filter(move |v| !self.undeletable.contains(*v))
    }
}

/// A feedback vertex set, in deletion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Solution {
    pub vertices: Vec<VertexId>,
}

impl Solution {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        Solution { vertices }
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    /// Original labels in lexicographic order, the on-disk form.
    pub fn sorted_labels(&self, graph: &MultiGraph) -> Vec<String> {
        let mut labels: Vec<String> = self
            .vertices
            .iter()
            .map(|&v| graph.label(v).to_string())
            .collect();
        labels.sort();
        labels
    }
}
