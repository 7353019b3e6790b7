//! Brute-force reference solvers. Every other solver in this workspace is
//! tested against these; keep them dumb.

use crate::graph::{MultiGraph, Solution, VertexId, VertexSet};
use itertools::Itertools;

const ORACLE_VERTEX_LIMIT: usize = 20;

/// Minimum feedback vertex set by subset enumeration in increasing size.
/// Within a size class, the lexicographically first subset wins.
pub fn min_fvs_bruteforce(g: &MultiGraph) -> Solution {
    min_fvs_constrained(g, &VertexSet::default())
        .expect("unconstrained instance always has a solution")
}

/// Minimum X disjoint from `undeletable` with G - X a forest, or None when
/// even deleting everything allowed leaves a cycle.
pub fn min_fvs_constrained(g: &MultiGraph, undeletable: &VertexSet) -> Option<Solution> {
    assert!(
        g.n_live() <= ORACLE_VERTEX_LIMIT,
        "oracle limited to {ORACLE_VERTEX_LIMIT} vertices, got {}",
        g.n_live()
    );
    let candidates: Vec<VertexId> = g
        .vertices()
        .filter(|v| !undeletable.contains(*v))
        .collect();
    for size in 0..=candidates.len() {
        for subset in candidates.iter().copied().combinations(size) {
            if g.verify_solution(&subset) {
                return Some(Solution::new(subset));
            }
        }
    }
    None
}

/// Minimum X avoiding `root` such that the component of `root` in G - X is a
/// tree. Cycles in other components are ignored.
pub fn min_rooted_bruteforce(g: &MultiGraph, root: VertexId) -> Vec<VertexId> {
    assert!(g.n_live() <= ORACLE_VERTEX_LIMIT);
    assert!(g.is_live(root));
    let candidates: Vec<VertexId> = g.vertices().filter(|&v| v != root).collect();
    for size in 0..=candidates.len() {
        for subset in candidates.iter().copied().combinations(size) {
            if root_component_is_tree(g, root, &subset) {
                return subset;
            }
        }
    }
    unreachable!("deleting all non-root vertices isolates the root");
}

pub fn root_component_is_tree(g: &MultiGraph, root: VertexId, deleted: &[VertexId]) -> bool {
    let gone: VertexSet = deleted.iter().copied().collect();
    debug_assert!(!gone.contains(root));
    let mut comp = VertexSet::with_capacity(g.capacity());
    comp.insert(root);
    let mut queue = vec![root];
    while let Some(u) = queue.pop() {
        for (w, _) in g.neighbors(u) {
            if !gone.contains(w) && comp.insert(w) {
                queue.push(w);
            }
        }
    }
    g.is_acyclic(Some(&comp))
}
