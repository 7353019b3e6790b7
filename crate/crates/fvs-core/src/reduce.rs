//! Queue-driven reduction rules shared by all solvers, the degree-sum lower
//! bound prune, and the connected-component splitting hook.
//!
//! Rules, applied to a dequeued vertex until the queue drains:
//! - R1: negative budget or a cycle inside the undeletable set ends the
//!   instance (checked before each dequeue).
//! - R2: delete vertices of degree at most 1.
//! - R3: cap edge multiplicities at 2.
//! - R4: a vertex with a self-loop, or a deletable vertex with two edge
//!   endpoints into a single component of G[U], is forced into the solution.
//! - R5: suppress degree-2 vertices not marked irreducible.
//! - R6: a vertex whose whole neighborhood is one single edge to u and one
//!   double edge to w forces w.

use crate::graph::{Instance, MultiGraph, VertexId, VertexSet};
use std::collections::VecDeque;

/// Deduplicated FIFO of vertices awaiting a reduction check.
#[derive(Debug, Clone, Default)]
pub struct ReductionQueue {
    pending: VecDeque<VertexId>,
    queued: Vec<bool>,
}

impl ReductionQueue {
    pub fn new() -> Self {
        ReductionQueue::default()
    }

    /// Every live vertex, ascending. Used on the first reduction of an
    /// instance.
    pub fn seed_all(g: &MultiGraph) -> Self {
        let mut q = ReductionQueue::new();
        for v in g.vertices() {
            q.push(v);
        }
        q
    }

    pub fn seeded(vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let mut q = ReductionQueue::new();
        for v in vertices {
            q.push(v);
        }
        q
    }

    pub fn push(&mut self, v: VertexId) {
        if self.queued.len() <= v.index() {
            self.queued.resize(v.index() + 1, false);
        }
        if !self.queued[v.index()] {
            self.queued[v.index()] = true;
            self.pending.push_back(v);
        }
    }

    pub fn pop(&mut self) -> Option<VertexId> {
        let v = self.pending.pop_front()?;
        self.queued[v.index()] = false;
        Some(v)
    }

    pub fn is_empty(&self) -> bool {
        self.pending.is_empty()
    }
}

/// What a reduction pass did.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReductionOutcome {
    pub forced_added: usize,
    pub vertices_removed: usize,
    pub edges_removed: usize,
    pub infeasible: bool,
}

/// Union-find over the undeletable vertices, flagging any cycle inside G[U].
/// Rebuilt from scratch whenever an operation may have changed G[U].
struct UndeletableComponents {
    parent: Vec<u32>,
    cyclic: bool,
}

impl UndeletableComponents {
    fn build(g: &MultiGraph, undeletable: &VertexSet) -> Self {
        let mut uc = UndeletableComponents {
            parent: (0..g.capacity() as u32).collect(),
            cyclic: false,
        };
        for v in g.vertices() {
            if !undeletable.contains(v) {
                continue;
            }
            if g.has_loop(v) {
                uc.cyclic = true;
            }
            for (w, mult) in g.neighbors(v) {
                if w <= v || !undeletable.contains(w) {
                    continue;
                }
                if mult >= 2 || !uc.union(v, w) {
                    uc.cyclic = true;
                }
            }
        }
        uc
    }

    fn find(&mut self, v: VertexId) -> u32 {
        let mut x = v.index();
        while self.parent[x] as usize != x {
            self.parent[x] = self.parent[self.parent[x] as usize];
            x = self.parent[x] as usize;
        }
        x as u32
    }

    fn union(&mut self, a: VertexId, b: VertexId) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra as usize] = rb;
        true
    }
}

/// Applies the rules until fixpoint (or until `max_steps` rule applications,
/// for the prefix-safety tests). `apply_r6` is disabled by the ILP
/// preprocessing, which runs rules 2-5 only.
pub(crate) fn reduce_with_options(
    inst: &mut Instance,
    q: &mut ReductionQueue,
    apply_r6: bool,
    max_steps: Option<usize>,
) -> ReductionOutcome {
    let n0 = inst.graph.n_live();
    let m0 = inst.graph.m_live();
    let forced0 = inst.forced.len();
    let mut steps = 0usize;
    let mut budget_left = |steps: &mut usize| match max_steps {
        Some(limit) => {
            if *steps >= limit {
                false
            } else {
                *steps += 1;
                true
            }
        }
        None => true,
    };

    // None = needs rebuild.
    let mut ucomps: Option<UndeletableComponents> = None;

    loop {
        if inst.budget < 0 {
            inst.infeasible = true;
        }
        if inst.infeasible {
            break;
        }
        if ucomps.is_none() {
            let uc = UndeletableComponents::build(&inst.graph, &inst.undeletable);
            if uc.cyclic {
                inst.infeasible = true;
                break;
            }
            ucomps = Some(uc);
        }
        let Some(v) = q.pop() else { break };
        if !inst.graph.is_live(v) {
            continue;
        }

        // R3
        let over: Vec<VertexId> = inst
            .graph
            .neighbors(v)
            .filter(|&(_, m)| m > 2)
            .map(|(w, _)| w)
            .collect();
        for w in over {
            if !budget_left(&mut steps) {
                return finish(inst, n0, m0, forced0);
            }
            inst.graph.set_multiplicity(v, w, 2);
            q.push(v);
            q.push(w);
        }

        // R4: self-loop
        if inst.graph.has_loop(v) {
            if !budget_left(&mut steps) {
                return finish(inst, n0, m0, forced0);
            }
            if inst.undeletable.contains(v) {
                inst.infeasible = true;
                break;
            }
            for w in inst.force(v) {
                q.push(w);
            }
            continue;
        }

        // R2
        if inst.graph.degree(v) <= 1 {
            if !budget_left(&mut steps) {
                return finish(inst, n0, m0, forced0);
            }
            let in_u = inst.undeletable.contains(v);
            for w in inst.graph.delete_vertex(v) {
                q.push(w);
            }
            if in_u {
                ucomps = None;
            }
            continue;
        }

        // R4: two edge endpoints into one component of G[U]
        if !inst.undeletable.contains(v) {
            let uc = ucomps.as_mut().expect("rebuilt at loop top");
            let mut roots: Vec<u32> = Vec::new();
            let mut fire = false;
            for (w, mult) in inst.graph.neighbors(v) {
                if !inst.undeletable.contains(w) {
                    continue;
                }
                if mult >= 2 {
                    fire = true;
                    break;
                }
                let root = uc.find(w);
                if roots.contains(&root) {
                    fire = true;
                    break;
                }
                roots.push(root);
            }
            if fire {
                if !budget_left(&mut steps) {
                    return finish(inst, n0, m0, forced0);
                }
                for w in inst.force(v) {
                    q.push(w);
                }
                continue;
            }
        }

        // R5
        if inst.graph.degree(v) == 2 && !inst.irreducible.contains(v) {
            if !budget_left(&mut steps) {
                return finish(inst, n0, m0, forced0);
            }
            let in_u = inst.undeletable.contains(v);
            let (u, w) = inst.graph.suppress_vertex(v);
            q.push(u);
            q.push(w);
            if in_u || (inst.undeletable.contains(u) && inst.undeletable.contains(w)) {
                // G[U] may have changed shape; let R1 re-examine it.
                ucomps = None;
            }
            continue;
        }

        // R6
        if apply_r6 && inst.graph.distinct_neighbor_count(v) == 2 {
            let entries: Vec<(VertexId, u32)> = inst.graph.neighbors(v).collect();
            let double = match (entries[0], entries[1]) {
                ((_, 1), (w, 2)) | ((w, 2), (_, 1)) => Some(w),
                _ => None,
            };
            if let Some(w) = double {
                if !budget_left(&mut steps) {
                    return finish(inst, n0, m0, forced0);
                }
                // w cannot be undeletable here: that pattern already fired R4
                // (v deletable) or R1 (both undeletable).
                for x in inst.force(w) {
                    q.push(x);
                }
                continue;
            }
        }
    }

    finish(inst, n0, m0, forced0)
}

fn finish(inst: &Instance, n0: usize, m0: usize, forced0: usize) -> ReductionOutcome {
    ReductionOutcome {
        forced_added: inst.forced.len() - forced0,
        vertices_removed: n0 - inst.graph.n_live(),
        edges_removed: m0 - inst.graph.m_live(),
        infeasible: inst.infeasible,
    }
}

/// Runs all six rules until fixpoint.
pub fn reduce_exhaustively(inst: &mut Instance, q: &mut ReductionQueue) -> ReductionOutcome {
    reduce_with_options(inst, q, true, None)
}

/// True when the branch can be abandoned: for every solution size j up to the
/// budget, deleting the j highest-degree deletable vertices still leaves at
/// least |V| - j edges, which no forest on |V| - j vertices can carry.
pub fn lower_bound_prune(inst: &Instance) -> bool {
    if inst.budget < 0 {
        return true;
    }
    let mut degrees: Vec<(usize, VertexId)> = inst
        .live_non_undeletable()
        .map(|v| (inst.graph.degree(v), v))
        .collect();
    degrees.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    let edges = inst.graph.m_live() as i64;
    let verts = inst.graph.n_live() as i64;
    let last_j = (inst.budget as usize).min(degrees.len());
    let mut deleted_degree_sum = 0i64;
    for j in 0..=last_j {
        if j > 0 {
            deleted_degree_sum += degrees[j - 1].0 as i64;
        }
        if edges - deleted_degree_sum < verts - j as i64 {
            return false;
        }
    }
    // Beyond the deletable vertices the left side is fixed and the right side
    // only shrinks, so the inequality keeps holding.
    true
}

/// Solves every connected component except the largest with `solver` (which
/// must return a minimum solution within the sub-instance budget, or None),
/// commits those solutions, and leaves only the largest component in `inst`.
/// Returns the sizes of the separated components.
pub fn split_components<E>(
    inst: &mut Instance,
    solver: &mut dyn FnMut(Instance) -> Result<Option<Vec<VertexId>>, E>,
) -> Result<Vec<usize>, E> {
    let comps = inst.graph.components();
    if comps.len() <= 1 {
        return Ok(Vec::new());
    }
    let largest = comps
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.len().cmp(&b.len()).then(j.cmp(i)))
        .map(|(i, _)| i)
        .unwrap();

    let mut separated = Vec::new();
    for (idx, comp) in comps.iter().enumerate() {
        if idx == largest {
            continue;
        }
        separated.push(comp.len());
        if inst.infeasible {
            // Still strip the component so the caller sees a consistent graph.
            for &v in comp {
                inst.graph.delete_vertex(v);
            }
            continue;
        }
        let members: VertexSet = comp.iter().copied().collect();
        let mut sub = Instance {
            graph: inst.graph.clone(),
            undeletable: inst.undeletable.clone(),
            budget: inst.budget,
            irreducible: inst.irreducible.clone(),
            forced: Vec::new(),
            infeasible: false,
        };
        for v in inst.graph.vertices() {
            if !members.contains(v) {
                sub.graph.delete_vertex(v);
            }
        }
        match solver(sub)? {
            Some(solution) => {
                for v in solution {
                    for w in inst.force(v) {
                        let _ = w; // neighbors are inside the removed component
                    }
                }
                for &v in comp {
                    if inst.graph.is_live(v) {
                        inst.graph.delete_vertex(v);
                    }
                }
            }
            None => {
                inst.infeasible = true;
                for &v in comp {
                    if inst.graph.is_live(v) {
                        inst.graph.delete_vertex(v);
                    }
                }
            }
        }
    }
    Ok(separated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::graph::MultiGraph;
    use crate::oracle;

    fn reduced(mut inst: Instance) -> (Instance, ReductionOutcome) {
        let mut q = ReductionQueue::seed_all(&inst.graph);
        let out = reduce_exhaustively(&mut inst, &mut q);
        (inst, out)
    }

    #[test]
    fn path_reduces_to_nothing() {
        let (inst, out) = reduced(Instance::new(gen::path(5), 0));
        assert!(!out.infeasible);
        assert_eq!(out.forced_added, 0);
        assert_eq!(inst.graph.n_live(), 0);
    }

    #[test]
    fn triangle_with_pendant_forces_one() {
        let mut g = gen::cycle(3);
        let d = g.add_vertex("d".into());
        g.add_edge_unit(VertexId::from_index(0), d);
        let (inst, out) = reduced(Instance::new(g, 1));
        assert!(!out.infeasible);
        assert_eq!(out.forced_added, 1);
        assert_eq!(inst.graph.n_live(), 0);
        // Brute force confirms the optimum is 1.
        let mut g = gen::cycle(3);
        let d = g.add_vertex("d".into());
        g.add_edge_unit(VertexId::from_index(0), d);
        assert_eq!(oracle::min_fvs_bruteforce(&g).size(), 1);
    }

    #[test]
    fn undeletable_self_loop_is_infeasible() {
        let mut g = gen::path(2);
        g.add_edge_unit(VertexId::from_index(1), VertexId::from_index(1));
        let mut inst = Instance::new(g, 10);
        inst.mark_undeletable(VertexId::from_index(1));
        let (_, out) = reduced(inst);
        assert!(out.infeasible);
    }

    #[test]
    fn double_edge_between_undeletable_is_infeasible() {
        let g = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]);
        let mut inst = Instance::new(g, 10);
        inst.mark_undeletable(VertexId::from_index(0));
        inst.mark_undeletable(VertexId::from_index(1));
        let (_, out) = reduced(inst);
        assert!(out.infeasible);
    }

    #[test]
    fn r4_fires_on_two_edges_into_one_undeletable_component() {
        // v adjacent to both ends of an undeletable edge.
        let g = MultiGraph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]);
        let mut inst = Instance::new(g, 5);
        inst.mark_undeletable(VertexId::from_index(1));
        inst.mark_undeletable(VertexId::from_index(2));
        let (inst, out) = reduced(inst);
        assert!(!out.infeasible);
        assert_eq!(inst.forced, vec![VertexId::from_index(0)]);
    }

    #[test]
    fn r6_forces_the_doubled_neighbor() {
        // v(0) with a single edge to u(1) and a double edge to w(2); u and w
        // carry enough extra structure to keep them alive otherwise.
        let mut g = MultiGraph::from_edges(6, &[(0, 1), (0, 2), (0, 2), (1, 3), (1, 4), (3, 4)]);
        g.add_edge_unit(VertexId::from_index(2), VertexId::from_index(5));
        let mut inst = Instance::new(g.clone(), 5);
        let mut q = ReductionQueue::seeded([VertexId::from_index(0)]);
        let out = reduce_exhaustively(&mut inst, &mut q);
        assert!(!out.infeasible);
        assert!(inst.forced.contains(&VertexId::from_index(2)));
        // Forcing w keeps the optimum reachable.
        let opt = oracle::min_fvs_bruteforce(&g).size();
        let rest = oracle::min_fvs_constrained(&inst.graph, &inst.undeletable).unwrap();
        assert_eq!(inst.forced.len() + rest.size(), opt);
    }

    fn fixpoint_invariants(inst: &Instance) {
        for v in inst.graph.vertices() {
            assert!(!inst.graph.has_loop(v));
            let deletable = !inst.undeletable.contains(v) && !inst.irreducible.contains(v);
            if deletable {
                assert!(inst.graph.degree(v) >= 3, "degree-{} leftover", inst.graph.degree(v));
            }
            for (_, m) in inst.graph.neighbors(v) {
                assert!(m <= 2);
            }
        }
    }

    #[test]
    fn reduction_is_optimum_preserving_on_random_instances() {
        for seed in 0..1000u64 {
            let g = gen::random_multigraph(seed, 11, 20);
            let u = gen::random_undeletable(&g, seed, 25);
            let before = oracle::min_fvs_constrained(&g, &u);

            let mut inst = Instance::new(g, 11);
            inst.undeletable = u;
            let mut q = ReductionQueue::seed_all(&inst.graph);
            let out = reduce_exhaustively(&mut inst, &mut q);

            match before {
                None => assert!(out.infeasible, "seed {seed}: lost infeasibility"),
                Some(opt) => {
                    assert!(!out.infeasible, "seed {seed}: spurious infeasibility");
                    fixpoint_invariants(&inst);
                    let after = oracle::min_fvs_constrained(&inst.graph, &inst.undeletable)
                        .expect("reduced instance stays feasible");
                    assert_eq!(
                        out.forced_added + after.size(),
                        opt.size(),
                        "seed {seed}: optimum drifted"
                    );
                }
            }
        }
    }

    #[test]
    fn every_reduction_prefix_preserves_the_optimum() {
        for seed in 0..120u64 {
            let g = gen::random_multigraph(seed, 10, 16);
            let u = gen::random_undeletable(&g, seed, 20);
            let Some(opt) = oracle::min_fvs_constrained(&g, &u) else {
                continue;
            };
            for limit in 0..40 {
                let mut inst = Instance::new(g.clone(), 10);
                inst.undeletable = u.clone();
                let mut q = ReductionQueue::seed_all(&inst.graph);
                let out = reduce_with_options(&mut inst, &mut q, true, Some(limit));
                assert!(!out.infeasible, "seed {seed} limit {limit}");
                let rest = oracle::min_fvs_constrained(&inst.graph, &inst.undeletable)
                    .expect("prefix stays feasible");
                assert_eq!(
                    inst.forced.len() + rest.size(),
                    opt.size(),
                    "seed {seed} limit {limit}"
                );
                if q.is_empty() {
                    break;
                }
            }
        }
    }

    #[test]
    fn two_queue_orders_agree_on_value() {
        for seed in 0..200u64 {
            let g = gen::random_multigraph(seed, 10, 16);
            let run = |rev: bool| {
                let mut inst = Instance::new(g.clone(), 10);
                let mut order: Vec<VertexId> = inst.graph.vertices().collect();
                if rev {
                    order.reverse();
                }
                let mut q = ReductionQueue::seeded(order);
                let out = reduce_exhaustively(&mut inst, &mut q);
                assert!(!out.infeasible);
                let rest = oracle::min_fvs_constrained(&inst.graph, &inst.undeletable)
                    .unwrap()
                    .size();
                out.forced_added + rest
            };
            assert_eq!(run(false), run(true), "seed {seed}");
        }
    }

    #[test]
    fn lower_bound_examples() {
        let c5 = Instance::new(gen::cycle(5), 0);
        assert!(lower_bound_prune(&c5));
        let c5k1 = Instance::new(gen::cycle(5), 1);
        assert!(!lower_bound_prune(&c5k1));
        let forest = Instance::new(gen::path(4), 0);
        assert!(!lower_bound_prune(&forest));
    }

    #[test]
    fn lower_bound_never_prunes_feasible_instances() {
        for seed in 0..500u64 {
            let g = gen::random_multigraph(seed, 10, 18);
            if g.n_live() == 0 {
                continue;
            }
            let opt = oracle::min_fvs_bruteforce(&g).size();
            let inst = Instance::new(g, opt as i64);
            assert!(!lower_bound_prune(&inst), "seed {seed} pruned a feasible budget");
        }
    }

    #[test]
    fn split_solves_small_components() {
        // Two triangles plus a C5; the C5 is largest and stays.
        let g = gen::disjoint_union(&[&gen::cycle(3), &gen::cycle(3), &gen::cycle(5)]);
        let mut inst = Instance::new(g, 4);
        let mut solver = |sub: Instance| -> Result<Option<Vec<VertexId>>, ()> {
            Ok(oracle::min_fvs_constrained(&sub.graph, &sub.undeletable)
                .filter(|s| s.size() as i64 <= sub.budget)
                .map(|s| s.vertices))
        };
        let separated = split_components(&mut inst, &mut solver).unwrap();
        assert_eq!(separated, vec![3, 3]);
        assert!(!inst.infeasible);
        assert_eq!(inst.forced.len(), 2);
        assert_eq!(inst.budget, 2);
        assert_eq!(inst.graph.n_live(), 5);

        // A connected instance passes through untouched.
        let mut conn = Instance::new(gen::cycle(4), 3);
        let separated = split_components(&mut conn, &mut solver).unwrap();
        assert!(separated.is_empty());
        assert_eq!(conn.graph.n_live(), 4);
    }

    #[test]
    fn split_budget_interacts_with_feasibility() {
        let g = gen::disjoint_union(&[&gen::cycle(3), &gen::complete(4)]);
        let mut solver = |sub: Instance| -> Result<Option<Vec<VertexId>>, ()> {
            Ok(oracle::min_fvs_constrained(&sub.graph, &sub.undeletable)
                .filter(|s| s.size() as i64 <= sub.budget)
                .map(|s| s.vertices))
        };
        // Triangle costs 1, K4 keeps budget 1 but needs 2: the caller sees
        // that when it keeps solving the remaining component.
        let mut inst = Instance::new(g.clone(), 2);
        split_components(&mut inst, &mut solver).unwrap();
        assert!(!inst.infeasible);
        assert_eq!(inst.budget, 1);
        assert_eq!(
            oracle::min_fvs_constrained(&inst.graph, &inst.undeletable)
                .unwrap()
                .size(),
            2
        );
        // Total of 3 is enough.
        assert_eq!(oracle::min_fvs_bruteforce(&g).size(), 3);
    }
}
