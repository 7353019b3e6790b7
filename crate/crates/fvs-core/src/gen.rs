//! Deterministic instance generators for tests, suites and demo benchmarks.

use crate::graph::{MultiGraph, VertexId, VertexSet};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn path(n: usize) -> MultiGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    MultiGraph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> MultiGraph {
    assert!(n >= 3);
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((n - 1, 0));
    MultiGraph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> MultiGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    MultiGraph::from_edges(n, &edges)
}

pub fn petersen() -> MultiGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5)); // outer C5
        edges.push((i, i + 5)); // spokes
        edges.push((5 + i, 5 + (i + 2) % 5)); // inner pentagram
    }
    MultiGraph::from_edges(10, &edges)
}

/// The 3-cube.
pub fn cube_q3() -> MultiGraph {
    let mut edges = Vec::new();
    for u in 0..8usize {
        for b in 0..3 {
            let v = u ^ (1 << b);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    MultiGraph::from_edges(8, &edges)
}

/// Two hub vertices joined by three internally disjoint paths with the given
/// numbers of edges.
pub fn theta(lens: [usize; 3]) -> MultiGraph {
    let mut g = MultiGraph::new();
    let a = g.add_vertex("a".into());
    let b = g.add_vertex("b".into());
    for (i, &len) in lens.iter().enumerate() {
        assert!(len >= 1);
        let mut prev = a;
        for j in 1..len {
            let mid = g.add_vertex(format!("p{i}_{j}"));
            g.add_edge_unit(prev, mid);
            prev = mid;
        }
        g.add_edge_unit(prev, b);
    }
    g
}

pub fn disjoint_union(parts: &[&MultiGraph]) -> MultiGraph {
    let mut g = MultiGraph::new();
    for (pi, part) in parts.iter().enumerate() {
        let mut map = vec![None; part.capacity()];
        for v in part.vertices() {
            map[v.index()] = Some(g.add_vertex(format!("g{pi}_{}", part.label(v))));
        }
        for v in part.vertices() {
            if part.has_loop(v) {
                g.add_edge_unit(map[v.index()].unwrap(), map[v.index()].unwrap());
            }
            for (w, m) in part.neighbors(v) {
                if w > v {
                    for _ in 0..m {
                        g.add_edge_unit(map[v.index()].unwrap(), map[w.index()].unwrap());
                    }
                }
            }
        }
    }
    g
}

/// Random multigraph: up to `max_n` vertices and `max_m` edge lines drawn
/// uniformly with replacement, so parallel edges and the occasional self-loop
/// occur naturally.
pub fn random_multigraph(seed: u64, max_n: usize, max_m: usize) -> MultiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let n = rng.gen_range(0..=max_n);
    let mut g = MultiGraph::new();
    for i in 0..n {
        g.add_vertex(i.to_string());
    }
    if n == 0 {
        return g;
    }
    let m = rng.gen_range(0..=max_m);
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        // Loops allowed but kept rare.
        let v = if rng.gen_ratio(1, 20) {
            u
        } else {
            rng.gen_range(0..n)
        };
        g.add_edge_unit(VertexId::from_index(u), VertexId::from_index(v));
    }
    g
}

/// Random simple graph with maximum degree 3 (no loops, no parallels).
pub fn random_subcubic(seed: u64, max_n: usize) -> MultiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51ed_270b);
    let n = rng.gen_range(1..=max_n.max(1));
    let mut g = MultiGraph::new();
    for i in 0..n {
        g.add_vertex(i.to_string());
    }
    let attempts = 3 * n;
    for _ in 0..attempts {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let (u, v) = (VertexId::from_index(u), VertexId::from_index(v));
        if g.degree(u) < 3 && g.degree(v) < 3 && g.multiplicity(u, v) == 0 {
            g.add_edge_unit(u, v);
        }
    }
    g
}

/// Random undeletable set over the live vertices; the induced subgraph is not
/// required to be acyclic.
pub fn random_undeletable(g: &MultiGraph, seed: u64, prob_percent: u32) -> VertexSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xdead_beef);
    g.vertices()
        .filter(|_| rng.gen_ratio(prob_percent.min(100), 100))
        .collect()
}
