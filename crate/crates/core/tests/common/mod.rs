//! Brute-force oracles and random instance generators shared by the
//! integration tests. Nothing here calls the library's decision code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use capgraph::{CapacitatedGraph, NashSubgraph, Vertex, VertexSet};
use rand::Rng;

pub fn graph(kappa: &[u32], edges: &[(usize, usize)]) -> CapacitatedGraph {
    CapacitatedGraph::new(kappa.to_vec(), edges.iter().copied()).unwrap()
}

pub fn set(v: &[Vertex]) -> VertexSet {
    v.iter().copied().collect()
}

fn demand(g: &CapacitatedGraph, v: Vertex) -> usize {
    (g.kappa(v) as usize).min(g.neighbors(v).len())
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << n).map(move |mask| (0..n).map(|i| mask >> i & 1 == 1).collect())
}

/// Number of DP-Nash subgraphs with D-side `in_d`, counted up to `stop`.
///
/// Every edge of a DP-Nash subgraph has exactly one D endpoint, so the edge
/// set is a free choice of `min(d, κ)` P-neighbours per D-vertex, subject to
/// every P-vertex being chosen at least once.
fn count_with_d(g: &CapacitatedGraph, in_d: &[bool], stop: usize) -> usize {
    let n = g.vertex_count();
    let d_list: Vec<Vertex> = (0..n).filter(|&v| in_d[v]).collect();
    let mut covered = vec![0usize; n];
    fn rec(
        g: &CapacitatedGraph,
        in_d: &[bool],
        d_list: &[Vertex],
        i: usize,
        covered: &mut [usize],
        count: &mut usize,
        stop: usize,
    ) {
        if *count >= stop {
            return;
        }
        if i == d_list.len() {
            if (0..g.vertex_count()).all(|v| in_d[v] || covered[v] > 0) {
                *count += 1;
            }
            return;
        }
        let x = d_list[i];
        let across: Vec<Vertex> = g.neighbors(x).iter().copied().filter(|&p| !in_d[p]).collect();
        let need = demand(g, x);
        if across.len() < need {
            return;
        }
        for mask in 0u32..1 << across.len() {
            if mask.count_ones() as usize != need {
                continue;
            }
            for (j, &p) in across.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    covered[p] += 1;
                }
            }
            rec(g, in_d, d_list, i + 1, covered, count, stop);
            for (j, &p) in across.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    covered[p] -= 1;
                }
            }
        }
    }
    let mut count = 0;
    rec(g, in_d, &d_list, 0, &mut covered, &mut count, stop);
    count
}

/// Number of DP-Nash subgraphs `(D, P; E')`, counted up to `stop`.
pub fn count_nash(g: &CapacitatedGraph, stop: usize) -> usize {
    let mut total = 0;
    for in_d in subsets(g.vertex_count()) {
        total += count_with_d(g, &in_d, stop - total);
        if total >= stop {
            break;
        }
    }
    total
}

/// D-set test by trying every subset of the edges between `s` and the rest.
pub fn naive_is_dset(g: &CapacitatedGraph, s: &VertexSet) -> bool {
    let n = g.vertex_count();
    let in_d: Vec<bool> = (0..n).map(|v| s.contains(&v)).collect();
    let cut: Vec<(Vertex, Vertex)> = (0..n)
        .filter(|&x| in_d[x])
        .flat_map(|x| g.neighbors(x).iter().filter(|&&p| !in_d[p]).map(move |&p| (x, p)))
        .collect();
    assert!(cut.len() <= 24, "oracle is exponential in the cut size");
    (0u32..1 << cut.len()).any(|mask| {
        let mut deg = vec![0usize; n];
        for (j, &(x, p)) in cut.iter().enumerate() {
            if mask >> j & 1 == 1 {
                deg[x] += 1;
                deg[p] += 1;
            }
        }
        (0..n).all(|v| if in_d[v] { deg[v] == demand(g, v) } else { deg[v] >= 1 })
    })
}

/// All D-sets by the naive test, in lexicographic order.
pub fn naive_dsets(g: &CapacitatedGraph) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = subsets(g.vertex_count())
        .map(|in_d| (0..g.vertex_count()).filter(|&v| in_d[v]).collect::<VertexSet>())
        .filter(|s| naive_is_dset(g, s))
        .collect();
    out.sort();
    out
}

/// Every simple graph on `n` labelled vertices, as edge lists.
pub fn all_edge_sets(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| pairs.iter().enumerate().filter(|&(j, _)| mask >> j & 1 == 1).map(|(_, &e)| e).collect())
        .collect()
}

/// `m` distinct random edges on `n` vertices (fewer if the graph is full).
pub fn random_edges(rng: &mut impl Rng, n: usize, m: usize) -> Vec<(usize, usize)> {
    let mut edges = BTreeSet::new();
    let max = n * n.saturating_sub(1) / 2;
    while edges.len() < m.min(max) {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    edges.into_iter().collect()
}

/// Random graph with edge probability `p` and `κ(v)` uniform in `0..=d(v)`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> CapacitatedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let mut deg = vec![0u32; n];
    for &(u, v) in &edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let kappa = deg.iter().map(|&d| rng.gen_range(0..=d)).collect();
    CapacitatedGraph::new(kappa, edges).unwrap()
}

/// Whether `g` is normalized, checked from the definition.
pub fn normalized(g: &CapacitatedGraph) -> bool {
    g.vertices().all(|v| g.kappa(v) as usize <= g.neighbors(v).len())
        && g.vertices().all(|v| g.neighbors(v).iter().all(|&w| g.kappa(v) > 0 || g.kappa(w) > 0))
}

/// `X ∪ Z` computed from the definitions.
pub fn xz_set(g: &CapacitatedGraph) -> VertexSet {
    let x: VertexSet = g.vertices().filter(|&v| g.kappa(v) as usize == g.neighbors(v).len()).collect();
    let y: VertexSet = x.iter().flat_map(|&v| g.neighbors(v).iter().copied()).filter(|v| !x.contains(v)).collect();
    g.vertices().filter(|v| !y.contains(v)).collect()
}

/// DP-Nash check written from the definition.
pub fn is_nash(g: &CapacitatedGraph, h: &NashSubgraph) -> bool {
    let n = g.vertex_count();
    let in_d: Vec<bool> = (0..n).map(|v| h.d_set.contains(&v)).collect();
    if h.d_set.len() + h.p_set.len() != n || (0..n).any(|v| in_d[v] == h.p_set.contains(&v)) {
        return false;
    }
    let mut deg = vec![0usize; n];
    for &(u, v) in &h.edges {
        if !g.neighbors(u).contains(&v) || in_d[u] == in_d[v] {
            return false;
        }
        deg[u] += 1;
        deg[v] += 1;
    }
    (0..n).all(|v| if in_d[v] { deg[v] == demand(g, v) } else { deg[v] >= 1 })
}

/// Satisfying assignment of a CNF formula by trying every assignment.
pub fn brute_sat(variables: usize, clauses: &[Vec<i32>]) -> Option<Vec<bool>> {
    (0u32..1 << variables)
        .map(|mask| (0..variables).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .find(|a| clauses.iter().all(|c| c.iter().any(|&l| a[l.unsigned_abs() as usize - 1] == (l > 0))))
}

/// Random 3-CNF clauses over three distinct variables each.
pub fn random_cnf(rng: &mut impl Rng, variables: usize, clauses: usize) -> Vec<Vec<i32>> {
    (0..clauses)
        .map(|_| {
            let mut vars: Vec<i32> = (1..=variables as i32).collect();
            (0..3)
                .map(|_| {
                    let v = vars.swap_remove(rng.gen_range(0..vars.len()));
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect()
}
