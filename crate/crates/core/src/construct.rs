//! Constructions of DP-Nash subgraphs.
//!
//! * [`construct_nash`]: the existence proof run as an algorithm. Repeatedly
//!   peel the star of a vertex whose degree does not exceed its capacity (or,
//!   if none exists, of any vertex after dropping its surplus edges), then
//!   unwind and top up D-vertices that lost neighbours to later stars.
//! * [`construct_nash_seeded`]: same, but the first star is centred at a
//!   chosen vertex and covers all of its X-neighbours (plus optionally `w`).
//! * [`canonical_nash`]: the subgraph with `D = X ∪ Z`, `P = Y`.
//!
//! Every free choice is resolved towards the lowest vertex id.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{normalize, ordered, partition_xyz, CapacitatedGraph, Edge, NashSubgraph, Vertex};

const NOT_ALIVE: usize = usize::MAX;

struct Level {
    center: Vertex,
    leaves: Vec<Vertex>,
}

/// Builder that keeps edge degrees alongside the edge set.
pub(crate) struct Assembly {
    pub d_set: BTreeSet<Vertex>,
    pub p_set: BTreeSet<Vertex>,
    pub edges: BTreeSet<Edge>,
    pub degree: Vec<usize>,
}

impl Assembly {
    pub fn new(n: usize) -> Self {
        Self { d_set: BTreeSet::new(), p_set: BTreeSet::new(), edges: BTreeSet::new(), degree: vec![0; n] }
    }

    pub fn from_subgraph(n: usize, h: NashSubgraph) -> Self {
        let mut degree = vec![0; n];
        for &(u, v) in &h.edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        Self { d_set: h.d_set, p_set: h.p_set, edges: h.edges, degree }
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        if self.edges.insert(ordered(u, v)) {
            self.degree[u] += 1;
            self.degree[v] += 1;
        }
    }

    pub fn add_edges_between(&mut self, a: &[Vertex], b: &[Vertex]) {
        for &u in a {
            for &v in b {
                self.add_edge(u, v);
            }
        }
    }

    /// Adds edges from `v` to the lowest-id vertices of `pool` adjacent to it
    /// until `v` carries `target` edges.
    pub fn top_up(&mut self, g: &CapacitatedGraph, v: Vertex, pool: &[Vertex], target: usize) {
        for &p in pool {
            if self.degree[v] >= target {
                break;
            }
            if g.has_edge(v, p) && !self.edges.contains(&ordered(v, p)) {
                self.add_edge(v, p);
            }
        }
        debug_assert_eq!(self.degree[v], target, "top-up of {v} ran out of edges");
    }

    pub fn finish(self) -> NashSubgraph {
        NashSubgraph { d_set: self.d_set, p_set: self.p_set, edges: self.edges }
    }
}

/// Star-peeling construction on the subgraph of `g` induced by `alive`.
///
/// The result satisfies the DP-Nash conditions of that induced subgraph,
/// i.e. every D-vertex `v` carries `min(d(v), κ(v))` edges with the degree
/// measured inside the subgraph.
pub(crate) fn construct_induced(g: &CapacitatedGraph, alive: &[bool]) -> NashSubgraph {
    let n = g.vertex_count();
    let mut level_of = vec![NOT_ALIVE; n];
    let mut remaining: Vec<bool> = alive.to_vec();
    let mut deg: Vec<usize> =
        g.vertices().map(|v| if alive[v] { g.neighbors(v).iter().filter(|&&w| alive[w]).count() } else { 0 }).collect();
    let mut levels: Vec<Level> = Vec::new();

    loop {
        // Case 1: lowest vertex whose degree is within capacity; else Case 2
        let Some(center) = g
            .vertices()
            .find(|&v| remaining[v] && deg[v] <= g.kappa(v) as usize)
            .or_else(|| g.vertices().find(|&v| remaining[v]))
        else {
            break;
        };
        let mut leaves: Vec<Vertex> = g.neighbors(center).iter().copied().filter(|&w| remaining[w]).collect();
        if deg[center] > g.kappa(center) as usize {
            // drop the surplus edges towards the lowest-id neighbours
            leaves.drain(..deg[center] - g.kappa(center) as usize);
        }
        let t = levels.len();
        for &w in std::iter::once(&center).chain(&leaves) {
            remaining[w] = false;
            level_of[w] = t;
            for &x in g.neighbors(w) {
                if remaining[x] {
                    deg[x] -= 1;
                }
            }
        }
        levels.push(Level { center, leaves });
    }

    // unwind: above[v] = number of neighbours of v on strictly deeper levels
    let mut above = vec![0usize; n];
    let mut out = Assembly::new(n);
    for (t, level) in levels.iter().enumerate().rev() {
        let mut touched: Vec<Vertex> = level
            .leaves
            .iter()
            .flat_map(|&l| g.neighbors(l).iter().copied())
            .filter(|&v| level_of[v] != NOT_ALIVE && level_of[v] > t && out.d_set.contains(&v))
            .collect();
        touched.sort_unstable();
        touched.dedup();
        for v in touched {
            let from_leaves = g.neighbors(v).iter().filter(|w| level.leaves.binary_search(w).is_ok()).count();
            let target = (above[v] + from_leaves).min(g.kappa(v) as usize);
            out.top_up(g, v, &level.leaves, target);
        }
        out.d_set.insert(level.center);
        for &l in &level.leaves {
            out.p_set.insert(l);
            out.add_edge(level.center, l);
        }
        for &w in std::iter::once(&level.center).chain(&level.leaves) {
            for &x in g.neighbors(w) {
                above[x] += 1;
            }
        }
    }
    out.finish()
}

/// A DP-Nash subgraph of any capacitated graph.
pub fn construct_nash(g: &CapacitatedGraph) -> NashSubgraph {
    let gn = normalize(g);
    construct_induced(&gn, &vec![true; gn.vertex_count()])
}

/// DP-Nash subgraph with `u ∈ D` and `N(u) ∩ X ⊆ P`, and `w ∈ P` when given.
///
/// Requires a normalized graph with `|N(u) ∩ X| ≤ κ(u)`; with `w` the bound
/// is strict and `w` must be a neighbour of `u` outside X.
pub fn construct_nash_seeded(g: &CapacitatedGraph, u: Vertex, w: Option<Vertex>) -> Result<NashSubgraph> {
    g.check_vertex(u)?;
    let part = partition_xyz(g)?;
    let ku = g.kappa(u) as usize;
    let forced: Vec<Vertex> = g.neighbors(u).iter().copied().filter(|v| part.x_set.contains(v)).collect();
    if forced.len() > ku {
        return Err(Error::Precondition(format!("|N({u}) ∩ X| = {} exceeds κ({u}) = {ku}", forced.len())));
    }
    let mut chosen: BTreeSet<Vertex> = forced.iter().copied().collect();
    if let Some(w) = w {
        g.check_vertex(w)?;
        if forced.len() >= ku {
            return Err(Error::Precondition(format!("|N({u}) ∩ X| = {} is not < κ({u}) = {ku}", forced.len())));
        }
        if !g.has_edge(u, w) {
            return Err(Error::Precondition(format!("{w} is not a neighbour of {u}")));
        }
        if part.x_set.contains(&w) {
            return Err(Error::Precondition(format!("{w} lies in X")));
        }
        chosen.insert(w);
    }
    for &v in g.neighbors(u) {
        if chosen.len() >= ku {
            break;
        }
        chosen.insert(v);
    }
    let star: Vec<Vertex> = chosen.into_iter().collect();

    let mut alive = vec![true; g.vertex_count()];
    alive[u] = false;
    for &v in &star {
        alive[v] = false;
    }
    let inner = construct_induced(g, &alive);
    let mut out = Assembly::from_subgraph(g.vertex_count(), inner);
    let deficient: Vec<Vertex> = out.d_set.iter().copied().filter(|&v| out.degree[v] < g.demand(v)).collect();
    for v in deficient {
        out.top_up(g, v, &star, g.demand(v));
    }
    out.d_set.insert(u);
    for &v in &star {
        out.p_set.insert(v);
        out.add_edge(u, v);
    }
    Ok(out.finish())
}

/// The subgraph `D = X ∪ Z`, `P = Y`, or `None` when `X ∪ Z` has an
/// internal edge. Z-vertices take their `κ(z)` lowest-id edges.
pub fn canonical_nash(g: &CapacitatedGraph) -> Result<Option<NashSubgraph>> {
    let part = partition_xyz(g)?;
    if !g.is_independent(&part.xz()) {
        return Ok(None);
    }
    let mut edges = BTreeSet::new();
    for &x in &part.x_set {
        edges.extend(g.neighbors(x).iter().map(|&y| ordered(x, y)));
    }
    for &z in &part.z_set {
        edges.extend(g.neighbors(z).iter().take(g.kappa(z) as usize).map(|&y| ordered(z, y)));
    }
    Ok(Some(NashSubgraph { d_set: part.xz(), p_set: part.y_set, edges }))
}
