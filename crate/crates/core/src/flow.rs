//! Integer max-flow (Dinic) and the lower-bounded feasibility test behind
//! [`crate::is_dset`].

use std::collections::VecDeque;

use crate::graph::{ordered, CapacitatedGraph, NashSubgraph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug)]
struct Arc {
    to: usize,
    cap: u64,
    rev: usize,
}

/// Residual network with integer capacities.
#[derive(Clone, Debug, Default)]
pub struct FlowNetwork {
    graph: Vec<Vec<Arc>>,
    level: Vec<u32>,
    iter: Vec<usize>,
    original: Vec<(usize, usize, u64)>,
}

/// Handle to an arc added with [`FlowNetwork::add_edge`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArcId(usize);

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        let mut net = Self::default();
        net.reset(nodes);
        net
    }

    /// Drops all arcs and resizes to `nodes`, keeping allocations.
    pub fn reset(&mut self, nodes: usize) {
        for list in &mut self.graph {
            list.clear();
        }
        self.graph.resize_with(nodes, Vec::new);
        self.graph.truncate(nodes);
        self.original.clear();
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> ArcId {
        let fwd = self.graph[from].len();
        let back = self.graph[to].len() + usize::from(from == to);
        self.graph[from].push(Arc { to, cap, rev: back });
        self.graph[to].push(Arc { to: from, cap: 0, rev: fwd });
        self.original.push((from, fwd, cap));
        ArcId(self.original.len() - 1)
    }

    /// Flow currently routed through `arc`.
    pub fn flow(&self, arc: ArcId) -> u64 {
        let (from, idx, cap) = self.original[arc.0];
        cap - self.graph[from][idx].cap
    }

    fn bfs(&mut self, s: usize) {
        self.level.clear();
        self.level.resize(self.graph.len(), u32::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for a in &self.graph[v] {
                if a.cap > 0 && self.level[a.to] == u32::MAX {
                    self.level[a.to] = self.level[v] + 1;
                    queue.push_back(a.to);
                }
            }
        }
    }

    fn dfs(&mut self, v: usize, t: usize, limit: u64) -> u64 {
        if v == t {
            return limit;
        }
        while self.iter[v] < self.graph[v].len() {
            let Arc { to, cap, rev } = self.graph[v][self.iter[v]];
            if cap > 0 && self.level[v] < self.level[to] {
                let d = self.dfs(to, t, limit.min(cap));
                if d > 0 {
                    let i = self.iter[v];
                    self.graph[v][i].cap -= d;
                    self.graph[to][rev].cap += d;
                    return d;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        loop {
            self.bfs(s);
            if self.level[t] == u32::MAX {
                return total;
            }
            self.iter.clear();
            self.iter.resize(self.graph.len(), 0);
            loop {
                let f = self.dfs(s, t, u64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }
}

/// Role of a vertex in a (partial) D/P labelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Role {
    D,
    P,
    Free,
}

/// Reusable D-set feasibility checker.
///
/// Every vertex `x` that may be in D ships up to `c(x) = min(d(x), κ(x))`
/// units over unit arcs to neighbours that may be in P; for D-vertices the
/// amount is exactly `c(x)`, and every P-vertex must receive at least one
/// unit. Senders and receivers are separate nodes, so a free vertex may play
/// both parts, which makes the test for partial labellings a relaxation.
/// Lower bounds are moved to a super source and super sink in the usual
/// way; the instance is feasible iff the auxiliary max-flow saturates every
/// super-source arc.
#[derive(Debug, Default)]
pub struct DsetChecker {
    net: FlowNetwork,
    arcs: Vec<(Vertex, Vertex, ArcId)>,
    roles: Vec<Role>,
}

impl DsetChecker {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fast membership test with an indicator slice (`in_d[v]`).
    pub fn feasible(&mut self, g: &CapacitatedGraph, in_d: &[bool]) -> bool {
        self.roles.clear();
        self.roles.extend(in_d.iter().map(|&d| if d { Role::D } else { Role::P }));
        self.solve(g)
    }

    /// Necessary condition for some completion of `roles` to be a D-set.
    pub(crate) fn extendable(&mut self, g: &CapacitatedGraph, roles: &[Role]) -> bool {
        self.roles.clear();
        self.roles.extend_from_slice(roles);
        self.solve(g)
    }

    pub fn witness(&mut self, g: &CapacitatedGraph, s: &VertexSet) -> Option<NashSubgraph> {
        if s.iter().any(|&v| v >= g.vertex_count()) {
            return None;
        }
        let mut in_d = vec![false; g.vertex_count()];
        for &v in s {
            in_d[v] = true;
        }
        if !self.feasible(g, &in_d) {
            return None;
        }
        let edges = self.arcs.iter().filter(|&&(_, _, arc)| self.net.flow(arc) == 1).map(|&(x, p, _)| ordered(x, p));
        let d_set = g.vertices().filter(|&v| in_d[v]);
        let p_set = g.vertices().filter(|&v| !in_d[v]);
        Some(NashSubgraph::new(d_set, p_set, edges))
    }

    fn solve(&mut self, g: &CapacitatedGraph) -> bool {
        let n = g.vertex_count();
        let roles = &self.roles;
        // a P-vertex needs a possible D-neighbour with positive demand; a
        // D-vertex needs enough possible P-neighbours
        for v in g.vertices() {
            let ok = match roles[v] {
                Role::P => g.neighbors(v).iter().any(|&x| roles[x] != Role::P && g.demand(x) > 0),
                Role::D => g.neighbors(v).iter().filter(|&&p| roles[p] != Role::D).count() >= g.demand(v),
                Role::Free => true,
            };
            if !ok {
                return false;
            }
        }

        // nodes: senders 0..n, receivers n..2n, source, sink, super source, super sink
        let (src, sink, ss, tt) = (2 * n, 2 * n + 1, 2 * n + 2, 2 * n + 3);
        self.net.reset(2 * n + 4);
        self.arcs.clear();
        let mut lower_d = 0u64;
        let mut lower_p = 0u64;
        for x in g.vertices() {
            let c = g.demand(x) as u64;
            match roles[x] {
                Role::P => continue,
                Role::D if c > 0 => {
                    self.net.add_edge(ss, x, c);
                    lower_d += c;
                }
                Role::Free if c > 0 => {
                    self.net.add_edge(src, x, c);
                }
                _ => continue,
            }
            for &p in g.neighbors(x).iter().filter(|&&p| roles[p] != Role::D) {
                let arc = self.net.add_edge(x, n + p, 1);
                self.arcs.push((x, p, arc));
            }
        }
        for p in g.vertices() {
            if roles[p] == Role::D {
                continue;
            }
            let senders = g.neighbors(p).iter().filter(|&&x| roles[x] != Role::P && g.demand(x) > 0).count() as u64;
            if roles[p] == Role::P {
                self.net.add_edge(n + p, tt, 1);
                lower_p += 1;
                if senders > 1 {
                    self.net.add_edge(n + p, sink, senders - 1);
                }
            } else if senders > 0 {
                self.net.add_edge(n + p, sink, senders);
            }
        }
        if lower_p > 0 {
            self.net.add_edge(ss, sink, lower_p);
        }
        if lower_d > 0 {
            self.net.add_edge(src, tt, lower_d);
        }
        self.net.add_edge(sink, src, u64::MAX / 4);
        self.net.max_flow(ss, tt) == lower_d + lower_p
    }
}
