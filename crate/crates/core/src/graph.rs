//! Capacitated graphs, DP-Nash subgraphs and the X/Y/Z partition.
//!
//! A capacitated graph is a simple undirected graph with a non-negative
//! integer capacity on every vertex. A DP-Nash subgraph splits the vertices
//! into a D-set and a P-set and picks D–P edges so that every D-vertex `x`
//! carries exactly `min(d(x), κ(x))` of them and no P-vertex is isolated.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::DsetChecker;

pub type Vertex = usize;
pub type VertexSet = BTreeSet<Vertex>;

/// An undirected edge, stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

pub(crate) fn ordered(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple undirected graph with a capacity per vertex.
///
/// Vertex ids are dense (`0..vertex_count`) and adjacency lists are kept
/// sorted, so every iteration order in this crate is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapacitatedGraph {
    adjacency: Vec<Vec<Vertex>>,
    kappa: Vec<u32>,
}

impl CapacitatedGraph {
    /// Builds a graph from per-vertex capacities and an edge list.
    ///
    /// Self-loops, repeated edges (in either orientation) and out-of-range
    /// endpoints are rejected.
    pub fn new(kappa: Vec<u32>, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let n = kappa.len();
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, count: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = ordered(u, w[0]);
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        Ok(Self { adjacency, kappa })
    }

    /// Graph without edges.
    pub fn edgeless(kappa: Vec<u32>) -> Self {
        Self { adjacency: vec![Vec::new(); kappa.len()], kappa }
    }

    /// Complete graph on `n` vertices with constant capacity.
    pub fn complete(n: usize, kappa: u32) -> Self {
        let adjacency = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
        Self { adjacency, kappa: vec![kappa; n] }
    }

    pub fn vertex_count(&self) -> usize {
        self.kappa.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.kappa.is_empty()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn kappa(&self, v: Vertex) -> u32 {
        self.kappa[v]
    }

    pub fn kappas(&self) -> &[u32] {
        &self.kappa
    }

    /// Number of Nash-subgraph edges a D-vertex must carry: `min(d(v), κ(v))`.
    pub fn demand(&self, v: Vertex) -> usize {
        self.degree(v).min(self.kappa[v] as usize)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges in lexicographic order, smaller endpoint first.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    /// True when no edge joins two zero-capacity vertices and no capacity
    /// exceeds its vertex degree.
    pub fn is_normalized(&self) -> bool {
        self.first_unnormalized().is_none()
    }

    fn first_unnormalized(&self) -> Option<Vertex> {
        self.vertices().find(|&v| {
            self.kappa[v] as usize > self.degree(v)
                || (self.kappa[v] == 0 && self.adjacency[v].iter().any(|&w| self.kappa[w] == 0))
        })
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        match self.first_unnormalized() {
            None => Ok(()),
            Some(v) => Err(Error::NotNormalized { vertex: v, kappa: self.kappa[v], degree: self.degree(v) }),
        }
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, count: self.vertex_count() })
        }
    }

    /// True when no edge has both endpoints in `set`.
    pub fn is_independent(&self, set: &VertexSet) -> bool {
        self.internal_edge(set).is_none()
    }

    /// Lowest edge with both endpoints in `set`, if any.
    pub fn internal_edge(&self, set: &VertexSet) -> Option<Edge> {
        set.iter().find_map(|&u| self.adjacency[u].iter().find(|&&v| u < v && set.contains(&v)).map(|&v| (u, v)))
    }
}

/// A candidate DP-Nash subgraph `(D, P; E')`.
///
/// Nothing about this type is trusted: run [`validate_nash`] before relying
/// on it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NashSubgraph {
    pub d_set: VertexSet,
    pub p_set: VertexSet,
    pub edges: BTreeSet<Edge>,
}

impl NashSubgraph {
    pub fn new(
        d_set: impl IntoIterator<Item = Vertex>,
        p_set: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Self {
        Self {
            d_set: d_set.into_iter().collect(),
            p_set: p_set.into_iter().collect(),
            edges: edges.into_iter().map(|(u, v)| ordered(u, v)).collect(),
        }
    }
}

/// Reason a candidate fails the DP-Nash conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NashViolation {
    VertexOutOfRange(Vertex),
    NotAPartition(Vertex),
    NotAnEdge(Edge),
    RepeatedEdge(Edge),
    EdgeNotAcross(Edge),
    WrongDegree { vertex: Vertex, degree: usize, required: usize },
    IsolatedP(Vertex),
}

impl fmt::Display for NashViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::VertexOutOfRange(v) => write!(f, "vertex {v} is not in the graph"),
            Self::NotAPartition(v) => write!(f, "vertex {v} is not in exactly one of D and P"),
            Self::NotAnEdge((u, v)) => write!(f, "{u}-{v} is not an edge of the graph"),
            Self::RepeatedEdge((u, v)) => write!(f, "edge {u}-{v} listed twice"),
            Self::EdgeNotAcross((u, v)) => write!(f, "edge {u}-{v} does not join D to P"),
            Self::WrongDegree { vertex, degree, required } => {
                write!(f, "D-vertex {vertex} has degree {degree}, needs {required}")
            }
            Self::IsolatedP(v) => write!(f, "P-vertex {v} is isolated"),
        }
    }
}

/// First DP-Nash condition `h` breaks in `g`, checked against the raw
/// capacities through `min(d_G(x), κ(x))`.
pub fn nash_violation(g: &CapacitatedGraph, h: &NashSubgraph) -> Option<NashViolation> {
    let n = g.vertex_count();
    if let Some(&v) = h.d_set.iter().chain(&h.p_set).find(|&&v| v >= n) {
        return Some(NashViolation::VertexOutOfRange(v));
    }
    for v in g.vertices() {
        if h.d_set.contains(&v) == h.p_set.contains(&v) {
            return Some(NashViolation::NotAPartition(v));
        }
    }
    let mut seen = BTreeSet::new();
    let mut degree = vec![0usize; n];
    for &(a, b) in &h.edges {
        if a >= n || b >= n {
            return Some(NashViolation::VertexOutOfRange(a.max(b)));
        }
        let e = ordered(a, b);
        if !g.has_edge(a, b) {
            return Some(NashViolation::NotAnEdge(e));
        }
        if !seen.insert(e) {
            return Some(NashViolation::RepeatedEdge(e));
        }
        if h.d_set.contains(&a) == h.d_set.contains(&b) {
            return Some(NashViolation::EdgeNotAcross(e));
        }
        degree[a] += 1;
        degree[b] += 1;
    }
    for &x in &h.d_set {
        if degree[x] != g.demand(x) {
            return Some(NashViolation::WrongDegree { vertex: x, degree: degree[x], required: g.demand(x) });
        }
    }
    h.p_set.iter().find(|&&y| degree[y] == 0).map(|&y| NashViolation::IsolatedP(y))
}

pub fn validate_nash(g: &CapacitatedGraph, h: &NashSubgraph) -> bool {
    nash_violation(g, h).is_none()
}

/// Removes every edge between two zero-capacity vertices, then caps each
/// capacity at the vertex degree. Both steps leave the set of DP-Nash
/// subgraphs unchanged.
pub fn normalize(g: &CapacitatedGraph) -> CapacitatedGraph {
    let adjacency: Vec<Vec<Vertex>> = g
        .adjacency
        .iter()
        .enumerate()
        .map(|(u, list)| list.iter().copied().filter(|&v| g.kappa[u] > 0 || g.kappa[v] > 0).collect())
        .collect();
    let kappa = g.kappa.iter().zip(&adjacency).map(|(&k, list)| k.min(list.len() as u32)).collect();
    CapacitatedGraph { adjacency, kappa }
}

/// `X = {κ = d}`, `Y = N(X) \ X`, `Z` = everything else.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct XyzPartition {
    pub x_set: VertexSet,
    pub y_set: VertexSet,
    pub z_set: VertexSet,
}

impl XyzPartition {
    /// `X ∪ Z`, the canonical D-set candidate.
    pub fn xz(&self) -> VertexSet {
        self.x_set.union(&self.z_set).copied().collect()
    }

    /// `Y^{κ>0}`: Y-vertices with positive capacity.
    pub fn y_positive(&self, g: &CapacitatedGraph) -> Vec<Vertex> {
        self.y_set.iter().copied().filter(|&y| g.kappa(y) > 0).collect()
    }
}

pub fn partition_xyz(g: &CapacitatedGraph) -> Result<XyzPartition> {
    g.require_normalized()?;
    let x_set: VertexSet = g.vertices().filter(|&v| g.kappa(v) as usize == g.degree(v)).collect();
    let y_set: VertexSet =
        x_set.iter().flat_map(|&x| g.neighbors(x).iter().copied()).filter(|v| !x_set.contains(v)).collect();
    let z_set = g.vertices().filter(|v| !x_set.contains(v) && !y_set.contains(v)).collect();
    Ok(XyzPartition { x_set, y_set, z_set })
}

/// Whether `s` is the D-set of some DP-Nash subgraph of `g`.
///
/// Decided exactly by a lower-bounded flow: every `x ∈ s` ships exactly
/// `min(d(x), κ(x))` units over unit-capacity edges to `V \ s`, and every
/// vertex outside `s` must receive at least one unit.
pub fn is_dset(g: &CapacitatedGraph, s: &VertexSet) -> bool {
    DsetChecker::new().witness(g, s).is_some()
}

/// A DP-Nash subgraph with D-set `s`, when one exists.
pub fn dset_witness(g: &CapacitatedGraph, s: &VertexSet) -> Option<NashSubgraph> {
    DsetChecker::new().witness(g, s)
}
