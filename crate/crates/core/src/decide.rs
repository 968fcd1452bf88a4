//! Uniqueness of DP-Nash subgraphs and of D-sets.
//!
//! Notation, for a normalized graph with partition X, Y, Z:
//!
//! * `Y⁺` is the set of Y-vertices with positive capacity;
//! * for `∅ ≠ W ⊆ Y⁺`, `L(W) = { x ∈ X ∪ Z : |N(x) ∩ W| > d(x) − κ(x) }`
//!   and `W^κ` holds `κ(w)` copies of every `w ∈ W`;
//! * O* holds when `|L(W)| > |W^κ|` for every such `W`;
//! * M* holds when no such `W` admits a matching of `L(W)` into `W^κ`
//!   saturating `L(W)`.
//!
//! When `X ∪ Z` is independent, O* and M* are each equivalent to `X ∪ Z`
//! being the only D-set.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::construct::{canonical_nash, construct_induced, construct_nash_seeded, Assembly};
use crate::enumerate::{enumerate_dsets_capped, DEFAULT_ENUMERATE_CAP};
use crate::error::{Error, Result};
use crate::graph::{
    normalize, ordered, partition_xyz, CapacitatedGraph, NashSubgraph, Vertex, VertexSet, XyzPartition,
};
use crate::matching::{hall_violator, max_matching, AuxGraph, Side};

/// Default cap on `|Y⁺|` for the O*/M* subset scans.
pub const DEFAULT_OSTAR_CAP: usize = 22;

/// Procedure that produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// `X ∪ Z` has an internal edge.
    XzDependent,
    /// Some Z-vertex has a free choice of edges.
    ZChoice,
    /// Matchings of `G^aux − x` for every `x ∈ X`.
    AuxMatching,
    /// All capacities are zero after normalization.
    ZeroCapacity,
    /// Unit capacities: every Y-vertex needs two X-neighbours.
    UnitCapacity,
    /// `Z = ∅`, decided through DP-Nash subgraph uniqueness.
    NashDelegate,
    OStar,
    MStar,
    Enumeration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Witness {
    /// A DP-Nash subgraph other than the canonical one.
    Subgraph(NashSubgraph),
    /// Two DP-Nash subgraphs with different D-sets.
    Pair(NashSubgraph, NashSubgraph),
    /// A D-set other than `X ∪ Z`.
    DSet(VertexSet),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessVerdict {
    pub unique: bool,
    pub witness: Option<Witness>,
    pub method: Method,
}

impl UniquenessVerdict {
    fn unique(method: Method) -> Self {
        Self { unique: true, witness: None, method }
    }

    fn refuted(method: Method, witness: Witness) -> Self {
        Self { unique: false, witness: Some(witness), method }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LwResult {
    pub w_set: VertexSet,
    pub l_set: VertexSet,
    pub w_kappa_size: u64,
}

/// Which procedure [`unique_dset`] runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// The full ladder of cheap special cases, then O* or enumeration.
    #[default]
    Auto,
    /// Independence check, then O*.
    OStar,
    /// Independence check, then M*.
    MStar,
    /// Exhaustive enumeration only.
    Enumerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecideOptions {
    pub strategy: Strategy,
    /// Largest `|Y⁺|` for the O*/M* scans.
    pub ostar_cap: usize,
    /// Largest vertex count for enumeration.
    pub enumerate_cap: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        Self { strategy: Strategy::Auto, ostar_cap: DEFAULT_OSTAR_CAP, enumerate_cap: DEFAULT_ENUMERATE_CAP }
    }
}

fn x_degree(g: &CapacitatedGraph, part: &XyzPartition, v: Vertex) -> usize {
    g.neighbors(v).iter().filter(|w| part.x_set.contains(w)).count()
}

fn l_of(g: &CapacitatedGraph, part: &XyzPartition, w: &VertexSet) -> VertexSet {
    part.xz()
        .into_iter()
        .filter(|&x| {
            let hits = g.neighbors(x).iter().filter(|v| w.contains(v)).count();
            hits > g.degree(x) - g.kappa(x) as usize
        })
        .collect()
}

fn kappa_sum(g: &CapacitatedGraph, w: &VertexSet) -> u64 {
    w.iter().map(|&v| u64::from(g.kappa(v))).sum()
}

/// `L(W)` and `|W^κ|` for `∅ ≠ W ⊆ Y⁺`.
pub fn compute_lw(g: &CapacitatedGraph, part: &XyzPartition, w_set: &VertexSet) -> Result<LwResult> {
    g.require_normalized()?;
    if w_set.is_empty() {
        return Err(Error::Precondition("W must be nonempty".into()));
    }
    if let Some(&v) = w_set.iter().find(|&&v| !part.y_set.contains(&v) || g.kappa(v) == 0) {
        return Err(Error::Precondition(format!("W contains {v}, which is not in Y with κ > 0")));
    }
    Ok(LwResult { w_set: w_set.clone(), l_set: l_of(g, part, w_set), w_kappa_size: kappa_sum(g, w_set) })
}

/// Scans every nonempty `W ⊆ Y⁺` in Gray-code order, keeping `|N(x) ∩ W|`
/// up to date, and returns the first `W` for which `violates` is true.
fn scan_w(
    g: &CapacitatedGraph,
    part: &XyzPartition,
    cap: usize,
    mut violates: impl FnMut(&VertexSet, &[usize], usize, u64) -> bool,
) -> Result<Option<VertexSet>> {
    g.require_normalized()?;
    let y_plus = part.y_positive(g);
    if y_plus.len() > cap {
        return Err(Error::BudgetExceeded { what: "|Y⁺| for the O*/M* scan", size: y_plus.len(), cap });
    }
    let mut in_xz = vec![false; g.vertex_count()];
    for x in part.xz() {
        in_xz[x] = true;
    }
    let slack: Vec<usize> = g.vertices().map(|v| g.degree(v) - g.kappa(v) as usize).collect();
    let mut hits = vec![0usize; g.vertex_count()];
    let mut w = VertexSet::new();
    let mut l_size = 0usize;
    let mut w_kappa = 0u64;
    for i in 1u64..(1u64 << y_plus.len()) {
        let y = y_plus[i.trailing_zeros() as usize];
        let adding = w.insert(y);
        if adding {
            w_kappa += u64::from(g.kappa(y));
        } else {
            w.remove(&y);
            w_kappa -= u64::from(g.kappa(y));
        }
        for &x in g.neighbors(y).iter().filter(|&&x| in_xz[x]) {
            let was = hits[x] > slack[x];
            if adding {
                hits[x] += 1;
            } else {
                hits[x] -= 1;
            }
            match (was, hits[x] > slack[x]) {
                (false, true) => l_size += 1,
                (true, false) => l_size -= 1,
                _ => {}
            }
        }
        if violates(&w, &hits, l_size, w_kappa) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// A nonempty `W ⊆ Y⁺` with `|L(W)| ≤ |W^κ|`, if any.
pub fn ostar_violation(g: &CapacitatedGraph, cap: usize) -> Result<Option<VertexSet>> {
    let part = partition_xyz(g)?;
    scan_w(g, &part, cap, |_, _, l_size, w_kappa| l_size as u64 <= w_kappa)
}

/// A nonempty `W ⊆ Y⁺` such that `L(W)` matches into `W^κ`, if any.
pub fn mstar_violation(g: &CapacitatedGraph, cap: usize) -> Result<Option<VertexSet>> {
    let part = partition_xyz(g)?;
    let xz: Vec<Vertex> = part.xz().into_iter().collect();
    scan_w(g, &part, cap, |w, hits, l_size, w_kappa| {
        if l_size as u64 > w_kappa {
            return false;
        }
        let left: Vec<Vertex> = xz.iter().copied().filter(|&x| hits[x] > g.degree(x) - g.kappa(x) as usize).collect();
        let right: Vec<Vertex> = w.iter().copied().collect();
        let aux = AuxGraph::build(g, &left, &right);
        max_matching(&aux.bip).saturates(Side::Left)
    })
}

/// Whether O* holds. Errors when `|Y⁺|` exceeds `cap`.
pub fn check_ostar(g: &CapacitatedGraph, cap: usize) -> Result<bool> {
    Ok(ostar_violation(g, cap)?.is_none())
}

/// Whether M* holds. Errors when `|Y⁺|` exceeds `cap`.
pub fn check_mstar(g: &CapacitatedGraph, cap: usize) -> Result<bool> {
    Ok(mstar_violation(g, cap)?.is_none())
}

/// Two DP-Nash subgraphs with different D-sets, from an edge inside `X ∪ Z`.
fn dependent_pair(g: &CapacitatedGraph, part: &XyzPartition) -> Result<Option<Witness>> {
    let Some((u, v)) = g.internal_edge(&part.xz()) else {
        return Ok(None);
    };
    let (first, second) = if part.x_set.contains(&u) {
        // X-vertices satisfy |N ∩ X| ≤ d = κ
        (construct_nash_seeded(g, u, None)?, construct_nash_seeded(g, v, None)?)
    } else {
        // Z-vertices have no X-neighbours; one endpoint has κ ≥ 1
        let (a, b) = if g.kappa(v) >= 1 { (v, u) } else { (u, v) };
        (construct_nash_seeded(g, a, Some(b))?, construct_nash_seeded(g, b, None)?)
    };
    Ok(Some(Witness::Pair(first, second)))
}

/// A DP-Nash subgraph whose D-set meets Y, built from a nonempty `W ⊆ Y⁺`
/// with `|L(W)| ≤ |W^κ|` or with `L(W)` matchable into `W^κ`.
///
/// Requires `X ∪ Z` independent.
fn subgraph_from_w(g: &CapacitatedGraph, part: &XyzPartition, mut w: VertexSet) -> Result<NashSubgraph> {
    if let Some(&y) = part.y_set.iter().find(|&&y| x_degree(g, part, y) <= g.kappa(y) as usize) {
        return construct_nash_seeded(g, y, None);
    }
    // shrink W until L(W) matches into W^κ
    let (l_set, pairs) = loop {
        let l_set = l_of(g, part, &w);
        let left: Vec<Vertex> = l_set.iter().copied().collect();
        let right: Vec<Vertex> = w.iter().copied().collect();
        let aux = AuxGraph::build(g, &left, &right);
        let m = max_matching(&aux.bip);
        if m.saturates(Side::Left) {
            let pairs: Vec<(Vertex, Vertex)> =
                m.pairs().into_iter().map(|(l, r)| (aux.left_vertices[l], aux.copy_of[r])).collect();
            break (l_set, pairs);
        }
        let hall = hall_violator(&aux.bip, Side::Left).expect("unsaturated side has a Hall violator");
        for r in hall.neighborhood {
            w.remove(&aux.copy_of[r]);
        }
        debug_assert!(!w.is_empty());
    };

    let n = g.vertex_count();
    let mut out = Assembly::new(n);
    let p1: Vec<Vertex> = l_set.iter().copied().collect();
    for (x, y) in pairs {
        out.add_edge(x, y);
    }
    for &u in &w {
        out.top_up(g, u, &p1, g.demand(u));
    }
    let mut alive = vec![true; n];
    for &v in w.iter().chain(&l_set) {
        alive[v] = false;
    }
    let rest = construct_induced(g, &alive);
    for &(a, b) in &rest.edges {
        out.add_edge(a, b);
    }
    for &v in &rest.d_set {
        if out.degree[v] < g.demand(v) {
            out.top_up(g, v, &p1, g.demand(v));
        }
    }
    out.d_set.extend(w.iter().chain(&rest.d_set));
    out.p_set.extend(l_set.iter().chain(&rest.p_set));
    Ok(out.finish())
}

/// Whether `g` has exactly one DP-Nash subgraph. Polynomial.
pub fn unique_nash(g: &CapacitatedGraph) -> UniquenessVerdict {
    let g = normalize(g);
    let part = partition_xyz(&g).expect("normalized");
    if let Some(pair) = dependent_pair(&g, &part).expect("seeded preconditions hold") {
        return UniquenessVerdict::refuted(Method::XzDependent, pair);
    }
    if let Some(&z) = part.z_set.iter().find(|&&z| g.kappa(z) >= 1) {
        // κ(z) < d(z): trade the last chosen edge for the first unchosen one
        let mut h = canonical_nash(&g).expect("normalized").expect("independent");
        let k = g.kappa(z) as usize;
        let nbrs = g.neighbors(z);
        h.edges.remove(&ordered(z, nbrs[k - 1]));
        h.edges.insert(ordered(z, nbrs[k]));
        return UniquenessVerdict::refuted(Method::ZChoice, Witness::Subgraph(h));
    }
    // Z-vertices now have κ = 0 and can never cover a Y-vertex, so they are
    // left out of the auxiliary graph
    let xs: Vec<Vertex> = part.x_set.iter().copied().collect();
    let ys: Vec<Vertex> = part.y_set.iter().copied().collect();
    for &x in &xs {
        let left: Vec<Vertex> = xs.iter().copied().filter(|&v| v != x).collect();
        let aux = AuxGraph::build(&g, &left, &ys);
        if let Some(hall) = hall_violator(&aux.bip, Side::Right) {
            let w: VertexSet = hall.violator.iter().map(|&r| aux.copy_of[r]).collect();
            let h = subgraph_from_w(&g, &part, w).expect("seeded preconditions hold");
            return UniquenessVerdict::refuted(Method::AuxMatching, Witness::Subgraph(h));
        }
    }
    UniquenessVerdict::unique(Method::AuxMatching)
}

/// Whether `g` has exactly one D-set.
///
/// Runs, in order: the independence test on `X ∪ Z`; the all-zero and
/// unit-capacity special cases; delegation to [`unique_nash`] when
/// `Z = ∅`; and finally the O* scan, falling back to enumeration when
/// `|Y⁺|` exceeds its cap. A forced [`Strategy`] skips the ladder.
pub fn unique_dset(g: &CapacitatedGraph, opts: &DecideOptions) -> Result<UniquenessVerdict> {
    let gn = normalize(g);
    let part = partition_xyz(&gn)?;
    if opts.strategy == Strategy::Enumerate {
        return by_enumeration(&gn, &part, opts.enumerate_cap);
    }
    if let Some(pair) = dependent_pair(&gn, &part)? {
        return Ok(UniquenessVerdict::refuted(Method::XzDependent, pair));
    }
    match opts.strategy {
        Strategy::OStar => return by_scan(&gn, &part, opts.ostar_cap, Method::OStar),
        Strategy::MStar => return by_scan(&gn, &part, opts.ostar_cap, Method::MStar),
        Strategy::Auto | Strategy::Enumerate => {}
    }

    if gn.kappas().iter().all(|&k| k == 0) {
        return Ok(UniquenessVerdict::unique(Method::ZeroCapacity));
    }
    if g.kappas().iter().all(|&k| k == 1) {
        return match part.y_set.iter().find(|&&y| x_degree(&gn, &part, y) < 2) {
            None => Ok(UniquenessVerdict::unique(Method::UnitCapacity)),
            Some(&y) => {
                let h = construct_nash_seeded(&gn, y, None)?;
                Ok(UniquenessVerdict::refuted(Method::UnitCapacity, Witness::DSet(h.d_set)))
            }
        };
    }
    if part.z_set.is_empty() {
        let v = unique_nash(&gn);
        let witness = match v.witness {
            Some(Witness::Subgraph(h)) => Some(Witness::DSet(h.d_set)),
            other => other,
        };
        return Ok(UniquenessVerdict { unique: v.unique, witness, method: Method::NashDelegate });
    }
    let y_plus = part.y_positive(&gn).len();
    if y_plus <= opts.ostar_cap {
        return by_scan(&gn, &part, opts.ostar_cap, Method::OStar);
    }
    if gn.vertex_count() <= opts.enumerate_cap {
        return by_enumeration(&gn, &part, opts.enumerate_cap);
    }
    Err(Error::BudgetExceeded { what: "|Y⁺| for the O*/M* scan", size: y_plus, cap: opts.ostar_cap })
}

fn by_scan(g: &CapacitatedGraph, part: &XyzPartition, cap: usize, method: Method) -> Result<UniquenessVerdict> {
    let violation = match method {
        Method::MStar => mstar_violation(g, cap)?,
        _ => ostar_violation(g, cap)?,
    };
    Ok(match violation {
        None => UniquenessVerdict::unique(method),
        Some(w) => UniquenessVerdict::refuted(method, Witness::DSet(subgraph_from_w(g, part, w)?.d_set)),
    })
}

fn by_enumeration(g: &CapacitatedGraph, part: &XyzPartition, cap: usize) -> Result<UniquenessVerdict> {
    let report = enumerate_dsets_capped(g, Some(2), cap)?;
    if report.dsets.len() < 2 {
        return Ok(UniquenessVerdict::unique(Method::Enumeration));
    }
    let xz = part.xz();
    let other = report.dsets.into_iter().find(|s| *s != xz).expect("two distinct sets");
    Ok(UniquenessVerdict::refuted(Method::Enumeration, Witness::DSet(other)))
}

/// Distinct D-sets named by a witness, for callers that re-validate it.
pub fn witness_dsets(w: &Witness) -> BTreeSet<VertexSet> {
    match w {
        Witness::Subgraph(h) => BTreeSet::from([h.d_set.clone()]),
        Witness::Pair(a, b) => BTreeSet::from([a.d_set.clone(), b.d_set.clone()]),
        Witness::DSet(s) => BTreeSet::from([s.clone()]),
    }
}
