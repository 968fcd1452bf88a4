//! Exact enumeration of D-sets.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{DsetChecker, Role as Label};
use crate::graph::{CapacitatedGraph, Vertex, VertexSet};

/// Largest vertex count accepted by the exhaustive subset scan.
pub const DEFAULT_ENUMERATE_CAP: usize = 24;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DSetReport {
    /// D-sets in lexicographic order.
    pub dsets: Vec<VertexSet>,
    /// False when the search stopped at a limit or budget.
    pub complete: bool,
    /// Candidates examined (subsets, or search nodes in pruned mode).
    pub explored: u64,
}

/// All D-sets of `g`, or the first `limit` of them in lexicographic order.
pub fn enumerate_dsets(g: &CapacitatedGraph, limit: Option<usize>) -> Result<DSetReport> {
    enumerate_dsets_capped(g, limit, DEFAULT_ENUMERATE_CAP)
}

/// [`enumerate_dsets`] with an explicit vertex-count cap.
pub fn enumerate_dsets_capped(g: &CapacitatedGraph, limit: Option<usize>, cap: usize) -> Result<DSetReport> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::BudgetExceeded { what: "vertex count for exhaustive enumeration", size: n, cap });
    }
    let mut scan = SubsetScan {
        g,
        checker: DsetChecker::new(),
        in_d: vec![false; n],
        prefix: Vec::new(),
        limit: limit.unwrap_or(usize::MAX),
        report: DSetReport { complete: true, ..DSetReport::default() },
    };
    scan.visit(0);
    Ok(scan.report)
}

pub fn count_dsets(g: &CapacitatedGraph) -> Result<usize> {
    Ok(enumerate_dsets(g, None)?.dsets.len())
}

struct SubsetScan<'a> {
    g: &'a CapacitatedGraph,
    checker: DsetChecker,
    in_d: Vec<bool>,
    prefix: Vec<Vertex>,
    limit: usize,
    report: DSetReport,
}

impl SubsetScan<'_> {
    /// Preorder walk: a prefix precedes all of its extensions.
    fn visit(&mut self, next: Vertex) {
        if self.report.dsets.len() >= self.limit {
            self.report.complete = false;
            return;
        }
        self.report.explored += 1;
        if self.checker.feasible(self.g, &self.in_d) {
            self.report.dsets.push(self.prefix.iter().copied().collect());
        }
        for v in next..self.g.vertex_count() {
            self.in_d[v] = true;
            self.prefix.push(v);
            self.visit(v + 1);
            self.prefix.pop();
            self.in_d[v] = false;
            if !self.report.complete {
                return;
            }
        }
    }
}

/// D-sets by backtracking over D/P labels with constraint propagation.
///
/// A P-vertex needs a neighbour that is D or free and has positive demand;
/// a D-vertex needs at least `min(d, κ)` neighbours that are P or free.
/// Free vertices with one consistent label are forced, and every node is
/// checked with the flow test relaxed to let free vertices both send and
/// receive. Complete labellings are confirmed with the exact flow test.
///
/// Stops with `complete = false` once `time_budget` has elapsed or `limit`
/// D-sets are found; the sets found are returned sorted, but with a limit
/// they need not be the lexicographically first ones.
pub fn enumerate_dsets_pruned(g: &CapacitatedGraph, time_budget: Duration, limit: Option<usize>) -> DSetReport {
    let mut search = Pruned {
        g,
        limit: limit.unwrap_or(usize::MAX),
        labels: vec![Label::Free; g.vertex_count()],
        checker: DsetChecker::new(),
        deadline: Instant::now() + time_budget,
        report: DSetReport { complete: true, ..DSetReport::default() },
        trail: Vec::new(),
    };
    search.branch();
    search.report.dsets.sort();
    search.report
}

struct Pruned<'a> {
    g: &'a CapacitatedGraph,
    limit: usize,
    labels: Vec<Label>,
    checker: DsetChecker,
    deadline: Instant,
    report: DSetReport,
    trail: Vec<Vertex>,
}

impl Pruned<'_> {
    fn holds(&self, v: Vertex) -> bool {
        let g = self.g;
        match self.labels[v] {
            Label::Free => true,
            Label::P => g.neighbors(v).iter().any(|&w| self.labels[w] != Label::P && g.demand(w) > 0),
            Label::D => g.neighbors(v).iter().filter(|&&w| self.labels[w] != Label::D).count() >= g.demand(v),
        }
    }

    /// Whether labelling `v` with `label` keeps `v` and its neighbours
    /// locally consistent.
    fn admits(&mut self, v: Vertex, label: Label) -> bool {
        self.labels[v] = label;
        let ok = self.holds(v) && self.g.neighbors(v).iter().all(|&w| self.holds(w));
        self.labels[v] = Label::Free;
        ok
    }

    fn assign(&mut self, v: Vertex, label: Label) {
        self.labels[v] = label;
        self.trail.push(v);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail longer than mark");
            self.labels[v] = Label::Free;
        }
    }

    /// Forces labels to a fixpoint; false on contradiction.
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            for v in self.g.vertices() {
                if self.labels[v] != Label::Free {
                    continue;
                }
                match (self.admits(v, Label::D), self.admits(v, Label::P)) {
                    (false, false) => return false,
                    (true, false) => self.assign(v, Label::D),
                    (false, true) => self.assign(v, Label::P),
                    (true, true) => continue,
                }
                changed = true;
            }
            if !changed {
                return true;
            }
        }
    }

    fn branch(&mut self) {
        if !self.report.complete {
            return;
        }
        if Instant::now() >= self.deadline || self.report.dsets.len() >= self.limit {
            self.report.complete = false;
            return;
        }
        self.report.explored += 1;
        let mark = self.trail.len();
        if self.propagate() && self.checker.extendable(self.g, &self.labels) {
            match self.labels.iter().position(|&l| l == Label::Free) {
                None => {
                    let in_d: Vec<bool> = self.labels.iter().map(|&l| l == Label::D).collect();
                    if self.checker.feasible(self.g, &in_d) {
                        self.report.dsets.push(self.g.vertices().filter(|&v| in_d[v]).collect());
                    }
                }
                Some(v) => {
                    for label in [Label::D, Label::P] {
                        let inner = self.trail.len();
                        self.assign(v, label);
                        self.branch();
                        self.undo_to(inner);
                    }
                }
            }
        }
        self.undo_to(mark);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(list: &[&[Vertex]]) -> Vec<VertexSet> {
        list.iter().map(|s| s.iter().copied().collect()).collect()
    }

    fn path4() -> CapacitatedGraph {
        CapacitatedGraph::new(vec![1; 4], [(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    fn star() -> CapacitatedGraph {
        CapacitatedGraph::new(vec![1; 4], [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn exhaustive_examples() {
        let r = enumerate_dsets(&CapacitatedGraph::complete(3, 2), None).unwrap();
        assert_eq!(r.dsets, sets(&[&[0], &[1], &[2]]));
        assert!(r.complete);
        assert_eq!(r.explored, 8);

        assert_eq!(count_dsets(&CapacitatedGraph::complete(6, 2)).unwrap(), 50);
        assert_eq!(enumerate_dsets(&CapacitatedGraph::edgeless(vec![0]), None).unwrap().dsets, sets(&[&[0]]));
        assert_eq!(enumerate_dsets(&path4(), None).unwrap().dsets, sets(&[&[0, 2], &[0, 3], &[1, 2], &[1, 3]]));
    }

    #[test]
    fn empty_graph_has_the_empty_dset() {
        let r = enumerate_dsets(&CapacitatedGraph::edgeless(vec![]), None).unwrap();
        assert_eq!(r.dsets, vec![VertexSet::new()]);
    }

    #[test]
    fn limit_truncates_to_a_prefix() {
        let g = CapacitatedGraph::complete(6, 2);
        let all = enumerate_dsets(&g, None).unwrap();
        let first = enumerate_dsets(&g, Some(7)).unwrap();
        assert!(!first.complete);
        assert_eq!(first.dsets, all.dsets[..7]);
    }

    #[test]
    fn cap_is_enforced() {
        let g = CapacitatedGraph::edgeless(vec![0; 5]);
        assert!(matches!(enumerate_dsets_capped(&g, None, 4), Err(Error::BudgetExceeded { size: 5, cap: 4, .. })));
    }

    #[test]
    fn pruned_examples() {
        let t = Duration::from_secs(10);
        let r = enumerate_dsets_pruned(&star(), t, None);
        assert_eq!(r.dsets, sets(&[&[1, 2, 3]]));
        assert!(r.complete);
        assert_eq!(enumerate_dsets_pruned(&CapacitatedGraph::complete(3, 2), t, None).dsets, sets(&[&[0], &[1], &[2]]));
        assert_eq!(enumerate_dsets_pruned(&path4(), t, None).dsets, sets(&[&[0, 2], &[0, 3], &[1, 2], &[1, 3]]));
        assert_eq!(enumerate_dsets_pruned(&CapacitatedGraph::complete(6, 2), t, None).dsets.len(), 50);
    }

    #[test]
    fn pruned_reports_exhausted_budget() {
        let r = enumerate_dsets_pruned(&CapacitatedGraph::complete(6, 2), Duration::ZERO, None);
        assert!(!r.complete);
    }

    #[test]
    fn pruned_stops_at_limit() {
        let r = enumerate_dsets_pruned(&CapacitatedGraph::complete(6, 2), Duration::from_secs(10), Some(2));
        assert!(!r.complete);
        assert_eq!(r.dsets.len(), 2);
        assert!(enumerate_dsets_pruned(&path4(), Duration::from_secs(10), Some(5)).complete);
    }
}
