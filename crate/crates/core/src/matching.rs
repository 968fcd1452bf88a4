//! Bipartite matching, Hall violators and the auxiliary graph `G^aux`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CapacitatedGraph, Vertex, XyzPartition};

/// Bipartite graph on `0..left` and `0..right` with sorted adjacency.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bipartite {
    right_count: usize,
    adj: Vec<Vec<usize>>,
}

impl Bipartite {
    pub fn new(left: usize, right: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); left];
        for (l, r) in edges {
            if l >= left {
                return Err(Error::VertexOutOfRange { vertex: l, count: left });
            }
            if r >= right {
                return Err(Error::VertexOutOfRange { vertex: r, count: right });
            }
            adj[l].push(r);
        }
        for (l, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(l, w[0]));
            }
        }
        Ok(Self { right_count: right, adj })
    }

    pub fn left_count(&self) -> usize {
        self.adj.len()
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.adj[l]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(l, list)| list.iter().map(move |&r| (l, r)))
    }

    /// Same graph with the sides swapped.
    pub fn transpose(&self) -> Self {
        let mut adj = vec![Vec::new(); self.right_count];
        for (l, r) in self.edges() {
            adj[r].push(l);
        }
        Self { right_count: self.left_count(), adj }
    }

    /// Subgraph keeping only the marked vertices (ids unchanged).
    pub fn restrict(&self, keep_left: &[bool], keep_right: &[bool]) -> Self {
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(
                |(l, list)| {
                    if keep_left[l] {
                        list.iter().copied().filter(|&r| keep_right[r]).collect()
                    } else {
                        Vec::new()
                    }
                },
            )
            .collect();
        Self { right_count: self.right_count, adj }
    }
}

/// A matching, stored from both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    left_mate: Vec<Option<usize>>,
    right_mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.left_mate.iter().flatten().count()
    }

    pub fn left_mate(&self, l: usize) -> Option<usize> {
        self.left_mate[l]
    }

    pub fn right_mate(&self, r: usize) -> Option<usize> {
        self.right_mate[r]
    }

    /// Matched pairs `(left, right)` in left order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.left_mate.iter().enumerate().filter_map(|(l, m)| m.map(|r| (l, r))).collect()
    }

    pub fn saturates(&self, side: Side) -> bool {
        match side {
            Side::Left => self.left_mate.iter().all(Option::is_some),
            Side::Right => self.right_mate.iter().all(Option::is_some),
        }
    }
}

/// Maximum-cardinality matching (Hopcroft–Karp).
///
/// Left vertices are scanned in increasing id and neighbours in increasing
/// id, so equal inputs always give the same matching.
pub fn max_matching(b: &Bipartite) -> Matching {
    let (nl, nr) = (b.left_count(), b.right_count());
    let mut left_mate = vec![None; nl];
    let mut right_mate: Vec<Option<usize>> = vec![None; nr];
    let mut dist = vec![u32::MAX; nl];
    let mut next = vec![0usize; nl];

    loop {
        // BFS layering from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..nl {
            if left_mate[l].is_none() {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = u32::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in b.neighbors(l) {
                match right_mate[r] {
                    None => found = true,
                    Some(l2) if dist[l2] == u32::MAX => {
                        dist[l2] = dist[l] + 1;
                        queue.push_back(l2);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        next.iter_mut().for_each(|i| *i = 0);
        for l in 0..nl {
            if left_mate[l].is_none() {
                augment(b, l, &mut dist, &mut next, &mut left_mate, &mut right_mate);
            }
        }
    }
    Matching { left_mate, right_mate }
}

fn augment(
    b: &Bipartite,
    l: usize,
    dist: &mut [u32],
    next: &mut [usize],
    left_mate: &mut [Option<usize>],
    right_mate: &mut [Option<usize>],
) -> bool {
    while next[l] < b.neighbors(l).len() {
        let r = b.neighbors(l)[next[l]];
        next[l] += 1;
        let ok = match right_mate[r] {
            None => true,
            Some(l2) => dist[l2] == dist[l] + 1 && augment(b, l2, dist, next, left_mate, right_mate),
        };
        if ok {
            left_mate[l] = Some(r);
            right_mate[r] = Some(l);
            return true;
        }
    }
    dist[l] = u32::MAX;
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A set `S` on one side with `|N(S)| < |S|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallWitness {
    pub side: Side,
    pub violator: BTreeSet<usize>,
    pub neighborhood: BTreeSet<usize>,
}

/// Hall violator for `side`, or `None` when a matching saturating `side`
/// exists.
///
/// `S` is the set of `side` vertices reachable from unmatched `side`
/// vertices along alternating paths of a maximum matching.
pub fn hall_violator(b: &Bipartite, side: Side) -> Option<HallWitness> {
    let owned;
    let b = match side {
        Side::Left => b,
        Side::Right => {
            owned = b.transpose();
            &owned
        }
    };
    let m = max_matching(b);
    if m.saturates(Side::Left) {
        return None;
    }
    let mut violator = BTreeSet::new();
    let mut neighborhood = BTreeSet::new();
    let mut queue: VecDeque<usize> = (0..b.left_count()).filter(|&l| m.left_mate(l).is_none()).collect();
    violator.extend(queue.iter().copied());
    while let Some(l) = queue.pop_front() {
        for &r in b.neighbors(l) {
            if neighborhood.insert(r) {
                // r is matched, otherwise the matching would not be maximum
                let l2 = m.right_mate(r).expect("maximum matching leaves no augmenting path");
                if violator.insert(l2) {
                    queue.push_back(l2);
                }
            }
        }
    }
    Some(HallWitness { side, violator, neighborhood })
}

/// `G^aux`: left side `R'`, right side capacity-expanded copies of the Y
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxGraph {
    pub bip: Bipartite,
    /// Original vertex of each left index.
    pub left_vertices: Vec<Vertex>,
    /// Original vertex of each right index (copy).
    pub copy_of: Vec<Vertex>,
    /// Right indices of the copies of each expanded vertex, numbered consecutively.
    pub copies_of: BTreeMap<Vertex, Vec<usize>>,
}

impl AuxGraph {
    /// Bipartite graph between `left` and `κ(y)` copies of each `y` in
    /// `expand`; a copy of `y` is adjacent to `r` iff `yr` is an edge of `g`.
    pub fn build(g: &CapacitatedGraph, left: &[Vertex], expand: &[Vertex]) -> Self {
        let mut copy_of = Vec::new();
        let mut copies_of = BTreeMap::new();
        for &y in expand {
            let ids: Vec<usize> = (0..g.kappa(y) as usize).map(|i| copy_of.len() + i).collect();
            copy_of.extend(std::iter::repeat_n(y, ids.len()));
            copies_of.insert(y, ids);
        }
        let mut edges = Vec::new();
        for (li, &r) in left.iter().enumerate() {
            for &y in g.neighbors(r) {
                if let Some(ids) = copies_of.get(&y) {
                    edges.extend(ids.iter().map(|&c| (li, c)));
                }
            }
        }
        let bip = Bipartite::new(left.len(), copy_of.len(), edges).expect("ids are in range");
        Self { bip, left_vertices: left.to_vec(), copy_of, copies_of }
    }

    pub fn left_index(&self, v: Vertex) -> Option<usize> {
        self.left_vertices.binary_search(&v).ok()
    }
}

/// `G^aux` with `R' = X ∪ Z` and `Y' = Y^κ`.
pub fn build_aux(g: &CapacitatedGraph, part: &XyzPartition) -> AuxGraph {
    let left: Vec<Vertex> = part.xz().into_iter().collect();
    let expand: Vec<Vertex> = part.y_set.iter().copied().collect();
    AuxGraph::build(g, &left, &expand)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::partition_xyz;

    fn bip(l: usize, r: usize, e: &[(usize, usize)]) -> Bipartite {
        Bipartite::new(l, r, e.iter().copied()).unwrap()
    }

    #[test]
    fn matching_examples() {
        assert_eq!(max_matching(&bip(1, 1, &[(0, 0)])).pairs(), vec![(0, 0)]);
        assert_eq!(max_matching(&bip(2, 1, &[(0, 0), (1, 0)])).size(), 1);
        let k33: Vec<_> = (0..3).flat_map(|l| (0..3).map(move |r| (l, r))).collect();
        let m = max_matching(&bip(3, 3, &k33));
        assert_eq!(m.size(), 3);
        assert!(m.saturates(Side::Left) && m.saturates(Side::Right));
    }

    #[test]
    fn matching_is_deterministic_lowest_id() {
        let m = max_matching(&bip(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]));
        assert_eq!(m.pairs(), vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn hall_examples() {
        let w = hall_violator(&bip(2, 1, &[(0, 0), (1, 0)]), Side::Left).unwrap();
        assert_eq!(w.violator, BTreeSet::from([0, 1]));
        assert_eq!(w.neighborhood, BTreeSet::from([0]));
        assert!(hall_violator(&bip(2, 2, &[(0, 0), (1, 1)]), Side::Left).is_none());
        let w = hall_violator(&bip(1, 0, &[]), Side::Left).unwrap();
        assert_eq!(w.violator, BTreeSet::from([0]));
        assert!(w.neighborhood.is_empty());
    }

    #[test]
    fn hall_right_side() {
        let b = bip(1, 2, &[(0, 0), (0, 1)]);
        assert!(hall_violator(&b, Side::Left).is_none());
        let w = hall_violator(&b, Side::Right).unwrap();
        assert_eq!(w.side, Side::Right);
        assert_eq!(w.violator, BTreeSet::from([0, 1]));
        assert_eq!(w.neighborhood, BTreeSet::from([0]));
    }

    fn star(center_kappa: u32) -> CapacitatedGraph {
        CapacitatedGraph::new(vec![center_kappa, 1, 1, 1], [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn aux_examples() {
        let g = star(1);
        let aux = build_aux(&g, &partition_xyz(&g).unwrap());
        assert_eq!(aux.left_vertices, vec![1, 2, 3]);
        assert_eq!(aux.copy_of, vec![0]);
        assert_eq!(aux.bip.edge_count(), 3);

        let g = star(2);
        let aux = build_aux(&g, &partition_xyz(&g).unwrap());
        assert_eq!(aux.copy_of, vec![0, 0]);
        assert_eq!(aux.copies_of[&0], vec![0, 1]);
        assert_eq!(aux.bip.edge_count(), 6);
    }

    #[test]
    fn aux_zero_capacity_y_has_no_copies() {
        // 0 -- 1 -- 2 with κ = (1, 0, 1): vertex 1 lies in Y with κ = 0
        let g = CapacitatedGraph::new(vec![1, 0, 1], [(0, 1), (1, 2)]).unwrap();
        let part = partition_xyz(&g).unwrap();
        assert!(part.y_set.contains(&1));
        let aux = build_aux(&g, &part);
        assert_eq!(aux.bip.right_count(), 0);
        assert_eq!(aux.copies_of[&1], Vec::<usize>::new());
    }
}
