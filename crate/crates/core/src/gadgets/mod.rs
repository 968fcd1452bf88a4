//! Reductions from 3-SAT to D-set uniqueness with constant capacity `k`.
//!
//! For `k = 2` the formula is padded to an even number of variables; for
//! `k ≥ 3` every clause is widened to `k + 2` literals, `k` of which must be
//! true. In both cases the canonical DP-Nash subgraph (`D = X ∪ Z`) always
//! exists, and a satisfying assignment yields a second one with a different
//! D-set ([`claim_b_witness`]).
//!
//! Vertex ids are allocated per variable first, then the shared regions,
//! then one vertex per clause.

pub mod cnf;
mod reduction;
mod witness;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::graph::{CapacitatedGraph, Edge, Vertex};
use cnf::{CnfFormula, SatMode};

pub use reduction::{gadget_k, gadget_k2};
pub use witness::claim_b_witness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Region {
    /// Literal vertices `w_i`, `w̄_i`.
    W,
    /// `r_i` (k = 2).
    R,
    /// Subdivision vertices (k = 2).
    U,
    Z,
    /// `q_1`, `q_2` (k = 2).
    Q,
    XStar,
    /// Clause vertices.
    C,
    /// `X_i` (k ≥ 3).
    X,
    /// `X_i'` (k ≥ 3).
    XPrime,
    /// `Y_i` (k ≥ 3).
    Y,
    YStar,
    YPrime,
}

impl Region {
    pub fn label(self) -> &'static str {
        match self {
            Region::W => "W",
            Region::R => "r",
            Region::U => "U",
            Region::Z => "Z",
            Region::Q => "Q",
            Region::XStar => "X*",
            Region::C => "C",
            Region::X => "X",
            Region::XPrime => "X'",
            Region::Y => "Y",
            Region::YStar => "Y*",
            Region::YPrime => "y'",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Vertex ids of the regions, as needed by the witness builder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Layout {
    Two {
        r: Vec<Vertex>,
        z: Vec<Vec<Vertex>>,
        /// Subdivision vertex of each edge of the base graph, keyed by its
        /// ordered endpoints.
        u: BTreeMap<Edge, Vertex>,
        q: [Vertex; 2],
        x_star: Vec<Vertex>,
    },
    Many {
        x: Vec<Vec<Vertex>>,
        y: Vec<Vec<Vertex>>,
        x_prime: Vec<Vec<Vertex>>,
        z: Vec<Vec<Vertex>>,
        y_prime: Vertex,
        x_star: Vec<Vertex>,
        y_star: Vec<Vertex>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetArtifact {
    pub graph: CapacitatedGraph,
    pub k: u32,
    /// `(w_i, w̄_i)` for every variable of the padded formula.
    pub var_vertices: Vec<(Vertex, Vertex)>,
    pub clause_vertices: Vec<Vertex>,
    pub region: Vec<Region>,
    /// The formula actually encoded, after padding or widening.
    pub padded_formula: CnfFormula,
    pub layout: Layout,
}

impl GadgetArtifact {
    /// Satisfaction notion under which the padded formula is encoded.
    pub fn mode(&self) -> SatMode {
        if self.k == 2 {
            SatMode::Exists
        } else {
            SatMode::AtLeast(self.k as usize)
        }
    }

    /// Vertex of a literal of the padded formula.
    pub fn literal_vertex(&self, lit: i32) -> Vertex {
        let (w, wbar) = self.var_vertices[lit.unsigned_abs() as usize - 1];
        if lit > 0 {
            w
        } else {
            wbar
        }
    }

    /// Number of vertices labelled `r`.
    pub fn region_size(&self, r: Region) -> usize {
        self.region.iter().filter(|&&x| x == r).count()
    }
}

/// Line-oriented description of the vertex roles: `var <i> <w> <wbar>`,
/// `clause <j> <c>` (both 1-based) and `region <id> <label>`.
pub fn write_sidecar(a: &GadgetArtifact) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# k {} variables {} clauses {}", a.k, a.var_vertices.len(), a.clause_vertices.len());
    for (i, (w, wbar)) in a.var_vertices.iter().enumerate() {
        let _ = writeln!(out, "var {} {w} {wbar}", i + 1);
    }
    for (j, c) in a.clause_vertices.iter().enumerate() {
        let _ = writeln!(out, "clause {} {c}", j + 1);
    }
    for (v, r) in a.region.iter().enumerate() {
        let _ = writeln!(out, "region {v} {r}");
    }
    out
}
