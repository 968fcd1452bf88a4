//! DP-Nash subgraphs and D-sets of capacitated graphs.
//!
//! A capacitated graph assigns every vertex `v` a capacity `κ(v)`. A DP-Nash
//! subgraph splits the vertices into D and P and picks edges between them so
//! that every D-vertex carries exactly `min(d(v), κ(v))` edges and no
//! P-vertex is isolated. A set is a D-set when it is the D side of some
//! DP-Nash subgraph.

pub mod construct;
pub mod decide;
pub mod enumerate;
pub mod error;
pub mod flow;
pub mod format;
pub mod gadgets;
pub mod graph;
pub mod matching;

pub use construct::{canonical_nash, construct_nash, construct_nash_seeded};
pub use decide::{
    check_mstar, check_ostar, compute_lw, mstar_violation, ostar_violation, unique_dset, unique_nash, witness_dsets,
    DecideOptions, LwResult, Method, Strategy, UniquenessVerdict, Witness, DEFAULT_OSTAR_CAP,
};
pub use enumerate::{
    count_dsets, enumerate_dsets, enumerate_dsets_capped, enumerate_dsets_pruned, DSetReport, DEFAULT_ENUMERATE_CAP,
};
pub use error::{Error, Result};
pub use format::{parse_graph, write_graph};
pub use gadgets::cnf::{
    pad_even_variables, parse_dimacs, sat_oracle, widen_to_k_of_k2, write_dimacs, CnfFormula, SatMode,
};
pub use gadgets::{claim_b_witness, gadget_k, gadget_k2, write_sidecar, GadgetArtifact, Layout, Region};
pub use graph::{
    dset_witness, is_dset, nash_violation, normalize, partition_xyz, validate_nash, CapacitatedGraph, Edge,
    NashSubgraph, NashViolation, Vertex, VertexSet, XyzPartition,
};
pub use matching::{build_aux, hall_violator, max_matching, AuxGraph, Bipartite, HallWitness, Matching, Side};
