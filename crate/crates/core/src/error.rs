use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {count} vertices")]
    VertexOutOfRange { vertex: Vertex, count: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is not normalized: vertex {vertex} has capacity {kappa} but degree {degree}")]
    NotNormalized { vertex: Vertex, kappa: u32, degree: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("budget exceeded: {what} is {size}, cap is {cap}")]
    BudgetExceeded { what: &'static str, size: usize, cap: usize },

    #[error("clause {clause} has {satisfied} true literals, {required} required")]
    UnsatisfiedClause { clause: usize, satisfied: usize, required: usize },
}
