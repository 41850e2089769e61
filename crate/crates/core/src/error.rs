use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex index {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("seed set is empty")]
    EmptySeedSet,
    #[error("requested {k} seeds but graph has {n} vertices")]
    SeedCount { k: usize, n: usize },
    #[error("probability must lie in [0, 1]")]
    Probability,
    #[error("coverage threshold must lie in (0, 1]")]
    Threshold,
    #[error("iteration count must be at least 1")]
    Iterations,
    #[error("invalid synthetic spec: {0}")]
    Spec(&'static str),
}
