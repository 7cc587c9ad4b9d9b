use crate::field::FieldError;
use crate::tableau::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("vertex {0} is outside the triangular vertex set for n = {1}")]
    InvalidVertex(Vertex, usize),
    #[error("n must be at least 2, got {0}")]
    InvalidRank(usize),
    #[error("self-loop at {0}")]
    SelfLoop(Vertex),
    #[error("arrow {0} -> {1} listed more than once")]
    DuplicateArrow(Vertex, Vertex),
    #[error("TopRowImmutable: shifts must vanish on row {0}")]
    TopRowImmutable(usize),
    #[error("ZeroShift: maximal chains need a nonzero shift")]
    ZeroShift,
    #[error("DegenerateRow: entries {0} and {1} coincide in one row")]
    DegenerateRow(Vertex, Vertex),
    #[error("NotMonotone: {0}")]
    NotMonotone(String),
    #[error("DifferentModule: tableau is not a shift of the seed by an integral vector with zero top row")]
    DifferentModule,
    #[error("NotRealization: tableau is not a realization of the graph")]
    NotRealization,
    #[error("rank mismatch: expected n = {expected}, found n = {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("weight {0:?} is not dominant")]
    NonDominant(Vec<i64>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no single-coordinate step exists for shift {0}")]
    StepNotFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
