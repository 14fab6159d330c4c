use alloc::boxed::Box;
use alloc::string::String;

use crate::exactseq::Rational;
use crate::spaces::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("tail ratio must satisfy 0 < q <= 1, got {0}")]
    InvalidRatio(Box<Rational>),
    #[error("duplicate interpolation abscissa {0}")]
    DuplicateAbscissa(i64),
    #[error("index {index} is outside the sequence domain (starts at {start})")]
    OutOfDomain { index: i64, start: i64 },
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("vertex {0:?} does not belong to the space")]
    InvalidVertex(VertexId),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parameter {value} is below the admissible threshold {threshold}")]
    BelowThreshold {
        value: Box<Rational>,
        threshold: Box<Rational>,
    },
    #[error("operator is not left invertible")]
    NotLeftInvertible,
    #[error("internal contradiction: {0}")]
    Contradiction(String),
}
