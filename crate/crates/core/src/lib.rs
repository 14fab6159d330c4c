//! Exact arithmetic models of bounded composition operators on one-circuit
//! directed graphs, unilateral weighted shifts and weighted shifts on the
//! directed trees with one branching vertex.
//!
//! Every quantity is an exact rational. Infinite families of points (the
//! branches of the graph, the weight sequences of shifts) are described by
//! eventually geo-polynomial sequences, which makes the "for all x" quantifiers
//! of the classification criteria decidable.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classify;
pub mod completion;
pub mod dual;
mod error;
pub mod exactseq;
pub mod linalg;
pub mod oracle;
pub mod radon;
pub mod spaces;

pub use crate::error::Error;
pub use crate::exactseq::{EvSeq, Poly, Rational};
pub use crate::spaces::{CircuitSpace, ShiftWeights, TreeShift, UnilateralShift, VertexId};

pub type Result<T, E = Error> = core::result::Result<T, E>;
