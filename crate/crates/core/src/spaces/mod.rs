//! The one-circuit space, unilateral weighted shifts and weighted shifts on
//! the tree with one branching vertex.

mod shift;
mod tree;

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::exactseq::{EvSeq, Rational};
use crate::{Error, Result};

pub use self::shift::{ShiftWeights, UnilateralShift};
pub use self::tree::{TreeShift, TreeVertex};

/// A point of the one-circuit space. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexId {
    /// `x_r`, `1 <= r <= kappa`.
    Circuit(usize),
    /// `x_{i,j}`, `1 <= i <= eta`, `j >= 1`.
    Branch(usize, usize),
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Circuit(r) => write!(f, "x_{r}"),
            VertexId::Branch(i, j) => write!(f, "x_{{{i},{j}}}"),
        }
    }
}

/// Discrete measure on `{x_1..x_kappa} u {x_{i,j}}` with the self-map
///
/// ```text
/// phi(x_{i,j}) = x_{i,j-1}   (j >= 2)
/// phi(x_{i,1}) = x_kappa
/// phi(x_1)     = x_kappa
/// phi(x_r)     = x_{r-1}     (2 <= r <= kappa)
/// ```
///
/// The map is implied by the shape and never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircuitSpace {
    circuit: Vec<Rational>,
    branches: Vec<EvSeq>,
}

impl CircuitSpace {
    /// `circuit[r-1] = mu(x_r)`, `branches[i-1].value(j) = mu(x_{i,j})`.
    pub fn new(kappa: usize, circuit: Vec<Rational>, branches: Vec<EvSeq>) -> Result<Self> {
        if kappa == 0 {
            return Err(Error::InvalidSpace("kappa must be at least 1".into()));
        }
        if circuit.len() != kappa {
            return Err(Error::InvalidSpace(format!(
                "expected {kappa} circuit measures, got {}",
                circuit.len()
            )));
        }
        if let Some(r) = circuit.iter().position(|m| !m.is_positive()) {
            return Err(Error::InvalidSpace(format!(
                "mu(x_{}) = {} is not positive",
                r + 1,
                circuit[r]
            )));
        }
        if branches.is_empty() {
            return Err(Error::InvalidSpace("at least one branch is required".into()));
        }
        for (i, b) in branches.iter().enumerate() {
            if b.start() != 1 {
                return Err(Error::InvalidSpace(format!(
                    "branch {} must start at j = 1, starts at {}",
                    i + 1,
                    b.start()
                )));
            }
            if !b.is_positive() {
                return Err(Error::InvalidSpace(format!(
                    "branch {} has a nonpositive measure",
                    i + 1
                )));
            }
        }
        Ok(CircuitSpace { circuit, branches })
    }

    pub fn kappa(&self) -> usize {
        self.circuit.len()
    }

    pub fn eta(&self) -> usize {
        self.branches.len()
    }

    pub fn circuit_measures(&self) -> &[Rational] {
        &self.circuit
    }

    pub fn branches(&self) -> &[EvSeq] {
        &self.branches
    }

    /// Branch `i` (1-based).
    pub fn branch(&self, i: usize) -> &EvSeq {
        &self.branches[i - 1]
    }

    pub fn contains(&self, x: VertexId) -> bool {
        match x {
            VertexId::Circuit(r) => (1..=self.kappa()).contains(&r),
            VertexId::Branch(i, j) => (1..=self.eta()).contains(&i) && j >= 1,
        }
    }

    fn check(&self, x: VertexId) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::InvalidVertex(x))
        }
    }

    pub fn apply_phi(&self, x: VertexId) -> Result<VertexId> {
        self.check(x)?;
        Ok(match x {
            VertexId::Branch(i, j) if j >= 2 => VertexId::Branch(i, j - 1),
            VertexId::Branch(_, _) | VertexId::Circuit(1) => VertexId::Circuit(self.kappa()),
            VertexId::Circuit(r) => VertexId::Circuit(r - 1),
        })
    }

    /// `phi^{-1}({x})`, sorted.
    pub fn preimage(&self, x: VertexId) -> Result<Vec<VertexId>> {
        self.check(x)?;
        let k = self.kappa();
        let mut out = Vec::new();
        match x {
            VertexId::Branch(i, j) => out.push(VertexId::Branch(i, j + 1)),
            VertexId::Circuit(r) if r < k => out.push(VertexId::Circuit(r + 1)),
            VertexId::Circuit(_) => {
                out.push(VertexId::Circuit(1));
                out.extend((1..=self.eta()).map(|i| VertexId::Branch(i, 1)));
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn try_measure_at(&self, x: VertexId) -> Result<Rational> {
        self.check(x)?;
        Ok(match x {
            VertexId::Circuit(r) => self.circuit[r - 1].clone(),
            VertexId::Branch(i, j) => self.branches[i - 1].value(j as i64),
        })
    }

    /// Panics on a vertex outside the space.
    pub fn measure_at(&self, x: VertexId) -> Rational {
        self.try_measure_at(x)
            .unwrap_or_else(|e| panic!("{e}"))
    }

    /// Every circuit point and the branch points with `j <= depth`.
    pub fn vertices(&self, depth: usize) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = (1..=self.kappa()).map(VertexId::Circuit).collect();
        for i in 1..=self.eta() {
            out.extend((1..=depth).map(|j| VertexId::Branch(i, j)));
        }
        out
    }

    /// Same shape with `mu(x_r)` replaced.
    pub fn with_circuit(&self, circuit: Vec<Rational>) -> Result<CircuitSpace> {
        CircuitSpace::new(self.kappa(), circuit, self.branches.clone())
    }
}
