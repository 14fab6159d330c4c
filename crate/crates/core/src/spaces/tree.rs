use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed};

use crate::exactseq::{EvSeq, Rational};
use crate::{Error, Result};

/// A vertex of the tree: trunk `x_r` (root `x_kappa`) or branch `x_{i,j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeVertex {
    Trunk(usize),
    Branch(usize, usize),
}

impl fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeVertex::Trunk(r) => write!(f, "x_{r}"),
            TreeVertex::Branch(i, j) => write!(f, "x_{{{i},{j}}}"),
        }
    }
}

/// Weighted shift on the tree with trunk `x_kappa -> ... -> x_1`, whose
/// vertex `x_1` has children `x_{1,1}, ..., x_{eta,1}` and each
/// `x_{i,j}` has the single child `x_{i,j+1}`.
///
/// Squared weights are stored. The weight of `x_{i,j+1}` is given by a
/// positive profile: `lambda^2_{x_{i,j+1}} = profile_i(j+1) / profile_i(j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeShift {
    trunk_sq: Vec<Rational>,
    fan_sq: Vec<Rational>,
    profiles: Vec<EvSeq>,
}

impl TreeShift {
    /// `trunk_sq[r-1] = lambda^2_{x_r}` for `r < kappa`;
    /// `fan_sq[i-1] = lambda^2_{x_{i,1}}`.
    pub fn new(trunk_sq: Vec<Rational>, fan_sq: Vec<Rational>, profiles: Vec<EvSeq>) -> Result<Self> {
        if fan_sq.is_empty() || fan_sq.len() != profiles.len() {
            return Err(Error::InvalidSpace(format!(
                "need one fan weight per branch profile, got {} and {}",
                fan_sq.len(),
                profiles.len()
            )));
        }
        if trunk_sq.iter().chain(&fan_sq).any(|w| !w.is_positive()) {
            return Err(Error::InvalidSpace("tree weights must be positive".into()));
        }
        for (i, p) in profiles.iter().enumerate() {
            if p.start() != 1 || !p.is_positive() {
                return Err(Error::InvalidSpace(format!(
                    "profile {} must be positive and start at j = 1",
                    i + 1
                )));
            }
        }
        Ok(TreeShift {
            trunk_sq,
            fan_sq,
            profiles,
        })
    }

    /// The `eta = 1` tree that is the Dirichlet shift read from the root.
    pub fn dirichlet(kappa: usize) -> Self {
        let k = kappa as i64;
        let trunk_sq = (1..k)
            .map(|r| {
                let depth = k - r;
                crate::exactseq::rat(depth + 1, depth)
            })
            .collect();
        let fan = crate::exactseq::rat(k + 1, k);
        let profile = EvSeq::polynomial(1, crate::exactseq::Poly::from_ints(&[k, 1]));
        TreeShift::new(trunk_sq, alloc::vec![fan], alloc::vec![profile]).unwrap()
    }

    pub fn kappa(&self) -> usize {
        self.trunk_sq.len() + 1
    }

    pub fn eta(&self) -> usize {
        self.fan_sq.len()
    }

    pub fn trunk_sq(&self) -> &[Rational] {
        &self.trunk_sq
    }

    pub fn fan_sq(&self) -> &[Rational] {
        &self.fan_sq
    }

    pub fn profiles(&self) -> &[EvSeq] {
        &self.profiles
    }

    /// `lambda_v^2`; the root has no weight.
    pub fn squared_weight(&self, v: TreeVertex) -> Option<Rational> {
        match v {
            TreeVertex::Trunk(r) if r >= 1 && r < self.kappa() => Some(self.trunk_sq[r - 1].clone()),
            TreeVertex::Trunk(_) => None,
            TreeVertex::Branch(i, 1) => self.fan_sq.get(i.wrapping_sub(1)).cloned(),
            TreeVertex::Branch(i, j) => {
                let p = self.profiles.get(i.wrapping_sub(1))?;
                if j == 0 {
                    return None;
                }
                Some(p.value(j as i64) / p.value(j as i64 - 1))
            }
        }
    }

    /// Children of `v`.
    pub fn children(&self, v: TreeVertex) -> Vec<TreeVertex> {
        match v {
            TreeVertex::Trunk(1) => (1..=self.eta()).map(|i| TreeVertex::Branch(i, 1)).collect(),
            TreeVertex::Trunk(r) => alloc::vec![TreeVertex::Trunk(r - 1)],
            TreeVertex::Branch(i, j) => alloc::vec![TreeVertex::Branch(i, j + 1)],
        }
    }

    /// Product of the trunk squared weights `lambda^2_{x_1} ... lambda^2_{x_{r-1}}`.
    pub fn trunk_product(&self, r: usize) -> Rational {
        self.trunk_sq[..r - 1].iter().fold(Rational::one(), |a, w| a * w)
    }
}
