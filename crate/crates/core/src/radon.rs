//! Index arithmetic on the circuit and closed forms for the Radon-Nikodym
//! derivatives `h_{phi^n}`, the operator norm and the lower bound of `C_phi`.
//!
//! Nothing here walks the graph; the traversal-based counterparts live in
//! [`crate::oracle`].

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exactseq::{signed_binomial, Rational};
use crate::spaces::{CircuitSpace, VertexId};

/// `n = phi1 * kappa + phi2` with `1 <= phi2 <= kappa`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiDecomposition {
    pub phi1: i64,
    pub phi2: usize,
}

pub fn phi_decompose(n: i64, kappa: usize) -> PhiDecomposition {
    assert!(kappa >= 1, "kappa must be positive");
    let k = kappa as i64;
    let phi2 = (n - 1).rem_euclid(k) + 1;
    PhiDecomposition {
        phi1: (n - phi2) / k,
        phi2: phi2 as usize,
    }
}

/// `mu(x_{Phi2(n)}) + sum_i sum_{l < Phi1(n)} mu(x_{i, l kappa + Phi2(n)})` for `n >= 1`.
///
/// This is `mu((phi^{n-1})^{-1}({x_1}))`.
pub fn circuit_mass(space: &CircuitSpace, n: i64) -> Rational {
    assert!(n >= 1, "circuit mass is defined for n >= 1");
    let k = space.kappa() as i64;
    let d = phi_decompose(n, space.kappa());
    let mut total = space.circuit_measures()[d.phi2 - 1].clone();
    for b in space.branches() {
        for l in 0..d.phi1 {
            total += b.value(l * k + d.phi2 as i64);
        }
    }
    total
}

/// `h_{phi^n}(x)`.
pub fn h_n(space: &CircuitSpace, x: VertexId, n: u64) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    let n = n as i64;
    match x {
        VertexId::Branch(i, j) => {
            let b = space.branch(i);
            b.value(n + j as i64) / b.value(j as i64)
        }
        VertexId::Circuit(r) => {
            // h_n(x_r) = mu(x_1)/mu(x_r) h_{n+r-1}(x_1) and
            // h_N(x_1) = circuit_mass(N+1)/mu(x_1)
            circuit_mass(space, n + r as i64) / &space.circuit_measures()[r - 1]
        }
    }
}

/// `h_phi(x)`.
pub fn h(space: &CircuitSpace, x: VertexId) -> Rational {
    h_n(space, x, 1)
}

/// `sum_k (-1)^k C(m,k) h_{phi^k}(x)`, the diagonal of `beta_m(C_phi)` at `x`.
pub fn beta_at(space: &CircuitSpace, x: VertexId, m: u32) -> Rational {
    (0..=m).fold(Rational::zero(), |acc, k| {
        acc + signed_binomial(m, k) * h_n(space, x, k as u64)
    })
}

/// The residual of the circuit equation at `r`:
/// `sum_p (-1)^p C(m,p) circuit_mass(p + r)`.
pub fn wzo1(space: &CircuitSpace, m: u32, r: usize) -> Rational {
    (0..=m as i64).fold(Rational::zero(), |acc, p| {
        acc + signed_binomial(m, p as u32) * circuit_mass(space, p + r as i64)
    })
}

/// `sum_r mu(x_r) beta_m(x_r)`.
pub fn circuit_beta_mass(space: &CircuitSpace, m: u32) -> Rational {
    (1..=space.kappa()).fold(Rational::zero(), |acc, r| {
        acc + &space.circuit_measures()[r - 1] * beta_at(space, VertexId::Circuit(r), m)
    })
}

/// `-sum_i sum_{p<m} (-1)^p C(m-1,p) mu(x_{i,p+1})`; equals [`circuit_beta_mass`].
pub fn branch_head_mass(space: &CircuitSpace, m: u32) -> Rational {
    let mut total = Rational::zero();
    for b in space.branches() {
        for p in 0..m {
            total -= signed_binomial(m - 1, p) * b.value(p as i64 + 1);
        }
    }
    total
}

/// `(sup, inf)` of `h_phi` over the whole space, exact.
pub fn h_extrema(space: &CircuitSpace) -> (Rational, Rational) {
    let mut values: Vec<Rational> = (1..=space.kappa())
        .map(|r| h(space, VertexId::Circuit(r)))
        .collect();
    for b in space.branches() {
        let (hi, lo) = b.ratio_extrema();
        values.push(hi);
        values.push(lo);
    }
    let sup = values.iter().max().unwrap().clone();
    let inf = values.iter().min().unwrap().clone();
    (sup, inf)
}

/// `||h_phi||_inf = ||C_phi||^2`.
pub fn sup_h(space: &CircuitSpace) -> Rational {
    h_extrema(space).0
}

/// `inf h_phi`, the square of the best lower bound of `C_phi`.
pub fn inf_h(space: &CircuitSpace) -> Rational {
    h_extrema(space).1
}
