//! The Cauchy dual `C_phi' = C_phi (C_phi^* C_phi)^{-1}`: its weight, the
//! moment sequences `h_{phi^n, w_n}`, Stieltjes tests on finite prefixes,
//! the kernel condition and `Delta`-regularity.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::classify::is_m_isometry_circuit;
use crate::exactseq::{pow, EvSeq, Poly, Rational};
use crate::linalg::Matrix;
use crate::oracle;
use crate::radon::{h, inf_h};
use crate::spaces::{CircuitSpace, VertexId};
use crate::{Error, Result};

fn require_left_invertible(space: &CircuitSpace) -> Result<()> {
    if inf_h(space).is_positive() {
        Ok(())
    } else {
        Err(Error::NotLeftInvertible)
    }
}

/// `1 / h_phi(phi(x))`.
pub fn dual_weight(space: &CircuitSpace, x: VertexId) -> Result<Rational> {
    require_left_invertible(space)?;
    let y = space.apply_phi(x)?;
    Ok(h(space, y).recip())
}

/// `(mu(x_1), c)` for a 2-isometry with `kappa = 1`.
fn one_circuit_data(space: &CircuitSpace) -> Result<(Rational, Rational)> {
    if space.kappa() != 1 {
        return Err(Error::Precondition(format!(
            "closed forms need kappa = 1, got {}",
            space.kappa()
        )));
    }
    if !is_m_isometry_circuit(space, 2).is_m_isometry() {
        return Err(Error::Precondition("the space is not a 2-isometry".into()));
    }
    let c = space
        .branches()
        .iter()
        .fold(Rational::zero(), |acc, b| acc + b.value(1));
    Ok((space.circuit_measures()[0].clone(), c))
}

/// `alpha = mu(x_1) / (mu(x_1) + c)`.
pub fn dual_alpha(space: &CircuitSpace) -> Result<Rational> {
    let (mu1, c) = one_circuit_data(space)?;
    Ok(&mu1 / (&mu1 + c))
}

/// `h_{phi^n, w_n}(x)` for a 2-isometry with `kappa = 1`:
/// `(alpha^{2n} mu(x_1) + c sum_{j=1}^n alpha^{2(n+1-j)}) / mu(x_1)` at `x_1`, else 1.
pub fn dual_moment_closed_form(space: &CircuitSpace, x: VertexId, n: u64) -> Result<Rational> {
    let (mu1, c) = one_circuit_data(space)?;
    if !space.contains(x) {
        return Err(Error::InvalidVertex(x));
    }
    if x != VertexId::Circuit(1) {
        return Ok(Rational::one());
    }
    let alpha2 = pow(&(&mu1 / (&mu1 + &c)), 2);
    let tail = (1..=n).fold(Rational::zero(), |acc, j| acc + pow(&alpha2, n + 1 - j));
    Ok((pow(&alpha2, n) * &mu1 + c * tail) / mu1)
}

/// Finite positive combination of point masses on `[0, inf)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicMeasure {
    atoms: Vec<(Rational, Rational)>,
}

impl AtomicMeasure {
    /// `(location, mass)` pairs; locations distinct and nonnegative, masses positive.
    pub fn new(mut atoms: Vec<(Rational, Rational)>) -> Result<Self> {
        if atoms.iter().any(|(l, m)| l.is_negative() || !m.is_positive()) {
            return Err(Error::Precondition(
                "atoms need nonnegative locations and positive masses".into(),
            ));
        }
        atoms.sort();
        if atoms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Precondition("atom locations must be distinct".into()));
        }
        Ok(AtomicMeasure { atoms })
    }

    pub fn atoms(&self) -> &[(Rational, Rational)] {
        &self.atoms
    }

    pub fn total_mass(&self) -> Rational {
        self.moment(0)
    }

    /// `int t^n d nu(t)`, with `0^0 = 1`.
    pub fn moment(&self, n: u64) -> Rational {
        self.atoms
            .iter()
            .fold(Rational::zero(), |acc, (l, m)| acc + m * pow(l, n))
    }

    pub fn moments(&self, count: usize) -> MomentPrefix {
        MomentPrefix {
            values: (0..count as u64).map(|n| self.moment(n)).collect(),
        }
    }
}

/// `(mu(x_1)+c)/(2 mu(x_1)+c) delta_{alpha^2} + mu(x_1)/(2 mu(x_1)+c) delta_1`.
///
/// The second atom sits at 1: the moments tend to `mu(x_1)/(2 mu(x_1)+c)`,
/// which a mass at 0 could not produce.
pub fn dual_representing_measure(space: &CircuitSpace) -> Result<AtomicMeasure> {
    let (mu1, c) = one_circuit_data(space)?;
    let denom = &mu1 * Rational::from_integer(2.into()) + &c;
    let alpha = &mu1 / (&mu1 + &c);
    AtomicMeasure::new(alloc::vec![
        (pow(&alpha, 2), (&mu1 + &c) / &denom),
        (Rational::one(), mu1 / denom),
    ])
}

/// `s_0, ..., s_N`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MomentPrefix {
    pub values: Vec<Rational>,
}

impl MomentPrefix {
    pub fn new(values: Vec<Rational>) -> Self {
        MomentPrefix { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `[s_{i+j+shift}]` of the largest order fitting the prefix.
    pub fn hankel(&self, shift: usize) -> Matrix {
        let n = self.values.len();
        if n <= shift {
            return Matrix::zeros(0, 0);
        }
        let size = (n - 1 - shift) / 2 + 1;
        let rows = (0..size)
            .map(|i| (0..size).map(|j| self.values[i + j + shift].clone()).collect())
            .collect();
        Matrix::from_rows(rows)
    }
}

/// Both Hankel matrices `[s_{i+j}]` and `[s_{i+j+1}]` are positive semidefinite.
///
/// Necessary for a Stieltjes moment sequence; for the full sequence the
/// condition on every order is also sufficient.
pub fn stieltjes_check(prefix: &MomentPrefix) -> bool {
    if prefix.is_empty() {
        return true;
    }
    prefix.hankel(0).is_psd() && (prefix.len() < 2 || prefix.hankel(1).is_psd())
}

/// `h_{phi^n, w_n}(x)` for `n = 0..count`, summed over preimages.
///
/// For `kappa > 1` a passing [`stieltjes_check`] on this prefix is only a
/// necessary condition for subnormality of the dual.
pub fn dual_moment_prefix(space: &CircuitSpace, x: VertexId, count: usize) -> Result<MomentPrefix> {
    require_left_invertible(space)?;
    if !space.contains(x) {
        return Err(Error::InvalidVertex(x));
    }
    Ok(MomentPrefix::new(
        (0..count as u64)
            .map(|n| oracle::weighted_moment(space, x, n))
            .collect(),
    ))
}

/// `h_phi` is constant on every preimage set; only `phi^{-1}({x_kappa})`
/// has more than one point.
pub fn kernel_condition(space: &CircuitSpace) -> Result<bool> {
    require_left_invertible(space)?;
    let fiber = space.preimage(VertexId::Circuit(space.kappa()))?;
    let first = h(space, fiber[0]);
    Ok(fiber.iter().all(|&y| h(space, y) == first))
}

/// `u(x) (u(x) - u(phi(x))) = 0` with `u = h_phi - 1`.
fn regular_at(hx: &Rational, hphi: &Rational) -> bool {
    let u = hx - Rational::one();
    u.is_zero() || hx == hphi
}

/// `(q p(j+1) - p(j)) (p(j+1) p(j-1) - p(j)^2)`; its vanishing at `j` is the
/// pointwise criterion at `x_{i,j}` when `j - 1` is in the tail.
fn branch_criterion(seq: &EvSeq) -> Poly {
    let p = seq.tail_poly();
    let next = p.shift(&Rational::one());
    let prev = p.shift(&-Rational::one());
    let growth = &next.scale(seq.ratio()) - p;
    let log_convexity = &(&next * &prev) - &(p * p);
    &growth * &log_convexity
}

/// `Delta_{C_phi}`-regularity, `Delta T = Delta^{1/2} T Delta^{1/2}` with
/// `Delta = C_phi^* C_phi - I = M_{h_phi - 1}`.
///
/// Needs `h_phi >= 1`. With the flag set, the space must be a 2-isometry.
pub fn delta_regular(space: &CircuitSpace, require_2iso: bool) -> Result<bool> {
    if require_2iso && !is_m_isometry_circuit(space, 2).is_m_isometry() {
        return Err(Error::Precondition("the space is not a 2-isometry".into()));
    }
    if inf_h(space) < Rational::one() {
        return Err(Error::Precondition(
            "Delta is not positive: h_phi takes values below 1".into(),
        ));
    }
    let kappa = space.kappa();
    let h_kappa = h(space, VertexId::Circuit(kappa));
    for r in 1..=kappa {
        let x = VertexId::Circuit(r);
        if !regular_at(&h(space, x), &h(space, space.apply_phi(x)?)) {
            return Ok(false);
        }
    }
    for (idx, seq) in space.branches().iter().enumerate() {
        let i = idx + 1;
        if !regular_at(&h(space, VertexId::Branch(i, 1)), &h_kappa) {
            return Ok(false);
        }
        // every j >= 2 with j - 1 before the tail is checked directly
        let direct_until = seq.tail_start().max(2);
        for j in 2..=direct_until {
            let ju = j as usize;
            let hx = h(space, VertexId::Branch(i, ju));
            let hphi = h(space, VertexId::Branch(i, ju - 1));
            if !regular_at(&hx, &hphi) {
                return Ok(false);
            }
        }
        if !branch_criterion(seq).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
