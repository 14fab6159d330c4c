//! Completion problems: unilateral shifts from a prefix of weights, circuit
//! measures from branch measures, branch measures from circuit measures, and
//! single-branch spaces from a prefix of branch measures.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::classify::{is_m_isometry_circuit, shift_is_m_isometry};
use crate::exactseq::{
    completion_extend, first_nonpositive, int, lagrange_fit, positivity_on_range, signed_binomial,
    EvSeq, Extension, Poly, Rational,
};
use crate::linalg::Matrix;
use crate::radon::phi_decompose;
use crate::spaces::{CircuitSpace, UnilateralShift};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum CompletionResult {
    Solved(Certificate),
    Family(Family),
    NoSolution(Obstruction),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// The unique shift completion, given by `W(n) = w(n)`.
    Shift { w: Poly, strict: bool },
    Space(CircuitSpace),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Shift(ShiftFamily),
    CircuitMeasures(CircuitFamily),
}

/// Why a completion does not exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// `W(n) != w(n)` for the polynomial forced by the first `m` products.
    ForcedPolynomialMismatch { n: i64, product: Rational, forced: Rational },
    /// The forced polynomial is not positive at `n`.
    NotPositive { n: i64, value: Rational, w: Poly },
    /// `(Delta a)_n` differs from `(Delta a)_1`.
    DeltaNotConstant { n: usize, first: Rational, value: Rational },
    DeltaNotPositive { value: Rational },
    /// The interpolating branch polynomial has degree above `m - 2`.
    DegreeTooHigh { degree: usize, allowed: usize },
}

fn products(squared: &[Rational]) -> Vec<Rational> {
    let mut out = alloc::vec![Rational::one()];
    for a in squared {
        let next = out.last().unwrap() * a;
        out.push(next);
    }
    out
}

fn check_positive(values: &[Rational], what: &str) -> Result<()> {
    match values.iter().position(|v| !v.is_positive()) {
        Some(i) => Err(Error::Precondition(format!(
            "{what} must be positive, entry {i} is {}",
            values[i]
        ))),
        None => Ok(()),
    }
}

/// Strict m-isometric completions `t -> w_t`, `t >= threshold`, of a shift
/// prefix padded with intermediate squared weights.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftFamily {
    order: u32,
    squared_prefix: Vec<Rational>,
    extension: Extension,
}

impl ShiftFamily {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `s_0^2, ..., s_{m-3}^2`: the given weights and the chosen intermediate ones.
    pub fn squared_prefix(&self) -> &[Rational] {
        &self.squared_prefix
    }

    /// Smallest admissible `t = w(m - 1)`.
    pub fn threshold(&self) -> &Rational {
        self.extension.threshold()
    }

    /// `w_t`, certified to give a strict m-isometry.
    pub fn member(&self, t: &Rational) -> Result<Poly> {
        let w = self.extension.at(t)?;
        let shift = UnilateralShift::from_polynomial(&w)?;
        let report = shift_is_m_isometry(&shift, self.order);
        if !report.strict {
            return Err(Error::Contradiction(format!(
                "completion member at t = {t} is not a strict {}-isometry",
                self.order
            )));
        }
        Ok(w)
    }

    pub fn shift(&self, t: &Rational) -> Result<UnilateralShift> {
        UnilateralShift::from_polynomial(&self.member(t)?)
    }
}

/// m-isometric completion of the squared weights `a_0^2, ..., a_k^2`.
///
/// With `k + 3 <= m` the missing weights `a_{k+1}, ..., a_{m-3}` are taken
/// from `intermediate` (default 1) and the family is parameterized by
/// `t = w(m - 1)`. Otherwise the completion, if any, is forced.
pub fn complete_shift(
    squared: &[Rational],
    m: u32,
    intermediate: Option<&[Rational]>,
) -> Result<CompletionResult> {
    if squared.is_empty() {
        return Err(Error::Precondition("the prefix must not be empty".into()));
    }
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    check_positive(squared, "squared weights")?;
    let k = squared.len() - 1;
    let m_us = m as usize;
    if k + 3 <= m_us {
        let needed = m_us - 3 - k;
        let mut prefix = squared.to_vec();
        match intermediate {
            Some(extra) => {
                if extra.len() != needed {
                    return Err(Error::Precondition(format!(
                        "expected {needed} intermediate squared weights, got {}",
                        extra.len()
                    )));
                }
                check_positive(extra, "intermediate squared weights")?;
                prefix.extend_from_slice(extra);
            }
            None => prefix.extend(core::iter::repeat_n(Rational::one(), needed)),
        }
        // b_n = W(n) for n <= m - 2
        let extension = completion_extend(&products(&prefix))?;
        return Ok(CompletionResult::Family(Family::Shift(ShiftFamily {
            order: m,
            squared_prefix: prefix,
            extension,
        })));
    }
    if intermediate.is_some_and(|e| !e.is_empty()) {
        return Err(Error::Precondition(
            "intermediate weights only apply when k + 3 <= m".into(),
        ));
    }
    // W(0..=k+1) is prescribed; the first m values force w
    let big_w = products(squared);
    let points: Vec<(i64, Rational)> = big_w
        .iter()
        .take(m_us)
        .enumerate()
        .map(|(n, v)| (n as i64, v.clone()))
        .collect();
    let w = lagrange_fit(&points)?;
    for (n, v) in big_w.iter().enumerate().skip(m_us) {
        let forced = w.eval_int(n as i64);
        if &forced != v {
            return Ok(CompletionResult::NoSolution(Obstruction::ForcedPolynomialMismatch {
                n: n as i64,
                product: v.clone(),
                forced,
            }));
        }
    }
    if let Some(n) = first_nonpositive(&w, m as i64) {
        return Ok(CompletionResult::NoSolution(Obstruction::NotPositive {
            n,
            value: w.eval_int(n),
            w,
        }));
    }
    let strict = w.degree() == Some(m_us - 1);
    Ok(CompletionResult::Solved(Certificate::Shift { w, strict }))
}

/// The circulant system `A mu = b` whose solutions are the circuit measures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantSystem {
    pub matrix: Matrix,
    pub rhs: Vec<Rational>,
    pub rank: usize,
    pub augmented_rank: usize,
    /// `kappa - deg gcd(sum_p a_p x^p, x^kappa - 1)`.
    pub polynomial_rank: usize,
}

/// `A[r][s] = a_{(s - r) mod kappa}` with `a_p = (-1)^p C(m,p)` for `p <= m`.
pub fn circulant_matrix(kappa: usize, m: u32) -> Matrix {
    let a = |p: usize| {
        if p <= m as usize {
            signed_binomial(m, p as u32)
        } else {
            Rational::zero()
        }
    };
    let rows = (0..kappa)
        .map(|r| (0..kappa).map(|s| a((s + kappa - r) % kappa)).collect())
        .collect();
    Matrix::from_rows(rows)
}

/// Rank of the circulant matrix from its associated polynomial.
pub fn circulant_rank_by_gcd(kappa: usize, m: u32) -> usize {
    let mut coeffs = alloc::vec![Rational::zero(); kappa];
    for p in 0..=m as usize {
        coeffs[p % kappa] += signed_binomial(m, p as u32);
    }
    let f = Poly::new(coeffs);
    let mut cyc = alloc::vec![Rational::zero(); kappa + 1];
    cyc[0] = int(-1);
    cyc[kappa] = int(1);
    let g = f.gcd(&Poly::new(cyc));
    kappa - g.degree().unwrap_or(kappa)
}

/// `b_r = -sum_p (-1)^p C(m,p) sum_i sum_{l < Phi1(p+r)} w_i(l kappa + Phi2(p+r))`.
pub fn circulant_rhs(kappa: usize, branches: &[EvSeq], m: u32) -> Vec<Rational> {
    let k = kappa as i64;
    (1..=k)
        .map(|r| {
            let mut acc = Rational::zero();
            for p in 0..=m as i64 {
                let d = phi_decompose(p + r, kappa);
                let mut inner = Rational::zero();
                for b in branches {
                    for l in 0..d.phi1 {
                        inner += b.value(l * k + d.phi2 as i64);
                    }
                }
                acc -= signed_binomial(m, p as u32) * inner;
            }
            acc
        })
        .collect()
}

/// The circuit measures `base + t (1, ..., 1)`, `t > t0`, completing fixed
/// branch measures to an m-isometry.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitFamily {
    pub order: u32,
    pub base: Vec<Rational>,
    pub direction: Vec<Rational>,
    /// Admissible parameters form the open ray `(t0, inf)`.
    pub t0: Rational,
    pub branches: Vec<EvSeq>,
    pub system: CirculantSystem,
}

impl CircuitFamily {
    pub fn measures(&self, t: &Rational) -> Vec<Rational> {
        self.base
            .iter()
            .zip(&self.direction)
            .map(|(b, d)| b + d * t)
            .collect()
    }

    /// `mu_t`, checked against the circulant equations and the classifier.
    pub fn member(&self, t: &Rational) -> Result<CircuitSpace> {
        if t <= &self.t0 {
            return Err(Error::BelowThreshold {
                value: Box::new(t.clone()),
                threshold: Box::new(self.t0.clone()),
            });
        }
        let mu = self.measures(t);
        if self.system.matrix.mul_vec(&mu) != self.system.rhs {
            return Err(Error::Contradiction("family member leaves a residual".into()));
        }
        let space = CircuitSpace::new(mu.len(), mu, self.branches.clone())?;
        if !is_m_isometry_circuit(&space, self.order).is_m_isometry() {
            return Err(Error::Contradiction(format!(
                "family member at t = {t} is not a {}-isometry",
                self.order
            )));
        }
        Ok(space)
    }
}

/// Circuit measures completing the branch measures `w_i(j)` to an m-isometry,
/// for `kappa > m >= 2`.
pub fn complete_circuit_from_branches(
    kappa: usize,
    branch_polys: &[Poly],
    m: u32,
    bound: &Rational,
) -> Result<CompletionResult> {
    if !(m >= 2 && kappa > m as usize) {
        return Err(Error::Precondition(format!("need kappa > m >= 2, got kappa = {kappa}, m = {m}")));
    }
    if branch_polys.is_empty() {
        return Err(Error::Precondition("at least one branch is required".into()));
    }
    let mut branches = Vec::new();
    let mut head = Rational::zero();
    for (i, p) in branch_polys.iter().enumerate() {
        if p.degree().is_none_or(|d| d > m as usize - 2) {
            return Err(Error::Precondition(format!(
                "branch {} must be a nonzero polynomial of degree at most {}",
                i + 1,
                m - 2
            )));
        }
        if !positivity_on_range(p, 1) {
            return Err(Error::Precondition(format!("branch {} is not positive on j >= 1", i + 1)));
        }
        let seq = EvSeq::polynomial(1, p.clone());
        let sup_ratio = seq.ratio_extrema().0;
        if &sup_ratio > bound {
            return Err(Error::Precondition(format!(
                "branch {} has ratio supremum {sup_ratio} above the bound {bound}",
                i + 1
            )));
        }
        head += p.eval_int(1);
        branches.push(seq);
    }
    if &head > bound {
        return Err(Error::Precondition(format!(
            "sum of first branch measures {head} exceeds the bound {bound}"
        )));
    }
    let matrix = circulant_matrix(kappa, m);
    let rhs = circulant_rhs(kappa, &branches, m);
    let rank = matrix.rank();
    let augmented_rank = matrix.augment(&rhs).rank();
    let polynomial_rank = circulant_rank_by_gcd(kappa, m);
    let system = CirculantSystem {
        matrix,
        rhs,
        rank,
        augmented_rank,
        polynomial_rank,
    };
    if rank != kappa - 1 || polynomial_rank != rank || augmented_rank != rank {
        return Err(Error::Contradiction(format!(
            "circulant ranks {rank} / {polynomial_rank} / augmented {augmented_rank}, expected {}",
            kappa - 1
        )));
    }
    let sol = system
        .matrix
        .solve_affine(&system.rhs)
        .ok_or_else(|| Error::Contradiction("consistent system without a solution".into()))?;
    let ones = alloc::vec![Rational::one(); kappa];
    let kernel_ok = sol.kernel.len() == 1 && {
        let v = &sol.kernel[0];
        v.iter().all(|x| x == &v[0]) && !v[0].is_zero()
    };
    if !kernel_ok || !system.matrix.mul_vec(&ones).iter().all(Zero::is_zero) {
        return Err(Error::Contradiction("kernel is not spanned by (1, ..., 1)".into()));
    }
    let t0 = sol.particular.iter().map(|b| -b).max().unwrap();
    Ok(CompletionResult::Family(Family::CircuitMeasures(CircuitFamily {
        order: m,
        base: sol.particular,
        direction: ones,
        t0,
        branches,
        system,
    })))
}

/// `w(x) = d/(2 kappa) x^2 + (c/kappa - (kappa+2) d/(2 kappa)) x - c + d + t`.
pub fn three_isometry_polynomial(kappa: usize, c: &Rational, d: &Rational, t: &Rational) -> Poly {
    let k = int(kappa as i64);
    let two_k = &k * int(2);
    Poly::new(alloc::vec![
        d - c + t,
        c / &k - int(kappa as i64 + 2) * d / &two_k,
        d / two_k,
    ])
}

/// The space with branches `c_i + d_i (j - 1)` and circuit `mu(x_r) = w(r)`,
/// a 3-isometry, and a 2-isometry exactly when every `d_i` is zero.
pub fn construct_2_3_isometry(
    kappa: usize,
    c_list: &[Rational],
    d_list: &[Rational],
    t: &Rational,
) -> Result<CircuitSpace> {
    if c_list.is_empty() || c_list.len() != d_list.len() {
        return Err(Error::Precondition("need matching, nonempty c and d lists".into()));
    }
    check_positive(c_list, "c_i")?;
    if d_list.iter().any(Signed::is_negative) {
        return Err(Error::Precondition("d_i must be nonnegative".into()));
    }
    let c: Rational = c_list.iter().sum();
    let d: Rational = d_list.iter().sum();
    let w = three_isometry_polynomial(kappa, &c, &d, t);
    let circuit: Vec<Rational> = (1..=kappa as i64).map(|r| w.eval_int(r)).collect();
    if let Some(r) = circuit.iter().position(|v| !v.is_positive()) {
        return Err(Error::Precondition(format!(
            "w(x) = {w} gives mu(x_{}) = {} <= 0",
            r + 1,
            circuit[r]
        )));
    }
    let branches = c_list
        .iter()
        .zip(d_list)
        .map(|(ci, di)| EvSeq::polynomial(1, Poly::new(alloc::vec![ci - di, di.clone()])))
        .collect();
    CircuitSpace::new(kappa, circuit, branches)
}

/// 2-isometric completion with prescribed circuit measures `a_1..a_kappa`
/// and `eta` constant branches.
pub fn complete_circuit_from_circuit(a: &[Rational], eta: usize) -> Result<CompletionResult> {
    let kappa = a.len();
    if kappa < 2 || eta == 0 {
        return Err(Error::Precondition("need kappa >= 2 and eta >= 1".into()));
    }
    check_positive(a, "circuit measures")?;
    let first = &a[1] - &a[0];
    for n in 2..kappa {
        let value = &a[n] - &a[n - 1];
        if value != first {
            return Ok(CompletionResult::NoSolution(Obstruction::DeltaNotConstant {
                n,
                first,
                value,
            }));
        }
    }
    if !first.is_positive() {
        return Ok(CompletionResult::NoSolution(Obstruction::DeltaNotPositive { value: first }));
    }
    let level = int(kappa as i64) / int(eta as i64) * &first;
    let branches = alloc::vec![EvSeq::constant(1, level); eta];
    let space = CircuitSpace::new(kappa, a.to_vec(), branches)?;
    if !is_m_isometry_circuit(&space, 2).is_m_isometry() {
        return Err(Error::Contradiction("prescribed-circuit completion is not a 2-isometry".into()));
    }
    Ok(CompletionResult::Solved(Certificate::Space(space)))
}

/// Moves the fraction `t` of branch 2 onto branch 1; for `0 < t < 1` this
/// keeps every classification verdict and changes the measure.
pub fn nu_t_reweight(space: &CircuitSpace, t: &Rational) -> Result<CircuitSpace> {
    if space.eta() < 2 {
        return Err(Error::Precondition("reweighting needs at least two branches".into()));
    }
    if !(t.is_positive() && t < &Rational::one()) {
        return Err(Error::Precondition(format!("t = {t} must lie in (0, 1)")));
    }
    let b1 = space.branch(1);
    let b2 = space.branch(2);
    let first = b1
        .add(&b2.scale(t))
        .ok_or_else(|| Error::Precondition("branches 1 and 2 have different tail ratios".into()))?;
    let second = b2.scale(&(Rational::one() - t));
    let mut branches = space.branches().to_vec();
    branches[0] = first;
    branches[1] = second;
    CircuitSpace::new(space.kappa(), space.circuit_measures().to_vec(), branches)
}

/// A `kappa = eta = 1` space whose branch starts with `prefix` and which is a
/// `target_m`-isometry.
///
/// The lowest-degree interpolant is used when it is positive and of degree
/// at most `target_m - 2`; otherwise, when `target_m >= len + 2`, a positive
/// extension of degree `len` is built.
pub fn complete_branch_prefix(prefix: &[Rational], target_m: u32) -> Result<CompletionResult> {
    if prefix.is_empty() {
        return Err(Error::Precondition("the prefix must not be empty".into()));
    }
    if target_m < 2 {
        return Err(Error::Precondition("target order must be at least 2".into()));
    }
    check_positive(prefix, "branch measures")?;
    let len = prefix.len();
    let allowed = target_m as usize - 2;
    let points: Vec<(i64, Rational)> = prefix
        .iter()
        .enumerate()
        .map(|(j, v)| (j as i64 + 1, v.clone()))
        .collect();
    let fit = lagrange_fit(&points)?;
    let degree = fit.degree().unwrap();
    let branch = if degree <= allowed && positivity_on_range(&fit, 1) {
        fit
    } else if allowed >= len {
        let ext = completion_extend(prefix)?;
        // w(n) = a_n with n = j - 1
        ext.at(ext.threshold())?.shift(&int(-1))
    } else if degree > allowed {
        return Ok(CompletionResult::NoSolution(Obstruction::DegreeTooHigh { degree, allowed }));
    } else {
        let n = first_nonpositive(&fit, 1).unwrap();
        return Ok(CompletionResult::NoSolution(Obstruction::NotPositive {
            n,
            value: fit.eval_int(n),
            w: fit,
        }));
    };
    let space = CircuitSpace::new(1, alloc::vec![Rational::one()], alloc::vec![EvSeq::polynomial(1, branch)])?;
    if !is_m_isometry_circuit(&space, target_m).is_m_isometry() {
        return Err(Error::Contradiction("branch completion failed its classification".into()));
    }
    Ok(CompletionResult::Solved(Certificate::Space(space)))
}
