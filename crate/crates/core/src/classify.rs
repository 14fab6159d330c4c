//! Classification predicates: m-isometries of `C_phi`, of unilateral shifts
//! and of shifts on the tree, m-expansivity, complete hyperexpansivity,
//! analyticity and the dimension of the infinite range intersection.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::exactseq::{
    forward_difference, is_polynomial_of_degree_at_most, signed_binomial, tail_series_sum, EvSeq,
    Rational, SeriesSum,
};
use crate::radon::{h, wzo1};
use crate::spaces::{CircuitSpace, TreeShift, TreeVertex, UnilateralShift, VertexId};
use crate::{Error, Result};

/// Verdicts for every order `1..=order` and, when the queried order fails,
/// points where `beta_order` does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryReport<L = VertexId> {
    pub order: u32,
    /// `holds[k - 1]` answers "is it a k-isometry".
    pub holds: Vec<bool>,
    pub least_order: Option<u32>,
    pub strict: bool,
    pub witnesses: Vec<(L, Rational)>,
}

impl<L> IsometryReport<L> {
    fn build(order: u32, verdict: impl Fn(u32) -> bool, witnesses: Vec<(L, Rational)>) -> Self {
        assert!(order >= 1, "order must be at least 1");
        let holds: Vec<bool> = (1..=order).map(verdict).collect();
        let least_order = holds.iter().position(|&b| b).map(|k| k as u32 + 1);
        IsometryReport {
            order,
            strict: least_order == Some(order),
            holds,
            least_order,
            witnesses,
        }
    }

    pub fn is_m_isometry(&self) -> bool {
        self.holds[self.order as usize - 1]
    }
}

/// Sign requested of `(-1)^m beta_m` at every point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `(-1)^m beta_m <= 0`
    NonPositive,
    /// `(-1)^m beta_m >= 0`
    NonNegative,
}

fn circuit_verdict(space: &CircuitSpace, m: u32) -> bool {
    if m == 1 {
        return (1..=space.kappa()).all(|r| h(space, VertexId::Circuit(r)).is_one())
            && space
                .branches()
                .iter()
                .all(|b| is_polynomial_of_degree_at_most(b, 0));
    }
    space
        .branches()
        .iter()
        .all(|b| is_polynomial_of_degree_at_most(b, m as usize - 2))
        && (1..=space.kappa()).all(|r| wzo1(space, m, r).is_zero())
}

/// `beta_m(x_r) = wzo1(r) / mu(x_r)` and, per branch, the first `j` with
/// `beta_m(x_{i,j}) = (-1)^m (Delta^m s)(j) / s(j) != 0`.
fn circuit_witnesses(space: &CircuitSpace, m: u32) -> Vec<(VertexId, Rational)> {
    let mut out = Vec::new();
    for r in 1..=space.kappa() {
        let w = wzo1(space, m, r);
        if !w.is_zero() {
            out.push((VertexId::Circuit(r), w / &space.circuit_measures()[r - 1]));
        }
    }
    for (i, b) in space.branches().iter().enumerate() {
        let d = forward_difference(b, m);
        if let Some(j) = d.first_nonzero() {
            let mut beta = d.value(j) / b.value(j);
            if m % 2 == 1 {
                beta = -beta;
            }
            out.push((VertexId::Branch(i + 1, j as usize), beta));
        }
    }
    out
}

/// Decides whether `C_phi` is an m-isometry, for every order up to `m`.
pub fn is_m_isometry_circuit(space: &CircuitSpace, m: u32) -> IsometryReport {
    let witnesses = if circuit_verdict(space, m) {
        Vec::new()
    } else {
        circuit_witnesses(space, m)
    };
    IsometryReport::build(m, |k| circuit_verdict(space, k), witnesses)
}

/// `(-1)^m beta_m` has the requested sign at every point of the space.
pub fn is_m_expansive(space: &CircuitSpace, m: u32, side: Side) -> bool {
    let ok = |v: &Rational| match side {
        Side::NonPositive => !v.is_positive(),
        Side::NonNegative => !v.is_negative(),
    };
    let circuit_ok = (1..=space.kappa()).all(|r| {
        let mut v = wzo1(space, m, r);
        if m % 2 == 1 {
            v = -v;
        }
        ok(&v)
    });
    // on a branch (-1)^m beta_m(x_{i,j}) = (Delta^m s)(j) / s(j) with s > 0
    circuit_ok
        && space.branches().iter().all(|b| {
            let d = forward_difference(b, m);
            match side {
                Side::NonPositive => d.all_nonpositive(),
                Side::NonNegative => d.all_nonnegative(),
            }
        })
}

/// `beta_n <= 0` at every point.
pub fn beta_nonpositive(space: &CircuitSpace, n: u32) -> bool {
    let side = if n.is_multiple_of(2) {
        Side::NonPositive
    } else {
        Side::NonNegative
    };
    is_m_expansive(space, n, side)
}

/// Complete hyperexpansivity, which holds exactly for 2-isometries.
///
/// `beta_n <= 0` is also checked pointwise for `1 <= n <= depth`; a
/// disagreement with the 2-isometry verdict is reported as an error.
pub fn is_completely_hyperexpansive(space: &CircuitSpace, depth: u32) -> Result<bool> {
    if depth < 2 {
        return Err(Error::Precondition("certification depth must be at least 2".into()));
    }
    let verdict = is_m_isometry_circuit(space, 2).is_m_isometry();
    let certified = (1..=depth).all(|n| beta_nonpositive(space, n));
    if verdict != certified {
        return Err(Error::Contradiction(format!(
            "2-isometry verdict {verdict} but beta_n <= 0 for n <= {depth} is {certified}"
        )));
    }
    Ok(verdict)
}

/// `sum_i sum_{l >= 0} mu(x_{i, l kappa + r})`.
fn residue_series(space: &CircuitSpace, r: usize) -> SeriesSum {
    let mut total = Rational::zero();
    for b in space.branches() {
        match tail_series_sum(b, space.kappa() as u32, r as i64) {
            SeriesSum::Finite(v) => total += v,
            SeriesSum::Divergent => return SeriesSum::Divergent,
        }
    }
    SeriesSum::Finite(total)
}

/// `C_phi` is analytic: every residue series diverges.
pub fn is_analytic(space: &CircuitSpace) -> bool {
    (1..=space.kappa()).all(|r| residue_series(space, r) == SeriesSum::Divergent)
}

/// The residues `r` whose function `f_r` (the indicator of
/// `{x_r} u {x_{i, l kappa + r}}`) is square integrable, with `||f_r||^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangInf {
    pub basis: Vec<(usize, Rational)>,
}

impl RangInf {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn ranginf_dimension(space: &CircuitSpace) -> RangInf {
    let basis = (1..=space.kappa())
        .filter_map(|r| match residue_series(space, r) {
            SeriesSum::Finite(v) => Some((r, v + &space.circuit_measures()[r - 1])),
            SeriesSum::Divergent => None,
        })
        .collect();
    RangInf { basis }
}

fn shift_verdict(w: Option<&EvSeq>, k: u32) -> bool {
    w.is_some_and(|w| is_polynomial_of_degree_at_most(w, k as usize - 1))
}

/// Longest scan for a witness when `W` has no geo-polynomial form. In that
/// case `W` either grows geometrically or decays faster than any geometric
/// sequence, so the first differences are nonzero almost at once.
const SHIFT_SCAN: u64 = 4096;

/// A unilateral shift is an m-isometry iff `W(n) = prod_{i<n} s_i^2` is a
/// polynomial of degree at most `m - 1`.
pub fn shift_is_m_isometry(shift: &UnilateralShift, m: u32) -> IsometryReport<u64> {
    let w = shift.products_seq();
    let mut witnesses = Vec::new();
    if !shift_verdict(w.as_ref(), m) {
        let sign = |v: Rational| if m % 2 == 1 { -v } else { v };
        match &w {
            Some(w) => {
                let d = forward_difference(w, m);
                if let Some(n) = d.first_nonzero() {
                    witnesses.push((n as u64, sign(d.value(n))));
                }
            }
            None => {
                for n in 0..SHIFT_SCAN {
                    let v = (0..=m).fold(Rational::zero(), |acc, j| {
                        acc + signed_binomial(m, j) * shift.product(n + j as u64)
                    });
                    if !v.is_zero() {
                        witnesses.push((n, v));
                        break;
                    }
                }
            }
        }
    }
    IsometryReport::build(m, |k| shift_verdict(w.as_ref(), k), witnesses)
}

/// `n -> ||S^n e_v||^2` on the tree, when it is eventually geo-polynomial.
pub fn tree_gamma(tree: &TreeShift, v: TreeVertex) -> Option<EvSeq> {
    match v {
        TreeVertex::Branch(i, j) => {
            let p = &tree.profiles()[i - 1];
            let j = j as i64;
            Some(p.restrict(j).ok()?.scale(&p.value(j).recip()).reindex(j))
        }
        TreeVertex::Trunk(r) => {
            // gamma_{x_1}: 1 at n = 0, then sum_i fan_i profile_i(n) / profile_i(1)
            let mut sum: Option<EvSeq> = None;
            for (fan, p) in tree.fan_sq().iter().zip(tree.profiles()) {
                let term = p.scale(&(fan / p.value(1)));
                sum = Some(match sum {
                    None => term,
                    Some(acc) => acc.add(&term)?,
                });
            }
            let sum = sum?;
            let mut prefix = alloc::vec![Rational::one()];
            prefix.extend_from_slice(sum.prefix());
            let x1 = EvSeq::new(0, prefix, sum.ratio().clone(), sum.tail_poly().clone()).ok()?;
            if r == 1 {
                return Some(x1);
            }
            // n < r - 1 stays on the trunk; afterwards T_r gamma_{x_1}(n - r + 1)
            let t_r = tree.trunk_product(r);
            let moved = x1.scale(&t_r).reindex(-(r as i64 - 1));
            let mut prefix: Vec<Rational> =
                (0..r - 1).map(|n| &t_r / tree.trunk_product(r - n)).collect();
            prefix.extend_from_slice(moved.prefix());
            EvSeq::new(0, prefix, moved.ratio().clone(), moved.tail_poly().clone()).ok()
        }
    }
}

/// The first vertex whose `gamma` sequence is not a polynomial of degree
/// at most `m - 1`; branch vertices are represented by `x_{i,1}`, since
/// deeper ones see windows of the same profile.
pub fn tree_failure(tree: &TreeShift, m: u32) -> Option<TreeVertex> {
    assert!(m >= 1, "order must be at least 1");
    let d = m as usize - 1;
    let poly_ok = |v: TreeVertex| tree_gamma(tree, v).is_some_and(|g| is_polynomial_of_degree_at_most(&g, d));
    let branches = (1..=tree.eta()).map(|i| TreeVertex::Branch(i, 1));
    let trunk = (1..=tree.kappa()).map(TreeVertex::Trunk);
    branches.chain(trunk).find(|&v| !poly_ok(v))
}

pub fn tree_is_m_isometry(tree: &TreeShift, m: u32) -> bool {
    tree_failure(tree, m).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseq::{int, rat, Poly};
    use crate::oracle;
    use crate::spaces::ShiftWeights;
    use alloc::vec;

    fn k1(c: Rational) -> CircuitSpace {
        CircuitSpace::new(1, vec![int(1)], vec![EvSeq::constant(1, c)]).unwrap()
    }

    fn linear_branch() -> CircuitSpace {
        CircuitSpace::new(1, vec![int(1)], vec![EvSeq::polynomial(1, Poly::x())]).unwrap()
    }

    #[test]
    fn constant_branch_is_strict_two_isometry() {
        let s = k1(int(3));
        let rep = is_m_isometry_circuit(&s, 2);
        assert!(rep.is_m_isometry());
        assert!(rep.strict);
        assert_eq!(rep.least_order, Some(2));
        let one = is_m_isometry_circuit(&s, 1);
        assert!(!one.is_m_isometry());
        assert_eq!(one.witnesses, vec![(VertexId::Circuit(1), int(-3))]);
    }

    #[test]
    fn two_circuit_example() {
        let s = CircuitSpace::new(2, vec![int(2), int(3)], vec![EvSeq::constant(1, int(2))]).unwrap();
        assert!(is_m_isometry_circuit(&s, 2).is_m_isometry());
        let rep = is_m_isometry_circuit(&s, 4);
        assert_eq!(rep.least_order, Some(2));
        assert!(!rep.strict);
        assert_eq!(rep.holds, vec![false, true, true, true]);
    }

    #[test]
    fn witnesses_match_oracle() {
        let s = linear_branch();
        let rep = is_m_isometry_circuit(&s, 2);
        assert!(!rep.is_m_isometry());
        assert!(!rep.witnesses.is_empty());
        for (x, v) in &rep.witnesses {
            assert_eq!(&oracle::beta_diag(&s, *x, 2), v);
        }
        assert!(is_m_isometry_circuit(&s, 3).strict);
    }

    #[test]
    fn expansivity_examples() {
        let s = linear_branch();
        assert!(!is_m_expansive(&s, 2, Side::NonPositive));
        assert!(is_m_expansive(&s, 2, Side::NonNegative));
        let c = k1(int(2));
        assert!(is_m_expansive(&c, 2, Side::NonPositive));
        assert!(is_m_expansive(&c, 3, Side::NonPositive));
        for x in c.vertices(10) {
            assert!(!(-oracle::beta_diag(&c, x, 3)).is_positive());
        }
    }

    #[test]
    fn hyperexpansivity() {
        assert_eq!(is_completely_hyperexpansive(&k1(int(1)), 8), Ok(true));
        assert_eq!(is_completely_hyperexpansive(&linear_branch(), 4), Ok(false));
        assert!(is_completely_hyperexpansive(&k1(int(1)), 1).is_err());
        let s = k1(int(2));
        // beta_2 fails to be <= 0 on the strict 3-isometry
        assert!(!beta_nonpositive(&linear_branch(), 2));
        assert!(beta_nonpositive(&s, 2));
    }

    #[test]
    fn analyticity() {
        assert!(is_analytic(&k1(int(1))));
        let geo = EvSeq::new(1, vec![], rat(1, 2), Poly::constant(rat(1, 2))).unwrap();
        let g1 = CircuitSpace::new(1, vec![int(1)], vec![geo.clone()]).unwrap();
        assert!(!is_analytic(&g1));
        let ri = ranginf_dimension(&g1);
        assert_eq!(ri.dimension(), 1);
        assert_eq!(ri.basis, vec![(1, int(2))]);
        let g2 = CircuitSpace::new(2, vec![int(1), int(1)], vec![geo.clone(), geo]).unwrap();
        assert_eq!(ranginf_dimension(&g2).dimension(), 2);
        assert_eq!(ranginf_dimension(&k1(int(1))).dimension(), 0);
    }

    #[test]
    fn shifts() {
        let d = UnilateralShift::from_polynomial(&Poly::from_ints(&[1, 1])).unwrap();
        let rep = shift_is_m_isometry(&d, 2);
        assert!(rep.is_m_isometry() && rep.strict);
        for n in 0..20u64 {
            let brute = (0..n).fold(Rational::one(), |a, i| a * d.squared_weight(i));
            assert_eq!(brute, int(n as i64 + 1));
        }
        let iso = UnilateralShift::new(ShiftWeights::Squared(EvSeq::constant(0, int(1)))).unwrap();
        assert!(shift_is_m_isometry(&iso, 1).strict);
        let geo = UnilateralShift::new(ShiftWeights::Squared(EvSeq::constant(0, int(2)))).unwrap();
        let rep = shift_is_m_isometry(&geo, 3);
        assert_eq!(rep.least_order, None);
        assert_eq!(rep.witnesses, vec![(0, int(-1))]);
    }

    #[test]
    fn trees() {
        for k in 1..5 {
            let t = TreeShift::dirichlet(k);
            assert!(tree_is_m_isometry(&t, 2));
            assert!(!tree_is_m_isometry(&t, 1));
            for r in 1..=k {
                let g = tree_gamma(&t, TreeVertex::Trunk(r)).unwrap();
                for n in 0..8 {
                    assert_eq!(g.value(n), oracle::tree_gamma_bruteforce(&t, TreeVertex::Trunk(r), n as u64));
                }
            }
        }
        let p = EvSeq::polynomial(1, Poly::from_ints(&[1, 1]));
        let two = TreeShift::new(vec![int(3)], vec![rat(1, 2), rat(1, 2)], vec![p.clone(), p]).unwrap();
        for m in 2..=4 {
            assert!(!tree_is_m_isometry(&two, m));
        }
        assert_eq!(tree_failure(&two, 3), Some(TreeVertex::Trunk(1)));
    }
}
