//! Exact sums of arithmetic subsequences of eventually geo-polynomial sequences.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{int, pow, signed_binomial, EvSeq, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesSum {
    Finite(Rational),
    Divergent,
}

impl SeriesSum {
    pub fn is_finite(&self) -> bool {
        matches!(self, SeriesSum::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            SeriesSum::Finite(v) => Some(v),
            SeriesSum::Divergent => None,
        }
    }
}

/// `S_k = sum_{l >= 0} l^k Q^l` for `k = 0..=d`, with `0 < Q < 1`.
///
/// From `(1 - Q) S_k = sum_{l >= 1} (l^k - (l-1)^k) Q^l` for `k >= 1`.
fn power_sums(q: &Rational, d: usize) -> Vec<Rational> {
    let inv = (Rational::one() - q).recip();
    let mut s = alloc::vec![inv.clone()];
    for k in 1..=d as u32 {
        let mut acc = Rational::zero();
        for j in 0..k {
            // l^k - (l-1)^k = sum_{j<k} C(k,j) (-1)^(k-j+1) l^j
            let coeff = -signed_binomial(k, k - j);
            let mut sj = s[j as usize].clone();
            if j == 0 {
                sj -= Rational::one();
            }
            acc += coeff * sj;
        }
        s.push(acc * &inv);
    }
    s
}

/// `sum_{l >= 0} s(l * kappa + r)`.
///
/// Panics when `kappa == 0` or `r` lies below the domain of `s`.
pub fn tail_series_sum(s: &EvSeq, kappa: u32, r: i64) -> SeriesSum {
    assert!(kappa >= 1, "kappa must be positive");
    assert!(r >= s.start(), "first index {r} is below the sequence start");
    let k = kappa as i64;
    let t = s.tail_start();
    let mut total = Rational::zero();
    let mut n0 = r;
    while n0 < t {
        total += s.value(n0);
        n0 += k;
    }
    let p = s.tail_poly();
    if p.is_zero() {
        return SeriesSum::Finite(total);
    }
    if s.ratio().is_one() {
        return SeriesSum::Divergent;
    }
    // sum_{j >= 0} q^(n0 - T) Q^j p(n0 + kappa j) with Q = q^kappa
    let big_q = pow(s.ratio(), kappa as u64);
    let local = p.shift(&int(n0)).dilate(&int(k));
    let sums = power_sums(&big_q, local.degree().unwrap());
    let inner = local
        .coeffs()
        .iter()
        .zip(&sums)
        .fold(Rational::zero(), |acc, (c, sj)| acc + c * sj);
    total += pow(s.ratio(), (n0 - t) as u64) * inner;
    SeriesSum::Finite(total)
}

/// `sum_{l >= 0} l^k Q^l` for `0 < Q < 1`.
pub fn power_series_moment(q: &Rational, k: usize) -> Rational {
    assert!(q > &Rational::zero() && q < &Rational::one(), "need 0 < Q < 1");
    power_sums(q, k).pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseq::{rat, Poly};
    use proptest::prelude::*;

    #[test]
    fn geometric() {
        // 2^-n on n >= 1
        let s = EvSeq::new(1, alloc::vec![], rat(1, 2), Poly::constant(rat(1, 2))).unwrap();
        assert_eq!(tail_series_sum(&s, 1, 1), SeriesSum::Finite(int(1)));
    }

    #[test]
    fn polynomial_tail_diverges() {
        let s = EvSeq::polynomial(0, Poly::from_ints(&[1, 1]));
        for k in 1..4 {
            assert_eq!(tail_series_sum(&s, k, 2), SeriesSum::Divergent);
        }
    }

    #[test]
    fn odd_indices_of_n_over_two_to_n() {
        // sum_l (2l+1) / 2^(2l+1), against partial sums to l = 60
        let s = EvSeq::new(0, alloc::vec![], rat(1, 2), Poly::x()).unwrap();
        let mut partial = Rational::zero();
        for l in 0..=60i64 {
            partial += int(2 * l + 1) / pow(&int(2), (2 * l + 1) as u64);
        }
        let SeriesSum::Finite(v) = tail_series_sum(&s, 2, 1) else {
            panic!("expected a finite sum")
        };
        assert!(v > partial);
        assert!(&v - &partial < rat(1, 1_000_000_000_000));
        assert_eq!(v, rat(10, 9));
    }

    #[test]
    fn moments_of_the_geometric_series() {
        // sum l Q^l = Q/(1-Q)^2, sum l^2 Q^l = Q(1+Q)/(1-Q)^3
        let q = rat(1, 3);
        assert_eq!(power_series_moment(&q, 0), rat(3, 2));
        assert_eq!(power_series_moment(&q, 1), rat(3, 4));
        assert_eq!(power_series_moment(&q, 2), rat(3, 2));
    }

    #[test]
    fn prefix_only_contributes_when_tail_is_zero() {
        let s = EvSeq::new(1, alloc::vec![int(3), int(4), int(5)], rat(1, 2), Poly::zero()).unwrap();
        assert_eq!(tail_series_sum(&s, 2, 1), SeriesSum::Finite(int(8)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        /// partial sum <= S <= partial sum + geometric bound on the remainder
        #[test]
        fn partial_sum_sandwich(
            prefix in proptest::collection::vec(1i64..20, 0..4),
            coeffs in proptest::collection::vec(0i64..6, 1..4),
            qn in 1i64..4,
            kappa in 1u32..4,
            r in 1i64..4,
        ) {
            let q = rat(qn, 4);
            let mut c = coeffs.clone();
            c[0] += 1;
            let p = Poly::from_ints(&c);
            let pre: Vec<Rational> = prefix.iter().map(|&v| int(v)).collect();
            let s = EvSeq::new(1, pre, q, p.clone()).unwrap();
            let v = tail_series_sum(&s, kappa, r);
            let SeriesSum::Finite(v) = v else { panic!("q < 1 must converge") };
            let big_l = 150i64;
            let term = |l: i64| s.value(l * kappa as i64 + r);
            let partial = (0..=big_l).fold(Rational::zero(), |acc, l| acc + term(l));
            prop_assert!(v >= partial);
            // beyond the prefix, term(l+1)/term(l) <= rho for l > big_l
            let d = p.degree().unwrap() as u64;
            let n = big_l * kappa as i64 + r;
            let growth = int(n + kappa as i64) / int(n);
            let rho = pow(&growth, d) * pow(s.ratio(), kappa as u64);
            prop_assert!(rho < Rational::one());
            let bound = term(big_l + 1) / (Rational::one() - rho);
            prop_assert!(&v - &partial <= bound);
        }
    }
}
