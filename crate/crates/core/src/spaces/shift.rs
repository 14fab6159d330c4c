use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::exactseq::{EvSeq, Poly, Rational};
use crate::{Error, Result};

/// How the weights `s_n` of a unilateral shift are described.
///
/// Weights are usually irrational, so only their squares are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ShiftWeights {
    /// `n -> s_n^2`.
    Squared(EvSeq),
    /// `W(n) = prod_{i<n} s_i^2`, with `W(0) = 1`.
    Products(EvSeq),
}

/// Bounded unilateral weighted shift `e_n -> s_n e_{n+1}` with positive weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnilateralShift {
    weights: ShiftWeights,
}

impl UnilateralShift {
    pub fn new(weights: ShiftWeights) -> Result<Self> {
        let seq = match &weights {
            ShiftWeights::Squared(s) | ShiftWeights::Products(s) => s,
        };
        if seq.start() != 0 {
            return Err(Error::InvalidSpace("shift sequences start at n = 0".into()));
        }
        if !seq.is_positive() {
            return Err(Error::InvalidSpace("shift weights must be positive".into()));
        }
        match &weights {
            ShiftWeights::Squared(s) => {
                if s.ratio().is_one() && !s.tail_poly().is_constant() {
                    return Err(Error::InvalidSpace(
                        "squared weights grow without bound".into(),
                    ));
                }
            }
            ShiftWeights::Products(w) => {
                if !w.value(0).is_one() {
                    return Err(Error::InvalidSpace("W(0) must equal 1".into()));
                }
            }
        }
        Ok(UnilateralShift { weights })
    }

    /// Shift whose weight products are `w(n) / w(0)` for a polynomial `w`
    /// positive on `n >= 0`.
    pub fn from_polynomial(w: &Poly) -> Result<Self> {
        let w0 = w.eval_int(0);
        if !w0.is_positive() {
            return Err(Error::InvalidSpace("w(0) must be positive".into()));
        }
        UnilateralShift::new(ShiftWeights::Products(EvSeq::polynomial(
            0,
            w.scale(&w0.recip()),
        )))
    }

    pub fn weights(&self) -> &ShiftWeights {
        &self.weights
    }

    /// `s_n^2`.
    pub fn squared_weight(&self, n: u64) -> Rational {
        let n = n as i64;
        match &self.weights {
            ShiftWeights::Squared(s) => s.value(n),
            ShiftWeights::Products(w) => w.value(n + 1) / w.value(n),
        }
    }

    /// `W(n) = prod_{i<n} s_i^2`.
    pub fn product(&self, n: u64) -> Rational {
        match &self.weights {
            ShiftWeights::Products(w) => w.value(n as i64),
            ShiftWeights::Squared(s) => (0..n as i64).fold(Rational::one(), |acc, i| acc * s.value(i)),
        }
    }

    pub fn squared_weights(&self, count: usize) -> Vec<Rational> {
        (0..count as u64).map(|n| self.squared_weight(n)).collect()
    }

    /// `W` as an eventually geo-polynomial sequence, when it is one.
    ///
    /// Squared weights with a constant tail `c <= 1` give a geometric `W`;
    /// a constant tail `c > 1` or a decaying tail gives a `W` that is not
    /// geo-polynomial, and in both cases `W` is not a polynomial either.
    pub fn products_seq(&self) -> Option<EvSeq> {
        match &self.weights {
            ShiftWeights::Products(w) => Some(w.clone()),
            ShiftWeights::Squared(s) => {
                if !s.ratio().is_one() || !s.tail_poly().is_constant() {
                    return None;
                }
                let c = s.tail_poly().coeff(0);
                if c > Rational::one() {
                    return None;
                }
                let t = s.tail_start();
                let prefix = (0..t as u64).map(|n| self.product(n)).collect();
                EvSeq::new(0, prefix, c, Poly::constant(self.product(t as u64))).ok()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseq::{int, rat};
    use alloc::vec;

    #[test]
    fn dirichlet_forms_agree() {
        let sq = EvSeq::new(
            0,
            vec![],
            Rational::one(),
            Poly::from_ints(&[1, 1]),
        )
        .unwrap();
        // (n+2)/(n+1) is not polynomial, so squared weights come from products
        assert!(UnilateralShift::new(ShiftWeights::Squared(sq)).is_err());
        let d = UnilateralShift::from_polynomial(&Poly::from_ints(&[1, 1])).unwrap();
        assert_eq!(d.squared_weight(0), int(2));
        assert_eq!(d.squared_weight(3), rat(5, 4));
        assert_eq!(d.product(4), int(5));
    }

    #[test]
    fn squared_form_products() {
        let s = EvSeq::new(0, vec![int(2), rat(1, 2)], Rational::one(), Poly::constant(int(1))).unwrap();
        let u = UnilateralShift::new(ShiftWeights::Squared(s)).unwrap();
        assert_eq!(u.product(0), int(1));
        assert_eq!(u.product(1), int(2));
        assert_eq!(u.product(5), int(1));
        let w = u.products_seq().unwrap();
        for n in 0..10 {
            assert_eq!(w.value(n), u.product(n as u64));
        }
        let geo = EvSeq::constant(0, int(3));
        assert!(UnilateralShift::new(ShiftWeights::Squared(geo)).unwrap().products_seq().is_none());
    }

    #[test]
    fn rejects_bad_products() {
        let w = EvSeq::polynomial(0, Poly::from_ints(&[2, 1]));
        assert!(UnilateralShift::new(ShiftWeights::Products(w)).is_err());
        assert!(UnilateralShift::from_polynomial(&Poly::from_ints(&[0, 1])).is_err());
    }
}
