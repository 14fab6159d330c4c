//! Positive polynomial extensions of a finite positive data set.
//!
//! Given `b_0, ..., b_l > 0`, every `t` at or above a threshold `c` yields a
//! polynomial `w_t` of degree exactly `l + 1` with `w_t(n) = b_n` for
//! `n <= l`, `w_t(l + 1) = t` and `w_t(n) > 0` for all `n >= l + 2`.
//!
//! The construction is inductive. Level `l` takes an extension `v` of the
//! first `l` values with `v(l) != b_l` and adds
//! `(beta |a| (x - l) + a) * prod_{j<l} (x - j) / l!` where `a = b_l - v(l)`.
//! For `beta >= 1` the correction is nonnegative at every `n >= l + 1`, and
//! `w(l + 1)` is affine and increasing in `beta`, so each `t >= w_{beta=1}(l+1)`
//! is reached by exactly one rational `beta`.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::positivity::positivity_on_range;
use super::{int, Poly, Rational};
use crate::{Error, Result};

/// The family `t -> w_t` for one data set, valid for `t >= threshold`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    data: Vec<Rational>,
    threshold: Rational,
    step: Step,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Step {
    /// `w_t(x) = b_0 + (t - b_0) x`.
    Linear,
    Lift {
        base: Poly,
        alpha: Rational,
        /// `prod_{j<l} (x - j) / l!`
        nodal: Poly,
    },
}

impl Extension {
    pub fn threshold(&self) -> &Rational {
        &self.threshold
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    /// Index `l` of the last prescribed value.
    pub fn last_index(&self) -> usize {
        self.data.len() - 1
    }

    /// The member `w_t`; fails for `t` below the threshold.
    pub fn at(&self, t: &Rational) -> Result<Poly> {
        if t < &self.threshold {
            return Err(Error::BelowThreshold {
                value: Box::new(t.clone()),
                threshold: Box::new(self.threshold.clone()),
            });
        }
        let l = self.last_index() as i64;
        let w = match &self.step {
            Step::Linear => Poly::new(alloc::vec![self.data[0].clone(), t - &self.data[0]]),
            Step::Lift { base, alpha, nodal } => {
                // w(l+1) = base(l+1) + (l+1)(beta |a| + a)
                let slope = int(l + 1) * alpha.abs();
                let beta = Rational::one() + (t - &self.threshold) / slope;
                let factor = Poly::new(alloc::vec![
                    alpha - &beta * alpha.abs() * int(l),
                    beta * alpha.abs(),
                ]);
                base + &(&factor * nodal)
            }
        };
        self.certify(&w, t)?;
        Ok(w)
    }

    fn certify(&self, w: &Poly, t: &Rational) -> Result<()> {
        let l = self.last_index();
        let ok = w.degree() == Some(l + 1)
            && self
                .data
                .iter()
                .enumerate()
                .all(|(n, b)| w.eval_int(n as i64) == *b)
            && w.eval_int(l as i64 + 1) == *t
            && positivity_on_range(w, l as i64 + 2);
        if ok {
            Ok(())
        } else {
            Err(Error::Contradiction(alloc::format!(
                "extension at t = {t} failed its certificate"
            )))
        }
    }
}

/// Builds the extension family for positive `data = (b_0, ..., b_l)`.
pub fn completion_extend(data: &[Rational]) -> Result<Extension> {
    if data.is_empty() {
        return Err(Error::Precondition("at least one value is required".into()));
    }
    if let Some(b) = data.iter().find(|b| !b.is_positive()) {
        return Err(Error::Precondition(alloc::format!(
            "values must be positive, found {b}"
        )));
    }
    let l = data.len() - 1;
    if l == 0 {
        return Ok(Extension {
            data: data.to_vec(),
            threshold: &data[0] + &data[0],
            step: Step::Linear,
        });
    }
    let prev = Box::new(completion_extend(&data[..l])?);
    let b_l = &data[l];
    let mut pick = prev.threshold.clone();
    if &pick == b_l {
        pick += Rational::one();
    }
    let base = prev.at(&pick)?;
    let alpha = b_l - base.eval_int(l as i64);
    debug_assert!(!alpha.is_zero());
    let mut nodal = Poly::constant(Rational::one());
    let mut fact = Rational::one();
    for j in 0..l as i64 {
        nodal = &nodal * &Poly::from_ints(&[-j, 1]);
        fact *= int(j + 1);
    }
    let nodal = nodal.scale(&fact.recip());
    let threshold = base.eval_int(l as i64 + 1) + int(l as i64 + 1) * (alpha.abs() + &alpha);
    Ok(Extension {
        data: data.to_vec(),
        threshold,
        step: Step::Lift { base, alpha, nodal },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseq::rat;
    use alloc::vec;
    use proptest::prelude::*;

    fn check(data: &[Rational], t: &Rational) {
        let ext = completion_extend(data).unwrap();
        let w = ext.at(t).unwrap();
        let l = data.len() - 1;
        assert_eq!(w.degree(), Some(l + 1));
        for (n, b) in data.iter().enumerate() {
            assert_eq!(&w.eval_int(n as i64), b);
        }
        assert_eq!(&w.eval_int(l as i64 + 1), t);
        assert!(positivity_on_range(&w, l as i64 + 2));
    }

    #[test]
    fn linear_base_case() {
        let ext = completion_extend(&[int(1)]).unwrap();
        let c = ext.threshold().clone();
        assert!(c > int(1));
        let w = ext.at(&c).unwrap();
        assert_eq!(w.degree(), Some(1));
        assert_eq!(w.eval_int(0), int(1));
        assert_eq!(w.eval_int(1), c);
        assert!(ext.at(&rat(1, 2)).is_err());
    }

    #[test]
    fn quadratic_and_cubic() {
        let b = vec![int(1), int(2)];
        let c = completion_extend(&b).unwrap().threshold().clone();
        check(&b, &c);
        check(&b, &(&c * int(3)));
        let b = vec![int(1), rat(1, 2), rat(1, 4)];
        let c = completion_extend(&b).unwrap().threshold().clone();
        for t in [c.clone(), &c + int(1), &c * int(10)] {
            check(&b, &t);
        }
    }

    #[test]
    fn prescribed_value_equal_to_threshold() {
        // b_1 equal to the level-0 threshold forces the bump
        check(&[int(1), int(2), int(5)], &int(100));
    }

    #[test]
    fn rejects_nonpositive_data() {
        assert!(completion_extend(&[int(1), int(0)]).is_err());
        assert!(completion_extend(&[]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn postconditions_hold(
            raw in proptest::collection::vec((1i64..40, 1i64..12), 1..6),
            bump in 0i64..50,
            den in 1i64..5,
        ) {
            let data: Vec<Rational> = raw.iter().map(|&(n, d)| rat(n, d)).collect();
            let ext = completion_extend(&data).unwrap();
            let t = ext.threshold() + rat(bump, den);
            check(&data, &t);
        }
    }
}
