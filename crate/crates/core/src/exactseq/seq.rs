use alloc::boxed::Box;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::positivity::{cauchy_bound, first_negative, positivity_on_range};
use super::{ceil_to_i64, int, pow, signed_binomial, Poly, Rational};
use crate::{Error, Result};

/// Eventually geo-polynomial sequence on the domain `n >= start`.
///
/// `value(n)` is `prefix[n - start]` while `n < start + prefix.len()`, and
/// `q^(n - T) * p(n)` from the tail start `T = start + prefix.len()` on,
/// where `0 < q <= 1`. The polynomial is evaluated at the absolute index `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvSeq {
    start: i64,
    prefix: Vec<Rational>,
    ratio: Rational,
    tail: Poly,
}

impl EvSeq {
    /// A zero tail polynomial normalizes the ratio to 1.
    pub fn new(start: i64, prefix: Vec<Rational>, ratio: Rational, tail: Poly) -> Result<Self> {
        if !ratio.is_positive() || ratio > Rational::one() {
            return Err(Error::InvalidRatio(Box::new(ratio)));
        }
        let ratio = if tail.is_zero() { Rational::one() } else { ratio };
        Ok(EvSeq {
            start,
            prefix,
            ratio,
            tail,
        })
    }

    /// The sequence `n -> p(n)` on `n >= start`.
    pub fn polynomial(start: i64, p: Poly) -> Self {
        EvSeq {
            start,
            prefix: Vec::new(),
            ratio: Rational::one(),
            tail: p,
        }
    }

    pub fn constant(start: i64, c: Rational) -> Self {
        EvSeq::polynomial(start, Poly::constant(c))
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn prefix(&self) -> &[Rational] {
        &self.prefix
    }

    pub fn ratio(&self) -> &Rational {
        &self.ratio
    }

    pub fn tail_poly(&self) -> &Poly {
        &self.tail
    }

    /// First index governed by the tail formula.
    pub fn tail_start(&self) -> i64 {
        self.start + self.prefix.len() as i64
    }

    pub fn get(&self, n: i64) -> Option<Rational> {
        if n < self.start {
            return None;
        }
        let t = self.tail_start();
        if n < t {
            return Some(self.prefix[(n - self.start) as usize].clone());
        }
        let v = self.tail.eval_int(n);
        if self.ratio.is_one() || v.is_zero() {
            Some(v)
        } else {
            Some(pow(&self.ratio, (n - t) as u64) * v)
        }
    }

    /// Panics when `n` is below the domain start.
    pub fn value(&self, n: i64) -> Rational {
        self.get(n).unwrap_or_else(|| {
            panic!("index {n} is below the sequence start {}", self.start)
        })
    }

    pub fn values(&self, from: i64, count: usize) -> Vec<Rational> {
        (0..count as i64).map(|k| self.value(from + k)).collect()
    }

    /// Same values, domain restricted to `n >= new_start`.
    pub fn restrict(&self, new_start: i64) -> Result<EvSeq> {
        if new_start < self.start {
            return Err(Error::OutOfDomain {
                index: new_start,
                start: self.start,
            });
        }
        let t = self.tail_start();
        if new_start <= t {
            let skip = (new_start - self.start) as usize;
            return Ok(EvSeq {
                start: new_start,
                prefix: self.prefix[skip..].to_vec(),
                ratio: self.ratio.clone(),
                tail: self.tail.clone(),
            });
        }
        // q^(n - t) p(n) = q^(n - new_start) * q^(new_start - t) p(n)
        let factor = pow(&self.ratio, (new_start - t) as u64);
        Ok(EvSeq {
            start: new_start,
            prefix: Vec::new(),
            ratio: self.ratio.clone(),
            tail: self.tail.scale(&factor),
        })
    }

    /// Re-indexes so that `shifted.value(n) = self.value(n + offset)`.
    pub fn reindex(&self, offset: i64) -> EvSeq {
        EvSeq {
            start: self.start - offset,
            prefix: self.prefix.clone(),
            ratio: self.ratio.clone(),
            tail: self.tail.shift(&int(offset)),
        }
    }

    pub fn scale(&self, c: &Rational) -> EvSeq {
        EvSeq {
            start: self.start,
            prefix: self.prefix.iter().map(|v| v * c).collect(),
            ratio: if c.is_zero() { Rational::one() } else { self.ratio.clone() },
            tail: self.tail.scale(c),
        }
    }

    /// Moves the tail start to `t` (at least the current one) by spilling
    /// tail values into the prefix.
    fn with_tail_start(&self, t: i64) -> EvSeq {
        let cur = self.tail_start();
        if t <= cur {
            return self.clone();
        }
        let mut prefix = self.prefix.clone();
        prefix.extend((cur..t).map(|n| self.value(n)));
        let factor = pow(&self.ratio, (t - cur) as u64);
        EvSeq {
            start: self.start,
            prefix,
            ratio: self.ratio.clone(),
            tail: self.tail.scale(&factor),
        }
    }

    /// Pointwise sum on the common domain. `None` when both tails are
    /// nonzero with different ratios (the sum is not geo-polynomial).
    pub fn add(&self, other: &EvSeq) -> Option<EvSeq> {
        let start = self.start.max(other.start);
        let a = self.restrict(start).ok()?;
        let b = other.restrict(start).ok()?;
        let ratio = match (a.tail.is_zero(), b.tail.is_zero()) {
            (true, _) => b.ratio.clone(),
            (_, true) => a.ratio.clone(),
            _ if a.ratio == b.ratio => a.ratio.clone(),
            _ => return None,
        };
        let t = a.tail_start().max(b.tail_start());
        let (a, b) = (a.with_tail_start(t), b.with_tail_start(t));
        let prefix = a
            .prefix
            .iter()
            .zip(&b.prefix)
            .map(|(x, y)| x + y)
            .collect();
        let tail = &a.tail + &b.tail;
        let ratio = if tail.is_zero() { Rational::one() } else { ratio };
        Some(EvSeq {
            start,
            prefix,
            ratio,
            tail,
        })
    }

    /// `value(n) > 0` on the whole domain.
    pub fn is_positive(&self) -> bool {
        self.prefix.iter().all(Signed::is_positive)
            && positivity_on_range(&self.tail, self.tail_start())
    }

    pub fn all_nonnegative(&self) -> bool {
        self.prefix.iter().all(|v| !v.is_negative())
            && first_negative(&self.tail, self.tail_start()).is_none()
    }

    pub fn all_nonpositive(&self) -> bool {
        self.scale(&int(-1)).all_nonnegative()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.tail.is_zero() && self.prefix.iter().all(Zero::is_zero)
    }

    /// Smallest index with a nonzero value.
    pub fn first_nonzero(&self) -> Option<i64> {
        if let Some(k) = self.prefix.iter().position(|v| !v.is_zero()) {
            return Some(self.start + k as i64);
        }
        let d = self.tail.degree()? as i64;
        // a nonzero polynomial of degree d has at most d integer roots
        let t = self.tail_start();
        (t..=t + d).find(|&n| !self.tail.eval_int(n).is_zero())
    }

    /// Exact supremum and infimum of `value(n + 1) / value(n)` over the
    /// domain. Requires a positive sequence.
    pub fn ratio_extrema(&self) -> (Rational, Rational) {
        let t = self.tail_start();
        let mut sup = None::<Rational>;
        let mut inf = None::<Rational>;
        let mut push = |r: Rational| {
            if sup.as_ref().is_none_or(|s| &r > s) {
                sup = Some(r.clone());
            }
            if inf.as_ref().is_none_or(|s| &r < s) {
                inf = Some(r);
            }
        };
        for n in self.start..t {
            push(self.value(n + 1) / self.value(n));
        }
        let q = self.ratio.clone();
        if self.tail.is_constant() {
            push(q);
        } else {
            // r(x) = q p(x+1)/p(x) is monotone beyond the roots of the
            // numerator of its derivative and tends to q
            let p = &self.tail;
            let p1 = p.shift(&Rational::one());
            let numer = &(&p.derivative().shift(&Rational::one()) * p) - &(&p1 * &p.derivative());
            let last = if numer.is_zero() {
                t
            } else {
                t.max(ceil_to_i64(&cauchy_bound(&numer)) + 1)
            };
            for n in t..=last {
                push(&q * p1.eval_int(n) / p.eval_int(n));
            }
            push(q);
        }
        (sup.unwrap(), inf.unwrap())
    }
}

/// `Δ^m s`, with `(Δ^m s)(n) = sum_k (-1)^(m-k) C(m,k) s(n+k)`.
///
/// The prefix is recomputed from the definition; on the tail
/// `q^(n-T) * sum_k (-1)^(m-k) C(m,k) q^k p(n+k)` keeps the same ratio.
pub fn forward_difference(s: &EvSeq, m: u32) -> EvSeq {
    let sign = |k: u32| -> Rational {
        // (-1)^(m-k) C(m,k) = (-1)^m (-1)^k C(m,k)
        let c = signed_binomial(m, k);
        if m.is_multiple_of(2) {
            c
        } else {
            -c
        }
    };
    let t = s.tail_start();
    let prefix = (s.start..t)
        .map(|n| {
            (0..=m).fold(Rational::zero(), |acc, k| acc + sign(k) * s.value(n + k as i64))
        })
        .collect();
    let mut tail = Poly::zero();
    let mut qk = Rational::one();
    for k in 0..=m {
        tail = &tail + &s.tail.shift(&int(k as i64)).scale(&(sign(k) * &qk));
        qk *= &s.ratio;
    }
    let ratio = if tail.is_zero() { Rational::one() } else { s.ratio.clone() };
    EvSeq {
        start: s.start,
        prefix,
        ratio,
        tail,
    }
}

/// True iff the whole sequence agrees with one polynomial of degree `<= d`.
pub fn is_polynomial_of_degree_at_most(s: &EvSeq, d: usize) -> bool {
    if !s.ratio.is_one() && !s.tail.is_zero() {
        return false;
    }
    if s.tail.degree().is_some_and(|deg| deg > d) {
        return false;
    }
    s.prefix
        .iter()
        .enumerate()
        .all(|(k, v)| s.tail.eval_int(s.start + k as i64) == *v)
}
