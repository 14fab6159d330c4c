//! Exact scalars, polynomials and eventually geo-polynomial sequences, plus
//! the finite-difference, interpolation and positivity toolkit built on them.

mod extend;
mod interp;
mod poly;
mod positivity;
mod seq;
mod series;

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use self::extend::{completion_extend, Extension};
pub use self::interp::lagrange_fit;
pub use self::poly::{poly_eval, Poly};
pub use self::positivity::{
    cauchy_bound, first_negative, first_nonpositive, nonnegative_on_range, positivity_on_range,
    SturmChain,
};
pub use self::seq::{forward_difference, is_polynomial_of_degree_at_most, EvSeq};
pub use self::series::{power_series_moment, tail_series_sum, SeriesSum};

/// Exact rational scalar in canonical form (positive denominator, reduced).
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient `C(m, k)`; zero when `k > m`.
pub fn binomial(m: u32, k: u32) -> BigInt {
    if k > m {
        return BigInt::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(m - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(-1)^k C(m, k)` as a rational.
pub fn signed_binomial(m: u32, k: u32) -> Rational {
    let c = Rational::from_integer(binomial(m, k));
    if k.is_multiple_of(2) {
        c
    } else {
        -c
    }
}

/// Parses `"p"` or `"p/q"` (optional sign, no decimals).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Canonical `p/q` text (integers print without a denominator).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Smallest integer `>= r`.
pub fn ceil_to_i64(r: &Rational) -> i64 {
    i64::try_from(r.ceil().to_integer()).unwrap_or(if r.is_negative() { i64::MIN / 4 } else { i64::MAX / 4 })
}

/// Integer power with a non-negative exponent.
pub fn pow(base: &Rational, exp: u64) -> Rational {
    let mut result = Rational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    result
}
