//! Exact sign decisions for a polynomial on an unbounded integer range.
//!
//! Every real root of `p` lies strictly inside `(-B, B)` where `B` is the
//! Cauchy bound, so beyond `B` the sign of `p` is the sign of its leading
//! coefficient. Inside the bound the integers are scanned directly when the
//! window is short, otherwise the window is bisected and sub-windows that a
//! Sturm chain proves root-free are settled by a single evaluation.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{ceil_to_i64, int, Poly, Rational};

/// Windows at most this wide are scanned integer by integer.
const SCAN_WIDTH: i64 = 256;

/// `1 + max |a_i / a_d|`: every complex root has modulus strictly below it.
/// Zero and constant polynomials get bound 1.
pub fn cauchy_bound(p: &Poly) -> Rational {
    let Some(lead) = p.leading() else {
        return int(1);
    };
    let lead = lead.abs();
    let d = p.degree().unwrap();
    let m = p.coeffs()[..d]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    m + int(1)
}

/// Sturm chain of a nonzero polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Self {
        let mut chain = alloc::vec![p.clone()];
        let mut cur = p.derivative();
        while !cur.is_zero() {
            let prev = chain.last().unwrap();
            let rem = prev.div_rem(&cur).1;
            chain.push(cur);
            cur = -&rem;
        }
        SturmChain { chain }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if last.is_some_and(|l| l != pos) {
                count += 1;
            }
            last = Some(pos);
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`; `a` and `b` must not be roots.
    pub fn roots_in(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

fn first_bad(p: &Poly, from: i64, bad: impl Fn(&Rational) -> bool) -> Option<i64> {
    if p.is_zero() {
        return bad(&Rational::zero()).then_some(from);
    }
    let bound = ceil_to_i64(&cauchy_bound(p));
    let lo_edge = -bound - 1;
    let hi = bound + 1;
    if from >= hi || from <= lo_edge {
        // no roots between `from` and the edge of the root window
        if bad(&p.eval_int(from)) {
            return Some(from);
        }
        if from >= hi {
            return None;
        }
    }
    let lo = from.max(lo_edge);
    let sturm = SturmChain::new(p);
    search(p, &sturm, lo, hi, &bad)
}

fn search(
    p: &Poly,
    sturm: &SturmChain,
    lo: i64,
    hi: i64,
    bad: &impl Fn(&Rational) -> bool,
) -> Option<i64> {
    if hi - lo <= SCAN_WIDTH {
        return (lo..=hi).find(|&n| bad(&p.eval_int(n)));
    }
    let (a, b) = (int(lo), int(hi));
    let (pa, pb) = (p.eval(&a), p.eval(&b));
    if !pa.is_zero() && !pb.is_zero() && sturm.roots_in(&a, &b) == 0 {
        return bad(&pa).then_some(lo);
    }
    let mid = lo + (hi - lo) / 2;
    search(p, sturm, lo, mid, bad).or_else(|| search(p, sturm, mid + 1, hi, bad))
}

/// Smallest integer `n >= from` with `p(n) <= 0`.
pub fn first_nonpositive(p: &Poly, from: i64) -> Option<i64> {
    first_bad(p, from, |v| !v.is_positive())
}

/// Smallest integer `n >= from` with `p(n) < 0`.
pub fn first_negative(p: &Poly, from: i64) -> Option<i64> {
    first_bad(p, from, |v| v.is_negative())
}

/// `p(n) > 0` for every integer `n >= from`. The zero polynomial is not positive.
pub fn positivity_on_range(p: &Poly, from: i64) -> bool {
    !p.is_zero() && first_nonpositive(p, from).is_none()
}

/// `p(n) >= 0` for every integer `n >= from`.
pub fn nonnegative_on_range(p: &Poly, from: i64) -> bool {
    first_negative(p, from).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseq::rat;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert!(positivity_on_range(&Poly::from_ints(&[1, 1]), 0));
        // (x-1)(x-3)
        let p = Poly::from_ints(&[3, -4, 1]);
        assert!(!positivity_on_range(&p, 0));
        assert_eq!(first_nonpositive(&p, 0), Some(1));
        assert_eq!(first_negative(&p, 0), Some(2));
        assert_eq!(p.eval_int(2), int(-1));
        // -(x-4)^3/64 vanishes at 4
        let w3 = Poly::from_roots(&[int(4), int(4), int(4)]).scale(&rat(-1, 64));
        assert!(!positivity_on_range(&w3, 0));
        assert_eq!(first_nonpositive(&w3, 0), Some(4));
        assert!(!positivity_on_range(&Poly::zero(), 0));
        assert!(nonnegative_on_range(&Poly::zero(), 0));
    }

    #[test]
    fn far_roots_found_by_bisection() {
        // (x - 100000)(x - 100001) is negative nowhere on the integers but
        // vanishes at both roots
        let p = Poly::from_roots(&[int(100_000), int(100_001)]);
        assert_eq!(first_nonpositive(&p, 0), Some(100_000));
        assert_eq!(first_negative(&p, 0), None);
        // a negative pocket strictly between integers: (x - 50000.25)(x - 50000.75)
        let q = Poly::from_roots(&[rat(200_001, 4), rat(200_003, 4)]);
        assert!(positivity_on_range(&q, 0));
        // one integer inside the pocket
        let r = Poly::from_roots(&[rat(99_999, 2), rat(100_001, 2)]);
        assert_eq!(first_negative(&r, -7), Some(50_000));
    }

    #[test]
    fn below_the_root_window() {
        // x^2 + 1 from far left
        let p = Poly::from_ints(&[1, 0, 1]);
        assert!(positivity_on_range(&p, -1_000_000));
        // x from far left hits negatives immediately
        assert_eq!(first_negative(&Poly::x(), -1_000_000), Some(-1_000_000));
    }

    proptest! {
        #[test]
        fn matches_direct_scan(
            roots in proptest::collection::vec(-30i64..30, 0..4),
            shift in -5i64..5,
            sign in prop::bool::ANY,
            from in -40i64..40,
        ) {
            let rs: Vec<Rational> = roots.iter().map(|&r| rat(2 * r + 1, 2)).collect();
            let mut p = Poly::from_roots(&rs);
            p = &p + &Poly::constant(int(shift));
            if sign { p = -&p; }
            let bound = ceil_to_i64(&cauchy_bound(&p)) + 2;
            let expected_np = (from..=from.max(bound)).find(|&n| !p.eval_int(n).is_positive());
            let expected_neg = (from..=from.max(bound)).find(|&n| p.eval_int(n).is_negative());
            prop_assert_eq!(first_nonpositive(&p, from), expected_np);
            prop_assert_eq!(first_negative(&p, from), expected_neg);
        }
    }
}
