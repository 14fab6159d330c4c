use alloc::vec::Vec;

use num_traits::One;

use super::{int, Poly, Rational};
use crate::{Error, Result};

/// The unique polynomial of degree `< points.len()` through the given points,
/// built from Newton divided differences.
pub fn lagrange_fit(points: &[(i64, Rational)]) -> Result<Poly> {
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(Error::DuplicateAbscissa(*x));
        }
    }
    let xs: Vec<Rational> = points.iter().map(|(x, _)| int(*x)).collect();
    let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    let n = dd.len();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner over the Newton basis
    let mut acc = Poly::zero();
    for i in (0..n).rev() {
        let lin = Poly::new(alloc::vec![-xs[i].clone(), Rational::one()]);
        acc = &(&acc * &lin) + &Poly::constant(dd[i].clone());
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseq::rat;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(
            lagrange_fit(&[(0, int(1)), (1, int(2))]).unwrap(),
            Poly::from_ints(&[1, 1])
        );
        let w3 = lagrange_fit(&[
            (0, int(1)),
            (1, rat(27, 64)),
            (2, rat(8, 64)),
            (3, rat(1, 64)),
        ])
        .unwrap();
        let expected = Poly::from_roots(&[int(4), int(4), int(4)]).scale(&rat(-1, 64));
        assert_eq!(w3, expected);
        assert_eq!(lagrange_fit(&[(0, rat(5, 7))]).unwrap(), Poly::constant(rat(5, 7)));
        assert_eq!(lagrange_fit(&[]).unwrap(), Poly::zero());
        assert_eq!(
            lagrange_fit(&[(1, int(1)), (1, int(2))]),
            Err(Error::DuplicateAbscissa(1))
        );
    }

    proptest! {
        #[test]
        fn reproduces_points(ys in proptest::collection::vec((-50i64..50, 1i64..9), 1..7), base in -5i64..5) {
            let pts: Vec<(i64, Rational)> = ys
                .iter()
                .enumerate()
                .map(|(i, &(n, d))| (base + 2 * i as i64, rat(n, d)))
                .collect();
            let p = lagrange_fit(&pts).unwrap();
            prop_assert!(p.degree().is_none_or(|d| d < pts.len()));
            for (x, y) in &pts {
                prop_assert_eq!(&p.eval_int(*x), y);
            }
        }
    }
}
