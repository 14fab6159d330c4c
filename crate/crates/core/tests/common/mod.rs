//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use onecircuit::completion::construct_2_3_isometry;
use onecircuit::exactseq::{int, rat};
use onecircuit::spaces::TreeShift;
use onecircuit::{CircuitSpace, EvSeq, Poly, Rational};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// `p/q` with `1 <= p <= max_num`, `1 <= q <= max_den`.
pub fn positive(rng: &mut StdRng, max_num: i64, max_den: i64) -> Rational {
    rat(rng.random_range(1..=max_num), rng.random_range(1..=max_den))
}

/// Polynomial with nonnegative coefficients and a positive constant term,
/// hence positive on `j >= 0`.
pub fn positive_poly(rng: &mut StdRng, degree: usize) -> Poly {
    let mut c: Vec<Rational> = vec![positive(rng, 9, 4)];
    for k in 1..=degree {
        if k == degree {
            c.push(positive(rng, 5, 4));
        } else {
            c.push(rat(rng.random_range(0..=5), rng.random_range(1..=4)));
        }
    }
    Poly::new(c)
}

const RATIOS: [(i64, i64); 5] = [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5)];

/// A branch measure: polynomial (`q = 1`) or geo-polynomial (`q < 1`),
/// sometimes behind a short prefix.
pub fn branch(rng: &mut StdRng) -> EvSeq {
    let prefix: Vec<Rational> = (0..rng.random_range(0..=2)).map(|_| positive(rng, 9, 3)).collect();
    let degree = rng.random_range(0..=2);
    let tail = positive_poly(rng, degree);
    let ratio = if rng.random_bool(0.5) {
        int(1)
    } else {
        let (p, q) = RATIOS[rng.random_range(0..RATIOS.len())];
        rat(p, q)
    };
    EvSeq::new(1, prefix, ratio, tail).expect("valid branch")
}

pub fn space(rng: &mut StdRng, max_kappa: usize, max_eta: usize) -> CircuitSpace {
    let kappa = rng.random_range(1..=max_kappa);
    let eta = rng.random_range(1..=max_eta);
    let circuit = (0..kappa).map(|_| positive(rng, 12, 4)).collect();
    let branches = (0..eta).map(|_| branch(rng)).collect();
    CircuitSpace::new(kappa, circuit, branches).expect("valid space")
}

/// The 2- or 3-isometry with branches `c_i + d_i (j - 1)`; `linear` decides
/// whether the `d_i` vanish. The parameter `t` is raised until every circuit
/// measure is positive.
pub fn linear_branch_isometry(rng: &mut StdRng, kappa: usize, eta: usize, linear: bool) -> CircuitSpace {
    let c: Vec<Rational> = (0..eta).map(|_| positive(rng, 9, 3)).collect();
    let d: Vec<Rational> = (0..eta)
        .map(|_| if linear { positive(rng, 6, 3) } else { int(0) })
        .collect();
    let mut t = positive(rng, 5, 2);
    loop {
        if let Ok(s) = construct_2_3_isometry(kappa, &c, &d, &t) {
            return s;
        }
        t += int(1);
    }
}

pub fn two_isometry(rng: &mut StdRng, max_kappa: usize, max_eta: usize) -> CircuitSpace {
    let kappa = rng.random_range(1..=max_kappa);
    let eta = rng.random_range(1..=max_eta);
    linear_branch_isometry(rng, kappa, eta, false)
}

/// Tree with `eta` branches whose profiles are positive polynomials of degree at most 2.
pub fn tree(rng: &mut StdRng, kappa: usize, eta: usize) -> TreeShift {
    let trunk = (1..kappa).map(|_| positive(rng, 9, 4)).collect();
    let fan = (0..eta).map(|_| positive(rng, 9, 4)).collect();
    let profiles = (0..eta)
        .map(|_| {
            let degree = rng.random_range(0..=2);
            EvSeq::polynomial(1, positive_poly(rng, degree))
        })
        .collect();
    TreeShift::new(trunk, fan, profiles).expect("valid tree")
}
