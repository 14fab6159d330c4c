//! Brute-force evaluation by walking the graph.
//!
//! Everything here is computed from the definitions: preimage sets are
//! expanded one step at a time and measures are summed point by point. The
//! module only depends on [`crate::spaces`] and [`crate::exactseq`], so it
//! can serve as an independent check on [`crate::radon`], [`crate::classify`]
//! and [`crate::dual`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exactseq::{signed_binomial, Rational};
use crate::spaces::{CircuitSpace, TreeShift, TreeVertex, VertexId};

/// `(phi^n)^{-1}({x})`, sorted.
pub fn preimage_n(space: &CircuitSpace, x: VertexId, n: u64) -> Vec<VertexId> {
    let mut layer = alloc::vec![x];
    for _ in 0..n {
        let mut next = Vec::new();
        for y in layer {
            next.extend(space.preimage(y).expect("vertex of the space"));
        }
        layer = next;
    }
    layer.sort();
    layer
}

fn mass(space: &CircuitSpace, set: &[VertexId]) -> Rational {
    set.iter()
        .fold(Rational::zero(), |acc, &y| acc + space.measure_at(y))
}

/// `mu((phi^n)^{-1}({x})) / mu(x)`.
pub fn h_n_bruteforce(space: &CircuitSpace, x: VertexId, n: u64) -> Rational {
    mass(space, &preimage_n(space, x, n)) / space.measure_at(x)
}

/// `sum_k (-1)^k C(m,k) h_k(x)` from brute-force derivatives.
pub fn beta_diag(space: &CircuitSpace, x: VertexId, m: u32) -> Rational {
    (0..=m).fold(Rational::zero(), |acc, k| {
        acc + signed_binomial(m, k) * h_n_bruteforce(space, x, k as u64)
    })
}

/// Finitely supported function on the space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteFunction {
    support: BTreeMap<VertexId, Rational>,
}

impl FiniteFunction {
    pub fn new() -> Self {
        FiniteFunction::default()
    }

    /// `chi_{{x}}`.
    pub fn indicator(x: VertexId) -> Self {
        let mut f = FiniteFunction::new();
        f.set(x, Rational::one());
        f
    }

    pub fn set(&mut self, x: VertexId, value: Rational) {
        if value.is_zero() {
            self.support.remove(&x);
        } else {
            self.support.insert(x, value);
        }
    }

    pub fn get(&self, x: VertexId) -> Rational {
        self.support.get(&x).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (&VertexId, &Rational)> {
        self.support.iter()
    }
}

/// `||C_phi^n f||^2` for `n = 0..=big_n`.
///
/// `C_phi^n f = f o phi^n` is supported on the union of the preimages of
/// the support of `f`, which is finite.
pub fn gamma_seq(space: &CircuitSpace, f: &FiniteFunction, big_n: u64) -> Vec<Rational> {
    (0..=big_n)
        .map(|n| {
            let mut points: Vec<VertexId> = f
                .support()
                .flat_map(|(&x, _)| preimage_n(space, x, n))
                .collect();
            points.sort();
            points.dedup();
            points.iter().fold(Rational::zero(), |acc, &y| {
                let mut z = y;
                for _ in 0..n {
                    z = space.apply_phi(z).expect("vertex of the space");
                }
                let v = f.get(z);
                acc + &v * &v * space.measure_at(y)
            })
        })
        .collect()
}

/// The Cauchy dual weight `1 / h_phi(phi(y))` with `h_phi` counted by hand.
pub fn dual_weight_bruteforce(space: &CircuitSpace, y: VertexId) -> Rational {
    let image = space.apply_phi(y).expect("vertex of the space");
    h_n_bruteforce(space, image, 1).recip()
}

/// `h_{phi^n, w_n}(x) = mu_{w_n}((phi^n)^{-1}({x})) / mu(x)` with
/// `w_n = prod_{j<n} w o phi^j` and `d mu_w = |w|^2 d mu`.
pub fn weighted_moment(space: &CircuitSpace, x: VertexId, n: u64) -> Rational {
    let total = preimage_n(space, x, n)
        .into_iter()
        .fold(Rational::zero(), |acc, y| {
            let mut weight = Rational::one();
            let mut z = y;
            for _ in 0..n {
                weight *= dual_weight_bruteforce(space, z);
                z = space.apply_phi(z).expect("vertex of the space");
            }
            acc + &weight * &weight * space.measure_at(y)
        });
    total / space.measure_at(x)
}

/// `||S^n e_v||^2` on the tree, summed over the descendants of `v` at distance `n`.
pub fn tree_gamma_bruteforce(tree: &TreeShift, v: TreeVertex, n: u64) -> Rational {
    let mut layer = alloc::vec![(v, Rational::one())];
    for _ in 0..n {
        let mut next = Vec::new();
        for (u, w) in layer {
            for c in tree.children(u) {
                let lam = tree.squared_weight(c).expect("non-root vertex");
                next.push((c, &w * lam));
            }
        }
        layer = next;
    }
    layer.into_iter().fold(Rational::zero(), |acc, (_, w)| acc + w)
}
