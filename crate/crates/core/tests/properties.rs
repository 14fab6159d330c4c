mod common;

use num_traits::{Signed, Zero};
use onecircuit::classify::{
    is_m_expansive, is_m_isometry_circuit, tree_gamma, tree_is_m_isometry, Side,
};
use onecircuit::completion::{complete_branch_prefix, nu_t_reweight, Certificate, CompletionResult};
use onecircuit::dual::{dual_moment_closed_form, dual_weight, kernel_condition};
use onecircuit::exactseq::{int, rat};
use onecircuit::oracle::{self, FiniteFunction};
use onecircuit::radon::{beta_at, branch_head_mass, circuit_beta_mass, h, inf_h, sup_h};
use onecircuit::spaces::TreeVertex;
use onecircuit::{Rational, VertexId};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn beta_matches_oracle(seed in any::<u64>(), m in 1u32..6) {
        let s = common::space(&mut common::rng(seed), 4, 3);
        for x in s.vertices(6) {
            prop_assert_eq!(beta_at(&s, x, m), oracle::beta_diag(&s, x, m));
        }
    }

    #[test]
    fn witnesses_are_oracle_values(seed in any::<u64>(), m in 1u32..5) {
        let s = common::space(&mut common::rng(seed), 4, 3);
        let rep = is_m_isometry_circuit(&s, m);
        prop_assert_eq!(rep.is_m_isometry(), rep.witnesses.is_empty());
        for (x, beta) in &rep.witnesses {
            prop_assert!(!beta.is_zero());
            prop_assert_eq!(beta, &oracle::beta_diag(&s, *x, m));
        }
    }

    #[test]
    fn gamma_of_indicator_is_scaled_h(seed in any::<u64>()) {
        let s = common::space(&mut common::rng(seed), 4, 3);
        for x in s.vertices(3) {
            let g = oracle::gamma_seq(&s, &FiniteFunction::indicator(x), 6);
            for (n, v) in g.iter().enumerate() {
                prop_assert_eq!(v, &(s.measure_at(x) * onecircuit::radon::h_n(&s, x, n as u64)));
            }
        }
    }

    #[test]
    fn alternating_implication(seed in any::<u64>(), m in 2u32..6) {
        let s = common::space(&mut common::rng(seed), 4, 3);
        // (-1)^m beta_m <= 0 forces (-1)^m beta_{m-1} <= 0
        if is_m_expansive(&s, m, Side::NonPositive) {
            prop_assert!(is_m_expansive(&s, m - 1, Side::NonNegative));
        }
    }

    #[test]
    fn head_mass_identity(seed in any::<u64>(), m in 1u32..7) {
        let s = common::space(&mut common::rng(seed), 5, 3);
        prop_assert_eq!(circuit_beta_mass(&s, m), branch_head_mass(&s, m));
    }

    #[test]
    fn norm_bounds_dominate_h(seed in any::<u64>()) {
        let s = common::space(&mut common::rng(seed), 5, 3);
        let (hi, lo) = (sup_h(&s), inf_h(&s));
        prop_assert!(lo.is_positive());
        for x in s.vertices(12) {
            let v = h(&s, x);
            prop_assert!(lo <= v && v <= hi);
        }
    }

    #[test]
    fn dual_weight_matches_oracle(seed in any::<u64>()) {
        let s = common::space(&mut common::rng(seed), 4, 3);
        for x in s.vertices(5) {
            prop_assert_eq!(dual_weight(&s, x).unwrap(), oracle::dual_weight_bruteforce(&s, x));
        }
    }

    #[test]
    fn dual_closed_form_matches_weighted_preimages(seed in any::<u64>()) {
        let s = common::two_isometry(&mut common::rng(seed), 1, 3);
        for x in s.vertices(4) {
            for n in 0..=8u64 {
                prop_assert_eq!(
                    dual_moment_closed_form(&s, x, n).unwrap(),
                    oracle::weighted_moment(&s, x, n)
                );
            }
        }
        for j in 1..=10 {
            prop_assert_eq!(dual_moment_closed_form(&s, VertexId::Branch(1, j), 7).unwrap(), int(1));
        }
    }

    #[test]
    fn tree_gamma_matches_traversal(seed in any::<u64>(), kappa in 1usize..5, eta in 1usize..4) {
        let t = common::tree(&mut common::rng(seed), kappa, eta);
        let mut vertices: Vec<TreeVertex> = (1..=kappa).map(TreeVertex::Trunk).collect();
        for i in 1..=eta {
            vertices.extend((1..4).map(|j| TreeVertex::Branch(i, j)));
        }
        for v in vertices {
            let g = tree_gamma(&t, v).unwrap();
            for n in 0..10u64 {
                prop_assert_eq!(g.value(n as i64), oracle::tree_gamma_bruteforce(&t, v, n));
            }
        }
    }

    #[test]
    fn reweighting_keeps_verdicts(seed in any::<u64>(), num in 1i64..9) {
        let mut rng = common::rng(seed);
        let s = common::linear_branch_isometry(&mut rng, 3, 2, seed % 2 == 0);
        let nu = nu_t_reweight(&s, &rat(num, 9)).unwrap();
        prop_assert_ne!(&nu, &s);
        prop_assert_eq!(is_m_isometry_circuit(&nu, 4).holds, is_m_isometry_circuit(&s, 4).holds);
        prop_assert!(!kernel_condition(&nu).unwrap());
    }

    #[test]
    fn branch_prefix_completions_classify(seed in any::<u64>(), len in 1usize..5, extra in 0u32..3) {
        let mut rng = common::rng(seed);
        let prefix: Vec<Rational> = (0..len).map(|_| common::positive(&mut rng, 9, 3)).collect();
        let target = len as u32 + 2 + extra;
        let CompletionResult::Solved(Certificate::Space(s)) = complete_branch_prefix(&prefix, target).unwrap() else {
            panic!("an order of at least len + 2 is always reachable");
        };
        prop_assert_eq!(s.branch(1).values(1, len), prefix);
        let rep = is_m_isometry_circuit(&s, target);
        prop_assert!(rep.is_m_isometry());
        for x in s.vertices(5) {
            prop_assert!(oracle::beta_diag(&s, x, target).is_zero());
        }
    }
}

#[test]
fn one_branch_trees_with_polynomial_profiles() {
    // eta = 1 with a linear profile through the Dirichlet weights is a 2-isometry;
    // scaling the fan weight breaks it
    for kappa in 1..6 {
        let t = onecircuit::TreeShift::dirichlet(kappa);
        assert!(tree_is_m_isometry(&t, 2));
        let mut fan = t.fan_sq().to_vec();
        fan[0] *= rat(3, 2);
        let bent = onecircuit::TreeShift::new(t.trunk_sq().to_vec(), fan, t.profiles().to_vec()).unwrap();
        assert!(!tree_is_m_isometry(&bent, 4));
    }
}
