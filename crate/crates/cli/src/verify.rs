//! `verify`: closed forms against the brute-force oracle on one model.

use num_traits::Zero;
use onecircuit::classify::{
    is_analytic, is_completely_hyperexpansive, is_m_isometry_circuit, shift_is_m_isometry,
    tree_gamma, tree_is_m_isometry,
};
use onecircuit::dual::{
    delta_regular, dual_moment_closed_form, dual_representing_measure, dual_weight,
    kernel_condition, stieltjes_check, MomentPrefix,
};
use onecircuit::exactseq::signed_binomial;
use onecircuit::oracle::{self, FiniteFunction};
use onecircuit::radon::{beta_at, branch_head_mass, circuit_beta_mass, h, h_n, inf_h, sup_h};
use onecircuit::spaces::{TreeShift, TreeVertex};
use onecircuit::{CircuitSpace, Rational, UnilateralShift, VertexId};
use serde_json::{json, Value};

use crate::spacefile::Model;

/// One identity: how many instances were compared and the first mismatch.
struct Check {
    name: &'static str,
    count: usize,
    failure: Option<String>,
}

#[derive(Default)]
struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn run(&mut self, name: &'static str, body: impl FnOnce(&mut Check)) {
        let mut c = Check {
            name,
            count: 0,
            failure: None,
        };
        body(&mut c);
        self.checks.push(c);
    }
}

impl Check {
    /// Records one comparison; only the first failure is kept.
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }
}

fn circuit_checks(s: &CircuitSpace, depth: usize, n_max: u64, suite: &mut Suite) {
    let points = s.vertices(depth);
    suite.run("h_n closed form = preimage measure", |c| {
        for &x in &points {
            for n in 0..=n_max {
                let (a, b) = (h_n(s, x, n), oracle::h_n_bruteforce(s, x, n));
                c.expect(a == b, || format!("h_{n}({x}) = {a}, oracle {b}"));
            }
        }
    });
    suite.run("beta_m closed form = oracle sum", |c| {
        for &x in &points {
            for m in 1..=5 {
                let (a, b) = (beta_at(s, x, m), oracle::beta_diag(s, x, m));
                c.expect(a == b, || format!("beta_{m}({x}) = {a}, oracle {b}"));
            }
        }
    });
    suite.run("classification witnesses = oracle beta", |c| {
        for m in 1..=4 {
            let rep = is_m_isometry_circuit(s, m);
            c.expect(rep.is_m_isometry() == rep.witnesses.is_empty(), || {
                format!("order {m}: verdict and witnesses disagree")
            });
            for (x, beta) in &rep.witnesses {
                let b = oracle::beta_diag(s, *x, m);
                c.expect(&b == beta && !b.is_zero(), || format!("beta_{m}({x}) = {beta}, oracle {b}"));
            }
            if rep.is_m_isometry() {
                for &x in &points {
                    let b = oracle::beta_diag(s, x, m);
                    c.expect(b.is_zero(), || format!("{m}-isometry but beta_{m}({x}) = {b}"));
                }
            }
        }
    });
    suite.run("circuit beta mass = branch head mass", |c| {
        for m in 1..=6 {
            let (a, b) = (circuit_beta_mass(s, m), branch_head_mass(s, m));
            c.expect(a == b, || format!("m = {m}: {a} vs {b}"));
        }
    });
    suite.run("||C^n chi_x||^2 = mu(x) h_n(x)", |c| {
        for &x in points.iter().take(12) {
            let g = oracle::gamma_seq(s, &FiniteFunction::indicator(x), n_max.min(6));
            for (n, v) in g.iter().enumerate() {
                let e = s.measure_at(x) * h_n(s, x, n as u64);
                c.expect(v == &e, || format!("n = {n} at {x}: {v} vs {e}"));
            }
        }
    });
    suite.run("inf h <= h <= sup h", |c| {
        let (hi, lo) = (sup_h(s), inf_h(s));
        for &x in &points {
            let v = h(s, x);
            c.expect(lo <= v && v <= hi, || format!("h({x}) = {v} outside [{lo}, {hi}]"));
        }
    });
    suite.run("dual weight = 1 / h(phi(x)) by traversal", |c| {
        for &x in &points {
            match dual_weight(s, x) {
                Ok(w) => {
                    let b = oracle::dual_weight_bruteforce(s, x);
                    c.expect(w == b, || format!("at {x}: {w} vs {b}"));
                }
                Err(e) => c.expect(false, || e.to_string()),
            }
        }
    });
    let two_iso = is_m_isometry_circuit(s, 2).is_m_isometry();
    suite.run("complete hyperexpansivity = 2-isometry", |c| {
        match is_completely_hyperexpansive(s, 8) {
            Ok(v) => c.expect(v == two_iso, || format!("verdict {v}, 2-isometry {two_iso}")),
            Err(e) => c.expect(false, || e.to_string()),
        }
    });
    let least = is_m_isometry_circuit(s, 6).least_order;
    if least.is_some_and(|m| m >= 2) {
        suite.run("m-isometries are analytic", |c| {
            c.expect(is_analytic(s), || "m-isometry that is not analytic".into());
        });
    }
    if two_iso {
        suite.run("2-isometries fail the kernel condition", |c| {
            c.expect(kernel_condition(s) == Ok(false), || "kernel condition holds".into());
        });
        suite.run("Delta-regular iff kappa = 1", |c| {
            let v = delta_regular(s, true);
            c.expect(v == Ok(s.kappa() == 1), || format!("delta_regular = {v:?}"));
        });
    }
    if two_iso && s.kappa() == 1 {
        let x1 = VertexId::Circuit(1);
        suite.run("dual moments: closed form = weighted preimages", |c| {
            for &x in points.iter().take(8) {
                for n in 0..=n_max {
                    let a = dual_moment_closed_form(s, x, n).ok();
                    let b = oracle::weighted_moment(s, x, n);
                    c.expect(a.as_ref() == Some(&b), || format!("n = {n} at {x}: {a:?} vs {b}"));
                }
            }
        });
        suite.run("dual moments = two-atom measure moments", |c| match dual_representing_measure(s) {
            Ok(nu) => {
                let mut values = Vec::new();
                for n in 0..=20u64 {
                    let a = dual_moment_closed_form(s, x1, n).ok();
                    let b = nu.moment(n);
                    c.expect(a.as_ref() == Some(&b), || format!("n = {n}: {a:?} vs {b}"));
                    values.push(b);
                }
                let prefix = MomentPrefix::new(values[..=10].to_vec());
                c.expect(stieltjes_check(&prefix), || "Hankel test rejects the moments".into());
            }
            Err(e) => c.expect(false, || e.to_string()),
        });
    }
}

fn shift_checks(s: &UnilateralShift, n_max: u64, suite: &mut Suite) {
    let len = 40u64.max(n_max);
    suite.run("W(n) = product of squared weights", |c| {
        let mut acc = Rational::from_integer(1.into());
        for n in 0..len {
            let w = s.product(n);
            c.expect(w == acc, || format!("W({n}) = {w}, product {acc}"));
            acc *= s.squared_weight(n);
        }
    });
    suite.run("m-isometry verdict = differences of W", |c| {
        for m in 1..=5u32 {
            let rep = shift_is_m_isometry(s, m);
            let diff = |n: u64| {
                (0..=m).fold(Rational::zero(), |a, j| a + signed_binomial(m, j) * s.product(n + j as u64))
            };
            if rep.is_m_isometry() {
                for n in 0..len {
                    let d = diff(n);
                    c.expect(d.is_zero(), || format!("order {m}: difference {d} at n = {n}"));
                }
            }
            for (n, beta) in &rep.witnesses {
                let d = diff(*n);
                let sign_fixed = if m % 2 == 1 { -d.clone() } else { d.clone() };
                c.expect(
                    !d.is_zero() && (beta == &d || beta == &sign_fixed),
                    || format!("order {m}: witness {beta} at n = {n}, difference {d}"),
                );
            }
        }
    });
}

fn tree_checks(t: &TreeShift, n_max: u64, suite: &mut Suite) {
    let mut points: Vec<TreeVertex> = (1..=t.kappa()).map(TreeVertex::Trunk).collect();
    for i in 1..=t.eta() {
        points.extend((1..=3).map(|j| TreeVertex::Branch(i, j)));
    }
    suite.run("||S^n e_v||^2 closed form = traversal", |c| {
        // tails with different ratios do not sum to one geo-polynomial
        let mixed = t.profiles().windows(2).any(|w| w[0].ratio() != w[1].ratio());
        for &v in &points {
            let g = tree_gamma(t, v);
            let expected = !mixed || matches!(v, TreeVertex::Branch(..));
            c.expect(g.is_some() == expected, || format!("closed form at {v}: {}", g.is_some()));
            if let Some(g) = g {
                for n in 0..=n_max {
                    let (a, b) = (g.value(n as i64), oracle::tree_gamma_bruteforce(t, v, n));
                    c.expect(a == b, || format!("n = {n} at {v}: {a} vs {b}"));
                }
            }
        }
    });
    suite.run("tree m-isometries have vanishing differences", |c| {
        for m in 1..=4u32 {
            if !tree_is_m_isometry(t, m) {
                continue;
            }
            for &v in &points {
                for n in 0..=n_max {
                    let d = (0..=m).fold(Rational::zero(), |a, j| {
                        a + signed_binomial(m, j) * oracle::tree_gamma_bruteforce(t, v, n + j as u64)
                    });
                    c.expect(d.is_zero(), || format!("order {m} at {v}, n = {n}: {d}"));
                }
            }
        }
    });
}

/// Runs every applicable identity; the flag is false when any fails.
pub fn verify(model: &Model, depth: usize, n_max: u64) -> (Value, bool) {
    let mut suite = Suite::default();
    match model {
        Model::Circuit(s) => circuit_checks(s, depth, n_max, &mut suite),
        Model::Shift(s) => shift_checks(s, n_max, &mut suite),
        Model::Tree(t) => tree_checks(t, n_max, &mut suite),
    }
    let all_pass = suite.checks.iter().all(|c| c.failure.is_none());
    let rows: Vec<Value> = suite
        .checks
        .iter()
        .map(|c| {
            json!({
                "identity": c.name,
                "status": if c.failure.is_none() { "PASS" } else { "FAIL" },
                "checks": c.count,
                "first_failure": c.failure,
            })
        })
        .collect();
    let passed = suite.checks.iter().filter(|c| c.failure.is_none()).count();
    let report = json!({
        "kind": model.kind(),
        "identities": rows,
        "passed": passed,
        "failed": suite.checks.len() - passed,
    });
    (report, all_pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacefile::parse_str;
    use num_traits::Signed;

    #[test]
    fn unit_space_passes() {
        let m = parse_str("kind = \"circuit\"\nkappa = 1\ncircuit = [1]\n[[branch]]\npoly = [1]\n").unwrap();
        let (report, ok) = verify(&m, 5, 6);
        assert!(ok, "{report}");
        assert!(report["identities"].as_array().unwrap().len() >= 12);
    }

    #[test]
    fn witnesses_carry_their_sign() {
        let m = parse_str("kind = \"shift\"\n[squared]\npoly = [2]\n").unwrap();
        let (report, ok) = verify(&m, 5, 6);
        assert!(ok, "{report}");
        // W(n) = 2^n is no polynomial, so every order has a witness
        let Model::Shift(s) = m else { panic!() };
        assert!(!shift_is_m_isometry(&s, 3).witnesses.is_empty());
        assert!(s.squared_weight(0).is_positive());
    }
}
