use num_traits::One;
use onecircuit::classify::{
    is_analytic, is_completely_hyperexpansive, is_m_expansive, is_m_isometry_circuit,
    ranginf_dimension, shift_is_m_isometry, tree_failure, IsometryReport, Side,
};
use onecircuit::completion::{
    complete_branch_prefix, complete_circuit_from_branches, complete_circuit_from_circuit,
    complete_shift, construct_2_3_isometry, Certificate, CompletionResult, Family, Obstruction,
};
use onecircuit::dual::{
    delta_regular, dual_moment_closed_form, dual_moment_prefix, dual_representing_measure,
    dual_weight, kernel_condition, stieltjes_check, MomentPrefix,
};
use onecircuit::exactseq::{int, parse_rational};
use onecircuit::radon::{inf_h, sup_h};
use onecircuit::{CircuitSpace, Error, Poly, Rational, UnilateralShift, VertexId};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::report::{Ctx, Report};
use crate::spacefile::{to_text, Model};

pub fn parse_rat(flag: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text)
        .ok_or_else(|| CliError::Input(format!("{flag}: cannot read {text:?} as a rational p/q")))
}

pub fn parse_rats(flag: &str, items: &[String]) -> Result<Vec<Rational>, CliError> {
    items.iter().map(|s| parse_rat(flag, s)).collect()
}

fn isometry<L>(ctx: Ctx, rep: &IsometryReport<L>, label: impl Fn(&L) -> Value) -> Value {
    let witnesses: Vec<Value> = rep
        .witnesses
        .iter()
        .map(|(l, b)| json!({ "point": label(l), "beta": ctx.rat(b) }))
        .collect();
    json!({
        "order": rep.order,
        "holds": rep.holds,
        "least_order": rep.least_order,
        "strict": rep.strict,
        "witnesses": witnesses,
    })
}

fn vertex(x: &VertexId) -> Value {
    Value::String(x.to_string())
}

fn space_summary(ctx: Ctx, s: &CircuitSpace) -> Value {
    let branches: Vec<Value> = s
        .branches()
        .iter()
        .map(|b| {
            json!({
                "prefix": ctx.rats(b.prefix()),
                "q": ctx.rat(b.ratio()),
                "poly": ctx.poly(b.tail_poly()),
                "first_values": ctx.rats(&b.values(1, 5)),
            })
        })
        .collect();
    json!({
        "kappa": s.kappa(),
        "eta": s.eta(),
        "circuit": ctx.rats(s.circuit_measures()),
        "branches": branches,
    })
}

pub fn classify(ctx: Ctx, model: &Model, m_max: u32, depth: u32) -> Result<Value, CliError> {
    if m_max == 0 {
        return Err(CliError::Input("--m-max must be at least 1".into()));
    }
    let mut r = Report::new();
    r.put("kind", model.kind());
    match model {
        Model::Circuit(s) => {
            r.put("kappa", s.kappa()).put("eta", s.eta());
            let rep = is_m_isometry_circuit(s, m_max);
            r.put("isometry", isometry(ctx, &rep, vertex));
            let expansive: Vec<Value> = (2..=m_max)
                .map(|m| json!({ "m": m, "alternating_inequality": is_m_expansive(s, m, Side::NonPositive) }))
                .collect();
            r.put("expansivity", expansive);
            r.put(
                "completely_hyperexpansive",
                json!({ "verdict": is_completely_hyperexpansive(s, depth.max(2))?, "depth": depth.max(2) }),
            );
            r.put("analytic", is_analytic(s));
            let ri = ranginf_dimension(s);
            let basis: Vec<Value> = ri
                .basis
                .iter()
                .map(|(res, norm)| json!({ "residue": res, "norm_squared": ctx.rat(norm) }))
                .collect();
            r.put("ranginf", json!({ "dimension": ri.dimension(), "basis": basis }));
            r.put("norm_squared", ctx.rat(&sup_h(s)));
            r.put("lower_bound_squared", ctx.rat(&inf_h(s)));
            r.put("kernel_condition", kernel_condition(s)?);
            r.put("delta_regular", optional_verdict(delta_regular(s, false))?);
        }
        Model::Shift(s) => {
            let rep = shift_is_m_isometry(s, m_max);
            r.put("isometry", isometry(ctx, &rep, |n| json!(n)));
            r.put("first_squared_weights", ctx.rats(&s.squared_weights(6)));
        }
        Model::Tree(t) => {
            r.put("kappa", t.kappa()).put("eta", t.eta());
            let orders: Vec<Value> = (1..=m_max)
                .map(|m| {
                    let fail = tree_failure(t, m);
                    json!({
                        "m": m,
                        "holds": fail.is_none(),
                        "failing_vertex": fail.map(|v| v.to_string()),
                    })
                })
                .collect();
            r.put("isometry", orders);
        }
    }
    Ok(r.into_value())
}

/// Verdicts whose preconditions may not hold report why instead.
fn optional_verdict(res: Result<bool, Error>) -> Result<Value, CliError> {
    match res {
        Ok(b) => Ok(json!(b)),
        Err(Error::Precondition(m)) => Ok(json!(format!("not applicable: {m}"))),
        Err(e) => Err(e.into()),
    }
}

fn obstruction(ctx: Ctx, o: &Obstruction) -> Value {
    match o {
        Obstruction::ForcedPolynomialMismatch { n, product, forced } => json!({
            "kind": "forced_polynomial_mismatch",
            "n": n,
            "product": ctx.rat(product),
            "forced": ctx.rat(forced),
        }),
        Obstruction::NotPositive { n, value, w } => json!({
            "kind": "not_positive",
            "n": n,
            "value": ctx.rat(value),
            "w": ctx.poly(w),
        }),
        Obstruction::DeltaNotConstant { n, first, value } => json!({
            "kind": "delta_not_constant",
            "n": n,
            "first": ctx.rat(first),
            "value": ctx.rat(value),
        }),
        Obstruction::DeltaNotPositive { value } => json!({
            "kind": "delta_not_positive",
            "value": ctx.rat(value),
        }),
        Obstruction::DegreeTooHigh { degree, allowed } => json!({
            "kind": "degree_too_high",
            "degree": degree,
            "allowed": allowed,
        }),
    }
}

fn shift_certificate(ctx: Ctx, w: &Poly, m: u32) -> Result<Value, CliError> {
    let shift = UnilateralShift::from_polynomial(w)?;
    let rep = shift_is_m_isometry(&shift, m);
    Ok(json!({
        "w": ctx.poly(w),
        "first_squared_weights": ctx.rats(&shift.squared_weights(6)),
        "holds": rep.holds,
        "strict": rep.strict,
    }))
}

/// `order` is the requested m; the certificate is re-classified at that order.
fn completion(
    ctx: Ctx,
    res: &CompletionResult,
    t: Option<&Rational>,
    order: u32,
) -> Result<Value, CliError> {
    let mut r = Report::new();
    match res {
        CompletionResult::NoSolution(o) => {
            r.put("result", "no solution").put("obstruction", obstruction(ctx, o));
        }
        CompletionResult::Solved(Certificate::Shift { w, strict }) => {
            r.put("result", "solved")
                .put("strict", *strict)
                .put("certificate", shift_certificate(ctx, w, order)?);
        }
        CompletionResult::Solved(Certificate::Space(s)) => {
            r.put("result", "solved").put("space", space_summary(ctx, s));
            r.put("isometry", isometry(ctx, &is_m_isometry_circuit(s, order.max(4)), vertex));
            r.put("file", to_text(&Model::Circuit(s.clone())));
        }
        CompletionResult::Family(Family::Shift(f)) => {
            let t = t.cloned().unwrap_or_else(|| f.threshold().clone());
            let w = f.member(&t)?;
            r.put("result", "family")
                .put("order", f.order())
                .put("squared_prefix", ctx.rats(f.squared_prefix()))
                .put("parameter", "t = w(m - 1)")
                .put("threshold", ctx.rat(f.threshold()))
                .put("t", ctx.rat(&t))
                .put("member", shift_certificate(ctx, &w, f.order())?);
        }
        CompletionResult::Family(Family::CircuitMeasures(f)) => {
            let t = t.cloned().unwrap_or_else(|| &f.t0 + Rational::one());
            let member = f.member(&t)?;
            let sys = &f.system;
            r.put("result", "family")
                .put("order", f.order)
                .put("base", ctx.rats(&f.base))
                .put("direction", ctx.rats(&f.direction))
                .put("t0", ctx.rat(&f.t0))
                .put("parameter", "mu_t = base + t * direction, t > t0")
                .put(
                    "system",
                    json!({
                        "rhs": ctx.rats(&sys.rhs),
                        "rank": sys.rank,
                        "augmented_rank": sys.augmented_rank,
                        "polynomial_rank": sys.polynomial_rank,
                    }),
                )
                .put("t", ctx.rat(&t))
                .put("member", space_summary(ctx, &member))
                .put("file", to_text(&Model::Circuit(member)));
        }
    }
    Ok(r.into_value())
}

pub fn complete_shift_cmd(
    ctx: Ctx,
    prefix: &[String],
    m: u32,
    intermediate: Option<&[String]>,
    t: Option<&str>,
) -> Result<Value, CliError> {
    let prefix = parse_rats("--prefix", prefix)?;
    let inter = intermediate.map(|i| parse_rats("--intermediate", i)).transpose()?;
    let t = t.map(|t| parse_rat("--t", t)).transpose()?;
    let res = complete_shift(&prefix, m, inter.as_deref())?;
    completion(ctx, &res, t.as_ref(), m)
}

#[derive(Debug, Default)]
pub struct CircuitArgs {
    pub circuit: Option<Vec<String>>,
    pub eta: Option<usize>,
    pub kappa: Option<usize>,
    pub m: Option<u32>,
    pub branches: Vec<String>,
    pub bound: Option<String>,
    pub c: Option<Vec<String>>,
    pub d: Option<Vec<String>>,
    pub t: Option<String>,
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Input(format!("{flag} is required in this mode")))
}

/// Three modes: prescribed circuit (`--circuit`), explicit 2-/3-isometry
/// (`--c`, `--d`, `--t`) and circuit measures for given branches (`--branch`).
pub fn complete_circuit_cmd(ctx: Ctx, a: CircuitArgs) -> Result<Value, CliError> {
    let t = a.t.as_deref().map(|t| parse_rat("--t", t)).transpose()?;
    if let Some(circuit) = &a.circuit {
        let a_vals = parse_rats("--circuit", circuit)?;
        let res = complete_circuit_from_circuit(&a_vals, a.eta.unwrap_or(1))?;
        return completion(ctx, &res, None, 2);
    }
    if let Some(c) = &a.c {
        let kappa = need(a.kappa, "--kappa")?;
        let c = parse_rats("--c", c)?;
        let d = match &a.d {
            Some(d) => parse_rats("--d", d)?,
            None => vec![int(0); c.len()],
        };
        let t = need(t, "--t")?;
        let s = construct_2_3_isometry(kappa, &c, &d, &t)?;
        let res = CompletionResult::Solved(Certificate::Space(s));
        return completion(ctx, &res, None, 3);
    }
    if a.branches.is_empty() {
        return Err(CliError::Input(
            "give --circuit, --c/--d/--t or at least one --branch".into(),
        ));
    }
    let kappa = need(a.kappa, "--kappa")?;
    let m = need(a.m, "--m")?;
    let polys = a
        .branches
        .iter()
        .map(|b| {
            let items: Vec<String> = b.split(',').map(|s| s.trim().to_string()).collect();
            parse_rats("--branch", &items).map(Poly::new)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let bound = match &a.bound {
        Some(b) => parse_rat("--bound", b)?,
        None => int(1_000_000_000),
    };
    let res = complete_circuit_from_branches(kappa, &polys, m, &bound)?;
    completion(ctx, &res, t.as_ref(), m)
}

pub fn complete_branch_cmd(ctx: Ctx, prefix: &[String], m: u32) -> Result<Value, CliError> {
    let prefix = parse_rats("--prefix", prefix)?;
    let res = complete_branch_prefix(&prefix, m)?;
    completion(ctx, &res, None, m)
}

pub fn dual(ctx: Ctx, model: &Model, n: usize) -> Result<Value, CliError> {
    let Model::Circuit(s) = model else {
        return Err(CliError::Input(format!(
            "dual analysis needs a circuit space, got kind = {:?}",
            model.kind()
        )));
    };
    let mut r = Report::new();
    r.put("kind", "circuit").put("kappa", s.kappa()).put("eta", s.eta());
    let mut points: Vec<VertexId> = (1..=s.kappa()).map(VertexId::Circuit).collect();
    for i in 1..=s.eta() {
        points.extend((1..=3).map(|j| VertexId::Branch(i, j)));
    }
    let weights = points
        .iter()
        .map(|&x| Ok(json!({ "point": x.to_string(), "weight": ctx.rat(&dual_weight(s, x)?) })))
        .collect::<Result<Vec<Value>, CliError>>()?;
    r.put("dual_weights", weights);
    let two_iso = is_m_isometry_circuit(s, 2).is_m_isometry();
    let x1 = VertexId::Circuit(1);
    if s.kappa() == 1 && two_iso {
        let values = (0..=n as u64)
            .map(|k| dual_moment_closed_form(s, x1, k))
            .collect::<Result<Vec<_>, _>>()?;
        let nu = dual_representing_measure(s)?;
        let atoms: Vec<Value> = nu
            .atoms()
            .iter()
            .map(|(l, m)| json!({ "location": ctx.rat(l), "mass": ctx.rat(m) }))
            .collect();
        let prefix = MomentPrefix::new(values);
        r.put("moments_at_x_1", ctx.rats(&prefix.values))
            .put("moment_source", "closed form")
            .put("representing_measure", atoms)
            .put("stieltjes", stieltjes_check(&prefix))
            .put("subnormal", "certified: kappa = 1 and a 2-isometry");
    } else {
        let prefix = dual_moment_prefix(s, x1, n + 1)?;
        r.put("moments_at_x_1", ctx.rats(&prefix.values))
            .put("moment_source", "weighted preimage sums")
            .put("representing_measure", Value::Null)
            .put("stieltjes", stieltjes_check(&prefix))
            .put("subnormal", "unknown: necessary-condition check only");
    }
    r.put("kernel_condition", kernel_condition(s)?);
    r.put("delta_regular", optional_verdict(delta_regular(s, false))?);
    Ok(r.into_value())
}

pub fn inspect(ctx: Ctx, model: &Model) -> Value {
    let mut r = Report::new();
    r.put("kind", model.kind());
    match model {
        Model::Circuit(s) => {
            r.put("space", space_summary(ctx, s));
        }
        Model::Shift(s) => {
            r.put("first_squared_weights", ctx.rats(&s.squared_weights(8)));
            let products: Vec<Rational> = (0..8).map(|n| s.product(n)).collect();
            r.put("first_products", ctx.rats(&products));
        }
        Model::Tree(t) => {
            r.put("kappa", t.kappa())
                .put("eta", t.eta())
                .put("trunk", ctx.rats(t.trunk_sq()))
                .put("fan", ctx.rats(t.fan_sq()));
            let profiles: Vec<Value> = t.profiles().iter().map(|p| ctx.rats(&p.values(1, 5))).collect();
            r.put("profiles", profiles);
        }
    }
    r.put("file", to_text(model));
    r.into_value()
}
