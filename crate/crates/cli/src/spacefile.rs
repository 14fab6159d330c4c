//! Space description files.
//!
//! ```toml
//! kind = "circuit"
//! kappa = 2
//! circuit = ["2", "3"]
//!
//! [[branch]]
//! prefix = ["5"]      # optional, mu(x_{i,1}), ...
//! q = "1/2"           # optional, defaults to 1
//! poly = ["1", "1"]   # tail polynomial in j, constant term first
//! ```
//!
//! Shifts use a `[squared]` or `[products]` table of the same shape with
//! domain `n >= 0`; trees use `trunk`, `fan` and `[[profile]]` blocks.

use std::fmt::Write as _;
use std::path::Path;

use onecircuit::exactseq::{format_rational, parse_rational};
use onecircuit::spaces::TreeShift;
use onecircuit::{CircuitSpace, EvSeq, Poly, Rational, ShiftWeights, UnilateralShift};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Circuit(CircuitSpace),
    Shift(UnilateralShift),
    Tree(TreeShift),
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Circuit(_) => "circuit",
            Model::Shift(_) => "shift",
            Model::Tree(_) => "tree",
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Num {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeq {
    #[serde(default)]
    prefix: Vec<Num>,
    q: Option<Num>,
    poly: Vec<Num>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    kind: String,
    kappa: Option<usize>,
    circuit: Option<Vec<Num>>,
    branch: Option<Vec<RawSeq>>,
    squared: Option<RawSeq>,
    products: Option<RawSeq>,
    trunk: Option<Vec<Num>>,
    fan: Option<Vec<Num>>,
    profile: Option<Vec<RawSeq>>,
}

fn field_err(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{field}: {msg}"))
}

fn num(field: &str, n: &Num) -> Result<Rational, CliError> {
    match n {
        Num::Int(v) => Ok(Rational::from_integer((*v).into())),
        Num::Text(s) => parse_rational(s)
            .ok_or_else(|| field_err(field, format!("cannot read {s:?} as a rational p/q"))),
    }
}

fn nums(field: &str, list: &[Num]) -> Result<Vec<Rational>, CliError> {
    list.iter()
        .enumerate()
        .map(|(i, n)| num(&format!("{field}[{}]", i + 1), n))
        .collect()
}

fn seq(field: &str, raw: &RawSeq, start: i64) -> Result<EvSeq, CliError> {
    let prefix = nums(&format!("{field}.prefix"), &raw.prefix)?;
    let q = match &raw.q {
        Some(q) => num(&format!("{field}.q"), q)?,
        None => Rational::from_integer(1.into()),
    };
    let poly = Poly::new(nums(&format!("{field}.poly"), &raw.poly)?);
    EvSeq::new(start, prefix, q, poly).map_err(|e| field_err(&format!("{field}.q"), e))
}

fn require<T>(value: Option<T>, field: &str, kind: &str) -> Result<T, CliError> {
    value.ok_or_else(|| field_err(field, format!("required for kind = {kind:?}")))
}

fn forbid<T>(value: &Option<T>, field: &str, kind: &str) -> Result<(), CliError> {
    match value {
        Some(_) => Err(field_err(field, format!("not allowed for kind = {kind:?}"))),
        None => Ok(()),
    }
}

pub fn parse_str(text: &str) -> Result<Model, CliError> {
    let raw: RawFile = toml::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    match raw.kind.as_str() {
        "circuit" => {
            for (v, f) in [(raw.trunk.is_some(), "trunk"), (raw.fan.is_some(), "fan")] {
                if v {
                    return Err(field_err(f, "not allowed for kind = \"circuit\""));
                }
            }
            forbid(&raw.profile, "profile", "circuit")?;
            forbid(&raw.squared, "squared", "circuit")?;
            forbid(&raw.products, "products", "circuit")?;
            let kappa = require(raw.kappa, "kappa", "circuit")?;
            let circuit = nums("circuit", &require(raw.circuit, "circuit", "circuit")?)?;
            if circuit.len() != kappa {
                return Err(field_err(
                    "circuit",
                    format!("kappa = {kappa} but {} measures given", circuit.len()),
                ));
            }
            let raw_branches = require(raw.branch, "branch", "circuit")?;
            let mut branches = Vec::new();
            for (i, b) in raw_branches.iter().enumerate() {
                branches.push(seq(&format!("branch[{}]", i + 1), b, 1)?);
            }
            CircuitSpace::new(kappa, circuit, branches)
                .map(Model::Circuit)
                .map_err(|e| field_err("circuit/branch", e))
        }
        "shift" => {
            forbid(&raw.kappa, "kappa", "shift")?;
            forbid(&raw.circuit, "circuit", "shift")?;
            forbid(&raw.branch, "branch", "shift")?;
            forbid(&raw.profile, "profile", "shift")?;
            let weights = match (&raw.squared, &raw.products) {
                (Some(s), None) => ShiftWeights::Squared(seq("squared", s, 0)?),
                (None, Some(p)) => ShiftWeights::Products(seq("products", p, 0)?),
                _ => {
                    return Err(field_err(
                        "squared/products",
                        "exactly one of [squared] or [products] is required",
                    ))
                }
            };
            UnilateralShift::new(weights)
                .map(Model::Shift)
                .map_err(|e| field_err("squared/products", e))
        }
        "tree" => {
            forbid(&raw.kappa, "kappa", "tree")?;
            forbid(&raw.circuit, "circuit", "tree")?;
            forbid(&raw.branch, "branch", "tree")?;
            let trunk = nums("trunk", raw.trunk.as_deref().unwrap_or(&[]))?;
            let fan = nums("fan", &require(raw.fan, "fan", "tree")?)?;
            let raw_profiles = require(raw.profile, "profile", "tree")?;
            let mut profiles = Vec::new();
            for (i, p) in raw_profiles.iter().enumerate() {
                profiles.push(seq(&format!("profile[{}]", i + 1), p, 1)?);
            }
            TreeShift::new(trunk, fan, profiles)
                .map(Model::Tree)
                .map_err(|e| field_err("trunk/fan/profile", e))
        }
        other => Err(field_err(
            "kind",
            format!("unknown kind {other:?}, expected circuit, shift or tree"),
        )),
    }
}

pub fn parse_file(path: &Path) -> Result<Model, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_str(&text).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn list(values: &[Rational]) -> String {
    let items: Vec<String> = values
        .iter()
        .map(|v| format!("\"{}\"", format_rational(v)))
        .collect();
    format!("[{}]", items.join(", "))
}

fn write_seq(out: &mut String, header: &str, s: &EvSeq) {
    let _ = writeln!(out, "\n{header}");
    if !s.prefix().is_empty() {
        let _ = writeln!(out, "prefix = {}", list(s.prefix()));
    }
    if !num_traits::One::is_one(s.ratio()) {
        let _ = writeln!(out, "q = \"{}\"", format_rational(s.ratio()));
    }
    let _ = writeln!(out, "poly = {}", list(s.tail_poly().coeffs()));
}

/// Canonical text; `parse_str(&to_text(m)) == m`.
pub fn to_text(model: &Model) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind = \"{}\"", model.kind());
    match model {
        Model::Circuit(s) => {
            let _ = writeln!(out, "kappa = {}", s.kappa());
            let _ = writeln!(out, "circuit = {}", list(s.circuit_measures()));
            for b in s.branches() {
                write_seq(&mut out, "[[branch]]", b);
            }
        }
        Model::Shift(s) => match s.weights() {
            ShiftWeights::Squared(w) => write_seq(&mut out, "[squared]", w),
            ShiftWeights::Products(w) => write_seq(&mut out, "[products]", w),
        },
        Model::Tree(t) => {
            let _ = writeln!(out, "trunk = {}", list(t.trunk_sq()));
            let _ = writeln!(out, "fan = {}", list(t.fan_sq()));
            for p in t.profiles() {
                write_seq(&mut out, "[[profile]]", p);
            }
        }
    }
    out
}
