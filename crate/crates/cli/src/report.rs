//! Reports are built once as an ordered JSON value and rendered either as
//! JSON or as indented `key: value` text, so both formats carry the same fields.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use onecircuit::exactseq::format_rational;
use onecircuit::{Poly, Rational};
use serde_json::{json, Map, Value};

const DIGITS: u32 = 20;

/// Conversion of exact values, with an optional approximate decimal.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub decimals: bool,
}

/// `r` truncated toward zero after 20 decimal digits.
pub fn truncated_decimal(r: &Rational) -> String {
    let scale = BigInt::from(10u32).pow(DIGITS);
    let scaled = (r.numer() * &scale) / r.denom();
    let neg = r.is_negative() && !scaled.is_zero();
    let a = scaled.abs();
    let frac = (&a % &scale).to_string();
    format!(
        "{}{}.{}{}",
        if neg { "-" } else { "" },
        &a / &scale,
        "0".repeat(DIGITS as usize - frac.len()),
        frac
    )
}

impl Ctx {
    pub fn rat(&self, r: &Rational) -> Value {
        if self.decimals {
            json!({ "exact": format_rational(r), "approx": truncated_decimal(r) })
        } else {
            Value::String(format_rational(r))
        }
    }

    pub fn rats(&self, rs: &[Rational]) -> Value {
        Value::Array(rs.iter().map(|r| self.rat(r)).collect())
    }

    pub fn poly(&self, p: &Poly) -> Value {
        json!({ "text": p.to_string(), "coefficients": self.rats(p.coeffs()) })
    }
}

/// Ordered key/value report.
#[derive(Clone, Debug, Default)]
pub struct Report {
    map: Map<String, Value>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.map.insert(key.to_string(), value.into());
        self
    }

    pub fn into_value(self) -> Value {
        Value::Object(self.map)
    }
}

impl From<Report> for Value {
    fn from(r: Report) -> Value {
        r.into_value()
    }
}

fn is_approx(m: &Map<String, Value>) -> bool {
    m.len() == 2 && m.contains_key("exact") && m.contains_key("approx")
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Object(m) if is_approx(m) => Some(format!(
            "{}  (approx {})",
            m["exact"].as_str().unwrap_or_default(),
            m["approx"].as_str().unwrap_or_default()
        )),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items
                .iter()
                .map(|i| match i {
                    Value::Array(_) => None,
                    Value::Object(m) if !is_approx(m) => None,
                    other => inline(other),
                })
                .collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        _ => None,
    }
}

fn render_entries(m: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    for (k, v) in m {
        if let Some(s) = inline(v) {
            out.push_str(&format!("{pad}{k}: {s}\n"));
            continue;
        }
        match v {
            Value::String(s) => {
                out.push_str(&format!("{pad}{k}: |\n"));
                for line in s.lines() {
                    if line.is_empty() {
                        out.push('\n');
                    } else {
                        out.push_str(&format!("{pad}  {line}\n"));
                    }
                }
            }
            Value::Object(inner) => {
                out.push_str(&format!("{pad}{k}:\n"));
                render_entries(inner, indent + 2, out);
            }
            Value::Array(items) => {
                out.push_str(&format!("{pad}{k}:\n"));
                for item in items {
                    match item {
                        Value::Object(inner) => {
                            let mut sub = String::new();
                            render_entries(inner, indent + 4, &mut sub);
                            let body = sub.trim_start();
                            out.push_str(&format!("{pad}  - {body}"));
                        }
                        other => {
                            let s = inline(other).unwrap_or_else(|| other.to_string());
                            out.push_str(&format!("{pad}  - {s}\n"));
                        }
                    }
                }
            }
            _ => unreachable!("scalars render inline"),
        }
    }
}

pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(m) => render_entries(m, 0, &mut out),
        other => out.push_str(&format!("{}\n", inline(other).unwrap_or_else(|| other.to_string()))),
    }
    out
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}
