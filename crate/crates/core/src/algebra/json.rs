//! JSON operator format.
//!
//! ```json
//! {"rep":"majorana","n":3,"field":"exact","terms":[{"m":[1,2],"c":[-1,2]}]}
//! {"rep":"pauli","n":3,"field":"float","terms":[{"p":"XZI","cf":0.5}]}
//! ```
//!
//! Coefficients are coordinates on the skew-hermitian basis: `L(M)` for a
//! Majorana monomial `M`, `i P` for a Pauli string `P`.

use super::monomial::{maj_indices, maj_key, parse_pauli, pauli_string, Ambient, Rep};
use super::operator::SparseOperator;
use crate::error::{input, Error, Result};
use crate::scalar::{Field, Q};
use num::bigint::BigInt;
use num::traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum FieldMode {
    #[default]
    Exact,
    Float,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<(Value, Value)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cf: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OperatorJson {
    pub rep: Rep,
    pub n: usize,
    #[serde(default)]
    pub field: FieldMode,
    pub terms: Vec<TermJson>,
}

/// An operator in either coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyOperator {
    Exact(SparseOperator<Q>),
    Float(SparseOperator<f64>),
}

impl AnyOperator {
    pub fn ambient(&self) -> Ambient {
        match self {
            AnyOperator::Exact(o) => o.ambient,
            AnyOperator::Float(o) => o.ambient,
        }
    }
    pub fn to_f64(&self) -> SparseOperator<f64> {
        match self {
            AnyOperator::Exact(o) => o.to_f64(),
            AnyOperator::Float(o) => o.clone(),
        }
    }
}

fn big(v: &Value) -> Result<BigInt> {
    let s = match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return input(format!("rational component must be an integer, got {v}")),
    };
    s.trim().parse::<BigInt>().map_err(|_| Error::Input(format!("bad integer {s}")))
}

fn rational(c: &(Value, Value)) -> Result<Q> {
    let n = big(&c.0)?;
    let d = big(&c.1)?;
    if d.is_zero() {
        return input("zero denominator");
    }
    Ok(Q::new(n, d))
}

fn term_key(amb: Ambient, t: &TermJson) -> Result<u128> {
    match (amb.rep, &t.m, &t.p) {
        (Rep::Majorana, Some(m), None) => {
            if m.windows(2).any(|w| w[0] >= w[1]) {
                return input(format!("Majorana indices must be strictly ascending: {m:?}"));
            }
            if m.iter().any(|&i| i == 0 || i > 2 * amb.n) {
                return input(format!("Majorana index out of range 1..={}: {m:?}", 2 * amb.n));
            }
            Ok(maj_key(m))
        }
        (Rep::Pauli, None, Some(p)) => {
            if p.chars().count() != amb.n {
                return input(format!("Pauli string {p} does not have length {}", amb.n));
            }
            parse_pauli(p).ok_or_else(|| Error::Input(format!("bad Pauli string {p}")))
        }
        _ => input("term must carry \"m\" (majorana) or \"p\" (pauli) matching rep"),
    }
}

impl OperatorJson {
    pub fn to_operator(&self) -> Result<AnyOperator> {
        if self.n == 0 || self.n > 64 {
            return input(format!("n = {} out of range 1..=64", self.n));
        }
        let amb = Ambient { rep: self.rep, n: self.n };
        match self.field {
            FieldMode::Exact => {
                let mut terms = Vec::new();
                for t in &self.terms {
                    let k = term_key(amb, t)?;
                    let c = match (&t.c, t.cf) {
                        (Some(c), None) => rational(c)?,
                        (None, Some(f)) if f.is_finite() => Q::from_f64(f),
                        _ => return input("exact term needs \"c\":[num,den]"),
                    };
                    terms.push((k, c));
                }
                Ok(AnyOperator::Exact(SparseOperator::from_terms(amb, terms)))
            }
            FieldMode::Float => {
                let mut terms = Vec::new();
                for t in &self.terms {
                    let k = term_key(amb, t)?;
                    let c = match (&t.c, t.cf) {
                        (None, Some(f)) if f.is_finite() => f,
                        (Some(c), None) => rational(c)?.to_f64(),
                        _ => return input("float term needs \"cf\": number"),
                    };
                    terms.push((k, c));
                }
                Ok(AnyOperator::Float(SparseOperator::from_terms(amb, terms)))
            }
        }
    }

    fn key_fields(amb: Ambient, k: u128) -> (Option<Vec<usize>>, Option<String>) {
        match amb.rep {
            Rep::Majorana => (Some(maj_indices(k)), None),
            Rep::Pauli => (None, Some(pauli_string(k, amb.n))),
        }
    }

    pub fn from_exact(op: &SparseOperator<Q>) -> Self {
        let terms = op
            .terms()
            .iter()
            .map(|(k, c)| {
                let (m, p) = Self::key_fields(op.ambient, *k);
                let num = |b: &BigInt| match i64::try_from(b) {
                    Ok(v) => Value::from(v),
                    Err(_) => Value::from(b.to_string()),
                };
                TermJson { m, p, c: Some((num(c.numer()), num(c.denom()))), cf: None }
            })
            .collect();
        OperatorJson { rep: op.ambient.rep, n: op.ambient.n, field: FieldMode::Exact, terms }
    }

    pub fn from_float(op: &SparseOperator<f64>) -> Self {
        let terms = op
            .terms()
            .iter()
            .map(|(k, c)| {
                let (m, p) = Self::key_fields(op.ambient, *k);
                TermJson { m, p, c: None, cf: Some(*c) }
            })
            .collect();
        OperatorJson { rep: op.ambient.rep, n: op.ambient.n, field: FieldMode::Float, terms }
    }
}

/// Parse one operator, a JSON array of operators, or `{"generators":[...]}`.
pub fn parse_generators(text: &str) -> Result<Vec<AnyOperator>> {
    let v: Value = serde_json::from_str(text)?;
    let list = match v {
        Value::Array(a) => a,
        Value::Object(ref o) if o.contains_key("generators") => match &o["generators"] {
            Value::Array(a) => a.clone(),
            _ => return input("\"generators\" must be an array"),
        },
        Value::Object(_) => vec![v],
        _ => return input("expected an operator object or an array of operators"),
    };
    let mut out = Vec::with_capacity(list.len());
    for item in list {
        let oj: OperatorJson = serde_json::from_value(item)?;
        out.push(oj.to_operator()?);
    }
    Ok(out)
}
