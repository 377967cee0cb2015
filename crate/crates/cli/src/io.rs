//! Input files and output rendering.

use crate::Format;
use fermilie::quasifree::CovarianceMatrix;
use fermilie::Error;
use nalgebra::DMatrix;
use serde_json::Value;
use std::io::Write;
use std::path::Path;

/// A command result. `ok = false` maps to exit code 1.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    /// Tabular commands supply their own CSV; others are flattened to `key,value`.
    pub csv: Option<String>,
    pub ok: bool,
}

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError { code: 2, message: msg.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_) | Error::Json(_) | Error::TooLarge(_) | Error::CapExceeded { .. } => 2,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::input(format!("json: {e}"))
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// A square real matrix: a JSON array of rows, or an object with the rows under `"G"` or `"T"`.
pub fn read_matrix(path: &Path) -> Result<DMatrix<f64>, CliError> {
    let v: Value = serde_json::from_str(&read_text(path)?)?;
    let rows = match &v {
        Value::Object(o) => o.get("G").or_else(|| o.get("T")).cloned().unwrap_or(Value::Null),
        _ => v.clone(),
    };
    let rows: Vec<Vec<f64>> = serde_json::from_value(rows)
        .map_err(|e| CliError::input(format!("{}: expected a matrix as an array of rows ({e})", path.display())))?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::input(format!("{}: matrix must be square and non-empty", path.display())));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

pub fn read_covariance(path: &Path) -> Result<CovarianceMatrix, CliError> {
    Ok(CovarianceMatrix::new(read_matrix(path)?)?)
}

pub fn matrix_json(m: &DMatrix<f64>) -> Value {
    Value::from((0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn matrix_text(m: &DMatrix<f64>) -> String {
    let mut s = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format!("{:>10.6}", m[(i, j)])).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

fn flat_csv(v: &Value) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::input(format!("csv: {e}"));
    w.write_record(["key", "value"]).map_err(fail)?;
    if let Value::Object(o) = v {
        for (k, x) in o {
            let s = match x {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            w.write_record([k.as_str(), s.as_str()]).map_err(fail)?;
        }
    } else {
        w.write_record(["value", v.to_string().as_str()]).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::input(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn emit(out: &Outcome, format: Format) -> Result<(), CliError> {
    let body = match format {
        Format::Text => out.text.clone(),
        Format::Json => serde_json::to_string_pretty(&out.json)? + "\n",
        Format::Csv => match &out.csv {
            Some(c) => c.clone(),
            None => flat_csv(&out.json)?,
        },
    };
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(body.as_bytes()).map_err(|e| CliError::input(format!("stdout: {e}")))?;
    Ok(())
}
