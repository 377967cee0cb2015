//! Structure tables of bounded-range translation-invariant algebras.
//!
//! Fermionic rows use `d` modes with range `M = 2 .. d`, spin rows use `L`
//! sites with range `M = 1 .. L`. Each cell is a Lie closure followed by a
//! structure decomposition.

use super::profile::Kind;
use super::symmetrize::bounded_range_algebra;
use crate::error::Result;
use crate::lie::{structure_profile, Structure};
use crate::scalar::Q;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct TableCell {
    #[serde(rename = "L_or_d")]
    pub size: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub dim: usize,
    pub structure: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub name: String,
    pub cells: Vec<TableCell>,
}

/// Reference fermionic structures for `M = 2` and `M = d`.
pub fn fermion_table_expected(d: usize, m: usize) -> Option<&'static str> {
    let nn = match d {
        2 => "2 u(1)",
        3 => "2 su(2) + 3 u(1)",
        4 => "5 su(2) + 4 u(1)",
        5 => "2 su(4) + 8 su(3) + 3 u(1)",
        6 => "4 su(6) + 8 su(5) + 3 u(1)",
        _ => return None,
    };
    let full = match d {
        2 => "2 u(1)",
        3 => "2 su(2) + 4 u(1)",
        4 => "8 su(2) + 6 u(1)",
        5 => "2 su(4) + 8 su(3) + 8 u(1)",
        6 => "4 su(6) + 8 su(5) + 10 u(1)",
        _ => return None,
    };
    if m == d {
        Some(full)
    } else if m == 2 {
        Some(nn)
    } else {
        None
    }
}

/// Reference spin-chain structures, `1 <= M <= L <= 6`.
pub fn spin_table_expected(l: usize, m: usize) -> Option<String> {
    if m == 0 || m > l || l > 6 {
        return None;
    }
    if m == 1 {
        return Some("su(2)".into());
    }
    let k = match l {
        2 => "su(3)",
        3 => "su(4) + 2 su(2)",
        4 => "su(6) + su(4)",
        5 => "su(8) + 4 su(6)",
        _ => "su(14) + 2 su(11) + su(10) + 2 su(9)",
    };
    let extra = match (l, m) {
        (2, 2) | (3, 2) | (5, 2) | (6, 2) => "u(1)",
        (3, 3) | (5, 3) => "2 u(1)",
        (4, 2) => "2 su(2) + u(1)",
        (4, 3) | (4, 4) => "2 su(3) + 3 u(1)",
        (6, 3) => "3 u(1)",
        (5, 4) | (5, 5) | (6, 4) => "4 u(1)",
        (6, 5) | (6, 6) => "5 u(1)",
        _ => return None,
    };
    Some(format!("{k} + {extra}"))
}

/// Canonical form of an expected structure string.
fn canonical(s: &str) -> Result<String> {
    Ok(Structure::parse(s)?.to_string())
}

pub fn table_cell(kind: Kind, size: usize, m: usize) -> Result<TableCell> {
    let space = bounded_range_algebra::<Q>(size, m, kind, None)?;
    let report = structure_profile(&space)?;
    let expected = match kind {
        Kind::Fermion => fermion_table_expected(size, m).map(String::from),
        Kind::Spin => spin_table_expected(size, m),
    }
    .map(|s| canonical(&s))
    .transpose()?;
    let matches = expected.as_ref().map(|e| *e == report.structure);
    Ok(TableCell { size, m, dim: report.dim, structure: report.structure, expected, matches })
}

/// Fermionic table over `sizes`; `all_ranges` fills every `M` in `2..=d`,
/// otherwise only `M = 2` and `M = d`.
pub fn fermion_table(sizes: &[usize], all_ranges: bool) -> Result<Table> {
    let mut cells = Vec::new();
    for &d in sizes {
        let ms: Vec<usize> = if all_ranges || d <= 3 { (2..=d).collect() } else { vec![2, d] };
        for m in ms {
            cells.push(table_cell(Kind::Fermion, d, m)?);
        }
    }
    Ok(Table { name: "fermionic".into(), cells })
}

/// Spin table over `sizes`, all ranges `M = 1..=L`.
pub fn spin_table(sizes: &[usize]) -> Result<Table> {
    let mut cells = Vec::new();
    for &l in sizes {
        for m in 1..=l {
            cells.push(table_cell(Kind::Spin, l, m)?);
        }
    }
    Ok(Table { name: "spin".into(), cells })
}

impl Table {
    /// Aligned text rendering.
    pub fn render(&self) -> String {
        let size_label = if self.name == "spin" { "L" } else { "d" };
        let w = self.cells.iter().map(|c| c.structure.len()).max().unwrap_or(9).max(9);
        let mut out = format!("{size_label:>3} {:>3} {:>5}  {:<w$}  check\n", "M", "dim", "structure");
        for c in &self.cells {
            let check = match c.matches {
                Some(true) => "ok",
                Some(false) => "MISMATCH",
                None => "-",
            };
            out.push_str(&format!("{:>3} {:>3} {:>5}  {:<w$}  {check}\n", c.size, c.m, c.dim, c.structure));
        }
        out
    }
}
