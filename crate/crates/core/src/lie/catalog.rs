//! Compact simple Lie algebra labels and structure strings.

use crate::error::{input, Result};
use std::collections::BTreeMap;
use std::fmt;

/// A compact simple Lie algebra of classical type.
///
/// Constructors normalize the low-rank coincidences: `so(3) = sp(1) = su(2)`,
/// `so(6) = su(4)`, `sp(2) = so(5)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Simple {
    Su(usize),
    So(usize),
    Sp(usize),
}

impl Simple {
    pub fn su(n: usize) -> Option<Simple> {
        (n >= 2).then_some(Simple::Su(n))
    }

    pub fn so(n: usize) -> Option<Simple> {
        match n {
            3 => Some(Simple::Su(2)),
            6 => Some(Simple::Su(4)),
            n if n >= 5 => Some(Simple::So(n)),
            _ => None, // so(2) abelian, so(4) not simple
        }
    }

    pub fn sp(n: usize) -> Option<Simple> {
        match n {
            1 => Some(Simple::Su(2)),
            2 => Some(Simple::So(5)),
            n if n >= 3 => Some(Simple::Sp(n)),
            _ => None,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Simple::Su(n) => n * n - 1,
            Simple::So(n) => n * (n - 1) / 2,
            Simple::Sp(n) => n * (2 * n + 1),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            Simple::Su(n) => n - 1,
            Simple::So(n) => n / 2,
            Simple::Sp(n) => n,
        }
    }
}

impl fmt::Display for Simple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Simple::Su(n) => write!(f, "su({n})"),
            Simple::So(n) => write!(f, "so({n})"),
            Simple::Sp(n) => write!(f, "sp({n})"),
        }
    }
}

/// All catalog entries with the given dimension and rank.
pub fn candidates(dim: usize, rank: usize) -> Vec<Simple> {
    let mut out = Vec::new();
    let mut n = 2;
    while n * n - 1 <= dim {
        if n * n - 1 == dim && n - 1 == rank {
            out.push(Simple::Su(n));
        }
        n += 1;
    }
    let mut n = 5;
    while n * (n - 1) / 2 <= dim {
        if let Some(s) = Simple::so(n) {
            if s.dim() == dim && s.rank() == rank && !out.contains(&s) {
                out.push(s);
            }
        }
        n += 1;
    }
    let mut n = 3;
    while n * (2 * n + 1) <= dim {
        if n * (2 * n + 1) == dim && n == rank {
            out.push(Simple::Sp(n));
        }
        n += 1;
    }
    out
}

/// Isomorphism type of a compact reductive algebra: simple ideals plus a
/// center of `u1` dimensions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Structure {
    pub simple: BTreeMap<Simple, usize>,
    pub u1: usize,
}

impl Structure {
    pub fn add_simple(&mut self, s: Simple, count: usize) {
        if count > 0 {
            *self.simple.entry(s).or_insert(0) += count;
        }
    }

    /// `u(n) = su(n) + u(1)`.
    pub fn add_u(&mut self, n: usize, count: usize) {
        if n == 0 {
            return;
        }
        if let Some(s) = Simple::su(n) {
            self.add_simple(s, count);
        }
        self.u1 += count;
    }

    /// `s[u(n_1) + ... + u(n_k)]` for the listed sizes (zeros ignored).
    pub fn add_s_sum(&mut self, sizes: &[usize]) {
        let nz: Vec<usize> = sizes.iter().copied().filter(|&n| n > 0).collect();
        for &n in &nz {
            if let Some(s) = Simple::su(n) {
                self.add_simple(s, 1);
            }
        }
        self.u1 += nz.len().saturating_sub(1);
    }

    pub fn merge(&mut self, other: &Structure) {
        for (s, c) in &other.simple {
            self.add_simple(*s, *c);
        }
        self.u1 += other.u1;
    }

    pub fn dim(&self) -> usize {
        self.simple.iter().map(|(s, c)| s.dim() * c).sum::<usize>() + self.u1
    }

    pub fn rank(&self) -> usize {
        self.simple.iter().map(|(s, c)| s.rank() * c).sum::<usize>() + self.u1
    }

    /// Parse strings like `"2 su(4) + 8 su(3) + 3 u(1)"` or
    /// `"su(6)+su(4)+2su(2)+u(1)"`; `u(n)` expands to `su(n) + u(1)`.
    pub fn parse(text: &str) -> Result<Structure> {
        let mut out = Structure::default();
        let t = text.trim();
        if t.is_empty() || t == "0" {
            return Ok(out);
        }
        for part in t.split('+') {
            let p: String = part.chars().filter(|c| !c.is_whitespace()).collect();
            let split = p.find(|c: char| !c.is_ascii_digit()).unwrap_or(p.len());
            let count: usize = if split == 0 { 1 } else { p[..split].parse().unwrap_or(1) };
            let rest = &p[split..];
            let (name, arg) = rest
                .strip_suffix(')')
                .and_then(|r| r.split_once('('))
                .ok_or_else(|| crate::Error::Input(format!("cannot parse term {part:?}")))?;
            let n: usize = arg
                .parse()
                .map_err(|_| crate::Error::Input(format!("bad size in {part:?}")))?;
            match name {
                "u" => out.add_u(n, count),
                "su" | "so" | "sp" => {
                    let s = match name {
                        "su" => Simple::su(n),
                        "so" => Simple::so(n),
                        _ => Simple::sp(n),
                    };
                    match s {
                        Some(s) => out.add_simple(s, count),
                        None => return input(format!("{name}({n}) is not simple")),
                    }
                }
                _ => return input(format!("unknown algebra {name}")),
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<(Simple, usize)> = self.simple.iter().map(|(s, c)| (*s, *c)).collect();
        items.sort_by(|a, b| b.0.dim().cmp(&a.0.dim()).then(a.0.cmp(&b.0)));
        let mut parts: Vec<String> = items
            .iter()
            .map(|(s, c)| if *c == 1 { s.to_string() } else { format!("{c} {s}") })
            .collect();
        if self.u1 > 0 {
            parts.push(if self.u1 == 1 { "u(1)".to_string() } else { format!("{} u(1)", self.u1) });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
