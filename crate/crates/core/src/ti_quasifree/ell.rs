//! Fourier-mode operators `ell_k^Q`, the ring Hamiltonians `h^Q_p`, and the
//! structure of translation-invariant quadratic algebras.

use crate::error::{input, Error, Result};
use crate::lie::{structure_profile, Simple, Structure, StructureReport};
use crate::quasifree::{ham_to_t, matrix_closure, Mat, QuadraticHam};
use crate::scalar::{Field, Q};
use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use std::f64::consts::PI;

/// Pauli-type label of an `ell` or `h` operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Label {
    One,
    X,
    Y,
    Z,
}

impl Label {
    pub fn parse(c: char) -> Result<Label> {
        match c {
            '1' => Ok(Label::One),
            'X' => Ok(Label::X),
            'Y' => Ok(Label::Y),
            'Z' => Ok(Label::Z),
            _ => input(format!("unknown label {c}")),
        }
    }
}

/// Largest non-edge Fourier index, `floor((d-1)/2)`.
pub fn kmax(d: usize) -> usize {
    (d.max(1) - 1) / 2
}

fn sym_from(n: usize, f: impl Fn(i64) -> f64) -> Mat<f64> {
    let mut m = Mat::zeros(n);
    for p in 0..n {
        for q in p..n {
            let v = f(p as i64 - q as i64);
            m.set(p, q, v);
            m.set(q, p, v);
        }
    }
    m
}

fn skew_from(n: usize, f: impl Fn(i64) -> f64) -> Mat<f64> {
    let mut m = Mat::zeros(n);
    for p in 0..n {
        for q in p + 1..n {
            let v = f(p as i64 - q as i64);
            m.set(p, q, v);
            m.set(q, p, -v);
        }
    }
    m
}

/// `A` of `n_k - 1/2`: `A_pq = e^{2 pi i (p-q) k/d} / d`.
fn occupation(d: usize, k: usize) -> (Mat<f64>, Mat<f64>) {
    let th = 2.0 * PI * k as f64 / d as f64;
    let inv = 1.0 / d as f64;
    (sym_from(d, |j| inv * (th * j as f64).cos()), skew_from(d, |j| inv * (th * j as f64).sin()))
}

/// `ell_k^Q` as a quadratic Hamiltonian; zero for the dummy edge cases.
///
/// `ell_k^1 = n_{d-k} - n_k`, `ell_k^Z = n_k + n_{d-k} - 1`,
/// `ell_k^X = -(F + F^dag)`, `ell_k^Y = i (F - F^dag)` with `F = f~_k^dag f~_{d-k}^dag`;
/// edge modes `k = 0, d/2` only carry `ell^Z = n_k - 1/2`.
pub fn ell_ham(d: usize, k: usize, q: Label) -> Result<QuadraticHam<f64>> {
    if d == 0 || k > d / 2 {
        return input(format!("ell index k = {k} out of range for d = {d}"));
    }
    let edge = k == 0 || 2 * k == d;
    let mut h = QuadraticHam::<f64>::zero(d);
    let th = 2.0 * PI * k as f64 / d as f64;
    let s = 2.0 / d as f64;
    match (q, edge) {
        (Label::Z, true) => (h.a_re, h.a_im) = occupation(d, k),
        (_, true) => {}
        (Label::Z, false) | (Label::One, false) => {
            let (r1, i1) = occupation(d, k);
            let (r2, i2) = occupation(d, d - k);
            if q == Label::Z {
                h.a_re = r1.add(&r2);
                h.a_im = i1.add(&i2);
            } else {
                h.a_re = r2.sub(&r1);
                h.a_im = i2.sub(&i1);
            }
        }
        (Label::X, false) => h.b_im = skew_from(d, |j| -s * (th * j as f64).sin()),
        (Label::Y, false) => h.b_re = skew_from(d, |j| -s * (th * j as f64).sin()),
    }
    Ok(h)
}

/// Ring Hamiltonian `h^Q_p` (cyclic indices), exact coefficients.
pub fn hq_ham<F: Field>(d: usize, q: Label, p: usize) -> Result<QuadraticHam<F>> {
    if d == 0 || p > d / 2 {
        return input(format!("range p = {p} out of range for d = {d}"));
    }
    let half = F::from_ratio(1, 2);
    let mut h = QuadraticHam::<F>::zero(d);
    let bump = |m: &mut Mat<F>, a: usize, b: usize, v: &F| {
        let x = m.at(a, b).add(v);
        m.set(a, b, x);
    };
    if q == Label::Z && p == 0 {
        for l in 0..d {
            h.a_re.set(l, l, F::one());
        }
        return Ok(h);
    }
    if p == 0 {
        return Ok(h);
    }
    for l in 0..d {
        let r = (l + p) % d;
        match q {
            Label::One => {
                bump(&mut h.a_im, l, r, &half);
                bump(&mut h.a_im, r, l, &half.neg());
            }
            Label::X => {
                bump(&mut h.b_im, l, r, &half);
                bump(&mut h.b_im, r, l, &half.neg());
            }
            Label::Y => {
                bump(&mut h.b_re, l, r, &half);
                bump(&mut h.b_re, r, l, &half.neg());
            }
            Label::Z => {
                bump(&mut h.a_re, l, r, &half);
                bump(&mut h.a_re, r, l, &half);
            }
        }
    }
    Ok(h)
}

/// `A_{n,m} = A_{n+1,m+1}` and the same for `B`.
pub fn is_cyclic<F: Field>(h: &QuadraticHam<F>) -> bool {
    let d = h.d;
    [&h.a_re, &h.a_im, &h.b_re, &h.b_im]
        .iter()
        .all(|m| (0..d).all(|p| (0..d).all(|q| m.at(p, q).sub(m.at((p + 1) % d, (q + 1) % d)).magnitude() < 1e-12)))
}

/// `h^Q_p` for any integer `p`, reduced with `h^Q_{p+d} = h^Q_p`,
/// `h^Z_{-p} = h^Z_p` and `h^Q_{-p} = -h^Q_p` otherwise. Returns `(sign, p)`
/// with `0 <= p <= d/2`, or `None` when the operator vanishes.
pub fn reduce_index(d: usize, q: Label, p: i64) -> Option<(i64, usize)> {
    let r = p.rem_euclid(d as i64) as usize;
    let (sign, r) = if 2 * r <= d { (1, r) } else { (if q == Label::Z { 1 } else { -1 }, d - r) };
    let vanishes = q != Label::Z && (r == 0 || 2 * r == d);
    (!vanishes).then_some((sign, r))
}

/// `[i h^Q1_a, i h^Q2_b] = i sum c h^Q_p`, as a list of `(c, Q, p)` with reduced `p`.
pub fn trans_com(d: usize, q1: Label, a: usize, q2: Label, b: usize) -> Vec<(i64, Label, usize)> {
    use Label::*;
    let (a, b) = (a as i64, b as i64);
    // [ih^X_a, ih^Y_b] = i(h^Z_{a+b} - h^Z_{a-b}), [ih^Y_a, ih^Z_b] = -i(h^X_{a+b} + h^X_{a-b}),
    // [ih^Z_a, ih^X_b] = -i(h^Y_{a+b} + h^Y_{b-a}); h^1 and equal labels commute.
    let (terms, flip): (Vec<(i64, Label, i64)>, i64) = match (q1, q2) {
        (X, Y) => (vec![(1, Z, a + b), (-1, Z, a - b)], 1),
        (Y, X) => (vec![(1, Z, b + a), (-1, Z, b - a)], -1),
        (Y, Z) => (vec![(-1, X, a + b), (-1, X, a - b)], 1),
        (Z, Y) => (vec![(-1, X, b + a), (-1, X, b - a)], -1),
        (Z, X) => (vec![(-1, Y, a + b), (-1, Y, b - a)], 1),
        (X, Z) => (vec![(-1, Y, b + a), (-1, Y, a - b)], -1),
        _ => (vec![], 1),
    };
    let mut out: Vec<(i64, Label, usize)> = Vec::new();
    for (c, q, p) in terms {
        if let Some((s, r)) = reduce_index(d, q, p) {
            match out.iter_mut().find(|t| t.1 == q && t.2 == r) {
                Some(t) => t.0 += c * s * flip,
                None => out.push((c * s * flip, q, r)),
            }
        }
    }
    out.retain(|t| t.0 != 0);
    out
}

/// Coefficients of `H = sum c1_k ell_k^1 + cx_k ell_k^X + cy_k ell_k^Y + sum cz_k ell_k^Z`.
#[derive(Clone, Debug, Serialize)]
pub struct EllDecomposition {
    pub d: usize,
    /// `k = 1 ..= floor((d-1)/2)`
    pub one: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// `k = 0 ..= floor(d/2)`
    pub z: Vec<f64>,
}

impl EllDecomposition {
    pub fn count(&self) -> usize {
        self.one.len() + self.x.len() + self.y.len() + self.z.len()
    }
}

fn vec_t(h: &QuadraticHam<f64>) -> DVector<f64> {
    DVector::from_vec(ham_to_t(h).data)
}

/// Decompose a translation-invariant quadratic Hamiltonian on the `ell` basis.
pub fn decompose_ti_quadratic(h: &QuadraticHam<f64>) -> Result<EllDecomposition> {
    let d = h.d;
    if !is_cyclic(h) {
        return input("A and B must be cyclic");
    }
    let km = kmax(d);
    let mut cols = Vec::new();
    for q in [Label::One, Label::X, Label::Y] {
        for k in 1..=km {
            cols.push(vec_t(&ell_ham(d, k, q)?));
        }
    }
    for k in 0..=d / 2 {
        cols.push(vec_t(&ell_ham(d, k, Label::Z)?));
    }
    let target = vec_t(h);
    let m = DMatrix::from_columns(&cols);
    // columns are orthogonal up to scale, so the normal equations are well conditioned
    let c = (m.transpose() * &m)
        .cholesky()
        .ok_or_else(|| Error::Numeric("ell basis is degenerate".into()))?
        .solve(&(m.transpose() * &target));
    let resid = (&m * &c - &target).amax();
    if resid > 1e-9 * target.amax().max(1.0) {
        return Err(Error::Numeric(format!("ell decomposition residual {resid:e}")));
    }
    let v: Vec<f64> = c.iter().copied().collect();
    Ok(EllDecomposition {
        d,
        one: v[0..km].to_vec(),
        x: v[km..2 * km].to_vec(),
        y: v[2 * km..3 * km].to_vec(),
        z: v[3 * km..].to_vec(),
    })
}

/// Generators of `q_d` (or `q_d^R`), optionally restricted to range `< m`.
pub fn qd_generators<F: Field>(d: usize, reflection_symmetric: bool, m: Option<usize>) -> Result<Vec<QuadraticHam<F>>> {
    if d < 2 {
        return input("need d >= 2");
    }
    let lim = m.map(|m| m.saturating_sub(1)).unwrap_or(d);
    let mut out = vec![hq_ham(d, Label::Z, 0)?];
    for p in 1..=(d / 2).min(lim) {
        out.push(hq_ham(d, Label::Z, p)?);
    }
    let mut labels = vec![Label::X, Label::Y];
    if !reflection_symmetric {
        labels.push(Label::One);
    }
    for q in labels {
        for p in 1..=kmax(d).min(lim) {
            out.push(hq_ham(d, q, p)?);
        }
    }
    Ok(out)
}

/// Predicted structure of `q_d`, `q_d^R`, or the range-bounded subalgebra.
pub fn qd_predicted(d: usize, reflection_symmetric: bool, m: Option<usize>) -> Structure {
    let mut s = Structure::default();
    let blocks = kmax(d);
    let edges = if d % 2 == 0 { 2 } else { 1 };
    if m == Some(1) {
        s.u1 = 1;
        return s;
    }
    s.add_simple(Simple::Su(2), blocks);
    s.u1 = edges;
    if !reflection_symmetric {
        // each block contributes its ell^1 when the range allows it
        s.u1 += match m {
            Some(m) => (m - 1).min(blocks),
            None => blocks,
        };
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct QdReport {
    pub d: usize,
    pub reflection_symmetric: bool,
    #[serde(rename = "M")]
    pub m: Option<usize>,
    pub predicted: String,
    pub computed: StructureReport,
    pub matches: bool,
}

/// Closure of the `T` matrices of [`qd_generators`], compared with [`qd_predicted`].
pub fn qd_structure<F: Field>(d: usize, reflection_symmetric: bool, m: Option<usize>) -> Result<QdReport> {
    let gens = qd_generators::<F>(d, reflection_symmetric, m)?;
    let ts: Vec<Mat<F>> = gens.iter().map(ham_to_t).collect();
    let space = matrix_closure(&ts)?;
    let computed = structure_profile(&space)?;
    let predicted = qd_predicted(d, reflection_symmetric, m).to_string();
    let matches = computed.structure == predicted;
    Ok(QdReport { d, reflection_symmetric, m, predicted, computed, matches })
}

/// Whether `h^Z_0` and `a1 h^Z_1 + a2 h^X_1 + a3 h^Y_1` generate `q_d^R`.
pub fn kraus_generation_check(d: usize, alpha: [f64; 3]) -> Result<bool> {
    if d < 3 {
        return input("need d >= 3");
    }
    let a: Vec<Q> = alpha.iter().map(|&x| Q::from_f64(x)).collect();
    let mix = ham_to_t(&hq_ham::<Q>(d, Label::Z, 1)?)
        .to_scaled(&a[0])
        .add(&ham_to_t(&hq_ham::<Q>(d, Label::X, 1)?).to_scaled(&a[1]))
        .add(&ham_to_t(&hq_ham::<Q>(d, Label::Y, 1)?).to_scaled(&a[2]));
    let z0 = ham_to_t(&hq_ham::<Q>(d, Label::Z, 0)?);
    let gens: Vec<Mat<Q>> = if mix.is_zero() { vec![z0] } else { vec![z0, mix] };
    let got = matrix_closure(&gens)?;
    let full: Vec<Mat<Q>> = qd_generators::<Q>(d, true, None)?.iter().map(ham_to_t).collect();
    let full = matrix_closure(&full)?;
    Ok(got.dim() == full.dim() && got.basis().iter().all(|b| full.contains(b)))
}

trait Scaled<F> {
    fn to_scaled(&self, s: &F) -> Self;
}

impl<F: Field> Scaled<F> for Mat<F> {
    fn to_scaled(&self, s: &F) -> Self {
        Mat { n: self.n, data: self.data.iter().map(|x| x.mul(s)).collect() }
    }
}
