//! Block-Fourier analysis of translation-invariant covariance matrices.
//!
//! For a doubly-cyclic `G` with `2 x 2` blocks `B_l = G[(1, l)]` (mode 1 against
//! mode `l`), the Fourier blocks are `g~(k) = -i sum_l e^{2 pi i k (l-1)/d} B_l`.
//! They are hermitian, `g~(d-k) = -g~(k)^T`, and a translation-invariant
//! orthogonal `O` acts blockwise as `g~(k) -> O^(k) g~(k) O^(k)^dag`. In terms
//! of the `ell` operators, `g~(k) = <ell^1> 1 + <ell^Y> X - <ell^Z> Y + <ell^X> Z`.

use super::ell::{ell_ham, kmax, Label};
use crate::error::{input, Error, Result};
use crate::quasifree::{ham_to_t, number_conserving_covariance, quadratic_expectation, CovarianceMatrix, Mat, QuadraticHam};
use nalgebra::{DMatrix, Matrix2};
use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

type C = Complex64;

const TI_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct FourierBlocks {
    pub d: usize,
    /// `g~(k)`, `k = 0 .. d-1`
    pub blocks: Vec<Matrix2<C>>,
}

fn phase(d: usize, k: usize, l: usize) -> C {
    C::from_polar(1.0, 2.0 * PI * ((k * l) % d) as f64 / d as f64)
}

/// `M[(2p + a, 2q + b)] = M[(2p + 2 + a, 2q + 2 + b)]` cyclically.
pub fn is_doubly_cyclic(m: &DMatrix<f64>) -> bool {
    let n = m.nrows();
    n % 2 == 0
        && m.is_square()
        && (0..n).all(|i| (0..n).all(|j| (m[(i, j)] - m[((i + 2) % n, (j + 2) % n)]).abs() < TI_TOL))
}

/// Fourier transform of the first block row, without the `-i` prefactor.
fn transform(m: &DMatrix<f64>) -> Vec<Matrix2<C>> {
    let d = m.nrows() / 2;
    (0..d)
        .map(|k| {
            let mut acc = Matrix2::<C>::zeros();
            for l in 0..d {
                let b = Matrix2::new(m[(0, 2 * l)], m[(0, 2 * l + 1)], m[(1, 2 * l)], m[(1, 2 * l + 1)]);
                acc += b.map(|x| C::new(x, 0.0)) * phase(d, k, l);
            }
            acc
        })
        .collect()
}

/// Doubly-cyclic real matrix from its transformed blocks.
fn untransform(blocks: &[Matrix2<C>]) -> Result<DMatrix<f64>> {
    let d = blocks.len();
    let mut first = Vec::with_capacity(d);
    let mut imag: f64 = 0.0;
    for l in 0..d {
        let mut acc = Matrix2::<C>::zeros();
        for (k, b) in blocks.iter().enumerate() {
            acc += b * phase(d, k, l).conj();
        }
        acc /= C::new(d as f64, 0.0);
        imag = acc.iter().map(|z| z.im.abs()).fold(imag, f64::max);
        first.push(acc.map(|z| z.re));
    }
    if imag > 1e-9 {
        return Err(Error::Numeric(format!("inverse block transform is not real (residual {imag:e})")));
    }
    let mut m = DMatrix::zeros(2 * d, 2 * d);
    for p in 0..d {
        for q in 0..d {
            let b = &first[(q + d - p) % d];
            for a in 0..2 {
                for c in 0..2 {
                    m[(2 * p + a, 2 * q + c)] = b[(a, c)];
                }
            }
        }
    }
    Ok(m)
}

pub fn fourier_blocks(g: &CovarianceMatrix) -> Result<FourierBlocks> {
    if !is_doubly_cyclic(g.matrix()) {
        return input("covariance matrix is not translation invariant");
    }
    let minus_i = C::new(0.0, -1.0);
    let blocks = transform(g.matrix()).into_iter().map(|b| b * minus_i).collect();
    Ok(FourierBlocks { d: g.d(), blocks })
}

pub fn inverse_fourier_blocks(f: &FourierBlocks) -> Result<CovarianceMatrix> {
    let i = C::new(0.0, 1.0);
    let raw: Vec<_> = f.blocks.iter().map(|b| b * i).collect();
    CovarianceMatrix::new(untransform(&raw)?)
}

/// `tr g~(k)` for `k = 0 ..= floor((d-1)/2)`; equals `2 <ell_k^1>` (zero at `k = 0`).
pub fn ti_orbit_invariants(g: &CovarianceMatrix) -> Result<Vec<f64>> {
    let f = fourier_blocks(g)?;
    Ok((0..=kmax(f.d)).map(|k| f.blocks[k].trace().re).collect())
}

/// `<ell_k^Q>` for `k = 0 ..= floor(d/2)`, ordered `[1, X, Y, Z]`.
pub fn ell_expectations(g: &CovarianceMatrix) -> Result<Vec<[f64; 4]>> {
    let d = g.d();
    (0..=d / 2)
        .map(|k| {
            let mut out = [0.0; 4];
            for (slot, q) in [Label::One, Label::X, Label::Y, Label::Z].into_iter().enumerate() {
                out[slot] = quadratic_expectation(&ell_ham(d, k, q)?, g)?;
            }
            Ok(out)
        })
        .collect()
}

/// Occupations of the modes every translation-invariant quadratic conserves:
/// `n_0`, and `n_{d/2}` for even `d`.
pub fn fixed_mode_occupations(g: &CovarianceMatrix) -> Result<Vec<f64>> {
    let d = g.d();
    let mut ks = vec![0];
    if d % 2 == 0 && d > 0 {
        ks.push(d / 2);
    }
    ks.into_iter().map(|k| Ok(quadratic_expectation(&ell_ham(d, k, Label::Z)?, g)? + 0.5)).collect()
}

fn sorted_eigen(m: &Matrix2<C>) -> (Matrix2<C>, [f64; 2]) {
    let h = (m + m.adjoint()) * C::new(0.5, 0.0);
    let e = h.symmetric_eigen();
    let mut idx = [0usize, 1];
    idx.sort_by(|&a, &b| e.eigenvalues[a].total_cmp(&e.eigenvalues[b]));
    let v = Matrix2::from_columns(&[e.eigenvectors.column(idx[0]), e.eigenvectors.column(idx[1])]);
    (v, [e.eigenvalues[idx[0]], e.eigenvalues[idx[1]]])
}

/// Translation-invariant `O` in the identity component with `G2 = O G1 O^T`, if
/// one exists. Non-edge blocks need equal spectra; edge blocks (`k = 0, d/2`)
/// are left fixed by every such `O` and must already agree.
pub fn connecting_block_rotation(g1: &CovarianceMatrix, g2: &CovarianceMatrix) -> Result<Option<DMatrix<f64>>> {
    if g1.d() != g2.d() {
        return input("covariance sizes differ");
    }
    let (f1, f2) = (fourier_blocks(g1)?, fourier_blocks(g2)?);
    let d = f1.d;
    let mut v = vec![Matrix2::<C>::identity(); d];
    for k in 0..d {
        let edge = k == 0 || 2 * k == d;
        if edge {
            if (f1.blocks[k] - f2.blocks[k]).camax() > 1e-8 {
                return Ok(None);
            }
            continue;
        }
        if k > d - k {
            v[k] = v[d - k].conjugate();
            continue;
        }
        let (e1, s1) = sorted_eigen(&f1.blocks[k]);
        let (e2, s2) = sorted_eigen(&f2.blocks[k]);
        if (s1[0] - s2[0]).abs() > 1e-8 || (s1[1] - s2[1]).abs() > 1e-8 {
            return Ok(None);
        }
        v[k] = e2 * e1.adjoint();
    }
    let o = untransform(&v)?;
    let moved = &o * g1.matrix() * o.transpose();
    if (&moved - g2.matrix()).camax() > 1e-7 {
        return Err(Error::Numeric("block rotation failed to reproduce the target".into()));
    }
    Ok(Some(o))
}

pub fn same_ti_orbit(g1: &CovarianceMatrix, g2: &CovarianceMatrix) -> Result<bool> {
    Ok(connecting_block_rotation(g1, g2)?.is_some())
}

/// Random cyclic `A` (hermitian) and `B` (antisymmetric) with entries in `[-1, 1]`.
pub fn random_ti_ham(d: usize, reflection_symmetric: bool, rng: &mut impl Rng) -> QuadraticHam<f64> {
    let mut h = QuadraticHam::<f64>::zero(d);
    let mut draw = || rng.random_range(-1.0..1.0);
    let mut alpha = vec![(0.0, 0.0); d];
    let mut beta = vec![(0.0, 0.0); d];
    for j in 0..=d / 2 {
        let pair = j != 0 && 2 * j != d;
        let a = (draw(), if pair && !reflection_symmetric { draw() } else { 0.0 });
        let b = if pair { (draw(), draw()) } else { (0.0, 0.0) };
        alpha[j] = a;
        beta[j] = b;
        if pair {
            alpha[d - j] = (a.0, -a.1);
            beta[d - j] = (-b.0, -b.1);
        }
    }
    let fill = |m: &mut Mat<f64>, f: &dyn Fn(usize) -> f64| {
        for p in 0..d {
            for q in 0..d {
                m.set(p, q, f((q + d - p) % d));
            }
        }
    };
    fill(&mut h.a_re, &|j| alpha[j].0);
    fill(&mut h.a_im, &|j| alpha[j].1);
    fill(&mut h.b_re, &|j| beta[j].0);
    fill(&mut h.b_im, &|j| beta[j].1);
    h
}

/// `T` of a random translation-invariant quadratic generator.
pub fn random_ti_generator(d: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ham_to_t(&random_ti_ham(d, false, &mut rng)).to_dmatrix()
}

/// Pure state `prod_{k in S} f~_k^dag |0>`.
pub fn fourier_occupation_covariance(d: usize, occupied: &[usize]) -> Result<CovarianceMatrix> {
    if occupied.iter().any(|&k| k >= d) {
        return input("Fourier index out of range");
    }
    let c = DMatrix::from_fn(d, d, |p, q| {
        occupied.iter().map(|&k| phase(d, ((q + d - p) % d) * k % d, 1)).sum::<C>() / d as f64
    });
    number_conserving_covariance(&c)
}

/// Random pure translation-invariant state: random Fourier occupations on the
/// non-edge modes, evolved by a random translation-invariant generator.
pub fn random_ti_pure_state(d: usize, seed: u64) -> Result<CovarianceMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7157_a7e5);
    let occupied: Vec<usize> = (1..d).filter(|k| 2 * k != d && rng.random_bool(0.5)).collect();
    let g = fourier_occupation_covariance(d, &occupied)?;
    let t = random_ti_generator(d, seed);
    crate::quasifree::evolve_covariance(&g, &t, rng.random_range(0.2..1.5))
}
