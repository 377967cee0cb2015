//! Spectral gap of translation-invariant quadratic Hamiltonians.
//!
//! In Fourier modes, a cyclic `H` splits into commuting pieces: the edge modes
//! `k = 0` (and `d/2`) with energy `lambda_k (n_k - 1/2)`, and the pairs
//! `(k, d-k)` with
//! `lambda_k (n_k - 1/2) + lambda_{-k} (n_{-k} - 1/2) + c_k f~_k^dag f~_{-k}^dag + h.c.`,
//! where `lambda_k = sum_j A_{1,1+j} e^{2 pi i j k/d}` and
//! `c_k = i sum_j B_{1,1+j} sin(2 pi j k/d)`.

use super::ell::is_cyclic;
use crate::error::{input, Result};
use crate::fock::dense::dense_raw;
use crate::quasifree::{Mat, QuadraticHam};
use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

type C = Complex64;

/// Excitations below this are treated as degeneracies.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Energy levels of each commuting Fourier piece: one entry per edge mode
/// (2 levels) and per pair `(k, d-k)` (4 levels).
pub fn ti_block_levels(h: &QuadraticHam<f64>) -> Result<Vec<Vec<f64>>> {
    if !is_cyclic(h) {
        return input("Hamiltonian is not translation invariant");
    }
    let d = h.d;
    let alpha = |j: usize| C::new(*h.a_re.at(0, j), *h.a_im.at(0, j));
    let beta = |j: usize| C::new(*h.b_re.at(0, j), *h.b_im.at(0, j));
    let lambda = |k: usize| {
        (0..d).map(|j| alpha(j) * C::from_polar(1.0, 2.0 * PI * ((j * k) % d) as f64 / d as f64)).sum::<C>().re
    };
    let mut out = Vec::new();
    for k in 0..=d / 2 {
        if k == 0 || 2 * k == d {
            let l = lambda(k);
            out.push(vec![-l / 2.0, l / 2.0]);
            continue;
        }
        let c: C = (0..d).map(|j| beta(j) * (2.0 * PI * ((j * k) % d) as f64 / d as f64).sin()).sum::<C>()
            * C::new(0.0, 1.0);
        let (lp, lm) = (lambda(k), lambda(d - k));
        let odd = (lp - lm) / 2.0;
        let even = ((lp + lm) / 2.0).hypot(c.norm());
        let mut lv = vec![-odd, odd, -even, even];
        lv.sort_by(f64::total_cmp);
        out.push(lv);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct GapInfo {
    pub ground_energy: f64,
    /// Smallest positive excitation energy (0 if the spectrum is flat).
    pub gap: f64,
    pub degenerate: bool,
}

pub fn ti_gap(h: &QuadraticHam<f64>) -> Result<GapInfo> {
    let levels = ti_block_levels(h)?;
    let mut ground_energy = 0.0;
    let mut gap = f64::INFINITY;
    let mut degenerate = false;
    for lv in &levels {
        ground_energy += lv[0];
        let tol = DEGENERACY_TOL * lv.iter().map(|x| x.abs()).fold(1.0, f64::max);
        for x in &lv[1..] {
            let e = x - lv[0];
            if e < tol {
                degenerate = true;
            } else {
                gap = gap.min(e);
            }
        }
    }
    Ok(GapInfo { ground_energy, gap: if gap.is_finite() { gap } else { 0.0 }, degenerate })
}

/// Smallest positive level spacing above the ground energy of the dense Fock matrix.
pub fn dense_gap(h: &QuadraticHam<f64>) -> Result<GapInfo> {
    let m = dense_raw(&h.operator())?;
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    let tol = 1e-9 * ev.iter().map(|x| x.abs()).fold(1.0, f64::max);
    let e0 = ev[0];
    let above = ev.iter().find(|&&e| e - e0 > tol);
    Ok(GapInfo {
        ground_energy: e0,
        gap: above.map_or(0.0, |e| e - e0),
        degenerate: ev.len() > 1 && ev[1] - e0 <= tol,
    })
}

/// `A_{p,p+r} = i a_r`, `B_{p,p+r} = b_r` for `r = 1 .. M-1` (cyclic), hermitian
/// and antisymmetric completions.
pub fn gap_model(d: usize, m: usize, a: &[f64], b: &[C]) -> Result<QuadraticHam<f64>> {
    if m < 2 || a.len() != m - 1 || b.len() != m - 1 {
        return input("need M >= 2 and M-1 coefficients a and b");
    }
    if d < 2 * m {
        return input(format!("need d >= 2M (d = {d}, M = {m})"));
    }
    let mut h = QuadraticHam::<f64>::zero(d);
    let put = |x: &mut Mat<f64>, p: usize, q: usize, v: f64| {
        x.set(p, q, v);
        x.set(q, p, -v);
    };
    for p in 0..d {
        for r in 1..m {
            let q = (p + r) % d;
            put(&mut h.a_im, p, q, a[r - 1]);
            put(&mut h.b_re, p, q, b[r - 1].re);
            put(&mut h.b_im, p, q, b[r - 1].im);
        }
    }
    Ok(h)
}

/// `8 pi (M-1)/d * sum (|a_p| + |b_p|)`.
pub fn gap_bound(d: usize, m: usize, a: &[f64], b: &[C]) -> f64 {
    let s: f64 = a.iter().map(|x| x.abs()).sum::<f64>() + b.iter().map(|z| z.norm()).sum::<f64>();
    8.0 * PI * (m as f64 - 1.0) / d as f64 * s
}

#[derive(Clone, Debug, Serialize)]
pub struct GapResult {
    pub d: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub gap: f64,
    pub bound: f64,
    pub degenerate: bool,
}

impl GapResult {
    pub fn within_bound(&self) -> bool {
        self.gap <= self.bound * (1.0 + 1e-12) + 1e-15
    }
}

pub fn gap_experiment(d: usize, m: usize, a: &[f64], b: &[C]) -> Result<GapResult> {
    let info = ti_gap(&gap_model(d, m, a, b)?)?;
    Ok(GapResult { d, m, gap: info.gap, bound: gap_bound(d, m, a, b), degenerate: info.degenerate })
}

/// Coefficients `a_r in [-1, 1]`, `b_r` with real and imaginary parts in `[-1, 1]`.
pub fn random_gap_coefficients(m: usize, seed: u64) -> (Vec<f64>, Vec<C>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = (1..m).map(|_| rng.random_range(-1.0..1.0)).collect();
    let b = (1..m).map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    (a, b)
}

/// One row per `(d, seed)`, with coefficients drawn from `seed`.
pub fn gap_scan(ds: &[usize], m: usize, seeds: std::ops::Range<u64>) -> Result<Vec<GapResult>> {
    let mut out = Vec::new();
    for seed in seeds {
        let (a, b) = random_gap_coefficients(m, seed);
        for &d in ds {
            out.push(gap_experiment(d, m, &a, &b)?);
        }
    }
    Ok(out)
}

pub fn gap_scan_csv(rows: &[GapResult]) -> String {
    let mut s = String::from("d,gap,bound,degenerate\n");
    for r in rows {
        s.push_str(&format!("{},{:e},{:e},{}\n", r.d, r.gap, r.bound, r.degenerate));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ti_quasifree::fourier::random_ti_ham;
    use proptest::prelude::*;

    fn all_levels(levels: &[Vec<f64>]) -> Vec<f64> {
        let mut acc = vec![0.0];
        for lv in levels {
            acc = acc.iter().flat_map(|s| lv.iter().map(move |x| s + x)).collect();
        }
        acc.sort_by(f64::total_cmp);
        acc
    }

    #[test]
    fn block_spectrum_matches_dense_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 2..=6 {
            for r in [false, true] {
                let h = random_ti_ham(d, r, &mut rng);
                let blocks = all_levels(&ti_block_levels(&h).unwrap());
                let m = dense_raw(&h.operator()).unwrap();
                let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
                ev.sort_by(f64::total_cmp);
                assert_eq!(ev.len(), blocks.len());
                for (x, y) in ev.iter().zip(&blocks) {
                    assert!((x - y).abs() < 1e-9, "d={d}: {x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn model_gap_matches_dense_at_six() {
        for seed in 0..5 {
            let (a, b) = random_gap_coefficients(2, seed);
            let h = gap_model(6, 2, &a, &b).unwrap();
            let (blk, dense) = (ti_gap(&h).unwrap(), dense_gap(&h).unwrap());
            assert!((blk.gap - dense.gap).abs() < 1e-8, "{blk:?} {dense:?}");
            assert!((blk.ground_energy - dense.ground_energy).abs() < 1e-8);
            assert!(blk.degenerate && dense.degenerate);
        }
    }

    #[test]
    fn zero_coefficients_are_gapless() {
        let r = gap_experiment(10, 3, &[0.0, 0.0], &[C::new(0.0, 0.0); 2]).unwrap();
        assert_eq!((r.gap, r.bound, r.degenerate), (0.0, 0.0, true));
    }

    #[test]
    fn input_checks() {
        assert!(gap_model(5, 3, &[1.0, 1.0], &[C::new(0.0, 0.0); 2]).is_err());
        assert!(gap_model(6, 3, &[1.0], &[C::new(0.0, 0.0); 2]).is_err());
        let mut h = QuadraticHam::<f64>::zero(3);
        h.a_re.set(0, 0, 1.0);
        assert!(ti_gap(&h).is_err());
    }

    #[test]
    fn edge_modes_have_zero_energy_in_the_model() {
        let (a, b) = random_gap_coefficients(4, 5);
        for d in [8usize, 9] {
            let lv = ti_block_levels(&gap_model(d, 4, &a, &b).unwrap()).unwrap();
            assert!(lv[0].iter().all(|x| x.abs() < 1e-12));
            if d % 2 == 0 {
                assert!(lv[d / 2].iter().all(|x| x.abs() < 1e-12));
            }
        }
    }

    #[test]
    fn gap_times_d_stays_bounded() {
        let (a, b) = random_gap_coefficients(3, 2);
        let scaled: Vec<f64> =
            [50usize, 100, 200, 400, 800].iter().map(|&d| gap_experiment(d, 3, &a, &b).unwrap().gap * d as f64).collect();
        let top = scaled.iter().cloned().fold(0.0, f64::max);
        let bound = gap_bound(1, 3, &a, &b);
        assert!(top <= bound, "{scaled:?}");
        assert!(scaled.windows(2).all(|w| (w[0] - w[1]).abs() < 0.2 * top));
    }

    #[test]
    fn csv_format() {
        let rows = gap_scan(&[8, 10], 2, 0..2).unwrap();
        let csv = gap_scan_csv(&rows);
        assert!(csv.starts_with("d,gap,bound,degenerate\n"));
        assert_eq!(csv.lines().count(), 5);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn gap_below_bound(m in 2usize..5, extra in 0usize..200, seed in 0u64..10_000) {
            let d = 2 * m + extra;
            let (a, b) = random_gap_coefficients(m, seed);
            let r = gap_experiment(d, m, &a, &b).unwrap();
            prop_assert!(r.within_bound(), "{r:?}");
        }
    }
}
