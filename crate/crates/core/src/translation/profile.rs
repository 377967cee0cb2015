//! Eigenvalue multiplicities of translation unitaries.

use crate::error::{Error, Result};
use crate::fock::dense::{dense_spin_translation, dense_translation, DenseOperator};
use crate::lie::Structure;
use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Spin,
    Fermion,
}

/// Multiplicities `r_l` (spin) or `r^_l` (fermion, per parity sector), `l = 0..size-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProfile {
    pub kind: Kind,
    pub size: usize,
    pub r: Vec<usize>,
}

const MAX_PROFILE: usize = 40;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(1/n) sum_k w(k) e^{-2 pi i k l / n}`, rounded with an integrality check.
fn fourier(n: usize, w: impl Fn(usize) -> f64) -> Result<Vec<usize>> {
    let ws: Vec<f64> = (0..n).map(&w).collect();
    (0..n)
        .map(|l| {
            let (mut re, mut im) = (0.0, 0.0);
            for (k, wk) in ws.iter().enumerate() {
                let th = -2.0 * PI * (k * l % n) as f64 / n as f64;
                re += wk * th.cos();
                im += wk * th.sin();
            }
            let (re, im) = (re / n as f64, im / n as f64);
            let r = re.round();
            let scale = ws[0].max(1.0);
            if (re - r).abs() > 1e-9 * scale || im.abs() > 1e-9 * scale || r < 0.0 {
                return Err(Error::Structure(format!("non-integral multiplicity {re}+{im}i at l={l}")));
            }
            Ok(r as usize)
        })
        .collect()
}

fn check(size: usize) -> Result<()> {
    if size == 0 || size > MAX_PROFILE {
        return Err(Error::Input(format!("size must be in 1..={MAX_PROFILE}, got {size}")));
    }
    Ok(())
}

/// `r_l = (1/L) sum_k 2^{gcd(L,k)} e^{-2 pi i k l / L}`.
pub fn spin_rank_profile(l: usize) -> Result<RankProfile> {
    check(l)?;
    let r = fourier(l, |k| 2f64.powi(gcd(l, k) as i32))?;
    Ok(RankProfile { kind: Kind::Spin, size: l, r })
}

/// `h(d,k) = 0` if `d / gcd(d,k)` is even, else `2^{gcd(d,k) - 1}`.
pub fn fermion_h(d: usize, k: usize) -> f64 {
    let g = gcd(d, k);
    if (d / g) % 2 == 0 {
        0.0
    } else {
        2f64.powi(g as i32 - 1)
    }
}

pub fn fermion_rank_profile(d: usize) -> Result<RankProfile> {
    check(d)?;
    let r = fourier(d, |k| fermion_h(d, k))?;
    Ok(RankProfile { kind: Kind::Fermion, size: d, r })
}

impl RankProfile {
    pub fn total(&self) -> usize {
        self.r.iter().sum()
    }

    /// `s[(+) u(r_l)]` for spins, two copies for fermions.
    pub fn predicted_structure(&self) -> Structure {
        let mut s = Structure::default();
        s.add_s_sum(&self.r);
        if self.kind == Kind::Fermion {
            s.add_s_sum(&self.r);
        }
        s
    }
}

/// `2 su(F+1) + (2p-2) su(F) + (2p-2) u(1)` with `F = (2^{p-1} - 1)/p`, `p` an odd prime.
pub fn prime_structure(p: usize) -> Structure {
    let f = ((1usize << (p - 1)) - 1) / p;
    let mut s = Structure::default();
    if let Some(x) = crate::lie::Simple::su(f + 1) {
        s.add_simple(x, 2);
    }
    if let Some(x) = crate::lie::Simple::su(f) {
        s.add_simple(x, 2 * p - 2);
    }
    s.u1 += 2 * p - 2;
    s
}

/// Multiplicities of the eigenvalues `e^{2 pi i l / n}` of a unitary with `U^n = 1`,
/// restricted to the coordinate subspace `sector`, by diagonalizing a
/// generic hermitian combination of `U` and `U^dag`.
pub fn dense_multiplicities(u: &DenseOperator, n: usize, sector: &[usize]) -> Result<Vec<usize>> {
    let m = sector.len();
    let sub = DMatrix::from_fn(m, m, |i, j| u[(sector[i], sector[j])]);
    let phi: f64 = 0.3183;
    let c = phi.tan();
    let h = (&sub + sub.adjoint()) + (&sub - sub.adjoint()) * Complex::new(0.0, -c);
    let ev = h.symmetric_eigenvalues();
    let mut mult = vec![0; n];
    for x in ev.iter() {
        // eigenvalue 2 cos(th) + 2c sin(th) for U = e^{i th}
        let (l, err) = (0..n)
            .map(|l| {
                let th = 2.0 * PI * l as f64 / n as f64;
                (l, (2.0 * th.cos() + 2.0 * c * th.sin() - x).abs())
            })
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if err > 1e-6 {
            return Err(Error::Structure(format!("eigenvalue {x} is not an n-th root of unity image")));
        }
        mult[l] += 1;
    }
    Ok(mult)
}

/// Dense multiplicities of `U_T` on `L` spins.
pub fn spin_dense_profile(l: usize) -> Result<Vec<usize>> {
    let u = dense_spin_translation(l)?;
    dense_multiplicities(&u, l, &(0..1 << l).collect::<Vec<_>>())
}

/// Dense multiplicities of the fermionic translation on the even and odd parity sectors.
pub fn fermion_dense_profiles(d: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let u = dense_translation(d)?;
    let even: Vec<usize> = (0..1usize << d).filter(|j| j.count_ones() % 2 == 0).collect();
    let odd: Vec<usize> = (0..1usize << d).filter(|j| j.count_ones() % 2 == 1).collect();
    Ok((dense_multiplicities(&u, d, &even)?, dense_multiplicities(&u, d, &odd)?))
}
