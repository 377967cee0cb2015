//! Dense quasifree states and their covariance matrices.

use super::dense::{dense_raw, DenseOperator};
use crate::algebra::monomial::{maj_key, Ambient};
use crate::algebra::operator::Operator;
use crate::error::{Error, Result};
use crate::quasifree::{canonical_form, CovarianceMatrix};
use crate::scalar::Cx;
use nalgebra::DMatrix;
use num::complex::Complex64;

/// Largest mode count for dense state construction.
pub const MAX_STATE_MODES: usize = 6;

/// Dense Majorana operators `m_1 .. m_{2d}`.
pub fn dense_majoranas(d: usize) -> Result<Vec<DenseOperator>> {
    let amb = Ambient::majorana(d);
    (1..=2 * d)
        .map(|k| dense_raw(&Operator::<f64>::monomial(amb, maj_key(&[k]), Cx::one())))
        .collect()
}

/// `rho = 2^-d prod_j (1 + i nu_j m'_{2j-1} m'_{2j})` with `m' = O_G m`.
pub fn quasifree_state_dense(g: &CovarianceMatrix) -> Result<DenseOperator> {
    let d = g.d();
    if d > MAX_STATE_MODES {
        return Err(Error::TooLarge(format!("dense states limited to d <= {MAX_STATE_MODES}")));
    }
    let cf = canonical_form(g);
    let ms = dense_majoranas(d)?;
    let dim = 1usize << d;
    let rotated: Vec<DenseOperator> = (0..2 * d)
        .map(|a| {
            let mut acc = DMatrix::zeros(dim, dim);
            for (b, m) in ms.iter().enumerate() {
                acc += m * Complex64::new(cf.o[(a, b)], 0.0);
            }
            acc
        })
        .collect();
    let mut rho = DMatrix::<Complex64>::identity(dim, dim) / Complex64::new(dim as f64, 0.0);
    let id = DMatrix::<Complex64>::identity(dim, dim);
    for j in 0..d {
        let nu = if j + 1 == d { cf.nu[j] * cf.last_sign } else { cf.nu[j] };
        let f = &id + &rotated[2 * j] * &rotated[2 * j + 1] * Complex64::new(0.0, nu);
        rho = rho * f;
    }
    Ok(rho)
}

/// `G_pq = i [tr(rho m_p m_q) - delta_pq]` of a dense state.
pub fn covariance_of(rho: &DenseOperator) -> Result<DMatrix<f64>> {
    let dim = rho.nrows();
    let d = dim.trailing_zeros() as usize;
    if dim != 1 << d {
        return Err(Error::Input("state dimension is not a power of two".into()));
    }
    let ms = dense_majoranas(d)?;
    let mut g = DMatrix::zeros(2 * d, 2 * d);
    for p in 0..2 * d {
        for q in 0..2 * d {
            if p != q {
                let t = (rho * &ms[p] * &ms[q]).trace();
                g[(p, q)] = (Complex64::new(0.0, 1.0) * t).re;
            }
        }
    }
    Ok(g)
}

/// `tr(rho m_{i_1} ... m_{i_k})`.
pub fn dense_expectation(rho: &DenseOperator, indices: &[usize]) -> Result<Complex64> {
    let d = rho.nrows().trailing_zeros() as usize;
    let ms = dense_majoranas(d)?;
    let mut acc = rho.clone();
    for &i in indices {
        if i == 0 || i > 2 * d {
            return Err(Error::Input(format!("Majorana index {i} out of range")));
        }
        acc = acc * &ms[i - 1];
    }
    Ok(acc.trace())
}
