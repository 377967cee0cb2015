//! Controllability decisions for quadratic generators.

use super::covariance::CovarianceMatrix;
use super::ham::{operator_to_t, t_to_operator, Mat};
use crate::error::{input, Result};
use crate::lie::{commutant_dimension, lie_closure, structure_profile, OperatorSpace};
use crate::scalar::Field;
use nalgebra::{Complex, DMatrix};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TensorVerdict {
    Controllable,
    NotControllable,
    /// `d = 2`: `so(4)` is not simple and the criterion does not apply.
    Inapplicable,
}

fn check_sizes<F: Field>(gens: &[Mat<F>]) -> Result<usize> {
    let Some(first) = gens.first() else {
        return input("need at least one generator");
    };
    let n = first.n;
    if n % 2 != 0 || gens.iter().any(|t| t.n != n || !t.is_skew()) {
        return input("generators must be skew-symmetric of a common even size");
    }
    Ok(n / 2)
}

/// Joint commutant of `T (x) 1 + 1 (x) T`; `so(2d)` is generated iff it is 3 (d >= 3).
pub fn tensor_square_controllable<F: Field>(gens: &[Mat<F>]) -> Result<(usize, TensorVerdict)> {
    let d = check_sizes(gens)?;
    let n = 2 * d;
    let id = DMatrix::<Complex<f64>>::identity(n, n);
    let mats: Vec<_> = gens
        .iter()
        .map(|t| {
            let c = t.to_dmatrix().map(|x| Complex::new(x, 0.0));
            c.kronecker(&id) + id.kronecker(&c)
        })
        .collect();
    let dim = commutant_dimension(n * n, &mats)?;
    let verdict = if d == 2 {
        TensorVerdict::Inapplicable
    } else if dim == 3 {
        TensorVerdict::Controllable
    } else {
        TensorVerdict::NotControllable
    };
    Ok((dim, verdict))
}

/// Matrix Lie closure of `T` generators, via the quadratic operator picture.
pub fn matrix_closure<F: Field>(gens: &[Mat<F>]) -> Result<OperatorSpace<F>> {
    check_sizes(gens)?;
    let ops = gens.iter().map(t_to_operator).collect::<Result<Vec<_>>>()?;
    lie_closure(&ops, None)
}

#[derive(Clone, Debug, Serialize)]
pub struct PureVerdict {
    pub controllable: bool,
    pub tangent_dim: usize,
    /// `d (d - 1)`, the dimension of the pure quasifree state manifold.
    pub required: usize,
    pub closure_dim: usize,
    pub label: String,
}

/// `dim span{[X, G] : X in k}` at covariance `g`.
pub fn tangent_dimension<F: Field>(k: &OperatorSpace<F>, g: &CovarianceMatrix) -> Result<usize> {
    let vecs: Vec<DMatrix<f64>> = k
        .basis()
        .iter()
        .map(|x| {
            let t = operator_to_t(x)?.to_dmatrix();
            Ok(&t * g.matrix() - g.matrix() * &t)
        })
        .collect::<Result<_>>()?;
    if vecs.is_empty() {
        return Ok(0);
    }
    let n = g.matrix().len();
    let m = DMatrix::from_fn(n, vecs.len(), |i, j| vecs[j][i]);
    Ok(m.rank(1e-9 * m.amax().max(1e-300)))
}

/// Transitivity on pure quasifree states, decided by the tangent space at the vacuum.
pub fn quasifree_pure_controllable<F: Field>(gens: &[Mat<F>]) -> Result<PureVerdict> {
    let d = check_sizes(gens)?;
    let k = matrix_closure(gens)?;
    let tangent_dim = tangent_dimension(&k, &CovarianceMatrix::vacuum(d))?;
    let required = d * (d - 1);
    let label = structure_profile(&k).map(|r| r.structure).unwrap_or_else(|e| format!("unclassified ({e})"));
    Ok(PureVerdict { controllable: tangent_dim == required, tangent_dim, required, closure_dim: k.dim(), label })
}

/// `e_kl - e_lk` for all `k < l` within `indices` (one-based).
pub fn so_basis<F: Field>(d: usize, indices: &[usize]) -> Vec<Mat<F>> {
    let mut out = Vec::new();
    for (a, &k) in indices.iter().enumerate() {
        for &l in &indices[a + 1..] {
            let mut t = Mat::zeros(2 * d);
            t.set(k - 1, l - 1, F::one());
            t.set(l - 1, k - 1, F::one().neg());
            out.push(t);
        }
    }
    out
}
