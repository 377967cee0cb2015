//! Dense recomputation of sparse-path results.

use super::dense::{dense, dense_raw, dense_translation, DenseOperator};
use crate::algebra::build_named_family;
use crate::algebra::operator::SparseOperator;
use crate::error::{input, Result};
use crate::lie::lie_closure;
use crate::scalar::Q;
use crate::translation::{fermion_rank_profile, witness_parts};
use nalgebra::DVector;
use num::complex::Complex64;
use serde::Serialize;

/// Size limit for crosschecks (`2^d x 2^d` matrices, closures of them).
pub const CROSSCHECK_MAX_D: usize = 7;

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub check: String,
    pub sparse: Vec<f64>,
    pub dense: Vec<f64>,
    pub max_diff: f64,
    pub pass: bool,
}

impl CrossCheck {
    fn new(check: String, sparse: Vec<f64>, dense: Vec<f64>, tol: f64) -> Self {
        let max_diff = if sparse.len() == dense.len() {
            sparse.iter().zip(&dense).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        CrossCheck { check, sparse, dense, max_diff, pass: max_diff <= tol }
    }
}

fn flatten(m: &DenseOperator) -> DVector<f64> {
    DVector::from_iterator(2 * m.len(), m.iter().flat_map(|z| [z.re, z.im]))
}

/// Real Lie closure of dense skew-hermitian matrices by Gram-Schmidt on the
/// Hilbert-Schmidt inner product.
pub fn dense_closure_dim(gens: &[DenseOperator]) -> usize {
    let mut mats: Vec<DenseOperator> = Vec::new();
    let mut ortho: Vec<DVector<f64>> = Vec::new();
    let mut insert = |m: DenseOperator, mats: &mut Vec<DenseOperator>| {
        let mut v = flatten(&m);
        let scale = v.norm();
        if scale < 1e-12 {
            return false;
        }
        for _ in 0..2 {
            for u in &ortho {
                let c = u.dot(&v);
                v.axpy(-c, u, 1.0);
            }
        }
        if v.norm() < 1e-9 * scale {
            return false;
        }
        ortho.push(v.normalize());
        mats.push(m);
        true
    };
    for g in gens {
        insert(g.clone(), &mut mats);
    }
    let mut done = 0;
    while done < mats.len() {
        let x = mats[done].clone();
        for j in 0..=done {
            let c = &x * &mats[j] - &mats[j] * &x;
            insert(c, &mut mats);
        }
        done += 1;
    }
    mats.len()
}

/// Closure dimension of a named family, sparse exact vs dense.
pub fn crosscheck_closure(family: &str, d: usize) -> Result<CrossCheck> {
    check_size(d)?;
    let gens: Vec<SparseOperator<Q>> = build_named_family(family, d)?;
    let sparse = lie_closure(&gens, None)?.dim();
    let dense_gens = gens.iter().map(dense).collect::<Result<Vec<_>>>()?;
    let dense_dim = dense_closure_dim(&dense_gens);
    Ok(CrossCheck::new(format!("closure {family} d={d}"), vec![sparse as f64], vec![dense_dim as f64], 0.0))
}

/// Analytic fermionic multiplicity profile vs dense translation spectra in both parity sectors.
pub fn crosscheck_rank_profile(d: usize) -> Result<CrossCheck> {
    check_size(d)?;
    let r = fermion_rank_profile(d)?.r;
    let (even, odd) = crate::translation::fermion_dense_profiles(d)?;
    let sparse: Vec<f64> = r.iter().chain(&r).map(|&x| x as f64).collect();
    let dense: Vec<f64> = even.iter().chain(&odd).map(|&x| x as f64).collect();
    Ok(CrossCheck::new(format!("rank profile d={d}"), sparse, dense, 0.0))
}

/// Witness trace, exact permutation path vs dense `tr(X U^k)`.
pub fn crosscheck_witness(d: usize) -> Result<CrossCheck> {
    check_size(d)?;
    let (_, _, powers, x) = witness_parts(d)?;
    let report = crate::translation::nn_witness(d)?;
    let u = dense_translation(d)?;
    let xd = dense_raw(&x)?;
    let n = u.nrows();
    let mut total = Complex64::new(0.0, 0.0);
    for (e, c) in powers {
        let base = if e < 0 { u.adjoint() } else { u.clone() };
        let mut p = DenseOperator::identity(n, n);
        for _ in 0..e.unsigned_abs() {
            p = &p * &base;
        }
        total += (&xd * p).trace() * c as f64;
    }
    Ok(CrossCheck::new(
        format!("witness d={d}"),
        vec![report.trace.re, report.trace.im],
        vec![total.re, total.im],
        1e-9,
    ))
}

fn check_size(d: usize) -> Result<()> {
    if d > CROSSCHECK_MAX_D {
        return input(format!("crosscheck limited to d <= {CROSSCHECK_MAX_D}"));
    }
    Ok(())
}

/// Dispatch by name: `closure:<family>`, `profile`, `witness`.
pub fn crosscheck(what: &str, d: usize) -> Result<CrossCheck> {
    match what.split_once(':') {
        Some(("closure", fam)) => crosscheck_closure(fam, d),
        _ => match what {
            "profile" => crosscheck_rank_profile(d),
            "witness" => crosscheck_witness(d),
            _ => input(format!("unknown crosscheck {what:?}")),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_w123_d3() {
        let c = crosscheck("closure:w123", 3).unwrap();
        assert!(c.pass, "{c:?}");
        assert_eq!(c.sparse, vec![15.0]);
        assert!(crosscheck("closure:w12", 3).unwrap().pass);
    }

    #[test]
    fn rank_profile_d4() {
        let c = crosscheck("profile", 4).unwrap();
        assert!(c.pass, "{c:?}");
    }

    #[test]
    fn witness_d6() {
        let c = crosscheck("witness", 6).unwrap();
        assert!(c.pass, "{c:?}");
        assert!(crosscheck("witness", 5).unwrap().pass);
    }

    #[test]
    fn errors() {
        assert!(crosscheck("bogus", 3).is_err());
        assert!(crosscheck("profile", 20).is_err());
    }
}
