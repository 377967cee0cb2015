//! Transitivity of number-conserving quadratic controls on `n`-particle pure quasifree states.

use super::nc_algebra::iota_inverse;
use crate::error::{input, Result};
use crate::lie::structure_profile;
use crate::quasifree::{ham_to_t, matrix_closure, CMat, Mat};
use crate::scalar::{Field, Q};
use nalgebra::{Complex, DMatrix};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NcCase {
    /// traceless closure is `su(d)`
    #[serde(rename = "a")]
    A,
    /// `d` even, `n in {1, d-1}`, traceless closure is `sp(d/2)`
    #[serde(rename = "b")]
    B,
    #[serde(rename = "none")]
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct NcVerdict {
    pub closure_dim: usize,
    pub label: String,
    pub transitive: bool,
    pub case: NcCase,
}

fn is_hermitian<F: Field>(a: &CMat<F>) -> bool {
    a.0.is_symmetric() && a.1.is_skew()
}

/// `i (A - tr(A)/d)`.
fn traceless_skew(a: &CMat<Q>) -> CMat<Q> {
    let d = a.0.n;
    let shift = (0..d).fold(Q::zero(), |acc, p| acc.add(a.0.at(p, p))).div(&Q::from_i64(d as i64));
    let re = Mat::from_fn(d, |p, q| if p == q { a.0.at(p, q).sub(&shift) } else { a.0.at(p, q).clone() });
    (a.1.neg(), re)
}

fn closure_of(gens: &[CMat<Q>]) -> Result<(usize, String)> {
    let ts: Vec<Mat<Q>> =
        gens.iter().map(|x| iota_inverse(x).map(|h| ham_to_t(&h))).filter(|t| !matches!(t, Ok(t) if t.is_zero())).collect::<Result<_>>()?;
    if ts.is_empty() {
        return Ok((0, "0".into()));
    }
    let space = matrix_closure(&ts)?;
    let r = structure_profile(&space)?;
    Ok((r.dim, r.structure))
}

/// Whether a nondegenerate skew form `S` with `S A^T + A S = 0` exists for all `A`.
pub fn has_invariant_skew_form<F: Field>(gens: &[CMat<F>]) -> bool {
    let Some(first) = gens.first() else { return false };
    let d = first.0.n;
    if d % 2 != 0 {
        return false;
    }
    let c = |m: &CMat<F>| DMatrix::from_fn(d, d, |p, q| Complex::new(m.0.at(p, q).to_f64(), m.1.at(p, q).to_f64()));
    // unknowns: S_ij (i < j), complex
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    let s_of = |v: &[Complex<f64>]| {
        let mut s = DMatrix::zeros(d, d);
        for (k, &(i, j)) in pairs.iter().enumerate() {
            s[(i, j)] = v[k];
            s[(j, i)] = -v[k];
        }
        s
    };
    let mats: Vec<_> = gens.iter().map(c).collect();
    let nu = pairs.len();
    let mut rows = Vec::new();
    for k in 0..nu {
        let mut e = vec![Complex::new(0.0, 0.0); nu];
        e[k] = Complex::new(1.0, 0.0);
        let s = s_of(&e);
        let col: Vec<Complex<f64>> = mats.iter().flat_map(|a| (&s * a.transpose() + a * &s).iter().copied().collect::<Vec<_>>()).collect();
        rows.push(col);
    }
    let m = DMatrix::from_fn(rows[0].len(), nu, |r, k| rows[k][r]);
    let gram = m.adjoint() * &m;
    let eig = gram.symmetric_eigen();
    let scale = eig.eigenvalues.amax().max(1.0);
    let null: Vec<usize> = (0..nu).filter(|&i| eig.eigenvalues[i] < 1e-10 * scale).collect();
    if null.is_empty() {
        return false;
    }
    // generic element of the solution space
    let mut v = vec![Complex::new(0.0, 0.0); nu];
    for (w, &i) in null.iter().enumerate() {
        let coef = Complex::new(1.0 + 0.37 * w as f64, 0.21 * (w as f64 + 1.0));
        for k in 0..nu {
            v[k] += eig.eigenvectors[(k, i)] * coef;
        }
    }
    let s = s_of(&v);
    let sv = s.singular_values();
    sv.min() > 1e-8 * sv.max()
}

/// Decision for hermitian generators `A_k` (exact) and particle number `n`.
pub fn nc_pure_controllable(gens: &[CMat<Q>], n: usize) -> Result<NcVerdict> {
    let Some(first) = gens.first() else {
        return input("need at least one generator");
    };
    let d = first.0.n;
    if gens.iter().any(|a| a.0.n != d || !is_hermitian(a)) {
        return input("generators must be hermitian d x d matrices");
    }
    if n == 0 || n >= d {
        return input(format!("particle number must satisfy 1 <= n <= d-1 (n = {n}, d = {d})"));
    }
    let skew: Vec<CMat<Q>> = gens.iter().map(|a| (a.1.neg(), a.0.clone())).collect();
    let (closure_dim, label) = closure_of(&skew)?;
    let traceless: Vec<CMat<Q>> = gens.iter().map(traceless_skew).collect();
    let (dim0, label0) = closure_of(&traceless)?;
    let su = format!("su({d})");
    let case = if label0 == su && dim0 == d * d - 1 {
        NcCase::A
    } else if d % 2 == 0
        && (n == 1 || n == d - 1)
        && dim0 == d * (d + 1) / 2
        && has_invariant_skew_form(&traceless)
    {
        NcCase::B
    } else {
        NcCase::None
    };
    Ok(NcVerdict { closure_dim, label, transitive: case != NcCase::None, case })
}

/// Hermitian basis of `u(d)`.
pub fn u_basis(d: usize) -> Vec<CMat<Q>> {
    let mut out = Vec::new();
    for p in 0..d {
        for q in p..d {
            let mut re = Mat::zeros(d);
            re.set(p, q, Q::one());
            re.set(q, p, Q::one());
            out.push((re, Mat::zeros(d)));
            if p != q {
                let mut im = Mat::zeros(d);
                im.set(p, q, Q::one());
                im.set(q, p, Q::one().neg());
                out.push((Mat::zeros(d), im));
            }
        }
    }
    out
}

/// Hermitian `A` with `iA` spanning `sp(d/2)`, the skew-hermitian
/// `[[P, Q], [-conj Q, conj P]]` with `P` skew-hermitian and `Q` symmetric.
pub fn sp_basis(d: usize) -> Result<Vec<CMat<Q>>> {
    if d % 2 != 0 || d == 0 {
        return input("sp(d/2) needs even d");
    }
    let h = d / 2;
    let mut skews: Vec<CMat<Q>> = Vec::new();
    let one = Q::one();
    let mut push = |entries: Vec<(usize, usize, Q, Q)>| {
        let (mut re, mut im) = (Mat::<Q>::zeros(d), Mat::<Q>::zeros(d));
        for (i, j, r, c) in entries {
            re.set(i, j, re.at(i, j).add(&r));
            im.set(i, j, im.at(i, j).add(&c));
        }
        skews.push((re, im));
    };
    let (z, o, m) = (Q::zero(), one.clone(), one.neg());
    // P block: P and conj(P) in the lower-right
    for p in 0..h {
        for q in p..h {
            if p != q {
                push(vec![(p, q, o.clone(), z.clone()), (q, p, m.clone(), z.clone()), (h + p, h + q, o.clone(), z.clone()), (h + q, h + p, m.clone(), z.clone())]);
            }
            // i (e_pq + e_qp) and its conjugate -i (...)
            let mut e = vec![(p, q, z.clone(), o.clone()), (h + p, h + q, z.clone(), m.clone())];
            if p != q {
                e.push((q, p, z.clone(), o.clone()));
                e.push((h + q, h + p, z.clone(), m.clone()));
            }
            push(e);
        }
    }
    // Q block: symmetric Q upper-right, -conj(Q) lower-left
    for p in 0..h {
        for q in p..h {
            for (qr, qi) in [(o.clone(), z.clone()), (z.clone(), o.clone())] {
                let mut e = vec![(p, h + q, qr.clone(), qi.clone()), (h + p, q, qr.neg(), qi.clone())];
                if p != q {
                    e.push((q, h + p, qr.clone(), qi.clone()));
                    e.push((h + q, p, qr.neg(), qi.clone()));
                }
                push(e);
            }
        }
    }
    // A = -i X
    Ok(skews.into_iter().map(|(re, im)| (im, re.neg())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift(a: &CMat<Q>, c: i64) -> CMat<Q> {
        let d = a.0.n;
        (Mat::from_fn(d, |p, q| if p == q { a.0.at(p, q).add(&Q::from_i64(c)) } else { a.0.at(p, q).clone() }), a.1.clone())
    }

    #[test]
    fn full_unitary_generators() {
        for d in 2..=4 {
            for n in 1..d {
                let v = nc_pure_controllable(&u_basis(d), n).unwrap();
                assert!(v.transitive);
                assert_eq!(v.case, NcCase::A);
                assert_eq!(v.closure_dim, d * d);
            }
        }
    }

    #[test]
    fn symplectic_generators() {
        let sp = sp_basis(4).unwrap();
        assert_eq!(sp.len(), 10);
        assert!(sp.iter().all(is_hermitian));
        assert!(has_invariant_skew_form(&sp));
        let v1 = nc_pure_controllable(&sp, 1).unwrap();
        let v2 = nc_pure_controllable(&sp, 2).unwrap();
        let v3 = nc_pure_controllable(&sp, 3).unwrap();
        assert_eq!((v1.transitive, v2.transitive, v3.transitive), (true, false, true));
        assert_eq!(v1.case, NcCase::B);
        assert_eq!(v1.closure_dim, 10);
        let v = nc_pure_controllable(&sp_basis(6).unwrap(), 1).unwrap();
        assert!(v.transitive && v.closure_dim == 21);
    }

    #[test]
    fn smaller_algebras_fail() {
        // diagonal generators only
        let diag: Vec<CMat<Q>> = u_basis(3).into_iter().filter(|a| a.1.is_zero() && (0..3).any(|p| !a.0.at(p, p).is_zero())).collect();
        let v = nc_pure_controllable(&diag, 1).unwrap();
        assert!(!v.transitive);
        assert!(!has_invariant_skew_form(&u_basis(4)));
    }

    #[test]
    fn identity_shift_invariance() {
        let sp = sp_basis(4).unwrap();
        let shifted: Vec<CMat<Q>> = sp.iter().enumerate().map(|(i, a)| shift(a, i as i64 % 3)).collect();
        for n in 1..4 {
            assert_eq!(nc_pure_controllable(&sp, n).unwrap().transitive, nc_pure_controllable(&shifted, n).unwrap().transitive);
        }
        let v = nc_pure_controllable(&shifted, 1).unwrap();
        assert_eq!(v.label, crate::lie::Structure::parse("sp(2) + u(1)").unwrap().to_string());
    }

    #[test]
    fn input_checks() {
        assert!(nc_pure_controllable(&u_basis(3), 0).is_err());
        assert!(nc_pure_controllable(&u_basis(3), 3).is_err());
        assert!(nc_pure_controllable(&[], 1).is_err());
    }
}
