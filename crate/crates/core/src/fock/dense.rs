//! Dense matrices on the `2^n` dimensional Fock (or spin) space.
//!
//! Majorana operators act in the occupation basis `|n_1 .. n_d>`, ordered with
//! site 1 as the most significant bit. Pauli operators act in the
//! computational basis built by Kronecker products.

use super::perm::{apply_key, PhasedPerm};
use crate::algebra::operator::{Operator, SparseOperator};
use crate::error::{Error, Result};
use crate::scalar::{Cx, Field};
use nalgebra::DMatrix;
use num::complex::Complex64;

pub type DenseOperator = DMatrix<Complex64>;

/// Largest number of modes or sites accepted by the dense backend.
pub const MAX_DENSE: usize = 14;

pub(crate) fn check_size(n: usize) -> Result<()> {
    if n > MAX_DENSE {
        return Err(Error::TooLarge(format!("dense oracle limited to n <= {MAX_DENSE}, got {n}")));
    }
    Ok(())
}

pub(crate) fn ipow(k: u8) -> Complex64 {
    match k & 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Dense matrix of a raw operator.
pub fn dense_raw<F: Field>(op: &Operator<F>) -> Result<DenseOperator> {
    let amb = op.ambient;
    check_size(amb.n)?;
    let dim = amb.hilbert_dim();
    let mut m = DMatrix::zeros(dim, dim);
    for (key, c) in &op.terms {
        let c = c.to_c64();
        for j in 0..dim {
            let (k, i) = apply_key(amb.rep, amb.n, *key, j);
            m[(i, j)] += c * ipow(k);
        }
    }
    Ok(m)
}

/// Dense matrix of a skew-hermitian operator.
pub fn dense<F: Field>(op: &SparseOperator<F>) -> Result<DenseOperator> {
    dense_raw(&op.to_raw())
}

pub fn dense_perm(p: &PhasedPerm) -> DenseOperator {
    let n = p.dim();
    let mut m = DMatrix::zeros(n, n);
    for j in 0..n {
        m[(p.perm[j], j)] = ipow(p.phase[j]);
    }
    m
}

pub fn dense_translation(d: usize) -> Result<DenseOperator> {
    check_size(d)?;
    Ok(dense_perm(&super::perm::translation_perm(d)))
}

pub fn dense_reflection(d: usize) -> Result<DenseOperator> {
    check_size(d)?;
    Ok(dense_perm(&super::perm::reflection_perm(d)))
}

pub fn dense_spin_translation(l: usize) -> Result<DenseOperator> {
    check_size(l)?;
    Ok(dense_perm(&super::perm::spin_translation_perm(l)))
}

/// Max-abs entry.
pub fn max_abs(m: &DenseOperator) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Complex coefficient of the trace `tr(a)` as [`Cx`].
pub fn trace_cx(m: &DenseOperator) -> Cx<f64> {
    let t = m.trace();
    Cx::new(t.re, t.im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::jw::{annihilation, creation, jordan_wigner_raw, parity_operator, wrap};
    use crate::algebra::monomial::{maj_key, Ambient, Key};
    use crate::scalar::Q;
    use proptest::prelude::*;

    fn mono(d: usize, idx: &[usize]) -> DenseOperator {
        dense_raw(&Operator::<Q>::monomial(Ambient::majorana(d), maj_key(idx), Cx::one())).unwrap()
    }

    #[test]
    fn m1_at_d1_is_x() {
        let m = mono(1, &[1]);
        assert_eq!(m[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(m[(1, 0)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn clifford_relations_d4() {
        let d = 4;
        let id = DenseOperator::identity(16, 16);
        for k in 1..=2 * d {
            for l in 1..=2 * d {
                let a = mono(d, &[k]);
                let b = mono(d, &[l]);
                let anti = &a * &b + &b * &a;
                let want = if k == l { &id * Complex64::new(2.0, 0.0) } else { id.scale(0.0) };
                assert!(max_abs(&(anti - want)) < 1e-14);
            }
        }
    }

    #[test]
    fn parity_is_plus_one_on_even_states() {
        let p = dense_raw(&parity_operator::<Q>(2)).unwrap();
        for j in 0..4usize {
            let want = if j.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            assert!((p[(j, j)] - Complex64::new(want, 0.0)).norm() < 1e-14);
        }
        assert!(max_abs(&(p.clone() - DMatrix::from_diagonal(&p.diagonal()))) < 1e-14);
    }

    #[test]
    fn translation_shifts_creation_operators() {
        for d in 2..6 {
            let u = dense_translation(d).unwrap();
            let ud = u.adjoint();
            let p = dense_raw(&parity_operator::<Q>(d)).unwrap();
            assert!(max_abs(&(&u * &p - &p * &u)) < 1e-14);
            for l in 1..=d {
                let c = dense_raw(&creation::<Q>(d, l)).unwrap();
                let c1 = dense_raw(&creation::<Q>(d, wrap(d, l + 1))).unwrap();
                assert!(max_abs(&(&u * c * &ud - c1)) < 1e-14, "d={d} l={l}");
            }
        }
    }

    #[test]
    fn reflection_maps_creation_operators() {
        for d in 2..6 {
            let r = dense_reflection(d).unwrap();
            let rd = r.adjoint();
            for l in 1..=d {
                let c = dense_raw(&creation::<Q>(d, l)).unwrap();
                let cr = dense_raw(&creation::<Q>(d, d - l + 1)).unwrap();
                let lhs = &r * c * &rd;
                assert!(max_abs(&(lhs - cr * Complex64::new(0.0, 1.0))) < 1e-14, "d={d} l={l}");
            }
        }
    }

    #[test]
    fn vacuum_is_annihilated() {
        let d = 3;
        for p in 1..=d {
            let f = dense_raw(&annihilation::<Q>(d, p)).unwrap();
            assert!(f.column(0).iter().all(|z| z.norm() < 1e-15));
        }
    }

    #[test]
    fn jw_image_is_isospectral() {
        // the JW image and the Fock matrix are unitarily equivalent; compare traces of powers
        let d = 3;
        let amb = Ambient::majorana(d);
        let mut op = Operator::<Q>::zero(amb);
        op.add_term(maj_key(&[1, 4]), &Cx::new(Q::from_i64(0), Q::from_i64(1)));
        op.add_term(maj_key(&[2, 3, 5, 6]), &Cx::real(Q::from_i64(2)));
        op.add_term(maj_key(&[1, 2]), &Cx::new(Q::from_i64(0), Q::from_i64(3)));
        let a = dense_raw(&op).unwrap();
        let b = dense_raw(&jordan_wigner_raw(&op).unwrap()).unwrap();
        let (mut pa, mut pb) = (a.clone(), b.clone());
        for _ in 0..4 {
            assert!((pa.trace() - pb.trace()).norm() < 1e-10);
            pa = &pa * &a;
            pb = &pb * &b;
        }
    }

    fn random_op(d: usize, keys: &[(Key, i64, i64)]) -> Operator<Q> {
        let mut op = Operator::zero(Ambient::majorana(d));
        let full = (1u128 << (2 * d)) - 1;
        for &(k, re, im) in keys {
            op.add_term(k & full, &Cx::new(Q::from_i64(re), Q::from_i64(im)));
        }
        op
    }

    proptest! {
        #[test]
        fn dense_is_homomorphism(
            a in prop::collection::vec((any::<u128>(), -3i64..4, -3i64..4), 1..5),
            b in prop::collection::vec((any::<u128>(), -3i64..4, -3i64..4), 1..5),
        ) {
            let d = 3;
            let x = random_op(d, &a);
            let y = random_op(d, &b);
            let lhs = dense_raw(&x.mul(&y)).unwrap();
            let rhs = dense_raw(&x).unwrap() * dense_raw(&y).unwrap();
            prop_assert!(max_abs(&(lhs - rhs)) < 1e-12);
        }

        #[test]
        fn skew_operators_are_antihermitian(keys in prop::collection::vec((any::<u128>(), -3i64..4), 1..6)) {
            let d = 3;
            let full = (1u128 << (2 * d)) - 1;
            let op = SparseOperator::<Q>::from_terms(
                Ambient::majorana(d),
                keys.iter().map(|&(k, c)| (k & full, Q::from_i64(c))),
            );
            let m = dense(&op).unwrap();
            prop_assert!(max_abs(&(m.adjoint() + &m)) < 1e-12);
        }

        #[test]
        fn trace_with_matches_dense(keys in prop::collection::vec((any::<u128>(), -3i64..4, -3i64..4), 1..5), e in -4i64..5) {
            let d = 4;
            let op = random_op(d, &keys);
            let u = super::super::perm::translation_perm(d).pow(e);
            let exact = u.trace_with(&op).unwrap().to_c64();
            let dn = (dense_perm(&u) * dense_raw(&op).unwrap()).trace();
            prop_assert!((exact - dn).norm() < 1e-10);
        }
    }
}
