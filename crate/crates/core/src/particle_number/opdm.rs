//! One-particle density matrices `M_pq = <f_p^dag f_q>` of number-conserving quasifree states.

use crate::error::{input, Result};
use crate::quasifree::{number_conserving_covariance, CovarianceMatrix};
use nalgebra::DMatrix;
use num::complex::Complex64;

type C = Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct OneParticleDM {
    m: DMatrix<C>,
}

impl OneParticleDM {
    /// Validates hermiticity and eigenvalues in `[0, 1]` (tolerance `1e-9`).
    pub fn new(m: DMatrix<C>) -> Result<Self> {
        if !m.is_square() || m.nrows() == 0 {
            return input("one-particle density matrix must be square");
        }
        if (&m - m.adjoint()).iter().any(|z| z.norm() > 1e-10) {
            return input("one-particle density matrix is not hermitian");
        }
        let ev = m.clone().symmetric_eigenvalues();
        if ev.iter().any(|&x| !(-1e-9..=1.0 + 1e-9).contains(&x)) {
            return input("eigenvalues must lie in [0, 1]");
        }
        Ok(OneParticleDM { m })
    }

    /// Projection onto the span of the (orthonormalized) rows of `v`.
    pub fn from_orbitals(v: &DMatrix<C>) -> Result<Self> {
        let q = v.adjoint().qr().q();
        let m = (&q * q.adjoint()).transpose();
        Self::new((&m + m.adjoint()) * C::new(0.5, 0.0))
    }

    pub fn matrix(&self) -> &DMatrix<C> {
        &self.m
    }

    pub fn d(&self) -> usize {
        self.m.nrows()
    }

    /// Particle number `tr M`.
    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    /// `M^2 = M` with integral trace.
    pub fn is_pure(&self) -> bool {
        let sq = &self.m * &self.m - &self.m;
        sq.iter().all(|z| z.norm() < 1e-9) && (self.trace() - self.trace().round()).abs() < 1e-8
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.m.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn covariance(&self) -> Result<CovarianceMatrix> {
        number_conserving_covariance(&self.m)
    }
}

/// `U(t) = e^{-itA}` for hermitian `A`.
pub fn unitary(a: &DMatrix<C>, t: f64) -> Result<DMatrix<C>> {
    if !a.is_square() || (a - a.adjoint()).iter().any(|z| z.norm() > 1e-10) {
        return input("generator must be a hermitian matrix");
    }
    let e = a.clone().symmetric_eigen();
    let phases = DMatrix::from_diagonal(&e.eigenvalues.map(|x| C::from_polar(1.0, -t * x)));
    Ok(&e.eigenvectors * phases * e.eigenvectors.adjoint())
}

/// Heisenberg-picture evolution of `M_pq = <f_p^dag f_q>` under
/// `H = sum A_pq f_p^dag f_q`: `f_q -> sum_r U_qr f_r` with `U = e^{-itA}`, so
/// `M -> conj(U) M U^T`.
pub fn evolve_opdm(m: &OneParticleDM, a: &DMatrix<C>, t: f64) -> Result<OneParticleDM> {
    if a.nrows() != m.d() {
        return input("generator and density matrix sizes differ");
    }
    let u = unitary(a, t)?;
    let out = u.conjugate() * m.matrix() * u.transpose();
    OneParticleDM::new((&out + out.adjoint()) * C::new(0.5, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::jw::{annihilation, creation};
    use crate::fock::dense::dense_raw;
    use crate::quasifree::{quadratic_expectation, wick_expectation, Mat, QuadraticHam};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_herm(d: usize, rng: &mut impl Rng) -> DMatrix<C> {
        let x = DMatrix::from_fn(d, d, |_, _| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        (&x + x.adjoint()) * C::new(0.5, 0.0)
    }

    fn random_projection(d: usize, n: usize, rng: &mut impl Rng) -> OneParticleDM {
        let v = DMatrix::from_fn(n, d, |_, _| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        OneParticleDM::from_orbitals(&v).unwrap()
    }

    fn ham_of(a: &DMatrix<C>) -> QuadraticHam<f64> {
        let d = a.nrows();
        let re = Mat::from_fn(d, |p, q| if p <= q { a[(p, q)].re } else { a[(q, p)].re });
        let im = Mat::from_fn(d, |p, q| if p <= q { a[(p, q)].im } else { -a[(q, p)].im });
        QuadraticHam::new(re, im, Mat::zeros(d), Mat::zeros(d)).unwrap()
    }

    #[test]
    fn validation() {
        assert!(OneParticleDM::new(DMatrix::from_element(2, 2, C::new(1.0, 0.0))).is_err());
        assert!(OneParticleDM::new(DMatrix::from_diagonal_element(2, 2, C::new(0.5, 0.0))).is_ok());
        assert!(!OneParticleDM::new(DMatrix::from_diagonal_element(2, 2, C::new(0.5, 0.0))).unwrap().is_pure());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p = random_projection(5, 2, &mut rng);
        assert!(p.is_pure());
        assert!((p.trace() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn evolution_preserves_spectrum_and_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (d, n) in [(3usize, 1usize), (4, 2), (6, 3)] {
            let m = random_projection(d, n, &mut rng);
            let a = random_herm(d, &mut rng);
            assert!((evolve_opdm(&m, &a, 0.0).unwrap().matrix() - m.matrix()).iter().all(|z| z.norm() < 1e-12));
            let m2 = evolve_opdm(&m, &a, 0.8).unwrap();
            assert!(m2.is_pure());
            assert!((m2.trace() - n as f64).abs() < 1e-10);
            for (x, y) in m.eigenvalues().iter().zip(m2.eigenvalues()) {
                assert!((x - y).abs() < 1e-10);
            }
        }
        assert!(evolve_opdm(&random_projection(3, 1, &mut rng), &random_herm(4, &mut rng), 1.0).is_err());
    }

    #[test]
    fn dense_agreement_single_particle() {
        let d = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let c: Vec<C> = (0..d).map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let norm = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let c: Vec<C> = c.iter().map(|z| z / norm).collect();
        let dim = 1 << d;
        let mut vac = nalgebra::DVector::<C>::zeros(dim);
        vac[0] = C::new(1.0, 0.0);
        for p in 1..=d {
            assert!((dense_raw(&annihilation::<f64>(d, p)).unwrap() * &vac).norm() < 1e-14);
        }
        let mut psi = nalgebra::DVector::<C>::zeros(dim);
        for p in 0..d {
            psi += dense_raw(&creation::<f64>(d, p + 1)).unwrap() * &vac * c[p];
        }
        let m0 = OneParticleDM::new(DMatrix::from_fn(d, d, |p, q| c[p].conj() * c[q])).unwrap();
        let a = random_herm(d, &mut rng);
        let t = 0.9;
        let h = dense_raw(&ham_of(&a).operator()).unwrap();
        let e = h.symmetric_eigen();
        let u = &e.eigenvectors
            * DMatrix::from_diagonal(&e.eigenvalues.map(|x| C::from_polar(1.0, -t * x)))
            * e.eigenvectors.adjoint();
        let psi_t = u * psi;
        let m_dense = DMatrix::from_fn(d, d, |p, q| {
            let op = dense_raw(&creation::<f64>(d, p + 1).mul(&annihilation(d, q + 1))).unwrap();
            psi_t.dotc(&(op * &psi_t))
        });
        let m_t = evolve_opdm(&m0, &a, t).unwrap();
        assert!((m_t.matrix() - m_dense).iter().all(|z| z.norm() < 1e-10));
    }

    #[test]
    fn covariance_embedding() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d = 4;
        let m = random_projection(d, 2, &mut rng);
        let g = m.covariance().unwrap();
        assert!(crate::quasifree::is_pure(&g));
        // number expectations agree
        for p in 0..d {
            let mut h = QuadraticHam::<f64>::zero(d);
            h.a_re.set(p, p, 1.0);
            let n = quadratic_expectation(&h, &g).unwrap() + 0.5;
            assert!((n - m.matrix()[(p, p)].re).abs() < 1e-12);
        }
        // pairing expectations vanish: <f_p f_q> from the Majorana two-point function
        let mm = |a: usize, b: usize| wick_expectation(&g, &[a, b]).unwrap();
        for p in 1..=d {
            for q in 1..=d {
                let (a1, a2, b1, b2) = (2 * p - 1, 2 * p, 2 * q - 1, 2 * q);
                let i = C::new(0.0, 1.0);
                let ff = (mm(a1, b1) - i * mm(a1, b2) - i * mm(a2, b1) - mm(a2, b2)) * 0.25;
                let fdfd = (mm(a1, b1) + i * mm(a1, b2) + i * mm(a2, b1) - mm(a2, b2)) * 0.25;
                assert!(ff.norm() < 1e-12 && fdfd.norm() < 1e-12);
            }
        }
    }
}
