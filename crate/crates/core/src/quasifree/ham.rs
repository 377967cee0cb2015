//! Quadratic Hamiltonians and their real skew-symmetric `T` matrices.

use crate::algebra::jw::{annihilation, creation};
use crate::algebra::monomial::{maj_indices, maj_key, Ambient, Rep};
use crate::algebra::operator::{Operator, SparseOperator};
use crate::error::{input, Error, Result};
use crate::scalar::{Cx, Field};
use nalgebra::DMatrix;

/// Small dense matrix over a [`Field`], row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F> {
    pub n: usize,
    pub data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(n: usize) -> Self {
        Mat { n, data: vec![F::zero(); n * n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Mat { n, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.n, |i, j| self.at(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        Mat { n: self.n, data: self.data.iter().map(|x| x.neg()).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Mat { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = Mat::<F>::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.at(i, j).add(&a.mul(o.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.sub(&self.transpose()).is_zero()
    }

    pub fn is_skew(&self) -> bool {
        self.add(&self.transpose()).is_zero()
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.at(i, j).to_f64())
    }
}

/// Real skew-symmetric `2d x 2d` matrix of a quadratic generator.
pub type TMatrix<F> = Mat<F>;

/// `H = sum A_pq (f_p^dag f_q - delta/2) + 1/2 B_pq f_p^dag f_q^dag - 1/2 B*_pq f_p f_q`,
/// with complex `A`, `B` stored as real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticHam<F> {
    pub d: usize,
    pub a_re: Mat<F>,
    pub a_im: Mat<F>,
    pub b_re: Mat<F>,
    pub b_im: Mat<F>,
}

impl<F: Field> QuadraticHam<F> {
    /// Checks `A = A^dag` and `B = -B^T`.
    pub fn new(a_re: Mat<F>, a_im: Mat<F>, b_re: Mat<F>, b_im: Mat<F>) -> Result<Self> {
        let d = a_re.n;
        if [&a_im, &b_re, &b_im].iter().any(|m| m.n != d) {
            return input("A and B must both be d x d");
        }
        if !a_re.is_symmetric() || !a_im.is_skew() {
            return input("A is not hermitian");
        }
        if !b_re.is_skew() || !b_im.is_skew() {
            return input("B is not skew-symmetric");
        }
        Ok(QuadraticHam { d, a_re, a_im, b_re, b_im })
    }

    pub fn zero(d: usize) -> Self {
        QuadraticHam { d, a_re: Mat::zeros(d), a_im: Mat::zeros(d), b_re: Mat::zeros(d), b_im: Mat::zeros(d) }
    }

    /// The Hamiltonian as a hermitian Majorana operator.
    pub fn operator(&self) -> Operator<F> {
        let d = self.d;
        let amb = Ambient::majorana(d);
        let half = F::from_ratio(1, 2);
        let mut h = Operator::zero(amb);
        for p in 0..d {
            for q in 0..d {
                let a = Cx::new(self.a_re.at(p, q).clone(), self.a_im.at(p, q).clone());
                let b = Cx::new(self.b_re.at(p, q).clone(), self.b_im.at(p, q).clone());
                let (fp, fq) = (annihilation::<F>(d, p + 1), annihilation::<F>(d, q + 1));
                let (fpd, fqd) = (creation::<F>(d, p + 1), creation::<F>(d, q + 1));
                if !a.is_zero() {
                    let mut t = fpd.mul(&fq);
                    if p == q {
                        t = t.sub(&Operator::identity(amb).scale_real(&half));
                    }
                    h = h.add(&t.scale(&a));
                }
                if !b.is_zero() {
                    h = h.add(&fpd.mul(&fqd).scale(&b.scale(&half)));
                    h = h.sub(&fp.mul(&fq).scale(&b.conj().scale(&half)));
                }
            }
        }
        h
    }
}

/// `T` of a quadratic Hamiltonian, `-iH = sum T_kl (-1/2 m_k m_l)`.
///
/// With this normalization `H -> -2T` is the Lie homomorphism into `so(2d)`.
///
/// Block form `T = 1/2 [Re A (x) J + Re B (x) K - Im A (x) 1 + Im B (x) diag(-1, 1)]`
/// with `J = [[0,1],[-1,0]]` and `K = [[0,-1],[-1,0]]`.
pub fn ham_to_t<F: Field>(h: &QuadraticHam<F>) -> TMatrix<F> {
    let d = h.d;
    let half = F::from_ratio(1, 2);
    let mut t = Mat::zeros(2 * d);
    for p in 0..d {
        for q in 0..d {
            let (ar, ai) = (h.a_re.at(p, q), h.a_im.at(p, q));
            let (br, bi) = (h.b_re.at(p, q), h.b_im.at(p, q));
            let blk = [
                [ai.neg().sub(bi), ar.sub(br)],
                [ar.neg().sub(br), bi.sub(ai)],
            ];
            for (x, row) in blk.iter().enumerate() {
                for (y, v) in row.iter().enumerate() {
                    t.set(2 * p + x, 2 * q + y, v.mul(&half));
                }
            }
        }
    }
    t
}

/// Inverse of [`ham_to_t`].
pub fn t_to_ham<F: Field>(t: &TMatrix<F>) -> Result<QuadraticHam<F>> {
    if t.n % 2 != 0 || !t.is_skew() {
        return input("T must be skew-symmetric of even size");
    }
    let d = t.n / 2;
    let mut h = QuadraticHam::zero(d);
    for p in 0..d {
        for q in 0..d {
            let b = |x: usize, y: usize| t.at(2 * p + x, 2 * q + y).clone();
            h.a_re.set(p, q, b(0, 1).sub(&b(1, 0)));
            h.a_im.set(p, q, b(0, 0).add(&b(1, 1)).neg());
            h.b_re.set(p, q, b(0, 1).add(&b(1, 0)).neg());
            h.b_im.set(p, q, b(1, 1).sub(&b(0, 0)));
        }
    }
    Ok(h)
}

/// `T` of a quadratic skew-hermitian Majorana operator (`L(m_k m_l) -> (e_kl - e_lk)/2`).
pub fn operator_to_t<F: Field>(op: &SparseOperator<F>) -> Result<TMatrix<F>> {
    if op.ambient.rep != Rep::Majorana {
        return input("T matrices need a Majorana operator");
    }
    let d = op.ambient.n;
    let half = F::from_ratio(1, 2);
    let mut t = Mat::zeros(2 * d);
    for (k, c) in op.terms() {
        let ix = maj_indices(*k);
        if ix.len() != 2 {
            return Err(Error::Input(format!("operator term {ix:?} is not quadratic")));
        }
        let (a, b) = (ix[0] - 1, ix[1] - 1);
        t.set(a, b, c.mul(&half));
        t.set(b, a, c.mul(&half).neg());
    }
    Ok(t)
}

/// Quadratic operator with matrix `t`.
pub fn t_to_operator<F: Field>(t: &TMatrix<F>) -> Result<SparseOperator<F>> {
    if t.n % 2 != 0 || !t.is_skew() {
        return input("T must be skew-symmetric of even size");
    }
    let two = F::from_i64(2);
    let mut terms = Vec::new();
    for k in 0..t.n {
        for l in k + 1..t.n {
            if !t.at(k, l).is_zero() {
                terms.push((maj_key(&[k + 1, l + 1]), t.at(k, l).mul(&two)));
            }
        }
    }
    Ok(SparseOperator::from_terms(Ambient::majorana(t.n / 2), terms))
}

/// `i [h1, h2]` as a quadratic Hamiltonian (its `T` matrix is `2 [T1, T2]`).
pub fn ham_bracket<F: Field>(h1: &QuadraticHam<F>, h2: &QuadraticHam<F>) -> Result<QuadraticHam<F>> {
    if h1.d != h2.d {
        return input("Hamiltonians act on different numbers of modes");
    }
    let c = ham_to_t(h1).commutator(&ham_to_t(h2));
    t_to_ham(&c.add(&c))
}

/// Complex `d x d` matrix as real and imaginary parts.
pub type CMat<F> = (Mat<F>, Mat<F>);

fn conj_t<F: Field>(m: &CMat<F>) -> CMat<F> {
    (m.0.transpose(), m.1.transpose().neg())
}

/// `(C, D, E, F)` parameterization `H = sum C f f + D f f^dag + E f^dag f + F f^dag f^dag`
/// to `(A, B)`: `A = 2E`, `B = -2 C*`.
pub fn convert_cdef_to_ab<F: Field>(c: &CMat<F>, dm: &CMat<F>, e: &CMat<F>, f: &CMat<F>) -> Result<QuadraticHam<F>> {
    let eq = |x: &CMat<F>, y: &CMat<F>| x.0 == y.0 && x.1 == y.1;
    let neg_t = |x: &CMat<F>| (x.0.transpose().neg(), x.1.transpose().neg());
    if !eq(c, &conj_t(f)) {
        return input("C must equal F^dag");
    }
    if !eq(dm, &conj_t(dm)) || !eq(e, &conj_t(e)) {
        return input("D and E must be hermitian");
    }
    if !eq(c, &neg_t(c)) || !eq(f, &neg_t(f)) {
        return input("C and F must be skew-symmetric");
    }
    if !eq(dm, &neg_t(e)) {
        return input("D must equal -E^T");
    }
    let two = F::from_i64(2);
    let dbl = |m: &Mat<F>| Mat { n: m.n, data: m.data.iter().map(|x| x.mul(&two)).collect() };
    QuadraticHam::new(dbl(&e.0), dbl(&e.1), dbl(&c.0).neg(), dbl(&c.1))
}
