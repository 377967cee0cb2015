//! Covariance matrices of quasifree states.
//!
//! `G_pq = i [tr(rho m_p m_q) - delta_pq]`; the Fock vacuum has
//! `G = (+) [[0, 1], [-1, 0]]`.

use super::ham::{ham_to_t, QuadraticHam};
use crate::error::{input, Result};
use nalgebra::{Complex, DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C = Complex<f64>;

const SKEW_TOL: f64 = 1e-10;

/// Validated real skew-symmetric `2d x 2d` matrix with singular values in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceMatrix(DMatrix<f64>);

impl CovarianceMatrix {
    pub fn new(g: DMatrix<f64>) -> Result<Self> {
        if !g.is_square() || g.nrows() % 2 != 0 || g.nrows() == 0 {
            return input("covariance matrix must be 2d x 2d");
        }
        if (&g + g.transpose()).amax() > SKEW_TOL {
            return input("covariance matrix is not skew-symmetric");
        }
        let top = singular_values(&g).first().copied().unwrap_or(0.0);
        if top > 1.0 + 1e-10 {
            return input(format!("covariance singular value {top} exceeds 1"));
        }
        Ok(CovarianceMatrix(g))
    }

    /// Fock vacuum `(+) [[0,1],[-1,0]]`.
    pub fn vacuum(d: usize) -> Self {
        let mut g = DMatrix::zeros(2 * d, 2 * d);
        for j in 0..d {
            g[(2 * j, 2 * j + 1)] = 1.0;
            g[(2 * j + 1, 2 * j)] = -1.0;
        }
        CovarianceMatrix(g)
    }

    pub fn d(&self) -> usize {
        self.0.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }
}

/// Singular values in descending order, each listed once per `2 x 2` block.
pub fn singular_values(g: &DMatrix<f64>) -> Vec<f64> {
    let mut sv: Vec<f64> = g.clone().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    // skew matrices have every singular value twice
    sv.chunks(2).map(|c| c.iter().sum::<f64>() / c.len() as f64).collect()
}

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    /// `nu_1 >= ... >= nu_d >= 0`.
    pub nu: Vec<f64>,
    /// `O` in `SO(2d)` with `O G O^T` block diagonal.
    pub o: DMatrix<f64>,
    /// Sign carried by the last block: `O G O^T` has `sign * nu_d` there.
    /// It is `-1` only when `Pf(G) < 0`, which no rotation can undo.
    pub last_sign: f64,
}

impl CanonicalForm {
    pub fn block_form(&self) -> DMatrix<f64> {
        let d = self.nu.len();
        let mut b = DMatrix::zeros(2 * d, 2 * d);
        for (j, &v) in self.nu.iter().enumerate() {
            let v = if j + 1 == d { v * self.last_sign } else { v };
            b[(2 * j, 2 * j + 1)] = v;
            b[(2 * j + 1, 2 * j)] = -v;
        }
        b
    }
}

fn orthonormalize_against(v: &mut nalgebra::DVector<f64>, basis: &[nalgebra::DVector<f64>]) -> f64 {
    for _ in 0..2 {
        for b in basis {
            let p = b.dot(v);
            v.axpy(-p, b, 1.0);
        }
    }
    let n = v.norm();
    if n > 0.0 {
        *v /= n;
    }
    n
}

/// Rotation to the `2 x 2` block normal form.
pub fn canonical_form(g: &CovarianceMatrix) -> CanonicalForm {
    let m = g.matrix();
    let n = m.nrows();
    let eig = SymmetricEigen::new(m.transpose() * m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    let mut rows: Vec<nalgebra::DVector<f64>> = Vec::with_capacity(n);
    let mut nu = Vec::new();
    for &i in &order {
        if rows.len() == n {
            break;
        }
        let mut a = eig.eigenvectors.column(i).into_owned();
        if orthonormalize_against(&mut a, &rows) < 0.5 {
            continue;
        }
        let ga = -(m * &a);
        let v = ga.norm();
        if v > 1e-12 {
            let mut b = ga / v;
            orthonormalize_against(&mut b, &rows);
            let v = a.dot(&(m * &b));
            rows.push(a);
            rows.push(b);
            nu.push(v);
        } else {
            rows.push(a);
        }
    }
    // pair the kernel directions
    let mut fixed: Vec<nalgebra::DVector<f64>> = rows[..2 * nu.len()].to_vec();
    let kernel: Vec<_> = rows[2 * nu.len()..].to_vec();
    for k in kernel {
        fixed.push(k);
        if fixed.len() % 2 == 0 {
            nu.push(0.0);
        }
    }
    let mut o = DMatrix::from_fn(n, n, |i, j| fixed[i][j]);
    let mut last_sign = 1.0;
    if o.determinant() < 0.0 {
        // flip the last row; a zero block absorbs it, otherwise the sign shows
        let r = n - 1;
        for j in 0..n {
            o[(r, j)] = -o[(r, j)];
        }
        if nu[nu.len() - 1] > 1e-12 {
            last_sign = -1.0;
        }
    }
    CanonicalForm { nu, o, last_sign }
}

/// `||G G^T - 1|| < 1e-9`.
pub fn is_pure(g: &CovarianceMatrix) -> bool {
    let m = g.matrix();
    let n = m.nrows();
    (m * m.transpose() - DMatrix::<f64>::identity(n, n)).norm() < 1e-9
}

/// Covariance after evolving for time `t` under the generator with matrix `T`.
///
/// With `-iH = sum T_kl (-1/2 m_k m_l)` the Majorana vector evolves as
/// `m -> e^{-2tT} m` in the Heisenberg picture, so `G -> O G O^T` with
/// `O = e^{-2tT}`.
pub fn evolve_covariance(g: &CovarianceMatrix, t_mat: &DMatrix<f64>, t: f64) -> Result<CovarianceMatrix> {
    if t_mat.shape() != g.matrix().shape() {
        return input("T and G sizes differ");
    }
    let o = (t_mat * (-2.0 * t)).exp();
    let mut out = &o * g.matrix() * o.transpose();
    // re-skew against rounding
    out = (&out - out.transpose()) * 0.5;
    Ok(CovarianceMatrix(out))
}

/// Singular-value orbit test (multiplicities included).
pub fn same_orbit(g1: &CovarianceMatrix, g2: &CovarianceMatrix) -> bool {
    let (a, b) = (singular_values(g1.matrix()), singular_values(g2.matrix()));
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-8)
}

/// As [`same_orbit`], additionally requiring equal Pfaffian signs when no
/// singular value vanishes (`SO(2d)` preserves the sign, and for pure
/// states it is the fermion parity).
pub fn same_orbit_connected(g1: &CovarianceMatrix, g2: &CovarianceMatrix) -> bool {
    if !same_orbit(g1, g2) {
        return false;
    }
    let nz = singular_values(g1.matrix()).last().is_some_and(|&v| v > 1e-8);
    !nz || canonical_form(g1).last_sign == canonical_form(g2).last_sign
}

/// `<H> = tr(T G) / 2` for the traceless quadratic `H` with matrix `T`.
pub fn quadratic_expectation(h: &QuadraticHam<f64>, g: &CovarianceMatrix) -> Result<f64> {
    let t = ham_to_t(h).to_dmatrix();
    if t.shape() != g.matrix().shape() {
        return input("Hamiltonian and covariance sizes differ");
    }
    Ok(0.5 * (t * g.matrix()).trace())
}

/// Covariance of the number-conserving quasifree state with `C_pq = <f_p^dag f_q>`.
pub fn number_conserving_covariance(c: &DMatrix<C>) -> Result<CovarianceMatrix> {
    let d = c.nrows();
    let mut g = DMatrix::zeros(2 * d, 2 * d);
    for p in 0..d {
        for q in 0..d {
            let z = c[(p, q)];
            let delta = if p == q { 1.0 } else { 0.0 };
            g[(2 * p, 2 * q)] = -2.0 * z.im;
            g[(2 * p + 1, 2 * q + 1)] = -2.0 * z.im;
            g[(2 * p, 2 * q + 1)] = delta - 2.0 * z.re;
            g[(2 * p + 1, 2 * q)] = -delta + 2.0 * z.re;
        }
    }
    CovarianceMatrix::new(g)
}

/// Random element of `SO(n)` as the exponential of a random skew matrix.
pub fn random_rotation(n: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    let mut a = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v: f64 = rng.random_range(-1.0..1.0) * 2.0;
            a[(i, j)] = v;
            a[(j, i)] = -v;
        }
    }
    a.exp()
}

/// `O G_0 O^T` for a random rotation `O`.
pub fn random_pure_covariance(d: usize, seed: u64) -> CovarianceMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let o = random_rotation(2 * d, &mut rng);
    let g = &o * CovarianceMatrix::vacuum(d).matrix() * o.transpose();
    CovarianceMatrix((&g - g.transpose()) * 0.5)
}

/// Pfaffian of a complex skew matrix.
pub fn pfaffian(m: &DMatrix<C>) -> C {
    let n = m.nrows();
    if n % 2 == 1 {
        return C::new(0.0, 0.0);
    }
    if n <= 8 {
        pf_expand(m, &(0..n).collect::<Vec<_>>())
    } else {
        pf_eliminate(m.clone())
    }
}

fn pf_expand(m: &DMatrix<C>, idx: &[usize]) -> C {
    if idx.is_empty() {
        return C::new(1.0, 0.0);
    }
    let first = idx[0];
    let mut acc = C::new(0.0, 0.0);
    for j in 1..idx.len() {
        let x = m[(first, idx[j])];
        if x == C::new(0.0, 0.0) {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().enumerate().filter(|&(k, _)| k + 1 != j).map(|(_, &v)| v).collect();
        let s = if j % 2 == 1 { 1.0 } else { -1.0 };
        acc += x * s * pf_expand(m, &rest);
    }
    acc
}

/// Skew Gaussian elimination with partial pivoting.
fn pf_eliminate(mut a: DMatrix<C>) -> C {
    let n = a.nrows();
    let mut pf = C::new(1.0, 0.0);
    let mut k = 0;
    while k + 1 < n {
        // pivot: largest entry in row k beyond k
        let (mut p, mut best) = (k + 1, 0.0);
        for j in k + 1..n {
            if a[(k, j)].norm() > best {
                best = a[(k, j)].norm();
                p = j;
            }
        }
        if best == 0.0 {
            return C::new(0.0, 0.0);
        }
        if p != k + 1 {
            a.swap_rows(k + 1, p);
            a.swap_columns(k + 1, p);
            pf = -pf;
        }
        let piv = a[(k, k + 1)];
        pf *= piv;
        for i in k + 2..n {
            let f = a[(k, i)] / piv;
            // row/col i -= f * row/col k+1
            for j in 0..n {
                let v = a[(k + 1, j)];
                a[(i, j)] -= f * v;
            }
            for j in 0..n {
                let v = a[(j, k + 1)];
                a[(j, i)] -= f * v;
            }
        }
        k += 2;
    }
    pf
}

/// `tr(rho m_{i_1} ... m_{i_n})` for the quasifree state with covariance `g`.
pub fn wick_expectation(g: &CovarianceMatrix, indices: &[usize]) -> Result<C> {
    let n2 = g.matrix().nrows();
    if indices.iter().any(|&i| i == 0 || i > n2) {
        return input(format!("Majorana index out of range 1..={n2}"));
    }
    let k = indices.len();
    if k % 2 == 1 {
        return Ok(C::new(0.0, 0.0));
    }
    let contract = |p: usize, q: usize| {
        if p == q {
            C::new(1.0, 0.0)
        } else {
            C::new(0.0, -g.matrix()[(p - 1, q - 1)])
        }
    };
    let mut m = DMatrix::<C>::zeros(k, k);
    for a in 0..k {
        for b in a + 1..k {
            let v = contract(indices[a], indices[b]);
            m[(a, b)] = v;
            m[(b, a)] = -v;
        }
    }
    Ok(pfaffian(&m))
}
