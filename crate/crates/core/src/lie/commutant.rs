//! Dimension of the commutant `{Y : [Y, M_k] = 0}` of a set of dense matrices.

use crate::error::{Error, Result};
use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C = Complex<f64>;

const SYLVESTER_MAX: usize = 32;

fn is_herm(m: &DMatrix<C>, sign: f64) -> bool {
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    (m - m.adjoint() * C::new(sign, 0.0)).iter().all(|z| z.norm() < 1e-10 * scale)
}

fn nullity(a: &DMatrix<C>) -> usize {
    if a.nrows() == 0 {
        return a.ncols();
    }
    let g = a.adjoint() * a;
    let ev = g.symmetric_eigenvalues();
    let max = ev.iter().cloned().fold(0.0, f64::max);
    ev.iter().filter(|&&x| x <= 1e-9 * max.max(1e-300)).count()
}

/// Commutant dimension of `mats` (all `n x n`).
///
/// For (skew-)hermitian input the unknowns are restricted to the blocks
/// commuting with a random hermitian combination, which keeps the linear
/// system small.
pub fn commutant_dimension(n: usize, mats: &[DMatrix<C>]) -> Result<usize> {
    if mats.iter().any(|m| m.nrows() != n || m.ncols() != n) {
        return Err(Error::Input(format!("commutant inputs must be {n}x{n}")));
    }
    if mats.is_empty() {
        return Ok(n * n);
    }
    let herm: Option<Vec<DMatrix<C>>> = mats
        .iter()
        .map(|m| {
            if is_herm(m, 1.0) {
                Some(m.clone())
            } else if is_herm(m, -1.0) {
                Some(m * C::i())
            } else {
                None
            }
        })
        .collect();
    match herm {
        Some(h) => Ok(reduced(n, &h)),
        None if n <= SYLVESTER_MAX => Ok(sylvester(n, mats)),
        None => Err(Error::TooLarge(format!(
            "non-normal commutant input with n = {n} > {SYLVESTER_MAX}"
        ))),
    }
}

fn sylvester(n: usize, mats: &[DMatrix<C>]) -> usize {
    // vec(YM - MY) = (M^T (x) 1 - 1 (x) M) vec(Y)
    let id = DMatrix::<C>::identity(n, n);
    let mut a = DMatrix::<C>::zeros(mats.len() * n * n, n * n);
    for (k, m) in mats.iter().enumerate() {
        let blk = m.transpose().kronecker(&id) - id.kronecker(m);
        a.view_mut((k * n * n, 0), (n * n, n * n)).copy_from(&blk);
    }
    nullity(&a)
}

fn reduced(n: usize, herm: &[DMatrix<C>]) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0_77);
    let mut h = DMatrix::<C>::zeros(n, n);
    for m in herm {
        h += m * C::new(rng.random_range(-1.0..1.0), 0.0);
    }
    let eig = nalgebra::SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let scale = eig.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max).max(1.0);
    let v = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    // eigenvalue clusters as index ranges
    let mut blocks = vec![0usize];
    for j in 1..n {
        let gap = eig.eigenvalues[order[j]] - eig.eigenvalues[order[j - 1]];
        if gap > 1e-8 * scale {
            blocks.push(j);
        }
    }
    blocks.push(n);
    let ranges: Vec<(usize, usize)> = blocks.windows(2).map(|w| (w[0], w[1])).collect();
    // unknowns: entries (a, b) with a, b in the same cluster
    let mut var = vec![usize::MAX; n * n];
    let mut nv = 0;
    for &(s, e) in &ranges {
        for a in s..e {
            for b in s..e {
                var[a * n + b] = nv;
                nv += 1;
            }
        }
    }
    let hat: Vec<DMatrix<C>> = herm.iter().map(|m| v.adjoint() * m * &v).collect();
    // [Y, M]_{ab} = sum_c Y_ac M_cb - M_ac Y_cb
    let mut rows: Vec<Vec<(usize, C)>> = Vec::new();
    for m in &hat {
        for a in 0..n {
            for b in 0..n {
                let mut row = Vec::new();
                for c in 0..n {
                    if var[a * n + c] != usize::MAX && m[(c, b)].norm() > 1e-14 {
                        row.push((var[a * n + c], m[(c, b)]));
                    }
                    if var[c * n + b] != usize::MAX && m[(a, c)].norm() > 1e-14 {
                        row.push((var[c * n + b], -m[(a, c)]));
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    // accumulate A^dagger A directly
    let mut g = DMatrix::<C>::zeros(nv, nv);
    for row in &rows {
        let mut dense: std::collections::BTreeMap<usize, C> = Default::default();
        for &(i, x) in row {
            *dense.entry(i).or_default() += x;
        }
        let ent: Vec<(usize, C)> = dense.into_iter().collect();
        for &(i, x) in &ent {
            for &(j, y) in &ent {
                g[(i, j)] += x.conj() * y;
            }
        }
    }
    let ev = g.symmetric_eigenvalues();
    let max = ev.iter().cloned().fold(0.0, f64::max);
    ev.iter().filter(|&&x| x <= 1e-9 * max.max(1e-300)).count()
}
