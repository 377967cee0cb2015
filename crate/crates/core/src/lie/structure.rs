//! Classification of closed operator spaces as compact reductive algebras.
//!
//! Center dimension and rank are computed exactly (modulo the prime
//! `2^61 - 1`) for exact spaces. The simple ideals are found numerically:
//! monomial coordinates are orthonormal for the Hilbert-Schmidt form, which
//! is ad-invariant, so `-ad_h^2` of a random `h` in the semisimple part is
//! symmetric and its 2-dimensional eigenspaces (root planes) each lie in a
//! single simple ideal. The ideal generated by a root plane is then grown
//! by Krylov iteration. Ideals are labelled by `(dim, rank)`, with root
//! lengths separating `so(2n+1)` from `sp(n)`.

use super::catalog::{candidates, Simple, Structure};
use super::linalg::{dot_sparse, FpMatrix};
use super::space::OperatorSpace;
use crate::algebra::monomial::Key;
use crate::algebra::operator::SparseOperator;
use crate::error::{Error, Result};
use crate::scalar::{Field, Fp};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

pub const DEFAULT_SEED: u64 = 0x5eed_1e;
const RANK_TRIALS: usize = 3;
const ROOT_TRIES: usize = 8;
const KRYLOV_REL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub k: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub dim: usize,
    pub rank: usize,
    pub center_dim: usize,
    pub blocks: Vec<Block>,
    pub structure: String,
    /// Always `"abstract"`: the decomposition is of the abstract algebra,
    /// not a statement about block-diagonal embedding.
    pub realization: String,
}

impl StructureReport {
    pub fn parsed(&self) -> Structure {
        Structure::parse(&self.structure).expect("report strings are well formed")
    }
}

/// Basis rows with pivot lookup; brackets are read off as coordinates.
struct Frame<G> {
    rows: Vec<SparseOperator<G>>,
    index: HashMap<Key, usize>,
}

impl<G: Field> Frame<G> {
    fn new(rows: Vec<SparseOperator<G>>, pivots: &[Key]) -> Self {
        let index = pivots.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        Frame { rows, index }
    }

    fn n(&self) -> usize {
        self.rows.len()
    }

    /// Column `j` holds the coordinates of `[x, e_j]`.
    fn ad_columns(&self, x: &SparseOperator<G>) -> Vec<Vec<(usize, G)>> {
        self.rows
            .iter()
            .map(|e| {
                let c = x.commutator_unchecked(e);
                c.terms()
                    .iter()
                    .filter_map(|(k, v)| self.index.get(k).map(|&i| (i, v.clone())))
                    .collect()
            })
            .collect()
    }

    fn element(&self, c: &[G]) -> SparseOperator<G> {
        let mut terms = Vec::new();
        for (row, ci) in self.rows.iter().zip(c) {
            if !ci.is_zero() {
                terms.extend(row.terms().iter().map(|(k, x)| (*k, x.mul(ci))));
            }
        }
        SparseOperator::from_terms(self.rows[0].ambient, terms)
    }
}

fn fp_ad(frame: &Frame<Fp>, x: &SparseOperator<Fp>) -> FpMatrix {
    let n = frame.n();
    let mut m = FpMatrix::zeros(n, n);
    for (j, col) in frame.ad_columns(x).into_iter().enumerate() {
        for (i, v) in col {
            m.set(i, j, v);
        }
    }
    m
}

/// Exact center dimension and rank modulo `p`.
fn exact_invariants(frame: &Frame<Fp>, rng: &mut ChaCha8Rng) -> (usize, usize) {
    let n = frame.n();
    let mut rank = usize::MAX;
    let mut stack = FpMatrix::zeros(RANK_TRIALS * n, n);
    for t in 0..RANK_TRIALS {
        let c: Vec<Fp> = (0..n).map(|_| Fp::from_i64(rng.random_range(-9..=9))).collect();
        let m = fp_ad(frame, &frame.element(&c));
        rank = rank.min(n - m.rank());
        for i in 0..n {
            for j in 0..n {
                stack.set(t * n + i, j, m.at(i, j));
            }
        }
    }
    (n - stack.rank(), rank)
}

/// Orthonormal-coordinate machinery for the numerical decomposition.
struct Numeric {
    frame: Frame<f64>,
    lt: DMatrix<f64>,
    lt_inv: DMatrix<f64>,
}

impl Numeric {
    fn new(frame: Frame<f64>) -> Result<Self> {
        let n = frame.n();
        let mut g = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = dot_sparse(frame.rows[i].terms(), frame.rows[j].terms());
                g[(i, j)] = v;
                g[(j, i)] = v;
            }
        }
        let chol = nalgebra::Cholesky::new(g)
            .ok_or_else(|| Error::Structure("Gram matrix not positive definite".into()))?;
        let lt = chol.l().transpose();
        let lt_inv = lt
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Structure("singular Gram factor".into()))?;
        Ok(Numeric { frame, lt, lt_inv })
    }

    fn n(&self) -> usize {
        self.frame.n()
    }

    /// Operator with orthonormal coordinates `y`.
    fn element(&self, y: &DVector<f64>) -> SparseOperator<f64> {
        let c = &self.lt_inv * y;
        self.frame.element(c.as_slice())
    }

    /// `ad_x` in orthonormal coordinates (antisymmetric).
    fn ad_hat(&self, x: &SparseOperator<f64>) -> DMatrix<f64> {
        let n = self.n();
        let mut a = DMatrix::zeros(n, n);
        for (j, col) in self.frame.ad_columns(x).into_iter().enumerate() {
            for (i, v) in col {
                a[(i, j)] = v;
            }
        }
        &self.lt * a * &self.lt_inv
    }
}

fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    // Box-Muller
    DVector::from_fn(n, |_, _| {
        let u: f64 = rng.random_range(1e-12..1.0);
        let v: f64 = rng.random();
        (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
    })
}

/// Orthonormalize `w` against `basis` (twice); returns it if it survives.
fn orth_push(basis: &mut Vec<DVector<f64>>, mut w: DVector<f64>, tol: f64) -> bool {
    for _ in 0..2 {
        for b in basis.iter() {
            let p = b.dot(&w);
            w.axpy(-p, b, 1.0);
        }
    }
    let nw = w.norm();
    if nw > tol {
        basis.push(w / nw);
        true
    } else {
        false
    }
}

/// Smallest invariant subspace containing `v`. New directions must exceed
/// `KRYLOV_REL` times the probe norm, so that leakage from an inexact seed
/// vector does not spread into neighbouring ideals.
fn krylov(v: &DVector<f64>, mats: &[DMatrix<f64>]) -> Vec<DVector<f64>> {
    let mut basis = Vec::new();
    orth_push(&mut basis, v.clone(), 1e-12);
    let tols: Vec<f64> = mats.iter().map(|m| KRYLOV_REL * m.norm()).collect();
    let mut i = 0;
    while i < basis.len() {
        for (m, &tol) in mats.iter().zip(&tols) {
            let w = m * &basis[i];
            orth_push(&mut basis, w, tol);
        }
        i += 1;
    }
    basis
}

fn proj_norm(basis: &[DVector<f64>], v: &DVector<f64>) -> f64 {
    basis.iter().map(|b| b.dot(v).powi(2)).sum::<f64>().sqrt()
}

struct Ideal {
    basis: Vec<DVector<f64>>,
    planes: Vec<(DVector<f64>, DVector<f64>)>,
}

/// Root planes of a random element: `(kernel vectors, planes)` or `None`
/// if eigenvalues of distinct planes are too close to separate reliably.
#[allow(clippy::type_complexity)]
fn root_planes(m: &DMatrix<f64>) -> Option<(Vec<DVector<f64>>, Vec<(DVector<f64>, DVector<f64>)>)> {
    let ns = m.nrows();
    let sym = m.transpose() * m;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..ns).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let scale = eig.eigenvalues.iter().cloned().fold(0.0, f64::max).max(1e-300);
    let col = |i: usize| eig.eigenvectors.column(i).into_owned();
    let mut kernel = Vec::new();
    let mut rest = Vec::new();
    for &i in &order {
        if eig.eigenvalues[i] < 1e-9 * scale {
            kernel.push(col(i));
        } else {
            rest.push(i);
        }
    }
    if rest.len() % 2 != 0 {
        return None;
    }
    let mut planes = Vec::new();
    for pair in rest.chunks(2) {
        let (a, b) = (eig.eigenvalues[pair[0]], eig.eigenvalues[pair[1]]);
        if (b - a).abs() > 1e-7 * scale {
            return None;
        }
        planes.push((col(pair[0]), col(pair[1])));
    }
    // neighbouring planes must be well separated
    for w in rest.chunks(2).collect::<Vec<_>>().windows(2) {
        let gap = eig.eigenvalues[w[1][0]] - eig.eigenvalues[w[0][1]];
        if gap < 1e-6 * scale {
            return None;
        }
    }
    Some((kernel, planes))
}

/// Classify a closed space.
pub fn structure_profile<F: Field>(space: &OperatorSpace<F>) -> Result<StructureReport> {
    structure_profile_seeded(space, DEFAULT_SEED)
}

pub fn structure_profile_seeded<F: Field>(space: &OperatorSpace<F>, seed: u64) -> Result<StructureReport> {
    if !space.is_known_closed() && !space.verify_closed() {
        return Err(Error::NotClosed);
    }
    let n = space.dim();
    if n == 0 {
        return Ok(StructureReport {
            dim: 0,
            rank: 0,
            center_dim: 0,
            blocks: vec![],
            structure: "0".into(),
            realization: "abstract".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = space.basis();

    let exact = if F::EXACT {
        let fp_rows: Vec<SparseOperator<Fp>> = rows
            .iter()
            .map(|r| r.map_field(|c| c.to_fp().expect("exact field maps to Fp")))
            .collect();
        Some(exact_invariants(&Frame::new(fp_rows, space.pivots()), &mut rng))
    } else {
        None
    };

    let num = Numeric::new(Frame::new(rows.iter().map(|r| r.to_f64()).collect(), space.pivots()))?;

    // center: common kernel of ad over random elements
    let probes: Vec<DMatrix<f64>> =
        (0..RANK_TRIALS).map(|_| num.ad_hat(&num.element(&gaussian(&mut rng, n)))).collect();
    let mut cas = DMatrix::zeros(n, n);
    for a in &probes {
        cas += a.transpose() * a;
    }
    let eig = SymmetricEigen::new(cas);
    let scale = eig.eigenvalues.iter().cloned().fold(0.0, f64::max).max(1e-300);
    let s_cols: Vec<usize> = (0..n).filter(|&i| eig.eigenvalues[i] >= 1e-9 * scale).collect();
    let center_float = n - s_cols.len();
    let center_dim = match exact {
        Some((c, _)) if c != center_float => {
            return Err(Error::Structure(format!(
                "center dimension mismatch: exact {c}, numerical {center_float}"
            )))
        }
        Some((c, _)) => c,
        None => center_float,
    };
    let ns = s_cols.len();
    let s_basis = DMatrix::from_fn(n, ns, |i, j| eig.eigenvectors[(i, s_cols[j])]);

    let mut structure = Structure { u1: center_dim, ..Default::default() };
    let mut blocks = Vec::new();
    if ns > 0 {
        let restrict = |a: &DMatrix<f64>| s_basis.transpose() * a * &s_basis;
        let probes_s: Vec<DMatrix<f64>> = probes.iter().map(restrict).collect();
        let mut last = Error::Structure("could not separate root planes".into());
        let mut split = None;
        for _ in 0..ROOT_TRIES {
            let y = &s_basis * gaussian(&mut rng, ns);
            let h = restrict(&num.ad_hat(&num.element(&y)));
            let Some((kernel, planes)) = root_planes(&h) else { continue };
            match label_ideals(&num, &s_basis, &probes_s, &kernel, planes) {
                Ok(l) => {
                    split = Some(l);
                    break;
                }
                Err(e) => last = e,
            }
        }
        let mut labelled = split.ok_or(last)?;
        labelled.sort_by(|a, b| b.dim().cmp(&a.dim()).then(a.cmp(b)));
        for s in labelled {
            structure.add_simple(s, 1);
            blocks.push(Block { k: s.dim(), label: s.to_string() });
        }
    }
    let rank = structure.rank();
    if let Some((_, r)) = exact {
        if r != rank {
            return Err(Error::Structure(format!("rank mismatch: exact {r}, decomposition {rank}")));
        }
    }
    if structure.dim() != n {
        return Err(Error::Structure(format!("decomposition has dim {}, space {n}", structure.dim())));
    }
    Ok(StructureReport {
        dim: n,
        rank,
        center_dim,
        blocks,
        structure: structure.to_string(),
        realization: "abstract".into(),
    })
}

/// Group root planes into simple ideals and label each one.
fn label_ideals(
    num: &Numeric,
    s_basis: &DMatrix<f64>,
    probes_s: &[DMatrix<f64>],
    kernel: &[DVector<f64>],
    planes: Vec<(DVector<f64>, DVector<f64>)>,
) -> Result<Vec<Simple>> {
    let ns = s_basis.ncols();
    let mut ideals: Vec<Ideal> = Vec::new();
    for (u, w) in planes {
        if let Some(id) = ideals.iter_mut().find(|id| proj_norm(&id.basis, &u) > 0.5) {
            id.planes.push((u, w));
            continue;
        }
        let basis = krylov(&u, probes_s);
        ideals.push(Ideal { basis, planes: vec![(u, w)] });
    }
    let total: usize = ideals.iter().map(|i| i.basis.len()).sum();
    if total != ns {
        return Err(Error::Structure(format!("simple ideals span {total} of {ns} semisimple dimensions")));
    }
    let mut labelled = Vec::new();
    for id in &ideals {
        let dim = id.basis.len();
        let rank = dim - 2 * id.planes.len();
        let cands = candidates(dim, rank);
        labelled.push(match cands.len() {
            0 => return Err(Error::Structure(format!("no catalog entry with dim {dim} and rank {rank}"))),
            1 => cands[0],
            _ => resolve_bc(num, s_basis, kernel, id, rank, &cands)?,
        });
    }
    Ok(labelled)
}

/// Distinguish `so(2r+1)` from `sp(r)` by counting long roots.
fn resolve_bc(
    num: &Numeric,
    s_basis: &DMatrix<f64>,
    kernel: &[DVector<f64>],
    id: &Ideal,
    rank: usize,
    cands: &[Simple],
) -> Result<Simple> {
    let ambiguous = || Error::Ambiguous(cands.iter().map(|c| c.to_string()).collect());
    // Cartan subalgebra of the ideal: projections of the kernel
    let mut cartan: Vec<DVector<f64>> = Vec::new();
    for k in kernel {
        let mut p = DVector::zeros(k.len());
        for b in &id.basis {
            p.axpy(b.dot(k), b, 1.0);
        }
        orth_push(&mut cartan, p, 1e-6);
    }
    if cartan.len() != rank {
        return Err(ambiguous());
    }
    let ads: Vec<DMatrix<f64>> = cartan
        .iter()
        .map(|t| s_basis.transpose() * num.ad_hat(&num.element(&(s_basis * t))) * s_basis)
        .collect();
    let lens: Vec<f64> = id
        .planes
        .iter()
        .map(|(u, w)| ads.iter().map(|a| u.dot(&(a * w)).powi(2)).sum())
        .collect();
    let max = lens.iter().cloned().fold(0.0, f64::max);
    let long = lens.iter().filter(|&&l| l > 0.75 * max).count();
    let short = lens.len() - long;
    let ratio = max / lens.iter().cloned().fold(f64::INFINITY, f64::min);
    if (ratio - 2.0).abs() > 1e-4 {
        return Err(ambiguous());
    }
    let r = rank;
    if long == r * (r - 1) && short == r {
        cands.iter().copied().find(|c| matches!(c, Simple::So(_))).ok_or_else(ambiguous)
    } else if long == r && short == r * (r - 1) {
        cands.iter().copied().find(|c| matches!(c, Simple::Sp(_))).ok_or_else(ambiguous)
    } else {
        Err(ambiguous())
    }
}
