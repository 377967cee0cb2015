//! Sparse reduced row echelon form over a [`Field`], plus small dense helpers.

use crate::algebra::operator::canonicalize;
use crate::scalar::{Field, Fp};
use std::collections::HashMap;
use std::hash::Hash;

/// Relative residual below which a float vector counts as dependent.
pub const FLOAT_RANK_TOL: f64 = 1e-9;
/// Relative size below which float entries are dropped after elimination.
const FLOAT_PRUNE: f64 = 1e-13;

pub type SparseVec<K, F> = Vec<(K, F)>;

fn max_mag<K, F: Field>(v: &[(K, F)]) -> f64 {
    v.iter().map(|(_, c)| c.magnitude()).fold(0.0, f64::max)
}

fn prune<K, F: Field>(v: &mut SparseVec<K, F>, scale: f64) {
    if !F::EXACT {
        let cut = FLOAT_PRUNE * scale;
        v.retain(|(_, c)| c.magnitude() > cut);
    }
}

/// `a + s * b` for sorted sparse vectors.
pub fn axpy_sparse<K: Ord + Copy, F: Field>(a: &[(K, F)], s: &F, b: &[(K, F)]) -> SparseVec<K, F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, s.mul(&b[j].1)));
            j += 1;
        } else {
            let mut c = a[i].1.clone();
            c.add_assign(&s.mul(&b[j].1));
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sparse dot product of sorted vectors.
pub fn dot_sparse<K: Ord + Copy, F: Field>(a: &[(K, F)], b: &[(K, F)]) -> F {
    let mut acc = F::zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc.add_assign(&a[i].1.mul(&b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Reduced row echelon form of sparse vectors with unit pivots.
///
/// Every pivot key occurs in exactly one row, so the coordinates of a vector
/// in the row space are its coefficients at the pivot keys. Optionally each
/// row tracks the combination of inserted vectors it came from, which turns
/// insertion into a null-space solver.
#[derive(Clone, Debug)]
pub struct Echelon<K, F> {
    rows: Vec<SparseVec<K, F>>,
    pivots: Vec<K>,
    index: HashMap<K, usize>,
    combos: Option<Vec<SparseVec<usize, F>>>,
}

impl<K: Ord + Copy + Hash, F: Field> Default for Echelon<K, F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Copy + Hash, F: Field> Echelon<K, F> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: Vec::new(), index: HashMap::new(), combos: None }
    }

    pub fn tracked() -> Self {
        Echelon { combos: Some(Vec::new()), ..Self::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<K, F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[K] {
        &self.pivots
    }

    /// `(row, coefficient)` pairs of `v` at pivot keys.
    pub fn coords(&self, v: &[(K, F)]) -> Vec<(usize, F)> {
        let mut out: Vec<(usize, F)> = v
            .iter()
            .filter_map(|(k, c)| self.index.get(k).map(|&r| (r, c.clone())))
            .collect();
        out.sort_unstable_by_key(|(r, _)| *r);
        out
    }

    /// Residual and coordinates of `v` against the row space.
    pub fn reduce_with_coords(&self, v: &[(K, F)]) -> (SparseVec<K, F>, Vec<(usize, F)>) {
        let co = self.coords(v);
        if co.is_empty() {
            return (v.to_vec(), co);
        }
        let mut acc: SparseVec<K, F> = v.to_vec();
        for (r, c) in &co {
            let nc = c.neg();
            acc.extend(self.rows[*r].iter().map(|(k, x)| (*k, x.mul(&nc))));
        }
        canonicalize(&mut acc);
        prune(&mut acc, max_mag(v));
        (acc, co)
    }

    pub fn reduce(&self, v: &[(K, F)]) -> SparseVec<K, F> {
        self.reduce_with_coords(v).0
    }

    fn is_negligible(residual: &[(K, F)], original: &[(K, F)]) -> bool {
        if residual.is_empty() {
            return true;
        }
        if F::EXACT {
            return false;
        }
        let n2 = |v: &[(K, F)]| v.iter().map(|(_, c)| c.to_f64().powi(2)).sum::<f64>();
        n2(residual).sqrt() < FLOAT_RANK_TOL * n2(original).sqrt()
    }

    pub fn contains(&self, v: &[(K, F)]) -> bool {
        Self::is_negligible(&self.reduce(v), v)
    }

    /// Insert `v`; returns the residual if it was independent.
    pub fn insert(&mut self, v: &[(K, F)]) -> Option<SparseVec<K, F>> {
        self.insert_tracked(v, None).ok()
    }

    /// Insert `v` carrying the combination label `id` (tracked mode).
    ///
    /// `Ok(residual)` if independent, `Err(combination)` with the vanishing
    /// combination of tracked inputs otherwise (empty when untracked).
    pub fn insert_tracked(
        &mut self,
        v: &[(K, F)],
        id: Option<usize>,
    ) -> Result<SparseVec<K, F>, SparseVec<usize, F>> {
        let (res, co) = self.reduce_with_coords(v);
        let combo = self.combos.as_ref().map(|combos| {
            let mut cb: SparseVec<usize, F> = id.map(|i| vec![(i, F::one())]).unwrap_or_default();
            for (r, c) in &co {
                let nc = c.neg();
                cb.extend(combos[*r].iter().map(|(k, x)| (*k, x.mul(&nc))));
            }
            canonicalize(&mut cb);
            cb
        });
        if Self::is_negligible(&res, v) {
            return Err(combo.unwrap_or_default());
        }
        // pivot: first key if exact, largest magnitude if float
        let pi = if F::EXACT {
            0
        } else {
            let mut best = 0;
            for (i, (_, c)) in res.iter().enumerate() {
                if c.magnitude() > res[best].1.magnitude() {
                    best = i;
                }
            }
            best
        };
        let (pk, pc) = res[pi].clone();
        let inv = F::one().div(&pc);
        let mut row: SparseVec<K, F> = res.iter().map(|(k, c)| (*k, c.mul(&inv))).collect();
        row[pi].1 = F::one();
        let mut combo = combo.map(|cb| cb.iter().map(|(k, c)| (*k, c.mul(&inv))).collect::<Vec<_>>());
        if !F::EXACT {
            let scale = max_mag(&row);
            row.retain(|(k, c)| *k == pk || c.magnitude() > FLOAT_PRUNE * scale);
        }
        // clear the new pivot from existing rows
        for r in 0..self.rows.len() {
            if let Ok(pos) = self.rows[r].binary_search_by_key(&pk, |(k, _)| *k) {
                let c = self.rows[r][pos].1.neg();
                let mut nr = axpy_sparse(&self.rows[r], &c, &row);
                nr.retain(|(k, _)| *k != pk);
                if !F::EXACT {
                    let scale = max_mag(&nr);
                    let keep = self.pivots[r];
                    nr.retain(|(k, x)| *k == keep || x.magnitude() > FLOAT_PRUNE * scale);
                }
                self.rows[r] = nr;
                if let (Some(combos), Some(cb)) = (self.combos.as_mut(), combo.as_ref()) {
                    combos[r] = axpy_sparse(&combos[r], &c, cb);
                }
            }
        }
        self.index.insert(pk, self.rows.len());
        self.pivots.push(pk);
        self.rows.push(row);
        if let (Some(combos), Some(cb)) = (self.combos.as_mut(), combo.take()) {
            combos.push(cb);
        }
        Ok(res)
    }
}

/// Dense row-major matrix over `Fp` with rank and null-space routines.
#[derive(Clone, Debug)]
pub struct FpMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Fp>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FpMatrix { rows, cols, data: vec![Fp(0); rows * cols] }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Fp {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fp) {
        self.data[r * self.cols + c] = v;
    }

    /// Row-reduce in place; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.at(r, c).inv();
            for j in c..self.cols {
                let v = self.at(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r {
                    let f = self.at(i, c);
                    if !f.is_zero() {
                        for j in c..self.cols {
                            let v = self.at(i, j).sub(&f.mul(&self.at(r, j)));
                            self.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}` as column vectors.
    pub fn nullspace(&self) -> Vec<Vec<Fp>> {
        let mut m = self.clone();
        let piv = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Fp(0); self.cols];
                x[f] = Fp(1);
                for (i, &pc) in piv.iter().enumerate() {
                    x[pc] = m.at(i, f).neg();
                }
                x
            })
            .collect()
    }
}
