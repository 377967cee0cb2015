//! Row-reduced real spans of skew-hermitian operators.

use super::linalg::Echelon;
use crate::algebra::monomial::{Ambient, Key, Rep};
use crate::algebra::operator::SparseOperator;
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, Debug)]
pub struct OperatorSpace<F> {
    pub ambient: Ambient,
    ech: Echelon<Key, F>,
    closed: bool,
    /// Lie generators when the space came from a closure.
    generators: Option<Vec<SparseOperator<F>>>,
}

impl<F: Field> OperatorSpace<F> {
    pub fn new(ambient: Ambient) -> Self {
        OperatorSpace { ambient, ech: Echelon::new(), closed: false, generators: None }
    }

    /// Row-reduced span of `ops`, deterministic in the input order.
    pub fn span_reduce(ambient: Ambient, ops: &[SparseOperator<F>]) -> Result<Self> {
        let mut s = Self::new(ambient);
        for op in ops {
            s.insert(op)?;
        }
        Ok(s)
    }

    /// Span of every monomial key (optionally without the identity).
    pub fn full(ambient: Ambient, include_identity: bool) -> Result<Self> {
        let bits = match ambient.rep {
            Rep::Majorana => 2 * ambient.n,
            Rep::Pauli => 2 * ambient.n,
        };
        if bits > 24 {
            return Err(Error::TooLarge(format!("full operator space on {bits} bits")));
        }
        let mut s = Self::new(ambient);
        let start = if include_identity { 0 } else { 1 };
        for k in start..(1u128 << bits) {
            s.insert(&SparseOperator::basis(ambient, k))?;
        }
        s.closed = true;
        Ok(s)
    }

    fn check(&self, op: &SparseOperator<F>) -> Result<()> {
        if op.ambient != self.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    /// Insert `op`; returns the residual if it enlarged the span.
    pub fn insert(&mut self, op: &SparseOperator<F>) -> Result<Option<SparseOperator<F>>> {
        self.check(op)?;
        let r = self.ech.insert(op.terms());
        if r.is_some() {
            self.closed = false;
        }
        Ok(r.map(|t| SparseOperator::from_sorted(self.ambient, t)))
    }

    pub fn contains(&self, op: &SparseOperator<F>) -> bool {
        op.ambient == self.ambient && self.ech.contains(op.terms())
    }

    pub fn dim(&self) -> usize {
        self.ech.dim()
    }

    pub fn row(&self, i: usize) -> SparseOperator<F> {
        SparseOperator::from_sorted(self.ambient, self.ech.rows()[i].clone())
    }

    pub fn basis(&self) -> Vec<SparseOperator<F>> {
        (0..self.dim()).map(|i| self.row(i)).collect()
    }

    pub fn pivots(&self) -> &[Key] {
        self.ech.pivots()
    }

    /// Dense coordinates of an element of the span (read off at pivots).
    pub fn coords(&self, op: &SparseOperator<F>) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (r, c) in self.ech.coords(op.terms()) {
            out[r] = c;
        }
        out
    }

    /// Sparse coordinates of an element of the span.
    pub fn sparse_coords(&self, op: &SparseOperator<F>) -> Vec<(usize, F)> {
        self.ech.coords(op.terms())
    }

    /// `sum_i c_i row_i`.
    pub fn combine(&self, c: &[F]) -> SparseOperator<F> {
        let mut terms = Vec::new();
        for (i, ci) in c.iter().enumerate() {
            if !ci.is_zero() {
                terms.extend(self.ech.rows()[i].iter().map(|(k, x)| (*k, x.mul(ci))));
            }
        }
        SparseOperator::from_terms(self.ambient, terms)
    }

    pub fn is_known_closed(&self) -> bool {
        self.closed
    }

    pub(crate) fn mark_closed(&mut self, generators: Vec<SparseOperator<F>>) {
        self.closed = true;
        self.generators = Some(generators);
    }

    /// Lie generators: the closure generators if known, else the basis.
    pub fn lie_generators(&self) -> Vec<SparseOperator<F>> {
        match &self.generators {
            Some(g) => g.clone(),
            None => self.basis(),
        }
    }

    /// Check `[x, y]` lies in the span for all basis pairs.
    pub fn verify_closed(&self) -> bool {
        let b = self.basis();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if !self.contains(&b[i].commutator_unchecked(&b[j])) {
                    return false;
                }
            }
        }
        true
    }

    /// Same row space as `other`.
    pub fn same_span(&self, other: &Self) -> bool {
        self.dim() == other.dim()
            && self.ambient == other.ambient
            && other.basis().iter().all(|x| self.contains(x))
    }

    pub fn to_f64(&self) -> OperatorSpace<f64> {
        let mut s = OperatorSpace::<f64>::span_reduce(
            self.ambient,
            &self.basis().iter().map(|b| b.to_f64()).collect::<Vec<_>>(),
        )
        .expect("same ambient");
        s.closed = self.closed;
        s.generators = self.generators.as_ref().map(|g| g.iter().map(|x| x.to_f64()).collect());
        s
    }
}
