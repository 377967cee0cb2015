//! Sparse operators over monomial keys.
//!
//! [`Operator`] stores raw complex coefficients on monomials `K` (products,
//! hermitian Hamiltonians, the parity operator). [`SparseOperator`] is a
//! skew-hermitian element stored by its real coordinates on the basis
//! `B(K) = phi_K K` (see [`basis_phase`]); for Majorana keys `B(K)` is the
//! normalized operator `L(K)`, for Pauli keys it is `i P`.

use super::monomial::{
    basis_phase, bracket_basis, key_label, maj_degree, mul_keys, Ambient, Key, Rep,
};
use crate::error::{Error, Result};
use crate::scalar::{Cx, Field};
use std::collections::BTreeMap;
use std::fmt;

/// Sort by key, add duplicates, drop exact zeros.
pub(crate) fn canonicalize<K: Ord + Copy, F: Field>(v: &mut Vec<(K, F)>) {
    if v.len() <= 1 {
        v.retain(|(_, c)| !c.is_zero());
        return;
    }
    v.sort_unstable_by_key(|(k, _)| *k);
    let mut out: Vec<(K, F)> = Vec::with_capacity(v.len());
    for (k, c) in v.drain(..) {
        match out.last_mut() {
            Some((lk, lc)) if *lk == k => lc.add_assign(&c),
            _ => {
                if let Some((_, lc)) = out.last() {
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                out.push((k, c));
            }
        }
    }
    if let Some((_, lc)) = out.last() {
        if lc.is_zero() {
            out.pop();
        }
    }
    *v = out;
}

/// Skew-hermitian operator in real basis coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator<F> {
    pub ambient: Ambient,
    terms: Vec<(Key, F)>,
}

impl<F: Field> SparseOperator<F> {
    pub fn zero(ambient: Ambient) -> Self {
        SparseOperator { ambient, terms: Vec::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = (Key, F)>>(ambient: Ambient, it: I) -> Self {
        let mut terms: Vec<(Key, F)> = it.into_iter().collect();
        canonicalize(&mut terms);
        SparseOperator { ambient, terms }
    }

    /// Terms must already be sorted, distinct and nonzero.
    pub(crate) fn from_sorted(ambient: Ambient, terms: Vec<(Key, F)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        SparseOperator { ambient, terms }
    }

    /// The basis element `B(K)`; for Majorana keys this is `L(K)`.
    pub fn basis(ambient: Ambient, key: Key) -> Self {
        SparseOperator { ambient, terms: vec![(key, F::one())] }
    }

    pub fn terms(&self) -> &[(Key, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Key, F)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: Key) -> F {
        match self.terms.binary_search_by_key(&key, |(k, _)| *k) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => F::zero(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(&F::one().neg(), other)
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: &F, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (x, y) = (&self.terms, &other.terms);
        while i < x.len() || j < y.len() {
            if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
                out.push(x[i].clone());
                i += 1;
            } else if i >= x.len() || y[j].0 < x[i].0 {
                let c = y[j].1.mul(a);
                if !c.is_zero() {
                    out.push((y[j].0, c));
                }
                j += 1;
            } else {
                let mut c = x[i].1.clone();
                c.add_assign(&y[j].1.mul(a));
                if !c.is_zero() {
                    out.push((x[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Ok(SparseOperator { ambient: self.ambient, terms: out })
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(self.ambient);
        }
        SparseOperator {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(k, c)| (*k, c.mul(s))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SparseOperator {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    /// Lie bracket `xy - yx`, computed with integer structure constants.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.commutator_unchecked(other))
    }

    pub(crate) fn commutator_unchecked(&self, other: &Self) -> Self {
        let rep = self.ambient.rep;
        let mut acc: Vec<(Key, F)> = Vec::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if let Some((s, kc)) = bracket_basis(rep, *ka, *kb) {
                    acc.push((kc, ca.mul(cb).mul_i64(s)));
                }
            }
        }
        canonicalize(&mut acc);
        SparseOperator { ambient: self.ambient, terms: acc }
    }

    /// Squared Euclidean norm of the coordinate vector.
    pub fn norm_sq_f64(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.to_f64().powi(2)).sum()
    }

    /// Raw operator `sum_K c_K phi_K K`.
    pub fn to_raw(&self) -> Operator<F> {
        let mut out = Operator::zero(self.ambient);
        for (k, c) in &self.terms {
            let ph = basis_phase(self.ambient.rep, *k);
            let mut v = Cx::real(c.clone()).mul_ipow(ph.pow);
            if ph.half {
                v = v.scale(&F::from_ratio(1, 2));
            }
            out.terms.insert(*k, v);
        }
        out
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseOperator<G> {
        SparseOperator::from_terms(self.ambient, self.terms.iter().map(|(k, c)| (*k, f(c))))
    }

    pub fn to_f64(&self) -> SparseOperator<f64> {
        self.map_field(|c| c.to_f64())
    }

    /// True iff every monomial has even degree (Majorana only).
    pub fn is_even(&self) -> bool {
        self.ambient.rep == Rep::Pauli || self.terms.iter().all(|(k, _)| maj_degree(*k) % 2 == 0)
    }
}

impl<F: Field + fmt::Display> fmt::Display for SparseOperator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let wrap = match self.ambient.rep {
            Rep::Majorana => "L",
            Rep::Pauli => "i",
        };
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}) {}({})", c, wrap, key_label(self.ambient, *k))?;
        }
        Ok(())
    }
}

/// Operator with complex coefficients on raw monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator<F> {
    pub ambient: Ambient,
    pub terms: BTreeMap<Key, Cx<F>>,
}

impl<F: Field> Operator<F> {
    pub fn zero(ambient: Ambient) -> Self {
        Operator { ambient, terms: BTreeMap::new() }
    }

    pub fn identity(ambient: Ambient) -> Self {
        Self::monomial(ambient, 0, Cx::one())
    }

    pub fn monomial(ambient: Ambient, key: Key, c: Cx<F>) -> Self {
        let mut out = Self::zero(ambient);
        if !c.is_zero() {
            out.terms.insert(key, c);
        }
        out
    }

    pub fn add_term(&mut self, key: Key, c: &Cx<F>) {
        let e = self.terms.entry(key).or_insert_with(Cx::zero);
        *e = e.add(c);
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Cx::real(F::one().neg())))
    }

    pub fn scale(&self, s: &Cx<F>) -> Self {
        let mut out = Self::zero(self.ambient);
        for (k, c) in &self.terms {
            let v = c.mul(s);
            if !v.is_zero() {
                out.terms.insert(*k, v);
            }
        }
        out
    }

    pub fn scale_real(&self, s: &F) -> Self {
        self.scale(&Cx::real(s.clone()))
    }

    pub fn times_i(&self) -> Self {
        self.scale(&Cx::i())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.ambient, o.ambient, "ambient mismatch");
        let rep = self.ambient.rep;
        let mut out = Self::zero(self.ambient);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                let (q, kc) = mul_keys(rep, *ka, *kb);
                out.add_term(kc, &ca.mul(cb).mul_ipow(q));
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Hermitian adjoint.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zero(self.ambient);
        for (k, c) in &self.terms {
            let neg = match self.ambient.rep {
                Rep::Majorana => {
                    let d = maj_degree(*k);
                    (d * d.saturating_sub(1) / 2) % 2 == 1
                }
                Rep::Pauli => false,
            };
            let v = if neg { c.conj().neg() } else { c.conj() };
            out.terms.insert(*k, v);
        }
        out
    }

    /// Coordinates on the skew-hermitian basis; errors if a coordinate is not real.
    pub fn to_skew(&self) -> Result<SparseOperator<F>> {
        let scale = self
            .terms
            .values()
            .map(|c| c.re.magnitude().max(c.im.magnitude()))
            .fold(0.0f64, f64::max);
        let mut out = Vec::with_capacity(self.terms.len());
        for (k, c) in &self.terms {
            let ph = basis_phase(self.ambient.rep, *k);
            // c / (mag * i^pow)
            let mut v = c.mul_ipow((4 - ph.pow) & 3);
            if ph.half {
                v = v.scale(&F::from_i64(2));
            }
            let bad = if F::EXACT {
                !v.im.is_zero()
            } else {
                v.im.magnitude() > 1e-12 * scale.max(1e-300)
            };
            if bad {
                return Err(Error::NotSkewHermitian(key_label(self.ambient, *k)));
            }
            out.push((*k, v.re));
        }
        Ok(SparseOperator::from_terms(self.ambient, out))
    }

    /// `i h` for a hermitian `h`, in skew-hermitian coordinates.
    pub fn hermitian_to_skew(&self) -> Result<SparseOperator<F>> {
        self.times_i().to_skew()
    }

    pub fn coeff(&self, key: Key) -> Cx<F> {
        self.terms.get(&key).cloned().unwrap_or_else(Cx::zero)
    }

    /// Drop the identity component.
    pub fn traceless(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&0);
        out
    }
}

impl<F: Field + fmt::Display> fmt::Display for Operator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({} + {}i) {}", c.re, c.im, key_label(self.ambient, *k))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomial::{maj_key, parse_pauli};
    use crate::scalar::Q;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    #[test]
    fn l_map_raw_coefficients() {
        let amb = Ambient::majorana(2);
        let l12 = SparseOperator::<Q>::basis(amb, maj_key(&[1, 2])).to_raw();
        assert_eq!(l12.coeff(maj_key(&[1, 2])), Cx::real(q(-1, 2)));
        let l0 = SparseOperator::<Q>::basis(amb, 0).to_raw();
        assert_eq!(l0.coeff(0), Cx::new(q(0, 1), q(-1, 2)));
        let l4 = SparseOperator::<Q>::basis(amb, maj_key(&[1, 2, 3, 4])).to_raw();
        assert_eq!(l4.coeff(maj_key(&[1, 2, 3, 4])), Cx::new(q(0, 1), q(1, 2)));
    }

    #[test]
    fn commutator_matches_raw_products() {
        let amb = Ambient::majorana(3);
        let x = SparseOperator::<Q>::from_terms(
            amb,
            vec![(maj_key(&[1, 2]), q(3, 2)), (maj_key(&[2, 3, 4, 5]), q(-1, 1))],
        );
        let y = SparseOperator::<Q>::from_terms(
            amb,
            vec![(maj_key(&[2, 3]), q(1, 1)), (maj_key(&[1, 6]), q(2, 3))],
        );
        let c = x.commutator(&y).unwrap();
        let raw = x.to_raw().commutator(&y.to_raw());
        assert_eq!(c.to_raw(), raw);
        assert_eq!(raw.to_skew().unwrap(), c);
    }

    #[test]
    fn pauli_commutator_matches_raw() {
        let amb = Ambient::pauli(3);
        let x = SparseOperator::<Q>::from_terms(
            amb,
            vec![(parse_pauli("XXI").unwrap(), q(1, 1)), (parse_pauli("ZIY").unwrap(), q(1, 3))],
        );
        let y = SparseOperator::<Q>::from_terms(amb, vec![(parse_pauli("YZI").unwrap(), q(2, 1))]);
        let c = x.commutator(&y).unwrap();
        assert_eq!(c.to_raw(), x.to_raw().commutator(&y.to_raw()));
    }

    #[test]
    fn non_skew_rejected() {
        let amb = Ambient::majorana(1);
        let h = Operator::<Q>::monomial(amb, maj_key(&[1, 2]), Cx::real(q(1, 1)));
        // m1 m2 is anti-hermitian, so i * m1m2 is hermitian and not skew
        assert!(h.times_i().to_skew().is_err());
        assert!(h.to_skew().is_ok());
    }

    #[test]
    fn dagger_of_quadratic() {
        let amb = Ambient::majorana(2);
        let m = Operator::<Q>::monomial(amb, maj_key(&[1, 3]), Cx::one());
        assert_eq!(m.dagger(), m.scale_real(&q(-1, 1)));
        let m4 = Operator::<Q>::monomial(amb, maj_key(&[1, 2, 3, 4]), Cx::one());
        assert_eq!(m4.dagger(), m4);
    }

    #[test]
    fn axpy_cancels() {
        let amb = Ambient::majorana(2);
        let x = SparseOperator::<Q>::basis(amb, 3);
        let z = x.sub(&x).unwrap();
        assert!(z.is_zero());
    }
}
