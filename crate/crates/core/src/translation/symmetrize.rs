//! Translation symmetrization and bounded-range generator sets.

use super::profile::Kind;
use crate::algebra::monomial::{maj_key, pauli_key, Ambient, Key, Pauli, Rep};
use crate::algebra::operator::SparseOperator;
use crate::error::{input, Error, Result};
use crate::lie::{lie_closure, OperatorSpace};
use crate::scalar::Field;

/// Shift a Pauli string by one site (`p -> p+1`, `L -> 1`).
pub fn shift_pauli(key: Key, l: usize) -> Key {
    (key >> 2) | ((key & 3) << (2 * (l - 1)))
}

/// Conjugate a Majorana monomial by the fermionic translation:
/// `m_k -> m_{k+2}` cyclically; re-sorting the `w` wrapped factors in front
/// of the other `deg - w` gives the sign `(-1)^{w (deg - w)}`.
pub fn shift_majorana(key: Key, d: usize) -> (bool, Key) {
    let top = 2 * d - 2;
    let wrapped = (key >> top) & 3;
    let w = wrapped.count_ones();
    let deg = key.count_ones();
    let low = key & ((1u128 << top) - 1);
    let k = (low << 2) | wrapped;
    (w * (deg - w) % 2 == 1, k)
}

/// `sum_q U^q x U^{-q}` over all translations of the ambient ring.
pub fn ti_symmetrize<F: Field>(x: &SparseOperator<F>) -> Result<SparseOperator<F>> {
    let amb = x.ambient;
    let n = amb.n;
    if amb.rep == Rep::Majorana && !x.is_even() {
        return input("odd fermionic terms violate parity superselection");
    }
    let mut terms = Vec::with_capacity(x.len() * n);
    for (k, c) in x.terms() {
        let (mut key, mut neg) = (*k, false);
        for _ in 0..n {
            terms.push((key, if neg { c.neg() } else { c.clone() }));
            match amb.rep {
                Rep::Pauli => key = shift_pauli(key, n),
                Rep::Majorana => {
                    let (s, nk) = shift_majorana(key, n);
                    neg ^= s;
                    key = nk;
                }
            }
        }
    }
    Ok(SparseOperator::from_terms(amb, terms))
}

/// Symmetrized generators of interaction length at most `m`.
///
/// Spin: all Pauli strings `Q_1..Q_m` on sites `1..m` with `Q_1 != I`.
/// Fermion: `L(M)` for even monomials on modes `1..m` involving mode 1,
/// with the identity and the parity monomial removed.
pub fn bounded_range_generators<F: Field>(size: usize, m: usize, kind: Kind) -> Result<Vec<SparseOperator<F>>> {
    if m == 0 || m > size {
        return Err(Error::Input(format!("need 1 <= M <= size, got M={m}, size={size}")));
    }
    let mut out = Vec::new();
    match kind {
        Kind::Spin => {
            if size > 32 {
                return input("spin chains limited to 32 sites");
            }
            let amb = Ambient::pauli(size);
            let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
            for code in 0..4usize.pow(m as u32) {
                let mut s = vec![Pauli::I; size];
                let mut c = code;
                for slot in s.iter_mut().take(m) {
                    *slot = letters[c % 4];
                    c /= 4;
                }
                if s[0] == Pauli::I {
                    continue;
                }
                out.push(ti_symmetrize(&SparseOperator::basis(amb, pauli_key(&s)))?);
            }
        }
        Kind::Fermion => {
            if size > 16 {
                return input("fermionic rings limited to 16 modes here");
            }
            let amb = Ambient::majorana(size);
            let parity = maj_key(&(1..=2 * size).collect::<Vec<_>>());
            for mask in 1u64..(1u64 << (2 * m)) {
                let key = mask as u128;
                if key.count_ones() % 2 == 1 || key & 3 == 0 || key == parity {
                    continue;
                }
                out.push(ti_symmetrize(&SparseOperator::basis(amb, key))?);
            }
        }
    }
    // symmetrizations of translates coincide; keep one representative
    out.retain(|g| !g.is_zero());
    out.sort_by(|a, b| a.terms()[0].0.cmp(&b.terms()[0].0));
    out.dedup_by(|a, b| a.terms()[0].0 == b.terms()[0].0);
    Ok(out)
}

/// `t_M(L)` (spin) or `t^f_M(d)` (fermion).
pub fn bounded_range_algebra<F: Field>(size: usize, m: usize, kind: Kind, cap: Option<usize>) -> Result<OperatorSpace<F>> {
    lie_closure(&bounded_range_generators(size, m, kind)?, cap)
}
