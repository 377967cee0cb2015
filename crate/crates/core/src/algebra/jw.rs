//! Jordan-Wigner map, parity, and fermionic creation/annihilation operators.

use super::monomial::{maj_key, mul_keys, pauli_from_xz, Ambient, Key, Rep};
use super::operator::{Operator, SparseOperator};
use crate::error::{input, Result};
use crate::scalar::{Cx, Field};

/// Pauli key of the JW image of `m_k` (no phase).
///
/// `m_{2p-1} -> Z..Z X_p`, `m_{2p} -> Z..Z Y_p`, site 1 leftmost.
pub fn jw_letter(d: usize, k: usize) -> Key {
    let p = (k + 1) / 2;
    // digit index of site s is d - s
    let mut x = 0u64;
    let mut z = 0u64;
    for s in 1..p {
        z |= 1 << (d - s);
    }
    let bit = 1u64 << (d - p);
    x |= bit;
    if k % 2 == 0 {
        z |= bit; // Y = X and Z bits
    }
    pauli_from_xz(x, z)
}

/// JW image of a raw Majorana operator.
pub fn jordan_wigner_raw<F: Field>(op: &Operator<F>) -> Result<Operator<F>> {
    if op.ambient.rep != Rep::Majorana {
        return input("jordan_wigner expects a Majorana operator");
    }
    let d = op.ambient.n;
    let letters: Vec<Key> = (1..=2 * d).map(|k| jw_letter(d, k)).collect();
    let amb = Ambient::pauli(d);
    let mut out = Operator::zero(amb);
    for (key, c) in &op.terms {
        let mut ph = 0u8;
        let mut acc: Key = 0;
        let mut k = *key;
        while k != 0 {
            let t = k.trailing_zeros() as usize;
            let (q, nk) = mul_keys(Rep::Pauli, acc, letters[t]);
            ph = (ph + q) & 3;
            acc = nk;
            k &= k - 1;
        }
        out.add_term(acc, &c.mul_ipow(ph));
    }
    Ok(out)
}

/// JW image of a skew-hermitian Majorana operator.
pub fn jordan_wigner<F: Field>(op: &SparseOperator<F>) -> Result<SparseOperator<F>> {
    jordan_wigner_raw(&op.to_raw())?.to_skew()
}

/// `P = i^d m_1 m_2 ... m_{2d}`, equal to `(-1)^N` in the Fock basis.
pub fn parity_operator<F: Field>(d: usize) -> Operator<F> {
    let amb = Ambient::majorana(d);
    let all = maj_key(&(1..=2 * d).collect::<Vec<_>>());
    Operator::monomial(amb, all, Cx::one().mul_ipow((d % 4) as u8))
}

/// `L(m_1 ... m_{2d})`, the skew-hermitian element proportional to `P`.
pub fn parity_skew<F: Field>(d: usize) -> SparseOperator<F> {
    let all = maj_key(&(1..=2 * d).collect::<Vec<_>>());
    SparseOperator::basis(Ambient::majorana(d), all)
}

/// Mode index on a ring of `d` modes, one-based with wrap-around.
pub fn wrap(d: usize, p: usize) -> usize {
    (p - 1) % d + 1
}

/// Annihilation operator `f_p = (m_{2p-1} - i m_{2p}) / 2` (one-based, wraps mod d).
pub fn annihilation<F: Field>(d: usize, p: usize) -> Operator<F> {
    let p = wrap(d, p);
    let amb = Ambient::majorana(d);
    let h = F::from_ratio(1, 2);
    let mut out = Operator::monomial(amb, maj_key(&[2 * p - 1]), Cx::real(h.clone()));
    out.add_term(maj_key(&[2 * p]), &Cx::new(F::zero(), h.neg()));
    out
}

/// Creation operator `f_p^dagger = (m_{2p-1} + i m_{2p}) / 2`.
pub fn creation<F: Field>(d: usize, p: usize) -> Operator<F> {
    annihilation::<F>(d, p).dagger()
}

/// Number operator `f_p^dagger f_p`.
pub fn number<F: Field>(d: usize, p: usize) -> Operator<F> {
    creation::<F>(d, p).mul(&annihilation(d, p))
}
