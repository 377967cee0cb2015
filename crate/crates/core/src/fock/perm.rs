//! Phased permutations of the Fock basis: `S|j> = i^{phase[j]} |perm[j]>`.
//!
//! Monomials, the translation unitary and the twisted reflection all have
//! this form, which gives exact traces without dense matrices.

use crate::algebra::monomial::{Key, Rep};
use crate::algebra::operator::Operator;
use crate::error::{input, Result};
use crate::scalar::{Cx, Field};

/// Index of the Fock state: site 1 is the most significant bit.
#[inline]
pub fn occ(d: usize, idx: usize, p: usize) -> usize {
    (idx >> (d - p)) & 1
}

/// Apply the Majorana monomial `key` to basis state `idx`.
///
/// Returns `(k, idx')` with `M|idx> = i^k |idx'>`.
pub fn apply_majorana(d: usize, key: Key, idx: usize) -> (u8, usize) {
    let mut ph = 0u8;
    let mut state = idx;
    let mut k = key;
    // rightmost factor acts first
    while k != 0 {
        let t = 127 - k.leading_zeros() as usize;
        k &= !(1u128 << t);
        let m = t + 1;
        let p = m.div_ceil(2);
        let bit = 1usize << (d - p);
        let before = (state >> (d - p + 1)).count_ones();
        if before & 1 == 1 {
            ph += 2;
        }
        if m % 2 == 0 {
            // m_{2p} = i (f_p - f_p^dagger)
            ph += if state & bit != 0 { 1 } else { 3 };
        }
        state ^= bit;
    }
    (ph & 3, state)
}

/// Apply the Pauli string `key` to computational basis state `idx`
/// (site 1 most significant, `|0>` is the `Z = +1` state).
pub fn apply_pauli(key: Key, idx: usize) -> (u8, usize) {
    let (x, z) = crate::algebra::monomial::pauli_xz(key);
    let (x, z) = (x as usize, z as usize);
    let mut ph = ((x & z).count_ones() & 3) as u8;
    if (z & idx).count_ones() & 1 == 1 {
        ph += 2;
    }
    (ph & 3, idx ^ x)
}

/// Action of a monomial of either representation.
pub fn apply_key(rep: Rep, n: usize, key: Key, idx: usize) -> (u8, usize) {
    match rep {
        Rep::Majorana => apply_majorana(n, key, idx),
        Rep::Pauli => apply_pauli(key, idx),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhasedPerm {
    pub perm: Vec<usize>,
    pub phase: Vec<u8>,
}

impl PhasedPerm {
    pub fn identity(dim: usize) -> Self {
        PhasedPerm { perm: (0..dim).collect(), phase: vec![0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// `self * other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let phase = (0..other.dim())
            .map(|j| (other.phase[j] + self.phase[other.perm[j]]) & 3)
            .collect();
        PhasedPerm { perm, phase }
    }

    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut phase = vec![0; n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            phase[self.perm[j]] = (4 - self.phase[j]) & 3;
        }
        PhasedPerm { perm, phase }
    }

    /// Integer power, negative exponents allowed.
    pub fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = PhasedPerm::identity(self.dim());
        while e > 0 {
            if e & 1 == 1 {
                acc = base.compose(&acc);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Exact `tr(S * op)`.
    pub fn trace_with<F: Field>(&self, op: &Operator<F>) -> Result<Cx<F>> {
        let amb = op.ambient;
        if amb.hilbert_dim() != self.dim() {
            return input("phased permutation and operator act on different spaces");
        }
        let mut acc = Cx::zero();
        for (key, c) in &op.terms {
            // <j| S M |j>: M|j> = i^a |m>, S|m> = i^b |perm[m]>
            let mut count = [0i64; 4];
            for j in 0..self.dim() {
                let (a, m) = apply_key(amb.rep, amb.n, *key, j);
                if self.perm[m] == j {
                    count[((a + self.phase[m]) & 3) as usize] += 1;
                }
            }
            let re = count[0] - count[2];
            let im = count[1] - count[3];
            if re != 0 || im != 0 {
                let w = Cx::new(F::from_i64(re), F::from_i64(im));
                acc = acc.add(&c.mul(&w));
            }
        }
        Ok(acc)
    }
}

/// Fermionic translation `U|n_1..n_d> = (-1)^{n_d(n_1+..+n_{d-1})} |n_d n_1 .. n_{d-1}>`.
pub fn translation_perm(d: usize) -> PhasedPerm {
    let dim = 1usize << d;
    let mut perm = vec![0; dim];
    let mut phase = vec![0; dim];
    for j in 0..dim {
        let nd = j & 1;
        let rest = j >> 1;
        perm[j] = rest | (nd << (d - 1));
        if nd == 1 && rest.count_ones() & 1 == 1 {
            phase[j] = 2;
        }
    }
    PhasedPerm { perm, phase }
}

/// Spin translation `U_T|n_1..n_L> = |n_L n_1 .. n_{L-1}>`.
pub fn spin_translation_perm(l: usize) -> PhasedPerm {
    let dim = 1usize << l;
    let perm = (0..dim).map(|j| (j >> 1) | ((j & 1) << (l - 1))).collect();
    PhasedPerm { perm, phase: vec![0; dim] }
}

/// Twisted reflection `R|n_1..n_d> = i^{(sum n)^2} |n_d .. n_1>`.
pub fn reflection_perm(d: usize) -> PhasedPerm {
    let dim = 1usize << d;
    let mut perm = vec![0; dim];
    let mut phase = vec![0; dim];
    for j in 0..dim {
        let mut r = 0;
        for b in 0..d {
            r |= ((j >> b) & 1) << (d - 1 - b);
        }
        perm[j] = r;
        let w = j.count_ones() as usize;
        phase[j] = ((w * w) & 3) as u8;
    }
    PhasedPerm { perm, phase }
}
