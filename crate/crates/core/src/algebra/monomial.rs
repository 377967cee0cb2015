//! Majorana monomials and Pauli strings packed into `u128` keys.
//!
//! Majorana: bit `k-1` set means `m_k` is present (modes up to 64, so 128
//! Majorana operators). Pauli: site `p` of an `L`-site chain occupies the 2-bit
//! digit `L-p` of a base-4 number with `I=0, X=1, Y=2, Z=3`, so integer order on
//! keys is lexicographic order on strings.

use serde::{Deserialize, Serialize};

pub type Key = u128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rep {
    Majorana,
    Pauli,
}

/// Operator ambient: representation plus number of modes (Majorana) or sites (Pauli).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    pub rep: Rep,
    pub n: usize,
}

impl Ambient {
    pub fn majorana(d: usize) -> Self {
        assert!((1..=64).contains(&d), "mode count must be in 1..=64");
        Ambient { rep: Rep::Majorana, n: d }
    }
    pub fn pauli(l: usize) -> Self {
        assert!((1..=64).contains(&l), "site count must be in 1..=64");
        Ambient { rep: Rep::Pauli, n: l }
    }
    /// Hilbert space dimension `2^n`.
    pub fn hilbert_dim(&self) -> usize {
        1usize << self.n
    }
    /// Number of Majorana generators (`2d`) or sites.
    pub fn letters(&self) -> usize {
        match self.rep {
            Rep::Majorana => 2 * self.n,
            Rep::Pauli => self.n,
        }
    }
}

// ---------------------------------------------------------------- Majorana

#[inline]
pub fn maj_key(indices: &[usize]) -> Key {
    let mut k = 0u128;
    for &i in indices {
        assert!((1..=128).contains(&i));
        k |= 1u128 << (i - 1);
    }
    k
}

/// One-based indices in increasing order.
pub fn maj_indices(key: Key) -> Vec<usize> {
    let mut out = Vec::with_capacity(key.count_ones() as usize);
    let mut k = key;
    while k != 0 {
        let t = k.trailing_zeros() as usize;
        out.push(t + 1);
        k &= k - 1;
    }
    out
}

#[inline]
pub fn maj_degree(key: Key) -> u32 {
    key.count_ones()
}

/// Sign parity of `m_A m_B` relative to the sorted product `m_{A xor B}`.
#[inline]
pub fn maj_mul_sign(a: Key, b: Key) -> bool {
    // count pairs (i in A, j in B) with i > j
    let mut parity = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        let above = if j == 127 { 0 } else { a >> (j + 1) };
        parity ^= above.count_ones() & 1;
        bb &= bb - 1;
    }
    parity == 1
}

/// Product of sorted Majorana monomials: returns `(negative, key)`.
#[inline]
pub fn maj_mul(a: Key, b: Key) -> (bool, Key) {
    (maj_mul_sign(a, b), a ^ b)
}

#[inline]
pub fn maj_anticommute(a: Key, b: Key) -> bool {
    let na = a.count_ones();
    let nb = b.count_ones();
    let c = (a & b).count_ones();
    (na * nb + c) & 1 == 1
}

/// Exponent `e` with `L(M) = -1/2 * i^e * M` skew-hermitian.
#[inline]
pub fn maj_phase_exp(deg: u32) -> u8 {
    match deg % 8 {
        0 | 1 => 1,
        2 | 3 => 0,
        4 | 5 => 3,
        _ => 2,
    }
}

// ---------------------------------------------------------------- Pauli

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn code(self) -> u128 {
        match self {
            Pauli::I => 0,
            Pauli::X => 1,
            Pauli::Y => 2,
            Pauli::Z => 3,
        }
    }
    pub fn from_code(c: u128) -> Pauli {
        match c & 3 {
            0 => Pauli::I,
            1 => Pauli::X,
            2 => Pauli::Y,
            _ => Pauli::Z,
        }
    }
    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

#[inline]
fn compact_u64(mut x: u64) -> u64 {
    x &= 0x5555_5555_5555_5555;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x >> 4)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x >> 8)) & 0x0000_ffff_0000_ffff;
    x = (x | (x >> 16)) & 0x0000_0000_ffff_ffff;
    x
}

#[inline]
fn spread_u32(x: u64) -> u64 {
    let mut x = x & 0xffff_ffff;
    x = (x | (x << 16)) & 0x0000_ffff_0000_ffff;
    x = (x | (x << 8)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// Even-position bits of a `u128` packed into a `u64`.
#[inline]
fn compact(k: u128) -> u64 {
    compact_u64(k as u64) | (compact_u64((k >> 64) as u64) << 32)
}

#[inline]
fn spread(x: u64) -> u128 {
    spread_u32(x) as u128 | ((spread_u32(x >> 32) as u128) << 64)
}

/// Split a Pauli key into `(x, z)` masks; bit `j` is digit `j` (site `L-j`).
#[inline]
pub fn pauli_xz(key: Key) -> (u64, u64) {
    let lo = compact(key);
    let hi = compact(key >> 1);
    (hi ^ lo, hi)
}

#[inline]
pub fn pauli_from_xz(x: u64, z: u64) -> Key {
    let hi = z;
    let lo = x ^ z;
    spread(lo) | (spread(hi) << 1)
}

/// Key of the string `s[0] s[1] ...` with `s[0]` on site 1.
pub fn pauli_key(s: &[Pauli]) -> Key {
    let l = s.len();
    let mut k = 0u128;
    for (p, q) in s.iter().enumerate() {
        k |= q.code() << (2 * (l - 1 - p));
    }
    k
}

pub fn pauli_at(key: Key, l: usize, site: usize) -> Pauli {
    Pauli::from_code(key >> (2 * (l - site)))
}

pub fn pauli_string(key: Key, l: usize) -> String {
    (1..=l).map(|p| pauli_at(key, l, p).to_char()).collect()
}

pub fn parse_pauli(s: &str) -> Option<Key> {
    let v: Option<Vec<Pauli>> = s.chars().map(Pauli::from_char).collect();
    v.map(|v| pauli_key(&v))
}

/// Number of non-identity sites.
#[inline]
pub fn pauli_weight(key: Key) -> u32 {
    let (x, z) = pauli_xz(key);
    (x | z).count_ones()
}

/// Product `P_a P_b = i^k P_c`; returns `(k mod 4, c)`.
#[inline]
pub fn pauli_mul(a: Key, b: Key) -> (u8, Key) {
    let (x1, z1) = pauli_xz(a);
    let (x2, z2) = pauli_xz(b);
    let x3 = x1 ^ x2;
    let z3 = z1 ^ z2;
    let e = (x1 & z1).count_ones() + (x2 & z2).count_ones() + 2 * (z1 & x2).count_ones()
        + 4 * 64
        - (x3 & z3).count_ones();
    ((e & 3) as u8, pauli_from_xz(x3, z3))
}

#[inline]
pub fn pauli_anticommute(a: Key, b: Key) -> bool {
    let (x1, z1) = pauli_xz(a);
    let (x2, z2) = pauli_xz(b);
    ((x1 & z2).count_ones() + (z1 & x2).count_ones()) & 1 == 1
}

// ---------------------------------------------------------------- shared

/// Product of two basis keys as raw operators: `K_a K_b = i^k K_c`.
#[inline]
pub fn mul_keys(rep: Rep, a: Key, b: Key) -> (u8, Key) {
    match rep {
        Rep::Majorana => {
            let (neg, c) = maj_mul(a, b);
            (if neg { 2 } else { 0 }, c)
        }
        Rep::Pauli => pauli_mul(a, b),
    }
}

#[inline]
pub fn anticommute(rep: Rep, a: Key, b: Key) -> bool {
    match rep {
        Rep::Majorana => maj_anticommute(a, b),
        Rep::Pauli => pauli_anticommute(a, b),
    }
}

/// Phase `phi_K = mag * i^pow` of the skew-hermitian basis element
/// `B(K) = phi_K K`; `half` selects `mag = 1/2` (Majorana) over `1` (Pauli).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisPhase {
    pub pow: u8,
    pub half: bool,
}

#[inline]
pub fn basis_phase(rep: Rep, key: Key) -> BasisPhase {
    match rep {
        // -1/2 * i^e = 1/2 * i^(e+2)
        Rep::Majorana => BasisPhase { pow: (maj_phase_exp(maj_degree(key)) + 2) & 3, half: true },
        Rep::Pauli => BasisPhase { pow: 1, half: false },
    }
}

/// Bracket of basis elements: `[B(a), B(b)] = c * B(k)`, `None` if they commute.
/// `c` is `+-1` for Majorana and `+-2` for Pauli.
#[inline]
pub fn bracket_basis(rep: Rep, a: Key, b: Key) -> Option<(i64, Key)> {
    if !anticommute(rep, a, b) {
        return None;
    }
    let (q, c) = mul_keys(rep, a, b);
    let pa = basis_phase(rep, a).pow;
    let pb = basis_phase(rep, b).pow;
    let pc = basis_phase(rep, c).pow;
    // [B_a, B_b] = 2 phi_a phi_b i^q K_c = 2 mag i^(pa+pb+q-pc) B_c
    let e = (pa + pb + q + 4 - pc) & 3;
    debug_assert!(e == 0 || e == 2, "bracket of skew-hermitian elements must be real");
    let sign = if e == 0 { 1 } else { -1 };
    let mag = match rep {
        Rep::Majorana => 1,
        Rep::Pauli => 2,
    };
    Some((sign * mag, c))
}

pub fn key_label(amb: Ambient, key: Key) -> String {
    match amb.rep {
        Rep::Majorana => {
            if key == 0 {
                return "1".to_string();
            }
            maj_indices(key)
                .iter()
                .map(|i| format!("m{}", i))
                .collect::<Vec<_>>()
                .join(" ")
        }
        Rep::Pauli => pauli_string(key, amb.n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn majorana_basic_products() {
        let m1 = maj_key(&[1]);
        let m2 = maj_key(&[2]);
        assert_eq!(maj_mul(m1, m2), (false, maj_key(&[1, 2])));
        assert_eq!(maj_mul(m2, m1), (true, maj_key(&[1, 2])));
        assert_eq!(maj_mul(m1, m1), (false, 0));
        // (m1 m2)(m1 m2) = -1
        let m12 = maj_key(&[1, 2]);
        assert_eq!(maj_mul(m12, m12), (true, 0));
    }

    #[test]
    fn pauli_basic_products() {
        let x = parse_pauli("X").unwrap();
        let y = parse_pauli("Y").unwrap();
        let z = parse_pauli("Z").unwrap();
        assert_eq!(pauli_mul(x, y), (1, z));
        assert_eq!(pauli_mul(y, x), (3, z));
        assert_eq!(pauli_mul(y, z), (1, x));
        assert_eq!(pauli_mul(z, x), (1, y));
        assert_eq!(pauli_mul(y, y), (0, 0));
    }

    #[test]
    fn pauli_string_roundtrip() {
        let s = "XYZIZYX";
        let k = parse_pauli(s).unwrap();
        assert_eq!(pauli_string(k, 7), s);
        let (x, z) = pauli_xz(k);
        assert_eq!(pauli_from_xz(x, z), k);
        assert_eq!(pauli_weight(k), 6);
    }

    #[test]
    fn pauli_order_is_lexicographic() {
        let a = parse_pauli("IZ").unwrap();
        let b = parse_pauli("XI").unwrap();
        let c = parse_pauli("XY").unwrap();
        assert!(a < b && b < c);
    }

    #[test]
    fn majorana_bracket_pair() {
        // [L(m1 m2), L(m2 m3)] = -1/4 [m1m2, m2m3] * ... checked against raw products
        let a = maj_key(&[1, 2]);
        let b = maj_key(&[2, 3]);
        let (c, k) = bracket_basis(Rep::Majorana, a, b).unwrap();
        assert_eq!(k, maj_key(&[1, 3]));
        // L(m1m2) = -1/2 m1m2; product -1/2*-1/2*(m1m2m2m3 - m2m3m1m2) = 1/4 * 2 m1m3 = 1/2 m1m3 = -L(m1m3)
        assert_eq!(c, -1);
    }

    fn raw_phase(p: BasisPhase) -> (f64, f64) {
        let mag = if p.half { 0.5 } else { 1.0 };
        match p.pow {
            0 => (mag, 0.0),
            1 => (0.0, mag),
            2 => (-mag, 0.0),
            _ => (0.0, -mag),
        }
    }

    fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
        (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
    }

    fn ipow(k: u8) -> (f64, f64) {
        raw_phase(BasisPhase { pow: k, half: false })
    }

    fn check_bracket(rep: Rep, a: Key, b: Key) {
        // raw: phi_a phi_b (K_a K_b - K_b K_a)
        let (qab, kab) = mul_keys(rep, a, b);
        let (qba, kba) = mul_keys(rep, b, a);
        assert_eq!(kab, kba);
        let pp = cmul(raw_phase(basis_phase(rep, a)), raw_phase(basis_phase(rep, b)));
        let d = (ipow(qab).0 - ipow(qba).0, ipow(qab).1 - ipow(qba).1);
        let raw = cmul(pp, d);
        match bracket_basis(rep, a, b) {
            None => assert!(raw.0.abs() < 1e-12 && raw.1.abs() < 1e-12),
            Some((c, k)) => {
                assert_eq!(k, kab);
                let want = cmul((c as f64, 0.0), raw_phase(basis_phase(rep, k)));
                assert!((want.0 - raw.0).abs() < 1e-12 && (want.1 - raw.1).abs() < 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn majorana_bracket_matches_raw(a in 0u128..(1 << 10), b in 0u128..(1 << 10)) {
            check_bracket(Rep::Majorana, a, b);
        }

        #[test]
        fn pauli_bracket_matches_raw(a in 0u128..(1 << 12), b in 0u128..(1 << 12)) {
            check_bracket(Rep::Pauli, a, b);
        }

        #[test]
        fn majorana_product_associative(a in 0u128..(1<<8), b in 0u128..(1<<8), c in 0u128..(1<<8)) {
            let (s1, ab) = maj_mul(a, b);
            let (s2, abc) = maj_mul(ab, c);
            let (s3, bc) = maj_mul(b, c);
            let (s4, abc2) = maj_mul(a, bc);
            prop_assert_eq!(abc, abc2);
            prop_assert_eq!(s1 ^ s2, s3 ^ s4);
        }

        #[test]
        fn pauli_product_associative(a in 0u128..(1<<10), b in 0u128..(1<<10), c in 0u128..(1<<10)) {
            let (p1, ab) = pauli_mul(a, b);
            let (p2, abc) = pauli_mul(ab, c);
            let (p3, bc) = pauli_mul(b, c);
            let (p4, abc2) = pauli_mul(a, bc);
            prop_assert_eq!(abc, abc2);
            prop_assert_eq!((p1 + p2) & 3, (p3 + p4) & 3);
        }

        #[test]
        fn xz_roundtrip(k in any::<u128>()) {
            let (x, z) = pauli_xz(k);
            prop_assert_eq!(pauli_from_xz(x, z), k);
        }
    }
}
