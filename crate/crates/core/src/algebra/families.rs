//! Named generator families.
//!
//! Hermitian Hamiltonians are built from fermionic operators and returned as
//! raw [`Operator`]s by [`hermitian`]; [`build_named_family`] returns the
//! corresponding skew-hermitian generators `i h` (or `L(v)` for the `w`
//! family) as [`SparseOperator`]s.

use super::jw::{annihilation, creation, number, wrap};
use super::monomial::{maj_key, parse_pauli, Ambient};
use super::operator::{Operator, SparseOperator};
use crate::error::{input, Error, Result};
use crate::scalar::{Cx, Field};

fn need(d: usize, min: usize, name: &str) -> Result<()> {
    if d < min {
        return Err(Error::Input(format!("family {name} needs d >= {min}, got {d}")));
    }
    if d > 64 {
        return Err(Error::Input(format!("family {name}: d = {d} exceeds 64 modes")));
    }
    Ok(())
}

/// `v_1 = sum_p (-m_{2p-1} m_{2p+2} + m_{2p} m_{2p+1})` as `L`-coordinates.
pub fn w1<F: Field>(d: usize) -> SparseOperator<F> {
    let amb = Ambient::majorana(d);
    let mut terms = Vec::new();
    for p in 1..d {
        terms.push((maj_key(&[2 * p - 1, 2 * p + 2]), F::one().neg()));
        terms.push((maj_key(&[2 * p, 2 * p + 1]), F::one()));
    }
    SparseOperator::from_terms(amb, terms)
}

pub fn w_family<F: Field>(d: usize) -> [SparseOperator<F>; 4] {
    let amb = Ambient::majorana(d);
    [
        w1(d),
        SparseOperator::basis(amb, maj_key(&[1, 2])),
        SparseOperator::basis(amb, maj_key(&[2, 3])),
        SparseOperator::basis(amb, maj_key(&[1, 2, 3, 4])),
    ]
}

fn half<F: Field>() -> F {
    F::from_ratio(1, 2)
}

/// `sum_n (X_n + Y_n)` helper: sum over the ring of `term(n)`.
fn ring_sum<F: Field>(d: usize, term: impl Fn(usize) -> Operator<F>) -> Operator<F> {
    let mut acc = Operator::zero(Ambient::majorana(d));
    for n in 1..=d {
        acc = acc.add(&term(n));
    }
    acc
}

/// `f_a^dagger f_b`.
fn hop<F: Field>(d: usize, a: usize, b: usize) -> Operator<F> {
    creation::<F>(d, a).mul(&annihilation(d, b))
}

/// `f_a^dagger f_b^dagger`.
fn pair_c<F: Field>(d: usize, a: usize, b: usize) -> Operator<F> {
    creation::<F>(d, a).mul(&creation(d, b))
}

/// `f_a f_b`.
fn pair_a<F: Field>(d: usize, a: usize, b: usize) -> Operator<F> {
    annihilation::<F>(d, a).mul(&annihilation(d, b))
}

fn id<F: Field>(d: usize) -> Operator<F> {
    Operator::identity(Ambient::majorana(d))
}

/// `i (x - y)`.
fn i_diff<F: Field>(x: Operator<F>, y: Operator<F>) -> Operator<F> {
    x.sub(&y).times_i()
}

/// Product of number operators on `n, n+1, ..., n+len-1` minus `2^-len`.
fn density_string<F: Field>(d: usize, n: usize, len: usize) -> Operator<F> {
    let mut acc = id::<F>(d);
    for j in 0..len {
        acc = acc.mul(&number(d, wrap(d, n + j)));
    }
    acc.sub(&id::<F>(d).scale_real(&F::from_ratio(1, 1 << len)))
}

/// Fourier mode `tilde f_k` (k taken mod d).
fn fourier_annihilation<F: Field>(d: usize, k: usize) -> Operator<F> {
    let mut acc = Operator::zero(Ambient::majorana(d));
    let norm = 1.0 / (d as f64).sqrt();
    for p in 1..=d {
        let th = -2.0 * std::f64::consts::PI * (p * k) as f64 / d as f64;
        let c = Cx::new(F::from_f64(norm * th.cos()), F::from_f64(norm * th.sin()));
        acc = acc.add(&annihilation::<F>(d, p).scale(&c));
    }
    acc
}

/// `ell_k^Q` per mode `k`; returns zero for the dummy cases.
///
/// `ell_k^1 = n_{d-k} - n_k` (hermitian) and `ell_k^X = F + F^dag` with
/// `F = f~_{d-k}^dag f~_k^dag`, so that `h^Q_p = sum_k sin(2 pi k p/d) ell_k^Q`
/// for `Q = 1, X, Y` and `[ell^X, ell^Y] = 2i ell^Z`.
pub fn ell<F: Field>(d: usize, k: usize, q: char) -> Result<Operator<F>> {
    let amb = Ambient::majorana(d);
    if k > d / 2 {
        return input(format!("ell index k = {k} exceeds d/2"));
    }
    let edge = k == 0 || 2 * k == d;
    let fk = fourier_annihilation::<F>(d, k);
    let fmk = fourier_annihilation::<F>(d, (d - k) % d);
    let fkd = fk.dagger();
    let fmkd = fmk.dagger();
    let op = match (q, edge) {
        ('Z', true) => fkd.mul(&fk).sub(&id::<F>(d).scale_real(&half())),
        (_, true) => Operator::zero(amb),
        ('1', false) => fmkd.mul(&fmk).sub(&fkd.mul(&fk)),
        ('X', false) => fmkd.mul(&fkd).add(&fk.mul(&fmk)),
        ('Y', false) => i_diff(fkd.mul(&fmkd), fmk.mul(&fk)),
        ('Z', false) => fkd.mul(&fk).add(&fmkd.mul(&fmk)).sub(&id::<F>(d)),
        _ => return input(format!("unknown ell label {q}")),
    };
    Ok(prune(op))
}

/// Drop float round-off terms.
fn prune<F: Field>(op: Operator<F>) -> Operator<F> {
    if F::EXACT {
        return op;
    }
    let scale = op
        .terms
        .values()
        .map(|c| c.re.magnitude().max(c.im.magnitude()))
        .fold(0.0, f64::max);
    let mut out = op.clone();
    out.terms.retain(|_, c| c.re.magnitude().max(c.im.magnitude()) > 1e-13 * scale);
    for c in out.terms.values_mut() {
        if c.re.magnitude() <= 1e-13 * scale {
            c.re = F::zero();
        }
        if c.im.magnitude() <= 1e-13 * scale {
            c.im = F::zero();
        }
    }
    out
}

/// `h^Q_p` for `Q` in `{1, X, Y, Z}`.
pub fn h_q<F: Field>(d: usize, q: char, p: usize) -> Result<Operator<F>> {
    let h = half::<F>();
    let op = match q {
        '1' => ring_sum(d, |l| i_diff(hop(d, l, l + p), hop(d, l + p, l))),
        'X' => ring_sum(d, |l| i_diff(pair_c(d, l, l + p), pair_a(d, l + p, l))),
        'Y' => ring_sum(d, |l| pair_c::<F>(d, l, l + p).add(&pair_a(d, l + p, l))),
        'Z' if p == 0 => ring_sum(d, |l| {
            number::<F>(d, l).scale_real(&F::from_i64(2)).sub(&id::<F>(d))
        }),
        'Z' => ring_sum(d, |l| hop::<F>(d, l, l + p).add(&hop(d, l + p, l))),
        _ => return input(format!("unknown h label {q}")),
    };
    Ok(op.scale_real(&h))
}

/// Hermitian Hamiltonians by name.
pub fn hermitian<F: Field>(name: &str, d: usize) -> Result<Operator<F>> {
    let op = match name {
        "h0" => {
            need(d, 1, name)?;
            ring_sum(d, |n| number::<F>(d, n).sub(&id::<F>(d).scale_real(&half())))
        }
        "h_rh" => {
            need(d, 2, name)?;
            ring_sum(d, |n| hop::<F>(d, n, n + 1).add(&hop(d, n + 1, n)))
        }
        "h_ch" => {
            need(d, 2, name)?;
            ring_sum(d, |n| i_diff(hop(d, n, n + 1), hop(d, n + 1, n)))
        }
        "h_rp" => {
            need(d, 2, name)?;
            ring_sum(d, |n| pair_c::<F>(d, n, n + 1).add(&pair_a(d, n + 1, n)))
        }
        "h_cp" => {
            need(d, 2, name)?;
            ring_sum(d, |n| i_diff(pair_c(d, n, n + 1), pair_a(d, n + 1, n)))
        }
        "h_int" => {
            need(d, 2, name)?;
            ring_sum(d, |n| density_string(d, n, 2))
        }
        "h_odd_witness" => {
            need(d, 5, name)?;
            ring_sum(d, |n| i_diff(hop(d, n, n + 3), hop(d, n + 3, n)))
        }
        "h_even_witness" => {
            need(d, 5, name)?;
            ring_sum(d, |n| density_string(d, n, 5))
        }
        _ => {
            if let Some((q, p)) = parse_hq(name) {
                need(d, 2, name)?;
                h_q(d, q, p)?
            } else if let Some((k, q)) = parse_ell(name) {
                need(d, 1, name)?;
                ell(d, k, q)?
            } else {
                return input(format!("unknown hermitian family {name}"));
            }
        }
    };
    Ok(op)
}

/// `hQ_p` with `Q` in `{1,X,Y,Z}`, e.g. `hZ_0`, `h1_2`.
fn parse_hq(name: &str) -> Option<(char, usize)> {
    let rest = name.strip_prefix('h')?;
    let mut it = rest.splitn(2, '_');
    let q = it.next()?;
    let p = it.next()?.parse().ok()?;
    let q = q.chars().next().filter(|c| "1XYZ".contains(*c) && q.len() == 1)?;
    Some((q, p))
}

/// `ell_k_Q`, e.g. `ell_2_X`.
fn parse_ell(name: &str) -> Option<(usize, char)> {
    let rest = name.strip_prefix("ell_")?;
    let mut it = rest.splitn(2, '_');
    let k = it.next()?.parse().ok()?;
    let q = it.next()?;
    let q = q.chars().next().filter(|c| "1XYZ".contains(*c) && q.len() == 1)?;
    Some((k, q))
}

/// Family names accepted by [`build_named_family`].
pub const FAMILY_NAMES: &[&str] = &[
    "w1",
    "w2",
    "w3",
    "w4",
    "w123",
    "w12",
    "w1234",
    "xx_chain_end_controls",
    "xx_chain_both_end_controls",
    "h0",
    "h_rh",
    "h_ch",
    "h_rp",
    "h_cp",
    "h_int",
    "nn_six",
    "h_odd_witness",
    "h_even_witness",
    "hQ_p (Q in 1,X,Y,Z)",
    "ell_k_Q",
    "so2n1_family",
    "so2n2_family",
];

/// Skew-hermitian generators of a named family.
pub fn build_named_family<F: Field>(name: &str, d: usize) -> Result<Vec<SparseOperator<F>>> {
    let amb = Ambient::majorana(d.max(1));
    let w = |idx: &[usize]| -> Result<Vec<SparseOperator<F>>> {
        need(d, 2, name)?;
        let fam = w_family::<F>(d);
        Ok(idx.iter().map(|&i| fam[i].clone()).collect())
    };
    match name {
        "w1" => w(&[0]),
        "w2" => w(&[1]),
        "w3" => w(&[2]),
        "w4" => w(&[3]),
        "w12" => w(&[0, 1]),
        "w123" => w(&[0, 1, 2]),
        "w1234" => w(&[0, 1, 2, 3]),
        "so2n1_family" | "so2n2_family" => {
            need(d, 2, name)?;
            let mut out = vec![
                w1::<F>(d),
                SparseOperator::basis(amb, maj_key(&[1])),
                SparseOperator::basis(amb, maj_key(&[2])),
            ];
            if name == "so2n2_family" {
                let core: Vec<usize> = (1..=2 * d - 2).collect();
                let mut a = core.clone();
                a.push(2 * d - 1);
                let mut b = core;
                b.push(2 * d);
                out.push(SparseOperator::basis(amb, maj_key(&a)));
                out.push(SparseOperator::basis(amb, maj_key(&b)));
            }
            Ok(out)
        }
        "xx_chain_end_controls" | "xx_chain_both_end_controls" => {
            need(d, 2, name)?;
            let pa = Ambient::pauli(d);
            let string = |sites: &[(usize, char)]| {
                let mut s = vec!['I'; d];
                for &(p, c) in sites {
                    s[p - 1] = c;
                }
                parse_pauli(&s.iter().collect::<String>()).expect("valid pauli")
            };
            let mut drift = Vec::new();
            for p in 1..d {
                drift.push((string(&[(p, 'X'), (p + 1, 'X')]), F::one()));
                drift.push((string(&[(p, 'Y'), (p + 1, 'Y')]), F::one()));
            }
            let mut out = vec![
                SparseOperator::from_terms(pa, drift),
                SparseOperator::basis(pa, string(&[(1, 'X')])),
                SparseOperator::basis(pa, string(&[(1, 'Y')])),
            ];
            if name == "xx_chain_both_end_controls" {
                out.push(SparseOperator::basis(pa, string(&[(d, 'X')])));
                out.push(SparseOperator::basis(pa, string(&[(d, 'Y')])));
            }
            Ok(out)
        }
        "nn_six" => ["h0", "h_rh", "h_ch", "h_rp", "h_cp", "h_int"]
            .iter()
            .map(|n| hermitian::<F>(n, d)?.hermitian_to_skew())
            .collect(),
        _ => Ok(vec![hermitian::<F>(name, d)?.hermitian_to_skew()?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomial::maj_key;
    use crate::scalar::Q;

    #[test]
    fn w4_raw_coefficient() {
        let fam = build_named_family::<Q>("w4", 3).unwrap();
        let raw = fam[0].to_raw();
        assert_eq!(raw.coeff(maj_key(&[1, 2, 3, 4])), Cx::new(Q::from_i64(0), Q::from_ratio(1, 2)));
    }

    #[test]
    fn h0_single_mode() {
        // h0 = f^dagger f - 1/2 = -(i/2) m1 m2, so i h0 = (1/2) m1 m2 = -L(m1 m2)
        let g = build_named_family::<Q>("h0", 1).unwrap();
        assert_eq!(g[0], SparseOperator::basis(Ambient::majorana(1), maj_key(&[1, 2])).neg());
    }

    #[test]
    fn h_int_is_traceless_and_even() {
        let h = hermitian::<Q>("h_int", 4).unwrap();
        assert!(h.coeff(0).is_zero());
        let s = h.hermitian_to_skew().unwrap();
        assert!(s.is_even());
        assert!(s.terms().iter().any(|(k, _)| k.count_ones() == 4));
    }

    #[test]
    fn odd_witness_is_quadratic() {
        let g = build_named_family::<Q>("h_odd_witness", 5).unwrap();
        assert!(g[0].terms().iter().all(|(k, _)| k.count_ones() == 2));
    }

    #[test]
    fn hz0_matches_h0() {
        let a = hermitian::<Q>("hZ_0", 4).unwrap();
        let b = hermitian::<Q>("h0", 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ell_edge_dummies_vanish() {
        let z = ell::<f64>(4, 0, 'X').unwrap();
        assert!(z.terms.is_empty());
        let e = ell::<f64>(4, 2, 'Z').unwrap();
        assert!(e.hermitian_to_skew().is_ok());
    }

    #[test]
    fn unknown_name_rejected() {
        assert!(build_named_family::<Q>("nope", 3).is_err());
        assert!(build_named_family::<Q>("h_odd_witness", 4).is_err());
    }
}
