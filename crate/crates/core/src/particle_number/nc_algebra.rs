//! The isomorphism between number-conserving quadratics and `u(d)`, and the
//! algebra of general number-conserving interactions.

use crate::algebra::jw::{annihilation, creation};
use crate::algebra::monomial::{maj_key, Ambient};
use crate::algebra::operator::{Operator, SparseOperator};
use crate::error::{input, Result};
use crate::lie::{lie_closure, structure_profile, Structure, StructureReport};
use crate::quasifree::{CMat, Mat, QuadraticHam};
use crate::scalar::Field;
use serde::Serialize;

/// `i h -> i A` for `h = sum A_pq (f_p^dag f_q - delta/2)`.
pub fn iota<F: Field>(h: &QuadraticHam<F>) -> Result<CMat<F>> {
    if !h.b_re.is_zero() || !h.b_im.is_zero() {
        return input("iota needs a number-conserving Hamiltonian (B = 0)");
    }
    Ok((h.a_im.neg(), h.a_re.clone()))
}

/// Inverse of [`iota`]: skew-hermitian `X` to the Hamiltonian with `A = -i X`.
pub fn iota_inverse<F: Field>(x: &CMat<F>) -> Result<QuadraticHam<F>> {
    let d = x.0.n;
    QuadraticHam::new(x.1.clone(), x.0.neg(), Mat::zeros(d), Mat::zeros(d))
}

/// Product of complex matrices in `(re, im)` form.
pub fn cmul<F: Field>(a: &CMat<F>, b: &CMat<F>) -> CMat<F> {
    (a.0.mul(&b.0).sub(&a.1.mul(&b.1)), a.0.mul(&b.1).add(&a.1.mul(&b.0)))
}

pub fn ccommutator<F: Field>(a: &CMat<F>, b: &CMat<F>) -> CMat<F> {
    let (x, y) = (cmul(a, b), cmul(b, a));
    (x.0.sub(&y.0), x.1.sub(&y.1))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `s(+_{n even} u(C(d,n))) + s(+_{n odd} u(C(d,n)))`.
pub fn nc_predicted(d: usize) -> Structure {
    let mut s = Structure::default();
    for parity in 0..2 {
        let sizes: Vec<usize> = (0..=d).filter(|n| n % 2 == parity).map(|n| binomial(d, n)).collect();
        s.add_s_sum(&sizes);
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct NcStructure {
    pub d: usize,
    pub predicted: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<StructureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
}

/// Largest `d` for which [`general_nc_structure`] runs the closure.
pub const NC_CLOSURE_MAX: usize = 4;

/// `f_S^dag f_T` with creators in increasing order then annihilators in increasing order.
fn transfer<F: Field>(d: usize, s: u32, t: u32) -> Operator<F> {
    let mut op = Operator::identity(Ambient::majorana(d));
    for p in (0..d).filter(|p| s >> p & 1 == 1) {
        op = op.mul(&creation(d, p + 1));
    }
    for p in (0..d).filter(|p| t >> p & 1 == 1) {
        op = op.mul(&annihilation(d, p + 1));
    }
    op
}

/// Skew generators spanning all number-conserving interactions, with the
/// identity and parity components removed.
pub fn nc_generators<F: Field>(d: usize) -> Result<Vec<SparseOperator<F>>> {
    let parity = maj_key(&(1..=2 * d).collect::<Vec<_>>());
    let strip = |op: Operator<F>| -> Result<SparseOperator<F>> {
        let mut op = op.traceless();
        op.terms.remove(&parity);
        op.hermitian_to_skew()
    };
    let mut out = Vec::new();
    let subsets: Vec<u32> = (0..1u32 << d).collect();
    for &s in &subsets {
        for &t in subsets.iter().filter(|&&t| t >= s && t.count_ones() == s.count_ones()) {
            let op = transfer::<F>(d, s, t);
            if s == t {
                out.push(strip(op)?);
            } else {
                let dag = op.dagger();
                out.push(strip(op.add(&dag))?);
                out.push(strip(op.sub(&dag).times_i())?);
            }
        }
    }
    out.retain(|o| !o.is_zero());
    Ok(out)
}

/// Predicted structure, confirmed by closure for `2 <= d <= NC_CLOSURE_MAX`
/// (at `d = 1` the algebra is zero).
pub fn general_nc_structure(d: usize) -> Result<NcStructure> {
    if d == 0 {
        return input("need d >= 1");
    }
    let predicted = nc_predicted(d).to_string();
    if d == 1 || d > NC_CLOSURE_MAX {
        return Ok(NcStructure { d, predicted, computed: None, matches: None });
    }
    let space = lie_closure(&nc_generators::<crate::scalar::Q>(d)?, None)?;
    let computed = structure_profile(&space)?;
    let matches = Some(computed.structure == predicted);
    Ok(NcStructure { d, predicted, computed: Some(computed), matches })
}
