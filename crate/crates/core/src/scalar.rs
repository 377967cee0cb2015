//! Coefficient fields.
//!
//! Three implementations of [`Field`] are provided: exact rationals ([`Q`]),
//! IEEE doubles, and the prime field [`Fp`] used for fast exact rank counts.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;

/// Arbitrary-precision rational, the default exact coefficient type.
pub type Q = BigRational;

/// Minimal field interface used by the sparse algebra and elimination kernels.
pub trait Field: Clone + PartialEq + Debug + Send + Sync + 'static {
    /// True for fields with exact arithmetic.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_f64(v: f64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Division; `o` must be nonzero.
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn add_assign(&mut self, o: &Self);
    /// `self -= a * b`.
    fn sub_mul_assign(&mut self, a: &Self, b: &Self);
    fn mul_i64(&self, k: i64) -> Self;
    fn to_f64(&self) -> f64;

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Image in the prime field, if the field is exact.
    fn to_fp(&self) -> Option<Fp> {
        None
    }
}

impl Field for Q {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite float")
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
    fn mul_i64(&self, k: i64) -> Self {
        match k {
            1 => self.clone(),
            -1 => -self,
            _ => self * BigRational::from_integer(BigInt::from(k)),
        }
    }
    fn to_f64(&self) -> f64 {
        self.to_f64_lossy()
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64_lossy()
    }
    fn to_fp(&self) -> Option<Fp> {
        Some(Fp::from_rational(self))
    }
}

trait LossyF64 {
    fn to_f64_lossy(&self) -> f64;
}

impl LossyF64 for BigRational {
    fn to_f64_lossy(&self) -> f64 {
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => ToPrimitive::to_f64(self).unwrap_or(f64::NAN),
        }
    }
}

impl Field for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
    fn mul_i64(&self, k: i64) -> Self {
        self * k as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// The Mersenne prime 2^61 - 1.
pub const P61: u64 = (1u64 << 61) - 1;

/// Element of Z / (2^61 - 1).
///
/// Ranks computed here agree with rational ranks unless the prime divides
/// one of the relevant minors, which for the integer-valued structure
/// constants handled by this crate has negligible probability.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Fp(pub u64);

impl Fp {
    #[inline]
    fn reduce128(x: u128) -> u64 {
        let lo = (x as u64) & P61;
        let hi = (x >> 61) as u64;
        let mut s = lo + (hi & P61) + ((x >> 122) as u64);
        while s >= P61 {
            s -= P61;
        }
        s
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Fp(Self::reduce128(acc.0 as u128 * base.0 as u128));
            }
            base = Fp(Self::reduce128(base.0 as u128 * base.0 as u128));
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Fp {
        assert!(self.0 != 0, "inverse of zero in Fp");
        self.pow(P61 - 2)
    }

    pub fn from_bigint(v: &BigInt) -> Fp {
        let p = BigInt::from(P61);
        let mut r = v % &p;
        if r.is_negative() {
            r += &p;
        }
        Fp(r.to_u64().expect("reduced residue fits"))
    }

    /// Image of a rational; panics if the denominator vanishes mod p.
    pub fn from_rational(q: &Q) -> Fp {
        let n = Self::from_bigint(q.numer());
        let d = Self::from_bigint(q.denom());
        n.mul(&d.inv())
    }
}

impl Field for Fp {
    const EXACT: bool = true;

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(v: i64) -> Self {
        let m = v.rem_euclid(P61 as i64);
        Fp(m as u64)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).div(&Self::from_i64(den))
    }
    fn from_f64(v: f64) -> Self {
        Self::from_rational(&Q::from_f64(v))
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        let mut s = self.0 + o.0;
        if s >= P61 {
            s -= P61;
        }
        Fp(s)
    }
    fn sub(&self, o: &Self) -> Self {
        if self.0 >= o.0 {
            Fp(self.0 - o.0)
        } else {
            Fp(self.0 + P61 - o.0)
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(Self::reduce128(self.0 as u128 * o.0 as u128))
    }
    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            Fp(P61 - self.0)
        }
    }
    fn add_assign(&mut self, o: &Self) {
        *self = Field::add(self, o);
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = Field::sub(self, &a.mul(b));
    }
    fn mul_i64(&self, k: i64) -> Self {
        self.mul(&Self::from_i64(k))
    }
    fn to_fp(&self) -> Option<Fp> {
        Some(*self)
    }
    /// Symmetric representative as a double; only meaningful for small values.
    fn to_f64(&self) -> f64 {
        if self.0 > P61 / 2 {
            -((P61 - self.0) as f64)
        } else {
            self.0 as f64
        }
    }
}

/// Complex number over a [`Field`], used for raw operator coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct Cx<F> {
    pub re: F,
    pub im: F,
}

impl<F: Field> Cx<F> {
    pub fn new(re: F, im: F) -> Self {
        Cx { re, im }
    }
    pub fn zero() -> Self {
        Cx::new(F::zero(), F::zero())
    }
    pub fn one() -> Self {
        Cx::new(F::one(), F::zero())
    }
    pub fn i() -> Self {
        Cx::new(F::zero(), F::one())
    }
    pub fn real(re: F) -> Self {
        Cx::new(re, F::zero())
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn add(&self, o: &Self) -> Self {
        Cx::new(self.re.add(&o.re), self.im.add(&o.im))
    }
    pub fn sub(&self, o: &Self) -> Self {
        Cx::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }
    pub fn mul(&self, o: &Self) -> Self {
        Cx::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }
    pub fn scale(&self, s: &F) -> Self {
        Cx::new(self.re.mul(s), self.im.mul(s))
    }
    pub fn neg(&self) -> Self {
        Cx::new(self.re.neg(), self.im.neg())
    }
    pub fn conj(&self) -> Self {
        Cx::new(self.re.clone(), self.im.neg())
    }
    /// Multiply by `i^k`.
    pub fn mul_ipow(&self, k: u8) -> Self {
        match k & 3 {
            0 => self.clone(),
            1 => Cx::new(self.im.neg(), self.re.clone()),
            2 => self.neg(),
            _ => Cx::new(self.im.clone(), self.re.neg()),
        }
    }
    pub fn to_c64(&self) -> num::complex::Complex64 {
        num::complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_roundtrip() {
        for v in [1i64, 2, 3, 12345, -7, 1 << 40] {
            let x = Fp::from_i64(v);
            assert_eq!(x.mul(&x.inv()), Fp::one());
        }
    }

    #[test]
    fn fp_rational_image() {
        let q = Q::from_ratio(-3, 7);
        let x = Fp::from_rational(&q);
        assert_eq!(x.mul(&Fp::from_i64(7)), Fp::from_i64(-3));
    }

    #[test]
    fn fp_symmetric_f64() {
        assert_eq!(Fp::from_i64(-5).to_f64(), -5.0);
        assert_eq!(Fp::from_i64(5).to_f64(), 5.0);
    }

    #[test]
    fn cx_ipow() {
        let z = Cx::new(Q::from_i64(2), Q::from_i64(3));
        assert_eq!(z.mul_ipow(1), z.mul(&Cx::i()));
        assert_eq!(z.mul_ipow(2), z.neg());
        assert_eq!(z.mul_ipow(3), z.mul(&Cx::i()).neg());
    }
}
