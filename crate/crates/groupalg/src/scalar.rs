//! Scalar fields used by the convolution algebras.
//!
//! [`Gauss`] is exact arithmetic in the Gaussian rationals, so roots of unity
//! of order 1, 2 and 4 (and every rational coefficient) are exact. [`C64`] is
//! the floating-point fallback with a fixed equality tolerance.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use num::complex::Complex64 as C64;

/// Equality tolerance for floating-point scalars.
pub const FLOAT_TOL: f64 = 1e-12;

/// The ground field of an algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

pub trait Scalar: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    /// Whether equality tests are exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Builds a scalar from JSON-style `[re, im]` floats. Exact scalars read the
    /// shortest decimal representation, so `0.25` becomes `1/4`.
    fn from_f64_pair(re: f64, im: f64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn approx_eq(&self, o: &Self) -> bool;
    /// Zero test relative to a magnitude scale, used for pivoting.
    fn negligible(&self, scale: f64) -> bool;
    fn abs_f64(&self) -> f64;
    fn to_c64(&self) -> C64;
    /// Exact modulus when it is rational.
    fn abs_exact(&self) -> Option<BigRational>;
    fn is_unimodular(&self) -> bool;
    fn is_real(&self) -> bool;

    fn is_one(&self) -> bool {
        self.approx_eq(&Self::one())
    }
    fn is_sign(&self) -> bool {
        self.approx_eq(&Self::one()) || self.approx_eq(&Self::one().neg())
    }
    fn i() -> Self {
        Self::from_f64_pair(0.0, 1.0)
    }
}

/// Exact Gaussian rational `re + i im`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gauss {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gauss {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gauss { re, im }
    }

    pub fn int(re: i64, im: i64) -> Self {
        Gauss {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Gauss {
            re: BigRational::new(num.into(), den.into()),
            im: BigRational::zero(),
        }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Debug for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Parses the shortest decimal representation of `x` as a rational.
pub fn rational_from_f64(x: f64) -> BigRational {
    assert!(x.is_finite(), "non-finite scalar");
    let s = format!("{:e}", x);
    let (mant, exp) = s.split_once('e').unwrap_or((&s, "0"));
    let exp: i64 = exp.parse().unwrap_or(0);
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches('-');
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: BigInt = format!("{}{}", int_part, frac_part).parse().unwrap();
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * num::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    r
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact square root of a non-negative rational, if it is rational.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Scalar for Gauss {
    const EXACT: bool = true;

    fn zero() -> Self {
        Gauss::int(0, 0)
    }
    fn one() -> Self {
        Gauss::int(1, 0)
    }
    fn from_i64(v: i64) -> Self {
        Gauss::int(v, 0)
    }
    fn from_f64_pair(re: f64, im: f64) -> Self {
        Gauss {
            re: rational_from_f64(re),
            im: rational_from_f64(im),
        }
    }
    fn add(&self, o: &Self) -> Self {
        Gauss {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Gauss {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Gauss {
                re: &self.re * &o.re,
                im: BigRational::zero(),
            };
        }
        Gauss {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg(&self) -> Self {
        Gauss {
            re: -&self.re,
            im: -&self.im,
        }
    }
    fn conj(&self) -> Self {
        Gauss {
            re: self.re.clone(),
            im: -&self.im,
        }
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        let n = self.norm_sqr();
        Some(Gauss {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn approx_eq(&self, o: &Self) -> bool {
        self == o
    }
    fn negligible(&self, _scale: f64) -> bool {
        Scalar::is_zero(self)
    }
    fn abs_f64(&self) -> f64 {
        if self.im.is_zero() {
            return rational_to_f64(&self.re).abs();
        }
        rational_to_f64(&self.re).hypot(rational_to_f64(&self.im))
    }
    fn to_c64(&self) -> C64 {
        C64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
    fn abs_exact(&self) -> Option<BigRational> {
        if self.im.is_zero() {
            return Some(self.re.abs());
        }
        if self.re.is_zero() {
            return Some(self.im.abs());
        }
        rational_sqrt(&self.norm_sqr())
    }
    fn is_unimodular(&self) -> bool {
        self.norm_sqr().is_one()
    }
    fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }
    fn from_f64_pair(re: f64, im: f64) -> Self {
        C64::new(re, im)
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
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        num::complex::Complex::conj(self)
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(num::complex::Complex::inv(self))
        }
    }
    fn is_zero(&self) -> bool {
        self.norm() <= FLOAT_TOL
    }
    fn approx_eq(&self, o: &Self) -> bool {
        (self - o).norm() <= FLOAT_TOL * 1f64.max(self.norm()).max(o.norm())
    }
    fn negligible(&self, scale: f64) -> bool {
        self.norm() <= 1e-9 * scale.max(f64::MIN_POSITIVE)
    }
    fn abs_f64(&self) -> f64 {
        self.norm()
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn abs_exact(&self) -> Option<BigRational> {
        None
    }
    fn is_unimodular(&self) -> bool {
        (self.norm() - 1.0).abs() <= 1e-9
    }
    fn is_real(&self) -> bool {
        self.im.abs() <= FLOAT_TOL
    }
}

/// A norm value: always a float, plus the exact rational when every term
/// involved had a rational modulus.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormValue {
    pub value: f64,
    #[serde(serialize_with = "ser_opt_rational")]
    pub exact: Option<BigRational>,
}

fn ser_opt_rational<S: serde::Serializer>(v: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

impl NormValue {
    pub fn zero() -> Self {
        NormValue {
            value: 0.0,
            exact: Some(BigRational::zero()),
        }
    }

    pub fn float(value: f64) -> Self {
        NormValue { value, exact: None }
    }

    /// Sum of moduli of the given scalars.
    pub fn abs_sum<'a, S: Scalar, I: IntoIterator<Item = &'a S>>(it: I) -> Self {
        let mut value = 0.0;
        let mut exact = Some(BigRational::zero());
        for s in it {
            value += s.abs_f64();
            exact = match (exact, s.abs_exact()) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            };
        }
        if let Some(e) = &exact {
            value = rational_to_f64(e);
        }
        NormValue { value, exact }
    }

    pub fn max(self, o: NormValue) -> NormValue {
        match (&self.exact, &o.exact) {
            (Some(a), Some(b)) => {
                if a >= b {
                    self
                } else {
                    o
                }
            }
            _ => NormValue::float(self.value.max(o.value)),
        }
    }

    /// Equality: exact when both sides are exact, else within `rel` relative slack.
    pub fn equals(&self, o: &NormValue, rel: f64) -> bool {
        match (&self.exact, &o.exact) {
            (Some(a), Some(b)) => a == b,
            _ => (self.value - o.value).abs() <= rel * 1f64.max(self.value.abs()).max(o.value.abs()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_ingestion_is_exact() {
        assert_eq!(rational_from_f64(0.25), BigRational::new(1.into(), 4.into()));
        assert_eq!(rational_from_f64(-0.1), BigRational::new((-1).into(), 10.into()));
        assert_eq!(rational_from_f64(3.0), BigRational::from_integer(3.into()));
        assert_eq!(rational_from_f64(1.5e-3), BigRational::new(3.into(), 2000.into()));
    }

    #[test]
    fn gauss_field_ops() {
        let i = Gauss::i();
        assert_eq!(i.mul(&i), Gauss::int(-1, 0));
        let z = Gauss::int(3, 4);
        assert_eq!(z.abs_exact(), Some(BigRational::from_integer(5.into())));
        assert_eq!(z.mul(&z.inv().unwrap()), Gauss::one());
        assert!(Gauss::int(1, 1).abs_exact().is_none());
        assert!(i.is_unimodular());
    }

    #[test]
    fn float_tolerance() {
        let a = C64::new(1.0, 0.0);
        let b = C64::new(1.0 + 1e-14, 0.0);
        assert!(a.approx_eq(&b));
        assert!(!a.approx_eq(&C64::new(1.0 + 1e-8, 0.0)));
    }

    #[test]
    fn norm_value_sum() {
        let v = [Gauss::int(3, 4), Gauss::int(0, -2)];
        let n = NormValue::abs_sum(v.iter());
        assert_eq!(n.exact, Some(BigRational::from_integer(7.into())));
        assert_eq!(n.value, 7.0);
    }
}
