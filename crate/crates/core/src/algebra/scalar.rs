use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// `n / d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Serialises a rational as `"p/q"` (or `"p"` for integers).
pub fn rational_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => q.to_f64().unwrap_or(f64::NAN),
    }
}

/// Commutative ring of matrix entries.
///
/// Every operation is exact for the exact scalar types; matrices never mix
/// scalar types, which the type parameter enforces statically.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    /// Whether arithmetic is exact (zero tests are then decisive).
    const EXACT: bool = true;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// A size used for reporting residuals; zero iff the scalar is zero.
    fn magnitude(&self) -> f64;

    fn add_assign(&mut self, rhs: &Self) {
        *self = Scalar::add(self, rhs);
    }
}

/// Scalars with division by nonzero elements.
pub trait Field: Scalar {
    fn inv(&self) -> Option<Self>;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn magnitude(&self) -> f64 {
        rational_to_f64(&self.abs())
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// `x^k` for any integer `k`; `None` when `x = 0` and `k < 0`.
pub fn field_pow<F: Field>(x: &F, k: i64) -> Option<F> {
    let base = if k < 0 { x.inv()? } else { x.clone() };
    let mut out = F::one();
    for _ in 0..k.unsigned_abs() {
        out = out.mul(&base);
    }
    Some(out)
}
