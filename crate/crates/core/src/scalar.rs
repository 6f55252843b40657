//! Scalar abstraction shared by the exact and floating-point paths.
//!
//! Everything that only needs field arithmetic (the Rayleigh–Schrödinger
//! recursion, Kato projector sums, phase-polynomial algebra, determinants)
//! is written once against [`Scalar`] and instantiated with `f64`,
//! `BigRational`, [`HighPrecision`](crate::hp::HighPrecision) or complex
//! versions of these.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Field element usable by the generic algorithms.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;

    /// Exact conversion for exact types (every finite `f64` is a dyadic rational).
    fn from_f64(v: f64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    /// Magnitude as `f64`, used for pivoting and thresholds.
    fn magnitude(&self) -> f64;

    /// True when arithmetic never rounds.
    fn is_exact() -> bool {
        false
    }
}

/// Ordered real field element.
pub trait RealScalar: Scalar + PartialOrd {
    fn to_f64(&self) -> f64;

    /// `ln|x|` without overflow for values outside the `f64` range.
    fn ln_abs(&self) -> f64 {
        self.to_f64().abs().ln()
    }

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn magnitude(&self) -> f64 {
        f64::abs(*self)
    }
}

impl RealScalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_i64(v: i64) -> Self {
        v as f32
    }
    fn from_f64(v: f64) -> Self {
        v as f32
    }
    fn magnitude(&self) -> f64 {
        f32::abs(*self) as f64
    }
}

impl RealScalar for f32 {
    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite f64")
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn magnitude(&self) -> f64 {
        RealScalar::to_f64(self).abs()
    }
    fn is_exact() -> bool {
        true
    }
}

impl RealScalar for BigRational {
    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }
    fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        ln_abs_bigint(self.numer()) - ln_abs_bigint(self.denom())
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

/// Converts a big rational to the nearest-ish `f64` without overflowing on
/// huge numerators and denominators.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = ToPrimitive::to_f64(r) {
        if v.is_finite() && (v != 0.0 || r.is_zero()) {
            return v;
        }
    }
    let n = r.numer();
    let d = r.denom();
    let shift = n.bits() as i64 - d.bits() as i64;
    // Bring the quotient into [2^52, 2^54) before converting.
    let (n2, d2) = if shift > 53 {
        (n.clone(), d << (shift - 53) as usize)
    } else {
        (n << (53 - shift) as usize, d.clone())
    };
    let q = ToPrimitive::to_f64(&(&n2 / &d2)).unwrap_or(0.0);
    q * 2f64.powi((shift - 53) as i32)
}

impl<T: RealScalar> Scalar for Complex<T> {
    fn from_i64(v: i64) -> Self {
        Complex::new(T::from_i64(v), T::zero())
    }
    fn from_f64(v: f64) -> Self {
        Complex::new(T::from_f64(v), T::zero())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(T::from_ratio(num, den), T::zero())
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn magnitude(&self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }
    fn is_exact() -> bool {
        T::is_exact()
    }
}

/// `ln|n|` for an arbitrarily large integer.
pub fn ln_abs_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return ToPrimitive::to_f64(n).unwrap_or(f64::NAN).abs().ln();
    }
    let shift = bits - 64;
    let top = ToPrimitive::to_f64(&(n.magnitude() >> shift)).unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `i^k` as a complex scalar.
pub fn i_pow<T: RealScalar>(k: u32) -> Complex<T> {
    match k % 4 {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

/// Lossy view of a complex scalar as `Complex64`.
pub fn to_c64<T: RealScalar>(z: &Complex<T>) -> num_complex::Complex64 {
    num_complex::Complex64::new(z.re.to_f64(), z.im.to_f64())
}

/// `base^exp` by repeated squaring.
pub fn powi<T: Scalar>(base: &T, exp: u32) -> T {
    let mut acc = T::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b.clone();
        }
        e >>= 1;
        if e > 0 {
            b = b.clone() * b;
        }
    }
    acc
}

/// Factorial as an exact big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_to_f64_handles_huge_parts() {
        let big = BigInt::from(10).pow(400);
        let r = BigRational::new(big.clone() * BigInt::from(3), big * BigInt::from(2));
        assert_eq!(ratio_to_f64(&r), 1.5);
        let tiny = BigRational::new(BigInt::one(), BigInt::from(10).pow(30));
        assert!((ratio_to_f64(&tiny) - 1e-30).abs() < 1e-44);
    }

    #[test]
    fn i_pow_cycles() {
        let i3: Complex<f64> = i_pow(3);
        assert_eq!(i3, Complex::new(0.0, -1.0));
        assert_eq!(i_pow::<f64>(4), Complex::new(1.0, 0.0));
    }

    #[test]
    fn from_f64_is_exact_for_rationals() {
        let r = <BigRational as Scalar>::from_f64(0.1);
        assert_ne!(r, BigRational::from_ratio(1, 10));
        assert_eq!(RealScalar::to_f64(&r), 0.1);
    }
}
