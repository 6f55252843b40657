//! Software floating point with a configurable working precision.
//!
//! Values carry their own precision; binary operations round to the larger
//! precision of their operands. Constants created through [`Scalar`] pick up
//! the thread's current working precision, set with [`with_precision`].

use std::cell::Cell;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_traits::{Num, One, Zero};

use crate::scalar::{RealScalar, Scalar};

type Inner = FBig<HalfEven>;

const DEFAULT_BITS: usize = 212;

thread_local! {
    static WORKING_BITS: Cell<usize> = const { Cell::new(DEFAULT_BITS) };
}

/// Decimal digits to binary precision, with a small guard.
pub fn digits_to_bits(digits: u32) -> usize {
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as usize + 8
}

/// Runs `f` with the given working precision (in decimal digits).
pub fn with_precision<R>(digits: u32, f: impl FnOnce() -> R) -> R {
    let bits = digits_to_bits(digits);
    let prev = WORKING_BITS.with(|w| w.replace(bits));
    let out = f();
    WORKING_BITS.with(|w| w.set(prev));
    out
}

pub fn working_bits() -> usize {
    WORKING_BITS.with(|w| w.get())
}

#[derive(Clone, PartialEq, PartialOrd)]
pub struct HighPrecision(Inner);

impl HighPrecision {
    fn lift(v: Inner) -> Self {
        HighPrecision(v.with_precision(working_bits()).value())
    }

    pub fn precision_bits(&self) -> usize {
        self.0.precision()
    }

    pub fn sqrt(&self) -> Self {
        HighPrecision(self.0.sqrt())
    }

    pub fn from_rational(r: &num_rational::BigRational) -> Self {
        let num = Self::from_bigint(r.numer());
        let den = Self::from_bigint(r.denom());
        num / den
    }

    fn from_bigint(v: &num_bigint::BigInt) -> Self {
        let ibig: dashu_int::IBig = v.to_string().parse().expect("decimal integer");
        Self::lift(Inner::from(ibig))
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let dec = self.0.clone().with_base_and_precision::<10>(digits).value();
        format!("{dec}")
    }
}

impl fmt::Debug for HighPrecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl fmt::Display for HighPrecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string(30))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for HighPrecision {
            type Output = HighPrecision;
            fn $m(self, rhs: HighPrecision) -> HighPrecision {
                HighPrecision($tr::$m(self.0, rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Rem for HighPrecision {
    type Output = HighPrecision;
    fn rem(self, rhs: HighPrecision) -> HighPrecision {
        let q = (self.0.clone() / rhs.0.clone()).trunc();
        HighPrecision(self.0 - q * rhs.0)
    }
}

impl Neg for HighPrecision {
    type Output = HighPrecision;
    fn neg(self) -> HighPrecision {
        HighPrecision(-self.0)
    }
}

impl Zero for HighPrecision {
    fn zero() -> Self {
        Self::lift(Inner::ZERO)
    }
    fn is_zero(&self) -> bool {
        self.0 == Inner::ZERO
    }
}

impl One for HighPrecision {
    fn one() -> Self {
        Self::lift(Inner::ONE)
    }
}

impl Num for HighPrecision {
    type FromStrRadixErr = String;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, String> {
        if radix != 10 {
            return Err(format!("unsupported radix {radix}"));
        }
        s.parse::<Inner>().map(Self::lift).map_err(|e| e.to_string())
    }
}

impl Scalar for HighPrecision {
    fn from_i64(v: i64) -> Self {
        Self::lift(Inner::from(v))
    }
    fn from_f64(v: f64) -> Self {
        Self::lift(Inner::try_from(v).expect("finite f64"))
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl RealScalar for HighPrecision {
    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
    fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let repr = self.0.repr();
        use dashu_int::ops::BitTest;
        let (_, mag) = repr.significand().clone().into_parts();
        let bits = mag.bit_len();
        let keep = bits.min(60);
        let top: f64 = (mag >> (bits - keep)).to_f64().value();
        top.ln() + ((bits - keep) as f64 + repr.exponent() as f64) * std::f64::consts::LN_2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_third_carries_working_precision() {
        let third = with_precision(60, || HighPrecision::from_ratio(1, 3));
        assert!(third.precision_bits() >= 199);
        let s = third.to_decimal_string(40);
        assert!(s.starts_with("0.33333333333333333333333333333333"), "{s}");
    }

    #[test]
    fn sqrt_two_squared() {
        with_precision(50, || {
            let two = HighPrecision::from_i64(2);
            let r = two.sqrt();
            let back = r.clone() * r;
            let err = (back - HighPrecision::from_i64(2)).to_f64().abs();
            assert!(err < 1e-45);
        });
    }

    #[test]
    fn ln_abs_beyond_f64_range() {
        with_precision(30, || {
            let mut x = HighPrecision::from_i64(10);
            for _ in 0..9 {
                x = x.clone() * x;
            }
            // 10^512
            assert!((x.ln_abs() - 512.0 * 10f64.ln()).abs() < 1e-9);
            let y = HighPrecision::from_i64(1) / x;
            assert!((y.ln_abs() + 512.0 * 10f64.ln()).abs() < 1e-9);
        });
    }

    #[test]
    fn rational_conversion() {
        let r = num_rational::BigRational::new(7.into(), 8.into());
        let h = with_precision(30, || HighPrecision::from_rational(&r));
        assert_eq!(h.to_f64(), 0.875);
    }
}
