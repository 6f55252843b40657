//! Dense univariate polynomials with coefficients in a [`Scalar`] field.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{RealScalar, Scalar};

/// `coeffs[k]` multiplies `x^k`; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `a + b·x`
    pub fn linear(a: T, b: T) -> Self {
        Poly::new(vec![a, b])
    }

    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let cur = std::mem::replace(&mut out[i + j], T::zero());
                out[i + j] = cur + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![T::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Euclidean division `self = q·rhs + r`.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        let dr = rhs.degree().expect("division by zero polynomial");
        let lead = rhs.leading();
        let mut rem = self.coeffs.clone();
        let Some(ds) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if ds < dr {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![T::zero(); ds - dr + 1];
        for k in (0..=ds - dr).rev() {
            let c = rem[k + dr].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let cur = std::mem::replace(&mut rem[k + j], T::zero());
                rem[k + j] = cur - c.clone() * b.clone();
            }
            q[k] = c;
        }
        rem.truncate(dr);
        (Poly::new(q), Poly::new(rem))
    }

    /// Division that must leave no remainder.
    pub fn div_exact(&self, rhs: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(rhs);
        if !r.is_zero() && T::is_exact() {
            return Err(Error::Numeric(format!("inexact polynomial division, remainder degree {:?}", r.degree())));
        }
        Ok(q)
    }
}

impl<T: RealScalar> Poly<T> {
    pub fn to_f64(&self) -> Poly<f64> {
        Poly::new(self.coeffs.iter().map(|c| c.to_f64()).collect())
    }
}

impl Poly<f64> {
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// All complex roots by Aberth–Ehrlich iteration followed by Newton polish.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let n = match self.degree() {
            None => return Err(Error::Numeric("roots of the zero polynomial".into())),
            Some(0) => return Ok(Vec::new()),
            Some(n) => n,
        };
        let lead = self.leading();
        let monic: Vec<Complex64> = self.coeffs.iter().map(|&c| Complex64::new(c / lead, 0.0)).collect();
        let eval = |z: Complex64| -> (Complex64, Complex64) {
            let mut p = Complex64::new(1.0, 0.0);
            let mut dp = Complex64::new(0.0, 0.0);
            for c in monic.iter().rev().skip(1) {
                dp = dp * z + p;
                p = p * z + c;
            }
            (p, dp)
        };
        // Cauchy-style bound for the initial circle.
        let radius = monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max) + 1.0;
        let mean_log = (monic[0].norm().max(f64::MIN_POSITIVE)).ln() / n as f64;
        let r0 = mean_log.exp().min(radius);
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
                Complex64::from_polar(r0, theta)
            })
            .collect();
        let mut converged = false;
        for _ in 0..2000 {
            let mut max_step: f64 = 0.0;
            for i in 0..n {
                let (p, dp) = eval(z[i]);
                if p.norm() == 0.0 {
                    continue;
                }
                let ratio = p / dp;
                let repulsion: Complex64 =
                    (0..n).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1e-300));
            }
            if max_step < 1e-13 {
                converged = true;
                break;
            }
        }
        if !converged {
            // Accept stagnated iterates whose backward error is at rounding level.
            converged = z.iter().all(|&zi| {
                let scale: f64 = monic.iter().rev().fold(0.0, |acc, c| acc * zi.norm() + c.norm());
                eval(zi).0.norm() <= 1e-10 * scale
            });
        }
        if !converged {
            return Err(Error::NoConvergence { method: "Aberth root finder", detail: format!("degree {n}") });
        }
        for zi in z.iter_mut() {
            for _ in 0..3 {
                let (p, dp) = eval(*zi);
                if dp.norm() == 0.0 {
                    break;
                }
                let next = *zi - p / dp;
                if eval(next).0.norm() < p.norm() {
                    *zi = next;
                } else {
                    break;
                }
            }
        }
        z.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        Ok(z)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        BigRational::from_i64(v)
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = Poly::new(vec![q(1), q(2), q(3)]);
        let b = Poly::new(vec![q(-4), q(0), q(5)]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        let (_, r) = prod.add(&Poly::constant(q(1))).div_rem(&b);
        assert_eq!(r, Poly::constant(q(1)));
    }

    #[test]
    fn roots_of_quadratic_pair() {
        // 27x^2 + 12x + 2 has roots -(2 ± i√2)/9
        let p = Poly::new(vec![2.0, 12.0, 27.0]);
        let r = p.roots().unwrap();
        assert!((r[0] - Complex64::new(-2.0 / 9.0, -(2f64).sqrt() / 9.0)).norm() < 1e-14);
        assert!((r[1] - Complex64::new(-2.0 / 9.0, (2f64).sqrt() / 9.0)).norm() < 1e-14);
    }

    #[test]
    fn roots_of_wilkinson_like() {
        let mut p = Poly::constant(1.0);
        for k in 1..=8 {
            p = p.mul(&Poly::linear(-(k as f64), 1.0));
        }
        let r = p.roots().unwrap();
        for (k, z) in r.iter().enumerate() {
            assert!((z - Complex64::new((k + 1) as f64, 0.0)).norm() < 1e-9, "{z}");
        }
    }
}
