//! Finite sums `Σ c·t^k·e^{iΩt}` closed under products and `∫₀ᵗ`.

use num_complex::{Complex, Complex64};
use num_traits::Zero;

use crate::scalar::{i_pow, RealScalar};

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseTerm<T> {
    pub c: Complex<T>,
    pub k: u32,
    pub omega: T,
}

/// Terms are kept sorted by `(k, Ω)` with equal keys merged and zero
/// coefficients removed.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasePolynomial<T> {
    terms: Vec<PhaseTerm<T>>,
}

impl<T: RealScalar> PhasePolynomial<T> {
    pub fn zero() -> Self {
        PhasePolynomial { terms: Vec::new() }
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::from_terms(vec![PhaseTerm { c, k: 0, omega: T::zero() }])
    }

    /// `c·t^k·e^{iΩt}`
    pub fn monomial(c: Complex<T>, k: u32, omega: T) -> Self {
        Self::from_terms(vec![PhaseTerm { c, k, omega }])
    }

    pub fn from_terms(mut terms: Vec<PhaseTerm<T>>) -> Self {
        terms.sort_by(|a, b| {
            a.k.cmp(&b.k).then(a.omega.partial_cmp(&b.omega).unwrap_or(std::cmp::Ordering::Equal))
        });
        let mut out: Vec<PhaseTerm<T>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.k == t.k && last.omega == t.omega => last.c = last.c.clone() + t.c,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.c.is_zero());
        PhasePolynomial { terms: out }
    }

    pub fn terms(&self) -> &[PhaseTerm<T>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&rhs.terms).cloned().collect())
    }

    pub fn scale(&self, s: &Complex<T>) -> Self {
        Self::from_terms(self.terms.iter().map(|t| PhaseTerm { c: t.c.clone() * s.clone(), ..t.clone() }).collect())
    }

    /// Multiplies by `e^{iΩt}`.
    pub fn shift_phase(&self, omega: &T) -> Self {
        Self::from_terms(
            self.terms.iter().map(|t| PhaseTerm { omega: t.omega.clone() + omega.clone(), ..t.clone() }).collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                out.push(PhaseTerm {
                    c: a.c.clone() * b.c.clone(),
                    k: a.k + b.k,
                    omega: a.omega.clone() + b.omega.clone(),
                });
            }
        }
        Self::from_terms(out)
    }

    /// `∫₀ᵗ p(s) ds`.
    pub fn integrate(&self) -> Self {
        let mut out = Vec::new();
        for t in &self.terms {
            if t.omega.is_zero() {
                let c = t.c.clone() / Complex::new(T::from_i64(t.k as i64 + 1), T::zero());
                out.push(PhaseTerm { c, k: t.k + 1, omega: T::zero() });
                continue;
            }
            // ∫₀ᵗ s^k e^{iΩs} ds = e^{iΩt} Σ_j (−1)^j k!/(k−j)! t^{k−j}/(iΩ)^{j+1} − (−1)^k k!/(iΩ)^{k+1}
            let mut falling = T::one();
            let mut inv_pow = T::one() / t.omega.clone();
            for j in 0..=t.k {
                let sign = if j % 2 == 0 { T::one() } else { -T::one() };
                // 1/(iΩ)^{j+1} = (−i)^{j+1}/Ω^{j+1}
                let factor = i_pow::<T>(3 * (j + 1)) * Complex::new(sign * falling.clone() * inv_pow.clone(), T::zero());
                out.push(PhaseTerm { c: t.c.clone() * factor.clone(), k: t.k - j, omega: t.omega.clone() });
                if j == t.k {
                    out.push(PhaseTerm { c: -(t.c.clone() * factor), k: 0, omega: T::zero() });
                }
                falling = falling * T::from_i64((t.k - j) as i64);
                inv_pow = inv_pow / t.omega.clone();
            }
        }
        Self::from_terms(out)
    }

    /// Value at `t = 0`.
    pub fn at_zero(&self) -> Complex<T> {
        self.terms.iter().filter(|t| t.k == 0).fold(Complex::zero(), |acc, t| acc + t.c.clone())
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|term| {
                let c = Complex64::new(term.c.re.to_f64(), term.c.im.to_f64());
                c * t.powi(term.k as i32) * Complex64::from_polar(1.0, term.omega.to_f64() * t)
            })
            .sum()
    }

    /// Largest power of `t`; grows with order in Dyson integrands.
    pub fn max_power(&self) -> u32 {
        self.terms.iter().map(|t| t.k).max().unwrap_or(0)
    }
}

impl<T: RealScalar> Default for PhasePolynomial<T> {
    fn default() -> Self {
        Self::zero()
    }
}

/// `1` as a complex scalar.
pub fn c_one<T: RealScalar>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use crate::scalar::Scalar;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn integral_matches_quadrature() {
        let p = PhasePolynomial::<f64>::from_terms(vec![
            PhaseTerm { c: Complex::new(0.3, -1.2), k: 2, omega: 1.7 },
            PhaseTerm { c: Complex::new(2.0, 0.5), k: 1, omega: 0.0 },
            PhaseTerm { c: Complex::new(-0.4, 0.0), k: 0, omega: -2.5 },
        ]);
        let ip = p.integrate();
        let t = 1.3;
        let n = 20000;
        let h = t / n as f64;
        let simpson: Complex64 = (0..=n)
            .map(|i| {
                let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
                p.eval(i as f64 * h) * w
            })
            .sum::<Complex64>()
            * (h / 3.0);
        assert!((ip.eval(t) - simpson).norm() < 1e-12);
        assert_eq!(ip.eval(0.0).norm(), 0.0);
    }

    #[test]
    fn exact_merge_and_cancellation() {
        let a = PhasePolynomial::monomial(Complex::new(q(1, 3), q(0, 1)), 1, q(2, 1));
        let b = a.scale(&Complex::new(q(-1, 1), q(0, 1)));
        assert!(a.add(&b).is_zero());
        let sq = a.mul(&a);
        assert_eq!(sq.terms()[0].k, 2);
        assert_eq!(sq.terms()[0].omega, q(4, 1));
        assert_eq!(sq.terms()[0].c, Complex::new(q(1, 9), q(0, 1)));
    }

    #[test]
    fn exact_integral_of_exponential() {
        // ∫₀ᵗ e^{2is} ds = (e^{2it} − 1)/(2i)
        let p = PhasePolynomial::monomial(c_one::<BigRational>(), 0, q(2, 1));
        let ip = p.integrate();
        let want = PhasePolynomial::from_terms(vec![
            PhaseTerm { c: Complex::new(q(0, 1), q(-1, 2)), k: 0, omega: q(2, 1) },
            PhaseTerm { c: Complex::new(q(0, 1), q(1, 2)), k: 0, omega: q(0, 1) },
        ]);
        assert_eq!(ip, want);
        assert!(ip.at_zero().is_zero());
    }
}
