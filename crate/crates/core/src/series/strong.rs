//! Strong-coupling series in `λ̃ = 1/λ` around the `φ⁴` spectrum.
//!
//! In the field eigenbasis `φ⁴` is diagonal with doubly degenerate values
//! `x_j⁴/ω²` (`±x_j` Hermite zeros). The parity combinations of `|±x_j⟩`
//! lift the degeneracy: inside a sector the harmonic term has entries
//!
//! `2 Σ_{n in sector} q_n e_n H_n(x_i) H_n(x_j) / (N H_{N−1}(x_i) H_{N−1}(x_j))`
//!
//! with `q_n = 2^{N−1−n}(N−1)!/n!`, a rational function of the roots that
//! needs no square roots, so the whole recursion runs in software floats.

use num_traits::Zero;

use super::rs::rs_coefficients;
use super::{PowerSeries, SeriesDomain};
use crate::error::{Error, Result};
use crate::hamiltonian::Sector;
use crate::hp::{with_precision, working_bits, HighPrecision};
use crate::linalg::Mat;
use crate::oscillator::{hermite_roots, TruncationSpec};
use crate::scalar::{factorial, RealScalar, Scalar};

const MIN_DIGITS: u32 = 32;

/// Positive zeros of `H_n`, refined by Newton's method at the current
/// working precision.
fn hermite_positive_roots(n: usize) -> Result<Vec<HighPrecision>> {
    let seeds: Vec<f64> = hermite_roots::<f64>(n)?.into_iter().filter(|&x| x > 0.0).collect();
    let bits = working_bits() as f64;
    let mut out = Vec::with_capacity(seeds.len());
    for seed in seeds {
        let mut x = HighPrecision::from_f64(seed);
        let mut converged = false;
        for _ in 0..200 {
            let (hn, hn1) = hermite_pair(n, &x);
            let dx = hn / (HighPrecision::from_i64(2 * n as i64) * hn1);
            x = x - dx.clone();
            if dx.is_zero() || dx.ln_abs() - x.ln_abs() < -(bits - 8.0) * std::f64::consts::LN_2 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence { method: "Hermite Newton refinement", detail: format!("degree {n}") });
        }
        out.push(x);
    }
    Ok(out)
}

/// `(H_n(x), H_{n−1}(x))`.
fn hermite_pair(n: usize, x: &HighPrecision) -> (HighPrecision, HighPrecision) {
    let h = hermite_table(n, x);
    (h[n].clone(), h[n - 1].clone())
}

fn hermite_table(n: usize, x: &HighPrecision) -> Vec<HighPrecision> {
    let two = HighPrecision::from_i64(2);
    let mut h = vec![HighPrecision::from_i64(1), two.clone() * x.clone()];
    for k in 1..n {
        let next = two.clone() * x.clone() * h[k].clone() - HighPrecision::from_i64(2 * k as i64) * h[k - 1].clone();
        h.push(next);
    }
    h.truncate(n + 1);
    h
}

fn strong_coefficients(trunc: &TruncationSpec, level: usize, max_order: usize) -> Result<Vec<HighPrecision>> {
    let n = trunc.n_max;
    let parity = level % 2;
    let roots = hermite_positive_roots(n)?;
    let tables: Vec<Vec<HighPrecision>> = roots.iter().map(|x| hermite_table(n, x)).collect();
    let omega = HighPrecision::from_f64(trunc.omega);
    let fact_top = factorial((n - 1) as u64);
    let weights: Vec<(usize, HighPrecision)> = (parity..n)
        .step_by(2)
        .map(|m| {
            let q = num_rational::BigRational::new(
                fact_top.clone() * num_bigint::BigInt::from(2).pow((n - 1 - m) as u32),
                factorial(m as u64),
            );
            let e = omega.clone() * (HighPrecision::from_i64(2 * m as i64 + 1) / HighPrecision::from_i64(2));
            (m, HighPrecision::from_rational(&q) * e)
        })
        .collect();
    let d = roots.len();
    let norm = HighPrecision::from_i64(2) / HighPrecision::from_i64(n as i64);
    let v = Mat::from_fn(d, d, |i, j| {
        let s = weights
            .iter()
            .fold(HighPrecision::zero(), |acc, (m, w)| acc + w.clone() * tables[i][*m].clone() * tables[j][*m].clone());
        norm.clone() * s / (tables[i][n - 1].clone() * tables[j][n - 1].clone())
    });
    let omega2 = omega.clone() * omega;
    let energies: Vec<HighPrecision> = roots
        .iter()
        .map(|x| {
            let x2 = x.clone() * x.clone();
            x2.clone() * x2 / omega2.clone()
        })
        .collect();
    let (coeffs, _) = rs_coefficients(&energies, &v, level / 2, max_order)?;
    Ok(coeffs)
}

/// Digits on which two evaluations agree, relative to the larger magnitude.
fn agreeing_digits(a: &HighPrecision, b: &HighPrecision, cap: u32) -> u32 {
    let diff = a.clone() - b.clone();
    if diff.is_zero() {
        return cap;
    }
    let scale = a.ln_abs().max(b.ln_abs());
    let rel = (diff.ln_abs() - scale) / std::f64::consts::LN_10;
    ((-rel).floor().max(0.0) as u32).min(cap)
}

/// High-precision strong-coupling series for single-site `level`.
///
/// Runs at `precision_digits` (default `max(4·max_order, 32)`) and again at
/// twice that; the reported precision is the number of digits on which the
/// two runs agree for every coefficient. Fewer than `min(digits/2, 30)`
/// certified digits is reported as [`Error::PrecisionExhausted`].
pub fn strong_series(
    trunc: &TruncationSpec,
    level: usize,
    max_order: usize,
    precision_digits: Option<u32>,
) -> Result<PowerSeries<HighPrecision>> {
    if level >= trunc.n_max {
        return Err(Error::InvalidArgument(format!("level {level} outside n_max {}", trunc.n_max)));
    }
    let digits = precision_digits.unwrap_or((4 * max_order as u32).max(MIN_DIGITS));
    let coarse = with_precision(digits, || strong_coefficients(trunc, level, max_order))?;
    let fine = with_precision(2 * digits, || strong_coefficients(trunc, level, max_order))?;
    let certified = coarse.iter().zip(&fine).map(|(a, b)| agreeing_digits(a, b, digits)).min().unwrap_or(digits);
    let required = (digits / 2).min(30);
    if certified < required {
        return Err(Error::PrecisionExhausted { certified, required });
    }
    Ok(PowerSeries {
        coeffs: coarse,
        domain: SeriesDomain::StrongLambdaTilde,
        precision_digits: Some(certified),
        n_max: trunc.n_max,
        level,
        sector: Sector::of_level(level),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n4_even_order_zero_is_smallest_root_to_fourth() {
        let s = strong_series(&TruncationSpec::unit(4).unwrap(), 0, 3, None).unwrap();
        let x2 = (3.0 - 6f64.sqrt()) / 2.0;
        assert!((s.coeffs[0].to_f64() - x2 * x2).abs() < 1e-15);
        assert!(s.precision_digits.unwrap() >= 30);
    }

    #[test]
    fn newton_roots_solve_hermite() {
        with_precision(80, || {
            for x in hermite_positive_roots(8).unwrap() {
                let (h, _) = hermite_pair(8, &x);
                assert!(h.ln_abs() < -150.0);
            }
        });
    }
}
