//! Weak-coupling energy series in `λ`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rs::rs_coefficients;
use super::{PowerSeries, SeriesDomain};
use crate::error::{Error, Result};
use crate::hamiltonian::{scaled_anharmonic_family, Sector};
use crate::linalg::charpoly::pencil_charpoly;
use crate::linalg::{Mat, Poly};
use crate::oscillator::TruncationSpec;
use crate::scalar::{RealScalar, Scalar};

/// Series of single-site level `level` in any field type. Exact for
/// `BigRational`; `f64`/`f32` give the same recursion in floating point.
pub fn weak_series_in<T: RealScalar>(trunc: &TruncationSpec, level: usize, max_order: usize) -> Result<PowerSeries<T>> {
    if level >= trunc.n_max {
        return Err(Error::InvalidArgument(format!("level {level} outside n_max {}", trunc.n_max)));
    }
    let sector = Sector::of_level(level);
    let fam = scaled_anharmonic_family::<T>(trunc, sector);
    let (coeffs, _) = rs_coefficients(&fam.energies, &fam.v, sector.position(level), max_order)?;
    Ok(PowerSeries {
        coeffs,
        domain: SeriesDomain::WeakLambda,
        precision_digits: None,
        n_max: trunc.n_max,
        level,
        sector,
    })
}

/// Exact rational weak-coupling series.
pub fn weak_series(trunc: &TruncationSpec, level: usize, max_order: usize) -> Result<PowerSeries<BigRational>> {
    weak_series_in::<BigRational>(trunc, level, max_order)
}

/// Same coefficients from the sector's characteristic polynomial
/// `f(z, λ) = 0`, solved order by order for the root through `z = e_level`.
pub fn weak_series_charpoly(trunc: &TruncationSpec, level: usize, max_order: usize) -> Result<Vec<BigRational>> {
    let sector = Sector::of_level(level);
    let fam = scaled_anharmonic_family::<BigRational>(trunc, sector);
    let f = pencil_charpoly(&Mat::from_diag(&fam.energies), &fam.v);
    let e0 = fam.energies[sector.position(level)].clone();
    // f_z(e0, 0)
    let fz = f
        .iter()
        .enumerate()
        .skip(1)
        .fold(BigRational::zero(), |acc, (j, p)| {
            acc + p.coeff(0) * BigRational::from_i64(j as i64) * crate::scalar::powi(&e0, (j - 1) as u32)
        });
    if fz.is_zero() {
        return Err(Error::Degenerate(format!("level {level} is a multiple root at λ = 0")));
    }
    let mut e = vec![e0];
    for m in 1..=max_order {
        let mut trial = e.clone();
        trial.push(BigRational::zero());
        let cm = compose_coeff(&f, &trial, m);
        e.push(-cm / fz.clone());
    }
    Ok(e)
}

/// Coefficient of `λ^m` in `Σ_j f_j(λ)·E(λ)^j` with `E` truncated at order `m`.
fn compose_coeff(f: &[Poly<BigRational>], e: &[BigRational], m: usize) -> BigRational {
    let trunc_mul = |a: &[BigRational], b: &[BigRational]| -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); m + 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(m + 1 - i) {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut pow = vec![BigRational::zero(); m + 1];
    pow[0] = BigRational::one();
    let mut total = BigRational::zero();
    for fj in f {
        let coeffs: Vec<BigRational> = (0..=m).map(|k| fj.coeff(k)).collect();
        total += trunc_mul(&coeffs, &pow)[m].clone();
        pow = trunc_mul(&pow, e);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn n4_level0_low_orders() {
        let s = weak_series(&TruncationSpec::unit(4).unwrap(), 0, 4).unwrap();
        assert_eq!(s.coeffs, vec![q(1, 2), q(3, 4), q(-9, 4), q(27, 4), q(-567, 32)]);
    }

    #[test]
    fn charpoly_route_agrees() {
        let t = TruncationSpec::unit(8).unwrap();
        for level in [0, 1, 2, 5] {
            let a = weak_series(&t, level, 12).unwrap().coeffs;
            let b = weak_series_charpoly(&t, level, 12).unwrap();
            assert_eq!(a, b, "level {level}");
        }
    }

    #[test]
    fn float_path_tracks_rational() {
        let t = TruncationSpec::unit(8).unwrap();
        let exact = weak_series(&t, 2, 10).unwrap();
        let float = weak_series_in::<f64>(&t, 2, 10).unwrap();
        for (a, b) in exact.coeffs.iter().zip(&float.coeffs) {
            let a = a.to_f64();
            assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0));
        }
    }
}
