//! Exceptional points as roots of the Sylvester determinant of the sector
//! characteristic polynomial and its `z`-derivative.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hamiltonian::{scaled_anharmonic_family, Sector};
use crate::linalg::charpoly::{bareiss_det, pencil_charpoly};
use crate::linalg::{Mat, Poly};
use crate::oscillator::TruncationSpec;
use crate::scalar::{powi, Scalar};

type QPoly = Poly<BigRational>;

#[derive(Clone, Debug)]
pub struct ResultantPolynomial {
    /// Ascending in `λ`.
    pub coeffs: Vec<BigRational>,
    pub sector: Sector,
    pub n_max: usize,
    /// Characteristic polynomial `det(4(z − H))`, ascending in `z`, each
    /// coefficient a polynomial in `λ`.
    pub charpoly: Vec<QPoly>,
    pub expected_degree: usize,
}

impl ResultantPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// True when the determinant has lower degree than the generic `d(d−1)`.
    pub fn degree_deficit(&self) -> bool {
        self.degree() < self.expected_degree
    }

    /// Coefficients as integers when they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let poly = Poly::new(self.coeffs.clone());
        // Normalize by the largest coefficient before leaving exact arithmetic.
        let scale = self.coeffs.iter().map(|c| crate::scalar::RealScalar::ln_abs(c)).fold(f64::NEG_INFINITY, f64::max);
        let f: Vec<f64> = poly
            .coeffs()
            .iter()
            .map(|c| {
                if c.is_zero() {
                    0.0
                } else {
                    let sign = if c < &BigRational::zero() { -1.0 } else { 1.0 };
                    sign * (crate::scalar::RealScalar::ln_abs(c) - scale).exp()
                }
            })
            .collect();
        Poly::new(f).roots()
    }
}

/// `f(z, λ) = det(4(z·1 − H_sector(λ)))` with integer coefficients.
pub fn sector_charpoly(trunc: &TruncationSpec, sector: Sector) -> Vec<QPoly> {
    let fam = scaled_anharmonic_family::<BigRational>(trunc, sector);
    let c = pencil_charpoly(&Mat::from_diag(&fam.energies), &fam.v);
    let four_d = powi(&BigRational::from_i64(4), fam.energies.len() as u32);
    c.iter().map(|p| p.scale(&four_d)).collect()
}

/// Determinant of the matrix whose rows are `z^i f` (`i < d−1`) followed by
/// `z^i f′` (`i < d`), columns in ascending powers of `z`.
pub fn sylvester_discriminant(trunc: &TruncationSpec, sector: Sector) -> Result<ResultantPolynomial> {
    if sector == Sector::Full {
        return Err(Error::InvalidArgument("the resultant is defined per parity sector".into()));
    }
    let f = sector_charpoly(trunc, sector);
    let d = f.len() - 1;
    if d < 2 {
        return Err(Error::InvalidArgument(format!("sector of dimension {d} has no level pairs")));
    }
    // Degenerate unperturbed sector spectrum would make f(z, 0) a non-simple polynomial.
    let fam = scaled_anharmonic_family::<BigRational>(trunc, sector);
    for i in 0..d {
        for j in i + 1..d {
            if fam.energies[i] == fam.energies[j] {
                return Err(Error::Degenerate(format!("sector levels {i} and {j} coincide at λ = 0")));
            }
        }
    }
    let fp: Vec<QPoly> = (1..=d).map(|j| f[j].scale(&BigRational::from_i64(j as i64))).collect();
    let size = 2 * d - 1;
    let row = |p: &[QPoly], shift: usize| -> Vec<QPoly> {
        (0..size).map(|c| if c >= shift && c - shift < p.len() { p[c - shift].clone() } else { QPoly::zero() }).collect()
    };
    let mut m = Vec::with_capacity(size);
    for i in 0..d - 1 {
        m.push(row(&f, i));
    }
    for i in 0..d {
        m.push(row(&fp, i));
    }
    let det = bareiss_det(m)?;
    Ok(ResultantPolynomial {
        coeffs: det.coeffs().to_vec(),
        sector,
        n_max: trunc.n_max,
        charpoly: f,
        expected_degree: d * (d - 1),
    })
}

/// Distance from the origin to the nearest exceptional point of a sector
/// (the smaller of the two sectors for `Full`).
pub fn sector_radius(trunc: &TruncationSpec, sector: Sector) -> Result<f64> {
    let sectors: &[Sector] = match sector {
        Sector::Full => &[Sector::Even, Sector::Odd],
        Sector::Even => &[Sector::Even],
        Sector::Odd => &[Sector::Odd],
    };
    let mut best = f64::INFINITY;
    for &s in sectors {
        let r = sylvester_discriminant(trunc, s)?;
        for z in r.roots()? {
            best = best.min(z.norm());
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_i64(v)
    }

    #[test]
    fn n4_even_charpoly_matches_integer_form() {
        let f = sector_charpoly(&TruncationSpec::unit(4).unwrap(), Sector::Even);
        assert_eq!(f[0], QPoly::new(vec![q(20), q(84), q(9)]));
        assert_eq!(f[1], QPoly::new(vec![q(-48), q(-120)]));
        assert_eq!(f[2], QPoly::constant(q(16)));
    }

    #[test]
    fn n4_even_determinant() {
        let r = sylvester_discriminant(&TruncationSpec::unit(4).unwrap(), Sector::Even).unwrap();
        let want: Vec<BigRational> = [2, 12, 27].iter().map(|&c| q(-8192 * c)).collect();
        assert_eq!(r.coeffs, want);
        assert!(!r.degree_deficit());
    }

    #[test]
    fn n8_even_determinant() {
        let r = sylvester_discriminant(&TruncationSpec::unit(8).unwrap(), Sector::Even).unwrap();
        let inner: [i64; 13] = [
            36864,
            3698688,
            194833408,
            6739041792,
            157100611648,
            2408867895168,
            23876641218976,
            156815960599872,
            729625498514388,
            2315977875333360,
            4112778331991700,
            2446821666009000,
            828875955639375,
        ];
        let scale = BigInt::from(1u64 << 60);
        let want: Vec<BigInt> = inner.iter().map(|&c| BigInt::from(c) * &scale).collect();
        assert_eq!(r.integer_coeffs().unwrap(), want);
        assert_eq!(r.expected_degree, 12);
    }

    #[test]
    fn n4_odd_roots_on_imaginary_axis() {
        let r = sylvester_discriminant(&TruncationSpec::unit(4).unwrap(), Sector::Odd).unwrap();
        let roots = r.roots().unwrap();
        let want = (2.0f64 / 27.0).sqrt();
        assert_eq!(roots.len(), 2);
        for z in roots {
            assert!(z.re.abs() < 1e-14 && (z.im.abs() - want).abs() < 1e-14);
        }
    }
}
