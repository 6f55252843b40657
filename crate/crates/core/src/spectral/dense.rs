use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::Sector;
use crate::linalg::{general_eigen, general_eigenvalues, hermitian_eigen, Mat};
use crate::oscillator::OperatorMatrix;

pub const DEFAULT_DENSE_CAP: usize = 4096;

/// Eigenvalues sorted by real part (then imaginary part); eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<Complex64>,
    pub eigenvectors: Option<Mat<Complex64>>,
    pub sector: Sector,
    /// Residual norms `‖Hx − θx‖` when produced by an iterative solver.
    pub residuals: Option<Vec<f64>>,
}

impl SpectrumResult {
    pub fn real(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|z| z.re).collect()
    }

    pub fn max_imag(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

pub fn dense_spectrum(h: &OperatorMatrix<Complex64>, want_vectors: bool, sector: Sector) -> Result<SpectrumResult> {
    dense_spectrum_capped(h, want_vectors, sector, DEFAULT_DENSE_CAP)
}

/// Hermitian input goes through the Hermitian solver, everything else through
/// the complex Schur form.
pub fn dense_spectrum_capped(h: &OperatorMatrix<Complex64>, want_vectors: bool, sector: Sector, cap: usize) -> Result<SpectrumResult> {
    let dim = h.dim();
    if dim > cap {
        return Err(Error::DimensionCap { dim, cap });
    }
    let (eigenvalues, eigenvectors) = if h.hermitian {
        let (vals, vecs) = hermitian_eigen(&h.entries);
        (vals.into_iter().map(|v| Complex64::new(v, 0.0)).collect(), want_vectors.then_some(vecs))
    } else if want_vectors {
        let (vals, vecs) = general_eigen(&h.entries)?;
        (vals, Some(vecs))
    } else {
        (general_eigenvalues(&h.entries)?, None)
    };
    Ok(SpectrumResult { eigenvalues, eigenvectors, sector, residuals: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::anharmonic_family;
    use crate::oscillator::TruncationSpec;

    #[test]
    fn n4_sector_closed_forms() {
        let t = TruncationSpec::unit(4).unwrap();
        let l = 0.1;
        let even = OperatorMatrix::occupation(anharmonic_family(&t, Sector::Even).at(Complex64::new(l, 0.0)), true);
        let s = dense_spectrum(&even, false, Sector::Even).unwrap();
        let e0 = 0.25 * (1.5 + 6.0 - 2.0 * 2f64.sqrt() * (0.27f64 + 1.2 + 2.0).sqrt());
        assert!((s.eigenvalues[0].re - e0).abs() < 1e-13);
        assert!((e0 - 0.557806).abs() < 5e-7);
        let odd = OperatorMatrix::occupation(anharmonic_family(&t, Sector::Odd).at(Complex64::new(l, 0.0)), false);
        let s = dense_spectrum(&odd, false, Sector::Odd).unwrap();
        let r = 2.0 * 2f64.sqrt() * 2.27f64.sqrt();
        assert!((s.eigenvalues[0].re - 0.25 * (11.5 - r)).abs() < 1e-13);
        assert!((s.eigenvalues[1].re - 0.25 * (11.5 + r)).abs() < 1e-13);
        assert!(s.max_imag() < 1e-13);
    }

    #[test]
    fn cap_enforced() {
        let h = OperatorMatrix::occupation(Mat::<Complex64>::identity(5), true);
        assert!(matches!(dense_spectrum_capped(&h, false, Sector::Full, 4), Err(Error::DimensionCap { .. })));
    }
}
