//! Ground-state curves of the coupled lattice, differentiated numerically.

use super::derivatives::{curve_derivatives, FdSteps};
use super::lanczos::{lanczos_lowest, LanczosOptions};
use super::singular::{singularity_from_curve, DerivativeSingularity};
use crate::error::Result;
use crate::hamiltonian::{lattice_hamiltonian, parity_decompose_sparse, LatticeSpec};

/// Lowest energy of the even total-parity block at coupling `lambda`.
pub fn lattice_ground_energy(spec: &LatticeSpec, lambda: f64) -> Result<f64> {
    let mut s = spec.clone();
    s.lambda = num_complex::Complex64::new(lambda, 0.0);
    let h = lattice_hamiltonian(&s)?;
    let blocks = parity_decompose_sparse(&h, s.trunc.n_max, s.n_sites)?;
    let mut opts = LanczosOptions::new(1);
    opts.tol = 1e-11;
    Ok(lanczos_lowest(&blocks.even, &opts)?.eigenvalues[0].re)
}

/// `(E₀, E₀′, E₀″, E₀⁗)` by finite differences of Lanczos energies.
pub fn lattice_derivatives(spec: &LatticeSpec, lambda: f64) -> Result<(f64, f64, f64, f64)> {
    curve_derivatives(|l| lattice_ground_energy(spec, l), lambda, FdSteps::default())
}

/// Peak of the ground-state `E₀″` on `range`, with the width and ratio estimates.
pub fn lattice_singularity(spec: &LatticeSpec, range: (f64, f64), n_points: usize) -> Result<DerivativeSingularity> {
    let d2 = |l: f64| lattice_derivatives(spec, l).map(|r| r.2);
    let d4 = |l: f64| lattice_derivatives(spec, l).map(|r| r.3);
    singularity_from_curve(d2, d4, range, n_points, None)
}
