//! Transition amplitudes `⟨out|e^{−iHt}|in⟩` for the single-site oscillator.

use num_complex::Complex64;

use super::projector::perturbed_projector;
use super::weak::weak_series;
use crate::error::{Error, Result};
use crate::hamiltonian::{anharmonic_family, Sector};
use crate::linalg::symmetric_eigen;
use crate::oscillator::TruncationSpec;
use crate::scalar::RealScalar;

/// Amplitude samples on a time grid.
#[derive(Clone, Debug, Default)]
pub struct AmplitudeTrace {
    pub t: Vec<f64>,
    pub amplitude: Vec<Complex64>,
    pub warnings: Vec<String>,
}

impl AmplitudeTrace {
    pub fn probability(&self) -> Vec<f64> {
        self.amplitude.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Largest `| |a|² − |b|² |` against another trace on the same grid.
    pub fn max_probability_deviation(&self, other: &AmplitudeTrace) -> f64 {
        self.probability().iter().zip(other.probability()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

fn check_states(trunc: &TruncationSpec, state_in: usize, state_out: usize) -> Result<()> {
    if state_in >= trunc.n_max || state_out >= trunc.n_max {
        return Err(Error::InvalidArgument(format!(
            "states {state_in}, {state_out} outside n_max {}",
            trunc.n_max
        )));
    }
    Ok(())
}

/// Reference amplitude from dense diagonalization of the full Hamiltonian.
pub fn evolve_exact(trunc: &TruncationSpec, lambda: f64, t_grid: &[f64], state_in: usize, state_out: usize) -> Result<AmplitudeTrace> {
    check_states(trunc, state_in, state_out)?;
    let h = anharmonic_family(trunc, Sector::Full).at_real(lambda);
    let (vals, vecs) = symmetric_eigen(&h);
    let weights: Vec<f64> = (0..vals.len()).map(|n| vecs[(state_out, n)] * vecs[(state_in, n)]).collect();
    let amplitude = t_grid
        .iter()
        .map(|&t| vals.iter().zip(&weights).map(|(&e, &w)| w * Complex64::from_polar(1.0, -e * t)).sum())
        .collect();
    Ok(AmplitudeTrace { t: t_grid.to_vec(), amplitude, warnings: Vec::new() })
}

/// `Σ_n ⟨out|P_n(λ)|in⟩ e^{−iE_n(λ)t}` with projectors and energies both
/// truncated at `order`.
pub fn evolve_projector_method(
    trunc: &TruncationSpec,
    order: usize,
    lambda: f64,
    t_grid: &[f64],
    state_in: usize,
    state_out: usize,
) -> Result<AmplitudeTrace> {
    check_states(trunc, state_in, state_out)?;
    let mut warnings = Vec::new();
    if state_in % 2 != state_out % 2 {
        return Ok(AmplitudeTrace { t: t_grid.to_vec(), amplitude: vec![Complex64::new(0.0, 0.0); t_grid.len()], warnings });
    }
    let sector = Sector::of_level(state_in);
    if let Ok(r) = crate::singularity::sector_radius(trunc, sector) {
        if lambda.abs() >= r {
            warnings.push(format!("|λ| = {lambda} is outside the convergence radius {r:.6}; the series diverges"));
        }
    }
    let mut modes = Vec::new();
    for n in sector.indices(trunc.n_max) {
        let p = perturbed_projector(trunc, n, order)?;
        let weight = p.partial_sums(lambda, state_out, state_in)[order];
        let e = weak_series(trunc, n, order)?;
        let energy = e.coeffs.iter().rev().fold(0.0, |acc, c| acc * lambda + c.to_f64());
        modes.push((energy, weight));
    }
    let amplitude = t_grid
        .iter()
        .map(|&t| modes.iter().map(|&(e, w)| w * Complex64::from_polar(1.0, -e * t)).sum())
        .collect();
    Ok(AmplitudeTrace { t: t_grid.to_vec(), amplitude, warnings })
}

/// `n` evenly spaced times on `[t0, t1]`.
pub fn time_grid(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![t0];
    }
    (0..n).map(|i| t0 + (t1 - t0) * i as f64 / (n - 1) as f64).collect()
}
