//! Weak- and strong-coupling expansions, convergence radii, perturbed
//! projectors and time-evolution amplitudes.

pub mod dyson;
pub mod evolve;
pub mod phase;
pub mod projector;
pub mod radius;
pub mod rs;
pub mod strong;
pub mod weak;

pub use dyson::{dyson_series, DysonAmplitude, DEFAULT_DYSON_ORDER_CAP};
pub use evolve::{evolve_exact, evolve_projector_method, AmplitudeTrace};
pub use phase::{PhasePolynomial, PhaseTerm};
pub use projector::{perturbed_projector, projector_at, ProjectorEvaluation, ProjectorSeries};
pub use radius::{benderwu_asymptote, benderwu_ln_asymptote, radius_estimate, RadiusFit};
pub use rs::rs_coefficients;
pub use strong::strong_series;
pub use weak::{weak_series, weak_series_charpoly, weak_series_in};

use crate::hamiltonian::Sector;
use crate::scalar::RealScalar;

/// Expansion variable of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesDomain {
    /// Around `λ = 0` with the harmonic Hamiltonian unperturbed.
    WeakLambda,
    /// Around `λ̃ = 1/λ = 0` with `φ⁴` unperturbed.
    StrongLambdaTilde,
}

impl SeriesDomain {
    pub fn name(&self) -> &'static str {
        match self {
            SeriesDomain::WeakLambda => "weak_lambda",
            SeriesDomain::StrongLambdaTilde => "strong_lambda_tilde",
        }
    }
}

/// Energy coefficients `a_m`, index = order.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<T> {
    pub coeffs: Vec<T>,
    pub domain: SeriesDomain,
    /// Certified decimal digits (float coefficients only).
    pub precision_digits: Option<u32>,
    pub n_max: usize,
    pub level: usize,
    pub sector: Sector,
}

impl<T: RealScalar> PowerSeries<T> {
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Partial sum through `order` at `x`.
    pub fn partial_sum(&self, x: f64, order: usize) -> f64 {
        self.coeffs.iter().take(order + 1).rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    /// All partial sums `S_0 … S_order`.
    pub fn partial_sums(&self, x: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut acc = 0.0;
        let mut pow = 1.0;
        for c in &self.coeffs {
            acc += c.to_f64() * pow;
            pow *= x;
            out.push(acc);
        }
        out
    }
}
