//! Exceptional points of `H(λ)` in the complex coupling plane.

mod grid;
mod refine;
mod resultant;
mod riemann;

pub use grid::{gap_scan, min_gap, min_pairwise, GapGrid, GapSample, PlaneDomain, ScanRegion};
pub use refine::{continued_pair, refine_exceptional_point, Classification, RefineOptions, RefinedPoint};
pub use resultant::{sector_charpoly, sector_radius, sylvester_discriminant, ResultantPolynomial};
pub use riemann::{mollweide, project, riemann_export, sphere_coordinates, SpherePoint, MOLLWEIDE_TOL, ORIENTATION};

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapDirection {
    ToWeak,
    ToStrong,
}

/// `λ ↔ λ̃ = 1/λ`; both directions are the same involution.
pub fn strong_weak_map(point: Complex64, _direction: MapDirection) -> Result<Complex64> {
    if point.norm() == 0.0 {
        return Err(Error::InvalidArgument("the origin has no image under λ ↦ 1/λ".into()));
    }
    Ok(point.inv())
}

/// How a singularity location was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EstimateMethod {
    DerivativeWidth,
    DerivativeRatio,
    GridScan,
    Resultant,
    SeriesFit,
}

impl EstimateMethod {
    pub fn name(&self) -> &'static str {
        match self {
            EstimateMethod::DerivativeWidth => "derivative_width",
            EstimateMethod::DerivativeRatio => "derivative_ratio",
            EstimateMethod::GridScan => "grid_scan",
            EstimateMethod::Resultant => "resultant",
            EstimateMethod::SeriesFit => "series_fit",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularityEstimate {
    pub re: f64,
    /// Non-negative; the conjugate point is implied.
    pub im: f64,
    pub method: EstimateMethod,
    pub level_pair: Option<(usize, usize)>,
    pub gap: Option<f64>,
    pub classification: Option<Classification>,
}

impl SingularityEstimate {
    pub fn lambda(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn radius(&self) -> f64 {
        self.lambda().norm()
    }

    pub fn from_refined(p: &RefinedPoint, level_pair: Option<(usize, usize)>) -> Self {
        SingularityEstimate {
            re: p.lambda.re,
            im: p.lambda.im.abs(),
            method: EstimateMethod::GridScan,
            level_pair,
            gap: Some(p.gap),
            classification: Some(p.classification),
        }
    }
}
