//! Radius of convergence from the growth of series coefficients.

use super::PowerSeries;
use crate::error::{Error, Result};
use crate::scalar::RealScalar;

const MIN_POINTS: usize = 10;

/// Least-squares fit `ln|a_m| ≈ intercept + slope·m`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadiusFit {
    pub radius: f64,
    pub slope: f64,
    pub intercept: f64,
    pub points: usize,
    /// Orders inside the window whose coefficient vanished.
    pub skipped: Vec<usize>,
}

/// Fits `ln|a_m|` over `fit_lo..=fit_hi`; the radius is `exp(−slope)`.
pub fn radius_estimate<T: RealScalar>(series: &PowerSeries<T>, fit_lo: usize, fit_hi: usize) -> Result<RadiusFit> {
    if fit_lo > fit_hi {
        return Err(Error::InvalidArgument(format!("empty fit window {fit_lo}..{fit_hi}")));
    }
    if fit_hi > series.order() {
        return Err(Error::OrderCap { requested: fit_hi, limit: series.order() });
    }
    let mut skipped = Vec::new();
    let mut pts = Vec::new();
    for m in fit_lo..=fit_hi {
        let c = &series.coeffs[m];
        if c.is_zero() {
            skipped.push(m);
        } else {
            pts.push((m as f64, c.ln_abs()));
        }
    }
    if pts.len() < MIN_POINTS {
        return Err(Error::InvalidArgument(format!(
            "only {} nonzero coefficients in window {fit_lo}..={fit_hi}, need {MIN_POINTS}",
            pts.len()
        )));
    }
    let (slope, intercept) = linear_fit(&pts);
    Ok(RadiusFit { radius: (-slope).exp(), slope, intercept, points: pts.len(), skipped })
}

/// Ordinary least squares `y = intercept + slope·x`, returned as `(slope, intercept)`.
pub fn linear_fit(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// `ln` of the large-order estimate `√(6/π³)·3^m·Γ(m+½)`.
pub fn benderwu_ln_asymptote(m: usize) -> f64 {
    use std::f64::consts::PI;
    // Γ(m+½) = √π·Π_{k=1}^{m}(k−½)
    let ln_gamma: f64 = 0.5 * PI.ln() + (1..=m).map(|k| (k as f64 - 0.5).ln()).sum::<f64>();
    0.5 * (6.0 / PI.powi(3)).ln() + m as f64 * 3f64.ln() + ln_gamma
}

/// Magnitude of the untruncated ground-state coefficients for large `m`.
pub fn benderwu_asymptote(m: usize) -> f64 {
    benderwu_ln_asymptote(m).exp()
}
