//! Singularity location from the peak of `E″(λ)` on the real axis.
//!
//! Near a conjugate pair `λ_s, λ_s*` the level behaves like
//! `−c·√((λ−λ_s)(λ−λ_s*))`, so `|E″| ∝ ((λ − Re λ_s)² + Im² λ_s)^{−3/2}`:
//! the peak sits at `Re λ_s`, its full width at half maximum is
//! `2√(2^{2/3} − 1)·Im λ_s`, and `Im λ_s = √(−3E″/E⁗)` at the peak.

use rayon::prelude::*;

use super::derivatives::{derivatives_at_position, track_level, DerivativeScheme, FdSteps};
use crate::error::{Error, Result};
use crate::hamiltonian::LinearFamily;
use crate::singularity::{EstimateMethod, SingularityEstimate};

pub const DEFAULT_SCAN_POINTS: usize = 401;

#[derive(Clone, Debug)]
pub struct DerivativeSingularity {
    pub width: SingularityEstimate,
    pub ratio: SingularityEstimate,
    pub peak_d2: f64,
    pub peak_d4: f64,
    /// Half-maximum crossings left and right of the peak.
    pub half_max: (f64, f64),
}

pub fn width_to_imag(w: f64) -> f64 {
    w / (2.0 * (2f64.powf(2.0 / 3.0) - 1.0).sqrt())
}

fn golden_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-13 * (1.0 + c.abs()) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Root of `g` in `[a, b]` given a sign change.
fn bisect(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut ga = g(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= 1e-14 * (1.0 + m.abs()) {
            break;
        }
        let gm = g(m);
        if (gm > 0.0) == (ga > 0.0) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Estimates from scalar curves `E″(λ)` and `E⁗(λ)` scanned on `range`.
pub fn singularity_from_curve(
    d2: impl Fn(f64) -> Result<f64> + Sync,
    d4: impl Fn(f64) -> Result<f64>,
    range: (f64, f64),
    n_points: usize,
    level_pair: Option<(usize, usize)>,
) -> Result<DerivativeSingularity> {
    let n = n_points.max(5);
    let xs: Vec<f64> = (0..n).map(|i| range.0 + (range.1 - range.0) * i as f64 / (n - 1) as f64).collect();
    let ys: Vec<f64> = xs.par_iter().map(|&x| d2(x).map(f64::abs)).collect::<Result<_>>()?;
    let peak = (0..n).max_by(|&a, &b| ys[a].total_cmp(&ys[b])).unwrap();
    if peak == 0 || peak == n - 1 {
        return Err(Error::NoExtremum(format!("|E″| is largest at the scan boundary λ = {}", xs[peak])));
    }
    let abs_d2 = |x: f64| d2(x).map(f64::abs).unwrap_or(f64::NAN);
    let re = golden_max(&abs_d2, xs[peak - 1], xs[peak + 1]);
    let top = d2(re)?;
    let half = 0.5 * top.abs();
    let g = |x: f64| abs_d2(x) - half;
    let left = (0..peak).rev().find(|&j| ys[j] < half).ok_or_else(|| Error::NoExtremum("half maximum not reached below the peak".into()))?;
    let right = (peak + 1..n).find(|&j| ys[j] < half).ok_or_else(|| Error::NoExtremum("half maximum not reached above the peak".into()))?;
    let lo = bisect(&g, xs[left], xs[left + 1]);
    let hi = bisect(&g, xs[right - 1], xs[right]);
    let e4 = d4(re)?;
    let ratio_sq = -3.0 * top / e4;
    let im_ratio = if ratio_sq > 0.0 { ratio_sq.sqrt() } else { f64::NAN };
    let est = |im: f64, method| SingularityEstimate { re, im, method, level_pair, gap: None, classification: None };
    Ok(DerivativeSingularity {
        width: est(width_to_imag(hi - lo), EstimateMethod::DerivativeWidth),
        ratio: est(im_ratio, EstimateMethod::DerivativeRatio),
        peak_d2: top,
        peak_d4: e4,
        half_max: (lo, hi),
    })
}

/// Estimates from the `|E″|` peak of the lower level of `level_pair`.
pub fn singularity_from_derivatives(
    family: &LinearFamily,
    level_pair: (usize, usize),
    range: (f64, f64),
    scheme: DerivativeScheme,
) -> Result<DerivativeSingularity> {
    singularity_from_level(family, level_pair.0.min(level_pair.1), level_pair, range, scheme)
}

/// Estimates from the `|E″|` peak of `level`, labelled with `level_pair`.
/// Both members of a pair share the extremum, so either may be used.
pub fn singularity_from_level(
    family: &LinearFamily,
    level: usize,
    level_pair: (usize, usize),
    range: (f64, f64),
    scheme: DerivativeScheme,
) -> Result<DerivativeSingularity> {
    let pos = track_level(family, level, &[range.0, 0.5 * (range.0 + range.1), range.1])?;
    if pos.iter().any(|&p| p != pos[0]) {
        return Err(Error::InvalidArgument(format!("level {level} changes sorted position inside the scan range")));
    }
    let pos = pos[0];
    let steps = FdSteps::default();
    let d2 = |x: f64| derivatives_at_position(family, pos, x, scheme, steps).map(|r| r.2);
    let d4 = |x: f64| derivatives_at_position(family, pos, x, scheme, steps).map(|r| r.3);
    let pair = (level_pair.0.min(level_pair.1), level_pair.0.max(level_pair.1));
    singularity_from_curve(d2, d4, range, DEFAULT_SCAN_POINTS, Some(pair))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{anharmonic_family, Sector};
    use crate::oscillator::TruncationSpec;

    #[test]
    fn n4_relations_are_exact() {
        let fam = anharmonic_family(&TruncationSpec::unit(4).unwrap(), Sector::Even);
        let s = singularity_from_derivatives(&fam, (0, 2), (-0.6, 0.2), DerivativeScheme::SumOverStates).unwrap();
        assert!((s.width.re + 2.0 / 9.0).abs() < 1e-9);
        assert!((s.width.im - 2f64.sqrt() / 9.0).abs() < 1e-9);
        assert!((s.ratio.im - 2f64.sqrt() / 9.0).abs() < 1e-9);
    }

    #[test]
    fn boundary_peak_rejected() {
        let fam = anharmonic_family(&TruncationSpec::unit(4).unwrap(), Sector::Even);
        let r = singularity_from_derivatives(&fam, (0, 2), (0.0, 0.5), DerivativeScheme::SumOverStates);
        assert!(matches!(r, Err(Error::NoExtremum(_))));
    }
}
