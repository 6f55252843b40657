//! λ-derivatives of a single level of a real symmetric pencil.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hamiltonian::LinearFamily;
use crate::linalg::{symmetric_eigen, Mat};
use crate::series::rs_coefficients;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativeScheme {
    SumOverStates,
    FiniteDifference,
}

impl DerivativeScheme {
    pub fn name(&self) -> &'static str {
        match self {
            DerivativeScheme::SumOverStates => "sum_over_states",
            DerivativeScheme::FiniteDifference => "finite_difference",
        }
    }
}

impl std::str::FromStr for DerivativeScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum_over_states" | "sos" => Ok(DerivativeScheme::SumOverStates),
            "finite_difference" | "fd" => Ok(DerivativeScheme::FiniteDifference),
            _ => Err(Error::InvalidArgument(format!("unknown derivative scheme {s:?}"))),
        }
    }
}

/// Finite-difference steps, each multiplied by `max(1, |λ0|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdSteps {
    pub h: f64,
    /// The fourth derivative needs a larger step to survive cancellation.
    pub h4: f64,
}

impl Default for FdSteps {
    fn default() -> Self {
        FdSteps { h: 1e-4, h4: 2e-3 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeEstimate {
    /// Full-basis index of the level at `λ = 0`.
    pub level: usize,
    pub lambda0: f64,
    pub energy: f64,
    pub d1: f64,
    pub d2: f64,
    pub d4: f64,
    pub scheme: DerivativeScheme,
    pub warnings: Vec<String>,
}

pub const NEAR_DEGENERATE: f64 = 1e-8;

fn stencil(f: &impl Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<[f64; 5]> {
    Ok([f(x - 2.0 * h)?, f(x - h)?, f(x)?, f(x + h)?, f(x + 2.0 * h)?])
}

fn fd12(v: &[f64; 5], h: f64) -> (f64, f64) {
    let d1 = (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h);
    let d2 = (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * h * h);
    (d1, d2)
}

fn fd4(v: &[f64; 5], h: f64) -> f64 {
    (v[0] - 4.0 * v[1] + 6.0 * v[2] - 4.0 * v[3] + v[4]) / h.powi(4)
}

/// `(E, E′, E″, E⁗)` of a scalar curve from five-point stencils with one
/// Richardson step.
pub fn curve_derivatives(f: impl Fn(f64) -> Result<f64>, x: f64, steps: FdSteps) -> Result<(f64, f64, f64, f64)> {
    let s = x.abs().max(1.0);
    let (h, h4) = (steps.h * s, steps.h4 * s);
    let a = stencil(&f, x, h)?;
    let b = stencil(&f, x, h / 2.0)?;
    let (a1, a2) = fd12(&a, h);
    let (b1, b2) = fd12(&b, h / 2.0);
    let c = stencil(&f, x, h4)?;
    let d = stencil(&f, x, h4 / 2.0)?;
    let d4 = (4.0 * fd4(&d, h4 / 2.0) - fd4(&c, h4)) / 3.0;
    Ok((a[2], (16.0 * b1 - a1) / 15.0, (16.0 * b2 - a2) / 15.0, d4))
}

/// Sorted position of full-basis level `level` at `λ = 0`.
fn position_at_zero(family: &LinearFamily, level: usize) -> Result<usize> {
    let p = family
        .indices
        .iter()
        .position(|&i| i == level)
        .ok_or_else(|| Error::InvalidArgument(format!("level {level} not in this sector")))?;
    let e0: Vec<f64> = (0..family.dim()).map(|i| family.h0[(i, i)]).collect();
    let off_diag = (0..family.dim()).any(|i| (0..family.dim()).any(|j| i != j && family.h0[(i, j)] != 0.0));
    if off_diag {
        let (vals, vecs) = symmetric_eigen(&family.h0);
        // Largest weight on the requested basis state.
        return Ok((0..vals.len()).max_by(|&a, &b| vecs[(p, a)].abs().total_cmp(&vecs[(p, b)].abs())).unwrap());
    }
    Ok(e0.iter().filter(|&&e| e < e0[p]).count())
}

/// Sorted eigenvalue positions of `level` along `lambdas` (any order), tracked
/// from `λ = 0` by eigenvector overlap.
pub fn track_level(family: &LinearFamily, level: usize, lambdas: &[f64]) -> Result<Vec<usize>> {
    let start = position_at_zero(family, level)?;
    let mut order: Vec<usize> = (0..lambdas.len()).collect();
    order.sort_by(|&a, &b| lambdas[a].total_cmp(&lambdas[b]));
    let mut out = vec![0; lambdas.len()];
    // Walk outward from zero in both directions.
    let (neg, pos): (Vec<usize>, Vec<usize>) = order.iter().partition(|&&i| lambdas[i] < 0.0);
    for branch in [pos, neg.into_iter().rev().collect::<Vec<_>>()] {
        let (_, v0) = symmetric_eigen(&family.at_real(0.0));
        let mut vec: Vec<f64> = (0..family.dim()).map(|i| v0[(i, start)]).collect();
        let mut at = 0.0;
        for i in branch {
            let target = lambdas[i];
            let sub = (((target - at).abs() / 1e-3).ceil() as usize).clamp(1, 200);
            let mut p = 0;
            for s in 1..=sub {
                let l = at + (target - at) * s as f64 / sub as f64;
                let (_, v) = symmetric_eigen(&family.at_real(l));
                p = overlap_match(&v, &vec);
                vec = (0..family.dim()).map(|r| v[(r, p)]).collect();
            }
            at = target;
            out[i] = p;
        }
    }
    Ok(out)
}

fn overlap_match(v: &Mat<f64>, prev: &[f64]) -> usize {
    (0..v.cols())
        .max_by(|&a, &b| {
            let oa: f64 = (0..prev.len()).map(|r| v[(r, a)] * prev[r]).sum::<f64>().abs();
            let ob: f64 = (0..prev.len()).map(|r| v[(r, b)] * prev[r]).sum::<f64>().abs();
            oa.total_cmp(&ob)
        })
        .unwrap()
}

/// Derivatives of the eigenvalue at sorted position `pos`.
pub fn derivatives_at_position(
    family: &LinearFamily,
    pos: usize,
    lambda0: f64,
    scheme: DerivativeScheme,
    steps: FdSteps,
) -> Result<(f64, f64, f64, f64, Vec<String>)> {
    let mut warnings = Vec::new();
    let (e, u) = symmetric_eigen(&family.at_real(lambda0));
    let gap = (0..e.len()).filter(|&j| j != pos).map(|j| (e[j] - e[pos]).abs()).fold(f64::INFINITY, f64::min);
    if gap < NEAR_DEGENERATE {
        warnings.push(format!("level gap {gap:e} at λ = {lambda0} is below {NEAR_DEGENERATE:e}"));
    }
    match scheme {
        DerivativeScheme::SumOverStates => {
            let vt = u.transpose().matmul(&family.v).matmul(&u);
            let (c, _) = rs_coefficients(&e, &vt, pos, 4)?;
            Ok((c[0], c[1], 2.0 * c[2], 24.0 * c[4], warnings))
        }
        DerivativeScheme::FiniteDifference => {
            let f = |l: f64| -> Result<f64> { Ok(symmetric_eigen(&family.at_real(l)).0[pos]) };
            let (e0, d1, d2, d4) = curve_derivatives(f, lambda0, steps)?;
            Ok((e0, d1, d2, d4, warnings))
        }
    }
}

pub fn energy_derivatives(family: &LinearFamily, level: usize, lambda0: f64, scheme: DerivativeScheme) -> Result<DerivativeEstimate> {
    let pos = track_level(family, level, &[lambda0])?[0];
    let (energy, d1, d2, d4, warnings) = derivatives_at_position(family, pos, lambda0, scheme, FdSteps::default())?;
    Ok(DerivativeEstimate { level, lambda0, energy, d1, d2, d4, scheme, warnings })
}

/// Warning text when two estimates differ by more than 1% in any derivative.
pub fn compare_schemes(a: &DerivativeEstimate, b: &DerivativeEstimate) -> Option<String> {
    let rel = |x: f64, y: f64| (x - y).abs() / x.abs().max(y.abs()).max(1e-300);
    let worst = rel(a.d1, b.d1).max(rel(a.d2, b.d2)).max(rel(a.d4, b.d4));
    (worst > 0.01).then(|| format!("{} and {} disagree by {:.2}% at λ = {}", a.scheme.name(), b.scheme.name(), 100.0 * worst, a.lambda0))
}

/// Derivatives along a sweep, level tracked by overlap and evaluated in parallel.
pub fn derivative_sweep(family: &LinearFamily, level: usize, lambdas: &[f64], scheme: DerivativeScheme) -> Result<Vec<DerivativeEstimate>> {
    let pos = track_level(family, level, lambdas)?;
    lambdas
        .par_iter()
        .zip(pos)
        .map(|(&l, p)| {
            let (energy, d1, d2, d4, warnings) = derivatives_at_position(family, p, l, scheme, FdSteps::default())?;
            Ok(DerivativeEstimate { level, lambda0: l, energy, d1, d2, d4, scheme, warnings })
        })
        .collect()
}
