//! Minimum pairwise eigenvalue gap over a rectangle of the complex plane.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Result;
use crate::hamiltonian::{LinearFamily, Sector};
use crate::linalg::general_eigenvalues;

/// Which coupling the grid is drawn in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneDomain {
    Lambda,
    LambdaTilde,
}

impl PlaneDomain {
    pub fn name(&self) -> &'static str {
        match self {
            PlaneDomain::Lambda => "lambda",
            PlaneDomain::LambdaTilde => "lambda_tilde",
        }
    }
}

impl std::str::FromStr for PlaneDomain {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" | "weak" => Ok(PlaneDomain::Lambda),
            "lambda_tilde" | "lambda-tilde" | "strong" => Ok(PlaneDomain::LambdaTilde),
            other => Err(crate::error::Error::InvalidArgument(format!("unknown plane '{other}'"))),
        }
    }
}

/// Axis-aligned rectangle sampled on an `n_re × n_im` lattice (both ends included).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRegion {
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub n_re: usize,
    pub n_im: usize,
}

impl ScanRegion {
    pub const DEFAULT_RESOLUTION: usize = 400;

    pub fn new(re: (f64, f64), im: (f64, f64), n_re: usize, n_im: usize) -> Self {
        ScanRegion { re, im, n_re: n_re.max(2), n_im: n_im.max(2) }
    }

    pub fn step(&self) -> (f64, f64) {
        ((self.re.1 - self.re.0) / (self.n_re - 1) as f64, (self.im.1 - self.im.0) / (self.n_im - 1) as f64)
    }

    pub fn point(&self, i_re: usize, i_im: usize) -> Complex64 {
        let (dx, dy) = self.step();
        Complex64::new(self.re.0 + dx * i_re as f64, self.im.0 + dy * i_im as f64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapSample {
    pub lambda: Complex64,
    pub gap: f64,
}

/// Gap values on the lattice (row-major, `im` index slow) plus samples
/// from the adaptive refinement pass. Failed points hold `NaN`.
#[derive(Clone, Debug)]
pub struct GapGrid {
    pub region: ScanRegion,
    pub values: Vec<f64>,
    pub sector: Sector,
    pub domain: PlaneDomain,
    pub refined: Vec<GapSample>,
    pub missing: usize,
}

/// Smallest `|z_i − z_j|` over all eigenvalue pairs of `H(λ)`.
pub fn min_gap(family: &LinearFamily, lambda: Complex64) -> Result<f64> {
    let vals = general_eigenvalues(&family.at(lambda))?;
    Ok(min_pairwise(&vals))
}

pub fn min_pairwise(vals: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            best = best.min((vals[i] - vals[j]).norm());
        }
    }
    best
}

fn gap_or_nan(family: &LinearFamily, lambda: Complex64) -> f64 {
    min_gap(family, lambda).unwrap_or(f64::NAN)
}

impl GapGrid {
    pub fn get(&self, i_re: usize, i_im: usize) -> f64 {
        self.values[i_im * self.region.n_re + i_re]
    }

    /// Every lattice and refinement sample.
    pub fn samples(&self) -> Vec<GapSample> {
        let r = &self.region;
        let mut out: Vec<GapSample> = (0..r.n_im)
            .flat_map(|j| (0..r.n_re).map(move |i| (i, j)))
            .map(|(i, j)| GapSample { lambda: r.point(i, j), gap: self.get(i, j) })
            .collect();
        out.extend(self.refined.iter().copied());
        out
    }

    /// Lattice points strictly below all eight neighbours, ascending in gap.
    pub fn local_minima(&self) -> Vec<GapSample> {
        let r = &self.region;
        let mut out = Vec::new();
        for j in 1..r.n_im - 1 {
            for i in 1..r.n_re - 1 {
                let v = self.get(i, j);
                if v.is_nan() {
                    continue;
                }
                let is_min = (-1i64..=1).all(|dj| {
                    (-1i64..=1).all(|di| {
                        (di == 0 && dj == 0) || {
                            let w = self.get((i as i64 + di) as usize, (j as i64 + dj) as usize);
                            w.is_nan() || v < w
                        }
                    })
                });
                if is_min {
                    out.push(GapSample { lambda: r.point(i, j), gap: v });
                }
            }
        }
        out.sort_by(|a, b| a.gap.total_cmp(&b.gap));
        out
    }

    /// Smallest sample (lattice or refined) within `radius` of `center`.
    pub fn min_near(&self, center: Complex64, radius: f64) -> Option<GapSample> {
        self.samples()
            .into_iter()
            .filter(|s| !s.gap.is_nan() && (s.lambda - center).norm() <= radius)
            .min_by(|a, b| a.gap.total_cmp(&b.gap))
    }
}

/// Scans `region`, then resamples the neighbourhood of the lowest 1% of
/// lattice values at four times the lattice resolution when `refine` is set.
pub fn gap_scan(family: &LinearFamily, region: ScanRegion, sector: Sector, domain: PlaneDomain, refine: bool) -> GapGrid {
    let values: Vec<f64> = (0..region.n_im)
        .into_par_iter()
        .flat_map_iter(|j| (0..region.n_re).map(move |i| (i, j)).collect::<Vec<_>>())
        .map(|(i, j)| gap_or_nan(family, region.point(i, j)))
        .collect();
    let missing = values.iter().filter(|v| v.is_nan()).count();
    let mut grid = GapGrid { region, values, sector, domain, refined: Vec::new(), missing };
    if refine {
        let mut sorted: Vec<f64> = grid.values.iter().copied().filter(|v| !v.is_nan()).collect();
        sorted.sort_by(f64::total_cmp);
        if let Some(&cut) = sorted.get(sorted.len() / 100) {
            let (dx, dy) = region.step();
            let centers: Vec<Complex64> = (0..region.n_im)
                .flat_map(|j| (0..region.n_re).map(move |i| (i, j)))
                .filter(|&(i, j)| grid.get(i, j) <= cut)
                .map(|(i, j)| region.point(i, j))
                .collect();
            let offsets: Vec<(i32, i32)> =
                (-2..=2).flat_map(|a| (-2..=2).map(move |b| (a, b))).filter(|&(a, b)| (a, b) != (0, 0)).collect();
            grid.refined = centers
                .par_iter()
                .flat_map_iter(|&c| {
                    offsets.iter().map(move |&(a, b)| c + Complex64::new(a as f64 * dx / 4.0, b as f64 * dy / 4.0))
                })
                .map(|lambda| GapSample { lambda, gap: gap_or_nan(family, lambda) })
                .collect();
        }
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::anharmonic_family;
    use crate::oscillator::TruncationSpec;

    #[test]
    fn conjugate_symmetry() {
        let fam = anharmonic_family(&TruncationSpec::unit(8).unwrap(), Sector::Even);
        let g = gap_scan(&fam, ScanRegion::new((-0.3, 0.1), (-0.2, 0.2), 9, 11), Sector::Even, PlaneDomain::Lambda, false);
        for i in 0..9 {
            for j in 0..11 {
                assert!((g.get(i, j) - g.get(i, 10 - j)).abs() < 1e-10);
            }
        }
    }
}
