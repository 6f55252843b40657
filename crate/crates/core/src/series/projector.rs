//! Order-by-order perturbed eigenprojectors.
//!
//! The resolvent contour integral around an isolated level reduces, order by
//! order, to residue sums over energy denominators (Kato's expansion):
//!
//! `P^(k) = −Σ_{p_1+…+p_{k+1}=k} S^(p_1) V S^(p_2) V … V S^(p_{k+1})`
//!
//! with `S^(0) = −P₀` and `S^(p) = S^p`, `S = Σ_{j≠n} |j⟩⟨j|/(E_n − E_j)`.
//! Every factor is diagonal except `V`, so the work happens in the rational
//! scaled basis and entries are mapped to the orthonormal basis at the end.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::hamiltonian::{scaled_anharmonic_family, Sector};
use crate::linalg::Mat;
use crate::oscillator::{scaled_to_orthonormal, scaled_to_orthonormal_radicand, TruncationSpec};
use crate::scalar::{RealScalar, Scalar};

/// Coefficient matrices of `|n(λ)⟩⟨n(λ)|` in powers of `λ`, restricted to the
/// level's parity sector and stored in the scaled basis.
#[derive(Clone, Debug)]
pub struct ProjectorSeries<T> {
    pub level: usize,
    pub sector: Sector,
    pub n_max: usize,
    /// Full-basis occupation index of each sector position.
    pub indices: Vec<usize>,
    pub scaled: Vec<Mat<T>>,
}

impl<T: RealScalar> ProjectorSeries<T> {
    pub fn order(&self) -> usize {
        self.scaled.len() - 1
    }

    fn position(&self, n: usize) -> Option<usize> {
        self.indices.iter().position(|&i| i == n)
    }

    /// Orthonormal-basis coefficient of `λ^m` at occupation indices `(a, b)`.
    pub fn coefficient(&self, m: usize, a: usize, b: usize) -> f64 {
        match (self.position(a), self.position(b)) {
            (Some(i), Some(j)) => self.scaled[m][(i, j)].to_f64() * scaled_to_orthonormal(a, b),
            _ => 0.0,
        }
    }

    /// Orthonormal coefficient matrix of `λ^m` on the sector.
    pub fn coefficient_matrix(&self, m: usize) -> Mat<f64> {
        let d = self.indices.len();
        Mat::from_fn(d, d, |i, j| self.coefficient(m, self.indices[i], self.indices[j]))
    }

    /// `Σ_{m ≤ order} λ^m P^(m)` on the sector.
    pub fn evaluate(&self, lambda: f64, order: usize) -> Mat<f64> {
        let d = self.indices.len();
        let mut out = Mat::zeros(d, d);
        let mut pow = 1.0;
        for m in 0..=order.min(self.order()) {
            out = &out + &self.coefficient_matrix(m).scale(&pow);
            pow *= lambda;
        }
        out
    }

    /// Partial sums of `⟨a|P|b⟩` at orders `0..=order`.
    pub fn partial_sums(&self, lambda: f64, a: usize, b: usize) -> Vec<f64> {
        let mut acc = 0.0;
        let mut pow = 1.0;
        (0..=self.order())
            .map(|m| {
                acc += pow * self.coefficient(m, a, b);
                pow *= lambda;
                acc
            })
            .collect()
    }
}

impl ProjectorSeries<BigRational> {
    /// Exact orthonormal entry as `q·√r`, returned as `(q, r)`.
    pub fn coefficient_exact(&self, m: usize, a: usize, b: usize) -> (BigRational, BigRational) {
        match (self.position(a), self.position(b)) {
            (Some(i), Some(j)) => (self.scaled[m][(i, j)].clone(), scaled_to_orthonormal_radicand(a, b)),
            _ => (BigRational::from_i64(0), BigRational::from_i64(1)),
        }
    }
}

/// Projector series for single-site `level` through `order`, in any field.
pub fn perturbed_projector_in<T: RealScalar>(trunc: &TruncationSpec, level: usize, order: usize) -> Result<ProjectorSeries<T>> {
    if level >= trunc.n_max {
        return Err(Error::InvalidArgument(format!("level {level} outside n_max {}", trunc.n_max)));
    }
    let sector = Sector::of_level(level);
    let fam = scaled_anharmonic_family::<T>(trunc, sector);
    let d = fam.energies.len();
    let k = sector.position(level);
    let mut s_diag = vec![T::zero(); d];
    for i in 0..d {
        if i != k {
            let gap = fam.energies[k].clone() - fam.energies[i].clone();
            if gap.is_zero() {
                return Err(Error::Degenerate(format!("levels {level} and {} coincide at λ = 0", fam.indices[i])));
            }
            s_diag[i] = T::one() / gap;
        }
    }
    // Diagonal of S^(p): p = 0 gives −P₀.
    let s_pow = |p: usize| -> Vec<T> {
        (0..d)
            .map(|i| {
                if p == 0 {
                    if i == k {
                        -T::one()
                    } else {
                        T::zero()
                    }
                } else {
                    crate::scalar::powi(&s_diag[i], p as u32)
                }
            })
            .collect()
    };
    let diag_powers: Vec<Vec<T>> = (0..=order).map(s_pow).collect();
    let right_scale = |m: &Mat<T>, diag: &[T]| Mat::from_fn(d, d, |i, j| m[(i, j)].clone() * diag[j].clone());
    // g[s]: sum of S^(p1) V … V S^(pl) with p1+…+pl = s for the current l.
    let mut g: Vec<Mat<T>> = diag_powers.iter().map(|dp| Mat::from_diag(dp)).collect();
    let mut scaled = vec![g[0].scale(&-T::one())];
    for kk in 1..=order {
        let mut next = vec![Mat::zeros(d, d); order + 1];
        for (s, gs) in g.iter().enumerate() {
            if s > order {
                break;
            }
            let gv = gs.matmul(&fam.v);
            for p in 0..=order - s {
                let term = right_scale(&gv, &diag_powers[p]);
                next[s + p] = &next[s + p] + &term;
            }
        }
        g = next;
        scaled.push(g[kk].scale(&-T::one()));
    }
    Ok(ProjectorSeries { level, sector, n_max: trunc.n_max, indices: fam.indices, scaled })
}

/// Exact rational projector series.
pub fn perturbed_projector(trunc: &TruncationSpec, level: usize, order: usize) -> Result<ProjectorSeries<BigRational>> {
    perturbed_projector_in::<BigRational>(trunc, level, order)
}

/// Projector series evaluated at `λ`, with a warning when `λ` lies outside
/// the sector's convergence disk.
#[derive(Clone, Debug)]
pub struct ProjectorEvaluation {
    pub series: ProjectorSeries<BigRational>,
    pub matrix: Mat<f64>,
    pub radius: Option<f64>,
    pub warnings: Vec<String>,
}

pub fn projector_at(trunc: &TruncationSpec, level: usize, order: usize, lambda: f64) -> Result<ProjectorEvaluation> {
    let series = perturbed_projector(trunc, level, order)?;
    let matrix = series.evaluate(lambda, order);
    let radius = crate::singularity::sector_radius(trunc, series.sector).ok();
    let mut warnings = Vec::new();
    if let Some(r) = radius {
        if lambda.abs() >= r {
            warnings.push(format!("|λ| = {lambda} lies outside the convergence radius {r:.6} of the {} sector", series.sector.name()));
        }
    }
    Ok(ProjectorEvaluation { series, matrix, radius, warnings })
}
