//! Thick-restart Lanczos for the lowest eigenpairs of a sparse Hermitian operator.
//!
//! The basis is kept fully orthogonal (two Gram–Schmidt passes) and each
//! restart cycle does a Rayleigh–Ritz on the whole basis, so the tridiagonal
//! structure is never relied on. At restart the lowest `k + (m−k)/2` Ritz
//! vectors are kept together with the current residual direction, which
//! keeps the space a Krylov space of the kept vectors.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::dense::SpectrumResult;
use crate::error::{Error, Result};
use crate::hamiltonian::{Sector, SparseOperator};
use crate::linalg::{hermitian_eigen, Mat};

pub const LANCZOS_SEED: u64 = 0x5EED;

#[derive(Clone, Copy, Debug)]
pub struct LanczosOptions {
    pub k: usize,
    /// Residual norm target for every requested pair.
    pub tol: f64,
    /// Basis size at which a restart happens.
    pub restart_dim: usize,
    pub max_restarts: usize,
    pub seed: u64,
}

impl LanczosOptions {
    pub fn new(k: usize) -> Self {
        LanczosOptions { k, tol: 1e-10, restart_dim: (2 * k + 20).max(30), max_restarts: 1000, seed: LANCZOS_SEED }
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    if a.len() > 4096 {
        a.par_iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    } else {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    }
}

fn norm(a: &[Complex64]) -> f64 {
    dot(a, a).re.sqrt()
}

fn axpy(y: &mut [Complex64], a: Complex64, x: &[Complex64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += a * xi);
}

/// Orthogonalizes `w` against `basis` twice; returns the remaining norm.
fn orthogonalize(w: &mut [Complex64], basis: &[Vec<Complex64>]) -> f64 {
    for _ in 0..2 {
        for b in basis {
            let c = dot(b, w);
            axpy(w, -c, b);
        }
    }
    norm(w)
}

fn apply(h: &SparseOperator, x: &[Complex64]) -> Vec<Complex64> {
    if h.dim > 4096 {
        (0..h.dim).into_par_iter().map(|r| h.row(r).iter().map(|&(_, c, v)| v * x[c]).sum()).collect()
    } else {
        h.mul_vec(x)
    }
}

fn combine(vs: &[Vec<Complex64>], coeffs: impl Fn(usize) -> Complex64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); vs[0].len()];
    for (i, v) in vs.iter().enumerate() {
        axpy(&mut out, coeffs(i), v);
    }
    out
}

/// `k` lowest eigenpairs; eigenvectors are returned as the columns of a
/// `dim × k` matrix.
pub fn lanczos_lowest(h: &SparseOperator, opts: &LanczosOptions) -> Result<SpectrumResult> {
    let n = h.dim;
    let k = opts.k;
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("cannot extract {k} pairs from dimension {n}")));
    }
    let scale = h.triplets.iter().map(|t| t.2.norm()).fold(0.0, f64::max).max(1.0);
    let defect = h.hermiticity_defect();
    if defect > 1e-12 * scale {
        return Err(Error::NotHermitian(defect));
    }
    let m = opts.restart_dim.max(k + 2).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let random_vec = |rng: &mut ChaCha8Rng| -> Vec<Complex64> { (0..n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), 0.0)).collect() };

    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    let mut images: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    let mut next = random_vec(&mut rng);
    for restart in 0..=opts.max_restarts {
        // Expand to m vectors.
        while basis.len() < m {
            let mut w = next;
            let mut r = orthogonalize(&mut w, &basis);
            let mut tries = 0;
            while r < 1e-12 * scale && tries < 5 {
                // Invariant subspace reached: continue with a fresh direction.
                w = random_vec(&mut rng);
                r = orthogonalize(&mut w, &basis);
                tries += 1;
            }
            if r == 0.0 {
                break;
            }
            w.iter_mut().for_each(|x| *x /= r);
            let hw = apply(h, &w);
            basis.push(w);
            next = hw.clone();
            images.push(hw);
        }
        let b = basis.len();
        let t = Mat::from_fn(b, b, |i, j| dot(&basis[i], &images[j]));
        let t = Mat::from_fn(b, b, |i, j| (t[(i, j)] + t[(j, i)].conj()) * 0.5);
        let (theta, y) = hermitian_eigen(&t);
        let ritz: Vec<Vec<Complex64>> = (0..b).map(|j| combine(&basis, |i| y[(i, j)])).collect();
        let ritz_images: Vec<Vec<Complex64>> = (0..b).map(|j| combine(&images, |i| y[(i, j)])).collect();
        let residual = |j: usize| -> Vec<Complex64> {
            let mut r = ritz_images[j].clone();
            axpy(&mut r, Complex64::new(-theta[j], 0.0), &ritz[j]);
            r
        };
        let res_norms: Vec<f64> = (0..k).map(|j| norm(&residual(j))).collect();
        if res_norms.iter().all(|&r| r <= opts.tol) || b == n {
            let vecs = Mat::from_fn(n, k, |i, j| ritz[j][i]);
            return Ok(SpectrumResult {
                eigenvalues: theta[..k].iter().map(|&v| Complex64::new(v, 0.0)).collect(),
                eigenvectors: Some(vecs),
                sector: Sector::Full,
                residuals: Some(res_norms),
            });
        }
        if restart == opts.max_restarts {
            let worst = res_norms.iter().cloned().fold(0.0, f64::max);
            return Err(Error::NoConvergence {
                method: "thick-restart Lanczos",
                detail: format!("{} restarts, worst residual {worst:e}", opts.max_restarts),
            });
        }
        let keep = (k + (m - k) / 2).min(b - 1);
        // Residual of the least converged wanted pair continues the Krylov sequence.
        let worst = (0..k).max_by(|&a, &c| res_norms[a].total_cmp(&res_norms[c])).unwrap();
        next = residual(worst);
        basis = ritz[..keep].to_vec();
        images = ritz_images[..keep].to_vec();
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{lattice_hamiltonian, Boundary, LatticeSpec};
    use crate::linalg::hermitian_eigen;
    use crate::oscillator::TruncationSpec;

    #[test]
    fn diagonal_matrix_lowest_exact() {
        let n = 300;
        let trip = (0..n).map(|i| (i, i, Complex64::new(i as f64, 0.0))).collect();
        let h = SparseOperator::from_triplets(n, trip, true);
        let s = lanczos_lowest(&h, &LanczosOptions::new(5)).unwrap();
        for (i, z) in s.eigenvalues.iter().enumerate() {
            assert!((z.re - i as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn matches_dense_on_two_sites() {
        let spec = LatticeSpec::new(2, TruncationSpec::unit(4).unwrap(), 0.1, 0.2, Boundary::Periodic);
        let h = lattice_hamiltonian(&spec).unwrap();
        let mut o = LanczosOptions::new(4);
        o.restart_dim = 8;
        let s = lanczos_lowest(&h, &o).unwrap();
        let (dense, _) = hermitian_eigen(&h.to_dense());
        for i in 0..4 {
            assert!((s.eigenvalues[i].re - dense[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let trip = vec![(0, 1, Complex64::new(1.0, 0.0)), (1, 0, Complex64::new(2.0, 0.0))];
        let h = SparseOperator::from_triplets(2, trip, false);
        assert!(matches!(lanczos_lowest(&h, &LanczosOptions::new(1)), Err(Error::NotHermitian(_))));
    }
}
