//! Dense eigensolvers on top of nalgebra, returning sorted results.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::Mat;
use crate::error::{Error, Result};

const SCHUR_MAX_ITER: usize = 10_000;

fn by_real_part(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Real symmetric eigenproblem: ascending values and eigenvectors as columns.
pub fn symmetric_eigen(m: &Mat<f64>) -> (Vec<f64>, Mat<f64>) {
    let n = m.dim();
    let eig = SymmetricEigen::new(m.to_nalgebra());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vecs = Mat::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (vals, vecs)
}

/// Complex Hermitian eigenproblem.
pub fn hermitian_eigen(m: &Mat<Complex64>) -> (Vec<f64>, Mat<Complex64>) {
    let n = m.dim();
    let eig = SymmetricEigen::new(m.to_nalgebra());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vecs = Mat::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (vals, vecs)
}

fn schur(m: &Mat<Complex64>) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>)> {
    let s = nalgebra::Schur::try_new(m.to_nalgebra(), f64::EPSILON, SCHUR_MAX_ITER).ok_or_else(|| {
        Error::NoConvergence { method: "complex Schur", detail: format!("dimension {} after {SCHUR_MAX_ITER} sweeps", m.dim()) }
    })?;
    Ok(s.unpack())
}

/// Eigenvalues of a general complex matrix, sorted by real then imaginary part.
pub fn general_eigenvalues(m: &Mat<Complex64>) -> Result<Vec<Complex64>> {
    let (_, t) = schur(m)?;
    let mut vals: Vec<Complex64> = (0..m.dim()).map(|i| t[(i, i)]).collect();
    vals.sort_by(by_real_part);
    Ok(vals)
}

/// Eigenvalues and unit right eigenvectors (columns) of a general complex
/// matrix, from the Schur form by back substitution.
pub fn general_eigen(m: &Mat<Complex64>) -> Result<(Vec<Complex64>, Mat<Complex64>)> {
    let n = m.dim();
    let (q, t) = schur(m)?;
    let scale = t.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut vals = Vec::with_capacity(n);
    let mut vecs = Vec::with_capacity(n);
    for k in 0..n {
        let lam = t[(k, k)];
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        y[k] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let rhs: Complex64 = (i + 1..=k).map(|j| t[(i, j)] * y[j]).sum();
            let mut d = t[(i, i)] - lam;
            if d.norm() < f64::EPSILON * scale {
                d = Complex64::new(f64::EPSILON * scale, 0.0);
            }
            y[i] = -rhs / d;
        }
        let x: Vec<Complex64> = (0..n).map(|i| (0..=k).map(|j| q[(i, j)] * y[j]).sum()).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        vals.push(lam);
        vecs.push(x.into_iter().map(|z| z / norm).collect::<Vec<_>>());
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| by_real_part(&vals[a], &vals[b]));
    let sorted = order.iter().map(|&k| vals[k]).collect();
    let mat = Mat::from_fn(n, n, |i, j| vecs[order[j]][i]);
    Ok((sorted, mat))
}
