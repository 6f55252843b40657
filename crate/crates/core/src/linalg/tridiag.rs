//! Implicit-shift QL iteration for real symmetric tridiagonal matrices.

use num_traits::Float;

use crate::error::{Error, Result};

/// Eigen-decomposition of the symmetric tridiagonal matrix with diagonal
/// `diag` and off-diagonal `off` (`off[i]` couples `i` and `i+1`).
///
/// Returns eigenvalues in ascending order and, column-wise, the matching
/// orthonormal eigenvectors (`vectors[k][i]` is component `i` of vector `k`).
pub fn symmetric_tridiagonal_eigen<F: Float>(diag: &[F], off: &[F]) -> Result<(Vec<F>, Vec<Vec<F>>)> {
    let n = diag.len();
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    assert_eq!(off.len() + 1, n, "off-diagonal must have n-1 entries");
    let mut d = diag.to_vec();
    let mut e: Vec<F> = off.iter().copied().chain(std::iter::once(F::zero())).collect();
    // z[i][k]: component i of eigenvector k.
    let mut z = vec![vec![F::zero(); n]; n];
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = F::one();
    }
    let two = F::one() + F::one();
    const MAX_ITER: usize = 60;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= F::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_ITER {
                return Err(Error::NoConvergence {
                    method: "tridiagonal QL",
                    detail: format!("eigenvalue {l} of {n} after {MAX_ITER} sweeps"),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(F::one());
            g = d[m] - d[l] + e[l] / (g + if g >= F::zero() { r.abs() } else { -r.abs() });
            let mut s = F::one();
            let mut c = F::one();
            let mut p = F::zero();
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == F::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = F::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    let f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = F::zero();
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&k| d[k]).collect();
    let vectors = order.iter().map(|&k| (0..n).map(|i| z[i][k]).collect()).collect();
    Ok((values, vectors))
}
