//! Exact characteristic polynomials of pencils `h0 + λv` and fraction-free
//! determinants with entries in `Q[λ]`.

use num_rational::BigRational;
use num_traits::One;

use super::{Mat, Poly};
use crate::error::{Error, Result};

type QPoly = Poly<BigRational>;

/// Coefficients (ascending in `z`) of `det(z·1 − h0 − λ·v)`, each a
/// polynomial in `λ`. Berkowitz's algorithm needs no division, so the work
/// stays in the polynomial ring.
pub fn pencil_charpoly(h0: &Mat<BigRational>, v: &Mat<BigRational>) -> Vec<QPoly> {
    let n = h0.dim();
    let a = |i: usize, j: usize| QPoly::linear(h0[(i, j)].clone(), v[(i, j)].clone());
    // Descending coefficient vector of the leading 1×1 block.
    let mut c: Vec<QPoly> = vec![QPoly::constant(BigRational::one()), a(0, 0).neg()];
    for r in 1..n {
        // Leading block A_r (r×r), column S = A[0..r][r], row R = A[r][0..r].
        let s_col: Vec<QPoly> = (0..r).map(|i| a(i, r)).collect();
        let r_row: Vec<QPoly> = (0..r).map(|j| a(r, j)).collect();
        let arr = a(r, r);
        // Toeplitz column: 1, −a_rr, −R S, −R A S, …, −R A^{r−1} S
        let mut col = vec![QPoly::constant(BigRational::one()), arr.neg()];
        let mut w = s_col;
        for p in 0..r {
            let dot = r_row.iter().zip(&w).fold(QPoly::zero(), |acc, (x, y)| acc.add(&x.mul(y)));
            col.push(dot.neg());
            if p + 1 < r {
                w = (0..r)
                    .map(|i| (0..r).fold(QPoly::zero(), |acc, j| acc.add(&a(i, j).mul(&w[j]))))
                    .collect();
            }
        }
        let mut next = vec![QPoly::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, cj) in c.iter().enumerate() {
                if i >= j {
                    *slot = slot.add(&col[i - j].mul(cj));
                }
            }
        }
        c = next;
    }
    c.reverse();
    c
}

/// Determinant by Bareiss fraction-free elimination; every division is exact.
pub fn bareiss_det(mut m: Vec<Vec<QPoly>>) -> Result<QPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(QPoly::constant(BigRational::one()));
    }
    let mut sign = false;
    let mut prev = QPoly::constant(BigRational::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(QPoly::zero());
            };
            m.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .div_exact(&prev)
                    .map_err(|e| Error::Numeric(format!("Bareiss step {k}: {e}")))?;
            }
            m[i][k] = QPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

/// Evaluates `Σ_k p_k(λ) z^k` at exact `λ`, returning a polynomial in `z`.
pub fn specialize(coeffs: &[QPoly], lambda: &BigRational) -> QPoly {
    QPoly::new(coeffs.iter().map(|p| p.eval(lambda)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn q(v: i64) -> BigRational {
        BigRational::from_i64(v)
    }

    #[test]
    fn berkowitz_matches_two_by_two() {
        // h0 = diag(1, 2), v = [[0, 1], [1, 0]] → z² − 3z + 2 − λ²
        let h0 = Mat::from_diag(&[q(1), q(2)]);
        let v = Mat::from_fn(2, 2, |i, j| if i != j { q(1) } else { q(0) });
        let c = pencil_charpoly(&h0, &v);
        assert_eq!(c[0], QPoly::new(vec![q(2), q(0), q(-1)]));
        assert_eq!(c[1], QPoly::constant(q(-3)));
        assert_eq!(c[2], QPoly::constant(q(1)));
    }

    #[test]
    fn berkowitz_agrees_with_bareiss() {
        let h0 = Mat::from_fn(4, 4, |i, j| q(((i * 7 + j * 3) % 5) as i64 - 2));
        let v = Mat::from_fn(4, 4, |i, j| q(((i + 2 * j) % 3) as i64));
        let c = pencil_charpoly(&h0, &v);
        // det(z − h0 − λv) at z = 3 via Bareiss
        let z = q(3);
        let rows: Vec<Vec<QPoly>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        let d = if i == j { z.clone() } else { q(0) };
                        QPoly::linear(d - h0[(i, j)].clone(), -v[(i, j)].clone())
                    })
                    .collect()
            })
            .collect();
        let det = bareiss_det(rows).unwrap();
        let via_c = c.iter().rev().fold(QPoly::zero(), |acc, p| acc.scale(&z).add(p));
        assert_eq!(det, via_c);
    }
}
