//! Truncated ("harmonic basis") single-site operators.
//!
//! The ladder obeys the usual relations except `a†|n_max−1⟩ = 0`, so
//! `[a, a†] = 1 − n_max·P_top` with `P_top = |n_max−1⟩⟨n_max−1|`.
//!
//! Besides the orthonormal occupation basis, the module exposes the
//! similarity-scaled basis `D = diag(√n!)`: there `D a D⁻¹` has unit
//! superdiagonal and `D a† D⁻¹` has subdiagonal `n`, so every polynomial in
//! the ladder operators has rational entries and can be handled exactly.
//! Entry `(i, j)` of an operator in the orthonormal basis equals the scaled
//! entry times `√(j!/i!)`.

use num_complex::Complex;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{symmetric_tridiagonal_eigen, Mat};
use crate::scalar::{RealScalar, Scalar};

/// Local Hilbert-space truncation and oscillator frequency.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationSpec {
    pub n_max: usize,
    pub omega: f64,
}

impl TruncationSpec {
    pub fn new(n_max: usize, omega: f64) -> Result<Self> {
        if n_max < 2 || n_max % 2 != 0 {
            return Err(Error::InvalidTruncation(format!(
                "n_max must be even and at least 2 (parity sectors need equal size), got {n_max}"
            )));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidTruncation(format!("omega must be positive, got {omega}")));
        }
        Ok(TruncationSpec { n_max, omega })
    }

    /// `ω = 1`.
    pub fn unit(n_max: usize) -> Result<Self> {
        Self::new(n_max, 1.0)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Occupation,
    Field,
}

/// Dense operator with basis metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix<T> {
    pub entries: Mat<T>,
    pub basis: Basis,
    pub hermitian: bool,
}

impl<T: Scalar> OperatorMatrix<T> {
    pub fn new(entries: Mat<T>, basis: Basis, hermitian: bool) -> Self {
        OperatorMatrix { entries, basis, hermitian }
    }

    pub fn occupation(entries: Mat<T>, hermitian: bool) -> Self {
        Self::new(entries, Basis::Occupation, hermitian)
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let e = self.entries.matmul(&rhs.entries);
        let herm = e.is_hermitian_exact();
        Self::new(e, self.basis, herm)
    }
}

/// Annihilation and creation operators in the orthonormal occupation basis.
pub fn build_ladder<F: Float + RealScalar>(spec: &TruncationSpec) -> (OperatorMatrix<F>, OperatorMatrix<F>) {
    let n = spec.n_max;
    let a = Mat::from_fn(n, n, |i, j| if j == i + 1 { F::from(j).unwrap().sqrt() } else { F::zero() });
    let adag = a.transpose();
    (OperatorMatrix::occupation(a, false), OperatorMatrix::occupation(adag, false))
}

/// Field `φ = (a + a†)/√(2ω)` and momentum `π = −i√(ω/2)(a − a†)`.
pub fn build_field_ops<F: Float + RealScalar>(
    spec: &TruncationSpec,
) -> (OperatorMatrix<Complex<F>>, OperatorMatrix<Complex<F>>) {
    let (a, adag) = build_ladder::<F>(spec);
    let omega = F::from(spec.omega).unwrap();
    let two = F::one() + F::one();
    let phi_scale = (two * omega).sqrt().recip();
    let pi_scale = (omega / two).sqrt();
    let phi = Mat::from_fn(spec.n_max, spec.n_max, |i, j| {
        Complex::new((a.entries[(i, j)] + adag.entries[(i, j)]) * phi_scale, F::zero())
    });
    let pi = Mat::from_fn(spec.n_max, spec.n_max, |i, j| {
        Complex::new(F::zero(), -(a.entries[(i, j)] - adag.entries[(i, j)]) * pi_scale)
    });
    (OperatorMatrix::occupation(phi, true), OperatorMatrix::occupation(pi, true))
}

/// Real field operator, the common case for Hamiltonian assembly.
pub fn field_operator(spec: &TruncationSpec) -> Mat<f64> {
    let n = spec.n_max;
    let s = (2.0 * spec.omega).sqrt().recip();
    Mat::from_fn(n, n, |i, j| {
        if j == i + 1 {
            (j as f64).sqrt() * s
        } else if i == j + 1 {
            (i as f64).sqrt() * s
        } else {
            0.0
        }
    })
}

/// `P_{n_max−1}`
pub fn top_projector<T: Scalar>(spec: &TruncationSpec) -> Mat<T> {
    let n = spec.n_max;
    Mat::from_fn(n, n, |i, j| if i == n - 1 && j == n - 1 { T::one() } else { T::zero() })
}

/// `ω(a†a + ½)`, diagonal in the occupation basis.
pub fn harmonic_energies<T: Scalar>(spec: &TruncationSpec) -> Vec<T> {
    let omega = T::from_f64(spec.omega);
    (0..spec.n_max).map(|n| omega.clone() * (T::from_i64(n as i64) + T::from_ratio(1, 2))).collect()
}

/// Scaled-basis ladder: `a` with unit superdiagonal and `a†` with subdiagonal `n`.
pub fn scaled_ladder<T: Scalar>(spec: &TruncationSpec) -> (Mat<T>, Mat<T>) {
    let n = spec.n_max;
    let a = Mat::from_fn(n, n, |i, j| if j == i + 1 { T::one() } else { T::zero() });
    let adag = Mat::from_fn(n, n, |i, j| if i == j + 1 { T::from_i64(i as i64) } else { T::zero() });
    (a, adag)
}

/// `φ⁴ = (a + a†)⁴ / (4ω²)` in the scaled basis; rational whenever `ω` is.
pub fn scaled_phi4<T: Scalar>(spec: &TruncationSpec) -> Mat<T> {
    let (a, adag) = scaled_ladder::<T>(spec);
    let x = &a + &adag;
    let x2 = x.matmul(&x);
    let omega = T::from_f64(spec.omega);
    x2.matmul(&x2).scale(&(T::one() / (T::from_i64(4) * omega.clone() * omega)))
}

/// Multiplier taking scaled entry `(i, j)` to the orthonormal basis: `√(j!/i!)`.
pub fn scaled_to_orthonormal(i: usize, j: usize) -> f64 {
    let (lo, hi, up) = if j >= i { (i, j, true) } else { (j, i, false) };
    let mut log = 0.0;
    for k in lo + 1..=hi {
        log += (k as f64).ln();
    }
    let r = (0.5 * log).exp();
    if up {
        r
    } else {
        1.0 / r
    }
}

/// Radicand `j!/i!` of [`scaled_to_orthonormal`] as an exact rational.
pub fn scaled_to_orthonormal_radicand(i: usize, j: usize) -> num_rational::BigRational {
    let fi = crate::scalar::factorial(i as u64);
    let fj = crate::scalar::factorial(j as u64);
    num_rational::BigRational::new(fj, fi)
}

/// Eigenpair of the truncated field operator.
#[derive(Clone, Debug)]
pub struct FieldEigenpair {
    pub phi: f64,
    /// `⟨n|φ_j⟩` for `n = 0..n_max`.
    pub vector: Vec<f64>,
}

/// Orthonormal Hermite functions `H_n(x)/√(2^n n!)`, `n = 0..count`, computed
/// by their stable three-term recurrence (the Gaussian factor is omitted).
pub fn normalized_hermite(x: f64, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(1.0);
    if count == 1 {
        return out;
    }
    out.push(2f64.sqrt() * x);
    for n in 1..count - 1 {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * x * out[n] - (nf / (nf + 1.0)).sqrt() * out[n - 1];
        out.push(next);
    }
    out
}

/// Physicists' Hermite polynomial by recurrence.
pub fn hermite<T: Scalar>(n: usize, x: &T) -> T {
    let mut h0 = T::one();
    if n == 0 {
        return h0;
    }
    let mut h1 = T::from_i64(2) * x.clone();
    for k in 1..n {
        let h2 = T::from_i64(2) * x.clone() * h1.clone() - T::from_i64(2 * k as i64) * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}

/// Zeros of `H_n` from the symmetric Jacobi matrix of the recurrence
/// (off-diagonal `√(k/2)`), in ascending order.
pub fn hermite_roots<F: Float>(n: usize) -> Result<Vec<F>> {
    let two = F::one() + F::one();
    let diag = vec![F::zero(); n];
    let off: Vec<F> = (1..n).map(|k| (F::from(k).unwrap() / two).sqrt()).collect();
    let (vals, _) = symmetric_tridiagonal_eigen(&diag, &off).map_err(|e| match e {
        Error::NoConvergence { detail, .. } => Error::NoConvergence {
            method: "Hermite root finder",
            detail: format!("degree {n}: {detail}"),
        },
        other => other,
    })?;
    Ok(vals)
}

/// Field eigenbasis: eigenvalues are Hermite zeros `x_j/√ω`, amplitudes from
/// the normalized Hermite ratio `⟨n|φ_j⟩ = ψ_n(x_j) / (√n_max · ψ_{n_max−1}(x_j))`.
pub fn field_eigenbasis(spec: &TruncationSpec) -> Result<Vec<FieldEigenpair>> {
    let n = spec.n_max;
    let roots = hermite_roots::<f64>(n)?;
    let sqrt_n = (n as f64).sqrt();
    Ok(roots
        .into_iter()
        .map(|x| {
            let psi = normalized_hermite(x, n);
            let denom = sqrt_n * psi[n - 1];
            FieldEigenpair { phi: x / spec.omega.sqrt(), vector: psi.iter().map(|p| p / denom).collect() }
        })
        .collect())
}
