//! Nondegenerate Rayleigh–Schrödinger recursion with intermediate
//! normalization, written once for every field type.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// Energy corrections `E^(0..=max_order)` and state corrections `ψ^(m)` for
/// level `k` of `diag(energies) + λ·v`.
///
/// `v` need not be symmetric: any diagonal similarity of the physical
/// perturbation gives the same energies, which lets exact paths work in the
/// rational scaled basis. The state corrections satisfy `ψ^(m)[k] = 0` for
/// `m ≥ 1`.
pub fn rs_coefficients<T: Scalar>(energies: &[T], v: &Mat<T>, k: usize, max_order: usize) -> Result<(Vec<T>, Vec<Vec<T>>)> {
    let n = energies.len();
    assert_eq!(v.dim(), n);
    if k >= n {
        return Err(Error::InvalidArgument(format!("level index {k} outside dimension {n}")));
    }
    let mut inv_gap: Vec<T> = Vec::with_capacity(n);
    for (i, e) in energies.iter().enumerate() {
        if i == k {
            inv_gap.push(T::zero());
            continue;
        }
        let d = energies[k].clone() - e.clone();
        if d.is_zero() {
            return Err(Error::Degenerate(format!("unperturbed energies {k} and {i} coincide")));
        }
        inv_gap.push(T::one() / d);
    }
    let mut e_corr = vec![energies[k].clone()];
    let mut unit = vec![T::zero(); n];
    unit[k] = T::one();
    let mut psi = vec![unit];
    for m in 1..=max_order {
        let vpsi = v.mul_vec(&psi[m - 1]);
        let em = vpsi[k].clone();
        e_corr.push(em);
        let mut next = vpsi;
        for j in 1..=m {
            if e_corr[j].is_zero() {
                continue;
            }
            for (i, slot) in next.iter_mut().enumerate() {
                let p = &psi[m - j][i];
                if !p.is_zero() {
                    let cur = std::mem::replace(slot, T::zero());
                    *slot = cur - e_corr[j].clone() * p.clone();
                }
            }
        }
        for (slot, g) in next.iter_mut().zip(&inv_gap) {
            let cur = std::mem::replace(slot, T::zero());
            *slot = cur * g.clone();
        }
        psi.push(next);
    }
    Ok((e_corr, psi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_level_closed_form() {
        // diag(0, 1) + λ σx: E0 = ½ − ½√(1 + 4λ²) = −λ² + λ⁴ − 2λ⁶ …
        let v = Mat::from_fn(2, 2, |i, j| if i != j { 1.0 } else { 0.0 });
        let (e, _) = rs_coefficients(&[0.0, 1.0], &v, 0, 6).unwrap();
        let want: [f64; 7] = [0.0, 0.0, -1.0, 0.0, 1.0, 0.0, -2.0];
        for (a, b) in e.iter().zip(want) {
            assert!((a - b as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn degenerate_rejected() {
        let v = Mat::<f64>::identity(2);
        assert!(rs_coefficients(&[1.0, 1.0], &v, 0, 2).is_err());
    }
}
