use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use phi4::hamiltonian::{anharmonic_family, strong_family};
use phi4::linalg::{symmetric_eigen, Mat};
use phi4::pauli::{anharmonic_qubit_hamiltonian, pauli_decompose_with, trotter_step_unitary, TermOrdering, TrotterPlan};
use phi4::singularity::{min_gap, project};
use phi4::{Complex64, Sector, TruncationSpec};

fn symmetric(n: usize, entries: &[f64]) -> Mat<Complex64> {
    let mut m = Mat::from_fn(n, n, |_, _| Complex64::new(0.0, 0.0));
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            m[(i, j)] = Complex64::new(entries[k], 0.0);
            m[(j, i)] = m[(i, j)];
            k += 1;
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pauli_round_trip(entries in prop::collection::vec(-3.0f64..3.0, 36)) {
        let h = symmetric(8, &entries);
        let d = pauli_decompose_with(&h, 0.0).unwrap();
        prop_assert!(d.reconstruct().max_abs_diff(&h) < 1e-12);
        prop_assert!(d.terms.iter().all(|t| (t.x & t.z).count_ones() % 2 == 0));
    }

    #[test]
    fn strong_weak_duality(lambda in 0.01f64..10.0) {
        let t = TruncationSpec::unit(8).unwrap();
        let (weak, _) = symmetric_eigen(&anharmonic_family(&t, Sector::Full).at_real(lambda));
        let (strong, _) = symmetric_eigen(&strong_family(&t, Sector::Full).at_real(1.0 / lambda));
        for (w, s) in weak.iter().zip(&strong) {
            let lhs = w / lambda;
            prop_assert!((lhs - s).abs() <= 1e-10 * s.abs().max(1.0), "{lhs} vs {s}");
        }
    }

    #[test]
    fn parity_blocks_decouple(lambda in -2.0f64..2.0) {
        let h = anharmonic_family(&TruncationSpec::unit(16).unwrap(), Sector::Full).at_real(lambda);
        for i in 0..16 {
            for j in 0..16 {
                if (i + j) % 2 == 1 {
                    prop_assert_eq!(h[(i, j)], 0.0);
                }
            }
        }
    }

    #[test]
    fn gap_is_conjugation_symmetric(re in -1.0f64..1.0, im in 0.001f64..1.0) {
        let fam = anharmonic_family(&TruncationSpec::unit(8).unwrap(), Sector::Even);
        let z = Complex64::new(re, im);
        let (a, b) = (min_gap(&fam, z).unwrap(), min_gap(&fam, z.conj()).unwrap());
        prop_assert!((a - b).abs() <= 1e-10 * a.max(1.0));
    }

    #[test]
    fn conjugates_mirror_on_the_sphere(re in -50.0f64..50.0, im in 1e-3f64..50.0) {
        let z = Complex64::new(re, im);
        let (p, q) = (project(z, 0.0), project(z.conj(), 0.0));
        prop_assert!(p.converged && q.converged);
        prop_assert!((p.x + q.x).abs() < 1e-12 && (p.y - q.y).abs() < 1e-12);
    }

    #[test]
    fn trotter_step_is_unitary(lambda in 0.0f64..1.0, dt in 0.001f64..0.5) {
        let d = pauli_decompose_with(&anharmonic_qubit_hamiltonian(3, lambda).unwrap(), 1e-12).unwrap();
        let u = trotter_step_unitary(&TrotterPlan::from_decomposition(&d, dt, 1, TermOrdering::ByMagnitudeDesc).unwrap());
        let id = Mat::from_fn(8, 8, |i, j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0));
        prop_assert!(u.adjoint().matmul(&u).max_abs_diff(&id) < 1e-12);
    }
}

#[test]
fn qubit_hamiltonian_matches_oscillator() {
    let h = anharmonic_qubit_hamiltonian(2, 0.5).unwrap();
    let direct = anharmonic_family(&TruncationSpec::unit(4).unwrap(), Sector::Full).at_real(0.5);
    for i in 0..4 {
        for j in 0..4 {
            assert_abs_diff_eq!(h[(i, j)].re, direct[(i, j)], epsilon = 1e-14);
            assert_abs_diff_eq!(h[(i, j)].im, 0.0);
        }
    }
}
