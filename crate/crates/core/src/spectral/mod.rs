//! Eigensolvers and derivative-based singularity estimates.

mod dense;
mod derivatives;
mod lanczos;
mod lattice;
mod singular;

pub use dense::{dense_spectrum, dense_spectrum_capped, SpectrumResult, DEFAULT_DENSE_CAP};
pub use derivatives::{
    compare_schemes, curve_derivatives, derivative_sweep, derivatives_at_position, energy_derivatives, track_level, DerivativeEstimate,
    DerivativeScheme, FdSteps, NEAR_DEGENERATE,
};
pub use lanczos::{lanczos_lowest, LanczosOptions, LANCZOS_SEED};
pub use lattice::{lattice_derivatives, lattice_ground_energy, lattice_singularity};
pub use singular::{singularity_from_curve, singularity_from_derivatives, singularity_from_level, width_to_imag, DerivativeSingularity, DEFAULT_SCAN_POINTS};
