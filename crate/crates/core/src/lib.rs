//! Digitized anharmonic oscillator and lattice φ⁴: spectra, perturbative
//! series, exceptional points and Pauli/Trotter circuits.
//!
//! Algebraic code is generic over [`Scalar`]; the aliases below fix the
//! instantiations used by the drivers.

pub mod error;
pub mod hamiltonian;
pub mod hp;
pub mod linalg;
pub mod oscillator;
pub mod pauli;
pub mod scalar;
pub mod series;
pub mod singularity;
pub mod spectral;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use error::{Error, Result};
pub use hamiltonian::{Boundary, LatticeSpec, LinearFamily, Sector};
pub use hp::HighPrecision;
pub use oscillator::TruncationSpec;
pub use scalar::{RealScalar, Scalar};

pub use num_complex::Complex64;
pub use num_rational::BigRational;

pub type RealMatrix = linalg::Mat<f64>;
pub type ComplexMatrix = linalg::Mat<Complex64>;
pub type RationalMatrix = linalg::Mat<BigRational>;
pub type ComplexOperator = oscillator::OperatorMatrix<Complex64>;

pub type RationalSeries = series::PowerSeries<BigRational>;
pub type FloatSeries = series::PowerSeries<f64>;
pub type SingleSeries = series::PowerSeries<f32>;
pub type HpSeries = series::PowerSeries<HighPrecision>;

pub type RationalProjector = series::ProjectorSeries<BigRational>;
pub type FloatProjector = series::ProjectorSeries<f64>;
