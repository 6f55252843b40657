//! Generic dense linear algebra and polynomials.

pub mod charpoly;
pub mod eigen;
pub mod matrix;
pub mod poly;
pub mod tridiag;

pub use eigen::{general_eigen, general_eigenvalues, hermitian_eigen, symmetric_eigen};
pub use matrix::Mat;
pub use poly::Poly;
pub use tridiag::symmetric_tridiagonal_eigen;
