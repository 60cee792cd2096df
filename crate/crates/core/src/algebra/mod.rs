//! Scalars, dense matrices and exact linear algebra.

pub mod complex;
pub mod gaussian;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod scalar;

pub use complex::ComplexMatrix;
pub use gaussian::GaussianRational;
pub use laurent::{LaurentScalar, LoopMatrix};
pub use matrix::{commutator, kron, ExactMatrix, Matrix};
pub use scalar::{field_pow, int, rat, rational_string, rational_to_f64, Field, Rational, Scalar};
