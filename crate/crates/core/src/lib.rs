//! Verification kernels for trigonometric Casimir connections.
//!
//! The crate builds root systems and Weyl groups, the `gl_n` Yangian acting
//! on tensor products of evaluation modules, the trigonometric Casimir
//! connection and its flatness relations, rational qKZ operators, the
//! degenerate affine Hecke algebra action on zero weight spaces, numerical
//! monodromy, and matrix models of Tits extensions. Algebraic identities are
//! checked in exact rational arithmetic.

pub mod algebra;
pub mod connection;
pub mod daha;
pub mod error;
pub mod glrep;
pub mod monodromy;
pub mod ode;
pub mod qkz;
pub mod relations;
pub mod report;
pub mod rootsys;
pub mod sample;
pub mod suites;
pub mod tits;
pub mod yangian;

pub use algebra::{
    ComplexMatrix, ExactMatrix, GaussianRational, LaurentScalar, LoopMatrix, Matrix, Rational,
};
pub use error::{Error, Result};
