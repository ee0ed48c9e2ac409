//! Orthogonal polynomials generated by a Chebyshev polynomial mapping.
//!
//! A sequence (t_n) whose blocks of length 2m are fixed at 1/4 except in four
//! places defines monic polynomials P_n by `P_{n+1} = x P_n - t_n P_{n-1}`.
//! Each P_n can be written through a second family Q_n composed with the
//! monic Chebyshev polynomial T^_{2m}. This crate builds both families in
//! exact rational arithmetic, checks the identities linking them, and
//! recovers the orthogonality measure of P from that of Q numerically.

pub mod chebyshev;
pub mod cli;
pub mod dd;
pub mod error;
pub mod example;
pub mod mapping;
pub mod measure;
pub mod poly;
pub mod real;
pub mod recurrence;
pub mod report;
pub mod scalar;
pub mod suite;
pub mod tridiag;

pub use dd::DoubleDouble;
pub use error::{Error, Result};
pub use poly::{Degree, DensePoly, ExactPoly};
pub use real::Real;
pub use scalar::Rational;
