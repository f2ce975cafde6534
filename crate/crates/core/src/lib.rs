//! Exact arithmetic for polynomial vector fields.
//!
//! A derivation of the polynomial ring `K[x1..xn]` (over the rationals
//! here) is determined by where it sends the variables, so it is stored
//! as a vector of polynomial coefficients.  This crate provides the ring
//! and Lie-bracket arithmetic on such vector fields, exact linear
//! algebra over their spans, and classifiers for the small
//! finite-dimensional Lie algebras they generate when every field in
//! the span points in a single polynomial direction.
//!
//! The main entry points:
//!
//! * [`poly::MultiPoly`]: sparse multivariate polynomials over `BigRational`;
//! * [`deriv::Derivation`]: vector fields, with [`deriv::Derivation::bracket`]
//!   and the rank-one factorisation [`deriv::Derivation::reduce`];
//! * [`span`]: exact spans, closure checks and structure constants;
//! * [`classify`]: the abelian / almost-abelian / sl2 trichotomy;
//! * [`construct`]: explicit model algebras and seeded random spans;
//! * [`w1`]: the one-variable specialisation and its normal forms;
//! * [`textio`]: the text syntax used by the CLI and the tests.

pub mod classify;
pub mod construct;
pub mod deriv;
pub mod poly;
pub mod span;
pub mod textio;
pub mod w1;

pub use deriv::Derivation;
pub use poly::{MultiPoly, Rational};
pub use span::SpannedAlgebra;
