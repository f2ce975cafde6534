//! Shared fixtures for the benchmark suite; the measurements live in
//! `benches/ops.rs`.

use rankone::deriv::Derivation;
use rankone::poly::MultiPoly;
use rankone::textio::{parse_derivation, parse_poly};

/// Parses a polynomial fixture, panicking on typos in the benchmark
/// source itself.
pub fn poly(s: &str, n: usize) -> MultiPoly {
    parse_poly(s, n).expect("benchmark fixture parses")
}

/// Parses a derivation fixture.
pub fn deriv(s: &str, n: usize) -> Derivation {
    parse_derivation(s, n).expect("benchmark fixture parses")
}

/// A pair of bivariate polynomials sharing the planted factor
/// `(x + y + 1)^4`, used to exercise the gcd ladder.
pub fn gcd_pair() -> (MultiPoly, MultiPoly) {
    let common = poly("(x + y + 1)^4", 2);
    let left = &common * &poly("x^2 + 3*y - 5", 2);
    let right = &common * &poly("y^3 - 2*x + 7", 2);
    (left, right)
}
