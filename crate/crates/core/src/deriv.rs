//! Derivations of `K[x1..xn]`, i.e. polynomial vector fields.
//!
//! A derivation is determined by the images of the variables, so it is
//! stored as `n` polynomial coefficients: `D = sum_i coeffs[i] * d/dx_i`.
//! Besides application and the Lie bracket, the key operation is
//! [`Derivation::reduce`], which factors out the gcd of the coefficients
//! and leaves a field whose coefficients have no common divisor.

use crate::poly::{self, MultiPoly, Rational};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Errors from vector-field arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivError {
    /// Operands live over different variable counts.
    DimensionMismatch { left: usize, right: usize },
    /// The zero derivation where a nonzero one is required.
    ZeroDerivation,
    /// An entry of a family is not a polynomial multiple of the
    /// family's common reduced field; carries the offending index.
    NotRankOne { index: usize },
    /// A family with no nonzero entry.
    AllZero,
}

impl fmt::Display for DerivError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivError::DimensionMismatch { left, right } => {
                write!(f, "operands have {left} and {right} variables")
            }
            DerivError::ZeroDerivation => write!(f, "the zero derivation has no reduction"),
            DerivError::NotRankOne { index } => {
                write!(f, "entry {index} is not a polynomial multiple of the common direction")
            }
            DerivError::AllZero => write!(f, "every derivation in the family is zero"),
        }
    }
}

impl std::error::Error for DerivError {}

/// A polynomial vector field `sum_i P_i d/dx_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation {
    n: usize,
    coeffs: Vec<MultiPoly>,
}

/// Result of factoring a field as `content * direction`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RankOneReduction {
    /// Monic gcd of the coefficients.
    pub content: MultiPoly,
    /// The reduced field; its coefficients have gcd 1.
    pub direction: Derivation,
}

impl Derivation {
    /// Builds a field from its coefficient vector; there must be one
    /// polynomial per variable, each over that many variables.
    pub fn new(coeffs: Vec<MultiPoly>) -> Result<Self, DerivError> {
        let n = coeffs.len();
        for c in &coeffs {
            if c.vars() != n {
                return Err(DerivError::DimensionMismatch { left: n, right: c.vars() });
            }
        }
        Ok(Derivation { n, coeffs })
    }

    pub fn zero(n: usize) -> Self {
        Derivation { n, coeffs: vec![MultiPoly::zero(n); n] }
    }

    /// The coordinate field `d/dx_{i+1}` (zero-based `i`).
    pub fn coordinate(n: usize, i: usize) -> Result<Self, DerivError> {
        if i >= n {
            return Err(DerivError::DimensionMismatch { left: n, right: i + 1 });
        }
        let mut d = Self::zero(n);
        d.coeffs[i] = MultiPoly::one(n);
        Ok(d)
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &MultiPoly {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Largest total degree among the coefficients.
    pub fn max_degree(&self) -> u32 {
        self.coeffs.iter().map(|c| c.total_degree()).max().unwrap_or(0)
    }

    fn check_dims(&self, other: &Derivation) -> Result<(), DerivError> {
        if self.n != other.n {
            Err(DerivError::DimensionMismatch { left: self.n, right: other.n })
        } else {
            Ok(())
        }
    }

    /// Applies the field to a polynomial: `D(f) = sum_i P_i df/dx_i`.
    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly, DerivError> {
        if f.vars() != self.n {
            return Err(DerivError::DimensionMismatch { left: self.n, right: f.vars() });
        }
        let mut out = MultiPoly::zero(self.n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let df = f.partial(i).expect("index in range");
            out = out
                .checked_add(&c.checked_mul(&df).expect("same ring"))
                .expect("same ring");
        }
        Ok(out)
    }

    /// Lie bracket `[self, other] = self . other - other . self`, again a
    /// derivation, with coefficients `self(Q_i) - other(P_i)`.
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation, DerivError> {
        self.check_dims(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(p, q)| {
                let a = self.apply(q).expect("dimensions checked");
                let b = other.apply(p).expect("dimensions checked");
                a.checked_sub(&b).expect("same ring")
            })
            .collect();
        Ok(Derivation { n: self.n, coeffs })
    }

    /// Multiplies every coefficient by a polynomial: the field `f * D`.
    pub fn mul_poly(&self, f: &MultiPoly) -> Derivation {
        assert_eq!(f.vars(), self.n, "polynomial and field must share the variable count");
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(f).expect("same ring"))
            .collect();
        Derivation { n: self.n, coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        let coeffs = self.coeffs.iter().map(|p| p.scale(c)).collect();
        Derivation { n: self.n, coeffs }
    }

    /// Whether the coefficients have no common nonconstant divisor.
    pub fn is_reduced(&self) -> Result<bool, DerivError> {
        if self.is_zero() {
            return Err(DerivError::ZeroDerivation);
        }
        let c = poly::content(&self.coeffs).expect("some coefficient is nonzero");
        Ok(c.is_constant())
    }

    /// Factors the field as `content * direction` with monic content and
    /// reduced direction.
    pub fn reduce(&self) -> Result<RankOneReduction, DerivError> {
        if self.is_zero() {
            return Err(DerivError::ZeroDerivation);
        }
        let content = poly::content(&self.coeffs).expect("some coefficient is nonzero");
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.divide_exact(&content).expect("content divides"))
            .collect();
        Ok(RankOneReduction {
            content,
            direction: Derivation { n: self.n, coeffs },
        })
    }
}

impl Add for &Derivation {
    type Output = Derivation;
    fn add(self, rhs: &Derivation) -> Derivation {
        self.check_dims(rhs).expect("same variable count");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.checked_add(b).expect("same ring"))
            .collect();
        Derivation { n: self.n, coeffs }
    }
}

impl Sub for &Derivation {
    type Output = Derivation;
    fn sub(self, rhs: &Derivation) -> Derivation {
        self + &-rhs
    }
}

impl Neg for &Derivation {
    type Output = Derivation;
    fn neg(self) -> Derivation {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        Derivation { n: self.n, coeffs }
    }
}

/// Finds the reduced field `D0` such that every entry is a polynomial
/// multiple of `D0`, or reports the first entry that is not.
///
/// The candidate comes from reducing the first nonzero entry, which
/// pins the scaling: the content taken off is monic.
pub fn common_direction(ds: &[Derivation]) -> Result<Derivation, DerivError> {
    let first = ds.iter().find(|d| !d.is_zero()).ok_or(DerivError::AllZero)?;
    let d0 = first.reduce().expect("nonzero entry").direction;
    let pivot = d0
        .coeffs
        .iter()
        .position(|c| !c.is_zero())
        .expect("reduced field is nonzero");
    for (index, d) in ds.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        d.check_dims(&d0)?;
        let f = d.coeffs[pivot]
            .divide_exact(&d0.coeffs[pivot])
            .map_err(|_| DerivError::NotRankOne { index })?;
        if *d != d0.mul_poly(&f) {
            return Err(DerivError::NotRankOne { index });
        }
    }
    Ok(d0)
}
