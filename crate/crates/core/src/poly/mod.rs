//! Sparse multivariate polynomials over exact rationals.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector under the graded
//! lexicographic order with `x1 > x2 > ... > xn`, so iteration order is
//! canonical and the leading term is the last entry.  Every polynomial
//! carries its ambient variable count `n`; mixing different `n` is an
//! error, not a coercion.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub mod gcd;

pub use gcd::{content, gcd};

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

/// Shorthand for small rational constants.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Errors from polynomial arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    /// Two operands live in rings with different variable counts.
    DimensionMismatch { left: usize, right: usize },
    /// A variable index at or beyond the ambient count.
    VariableOutOfRange { index: usize, vars: usize },
    /// Exact division was requested but the divisor does not divide.
    NotDivisible,
    /// Division by the zero polynomial.
    DivisionByZero,
    /// A gcd or content of a family with no nonzero member.
    AllZero,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DimensionMismatch { left, right } => {
                write!(f, "operands have {left} and {right} variables")
            }
            PolyError::VariableOutOfRange { index, vars } => {
                write!(f, "variable index {index} out of range for {vars} variables")
            }
            PolyError::NotDivisible => write!(f, "division is not exact"),
            PolyError::DivisionByZero => write!(f, "division by zero polynomial"),
            PolyError::AllZero => write!(f, "every polynomial in the family is zero"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Exponent vector of one monomial; the length is the ambient variable
/// count.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    /// The constant monomial `1` in `n` variables.
    pub fn unit(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The monomial `x_{i+1}` (zero-based `i`) in `n` variables.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn vars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Quotient exponent vector; callers must check `divides` first.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    // Graded lexicographic with x1 > x2 > ... > xn: compare total degree,
    // then the earliest differing exponent decides (larger wins).
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {
                for (a, b) in self.0.iter().zip(&other.0) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial in `n` variables with `BigRational` coefficients.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(n), c);
        }
        p
    }

    /// The variable `x_{i+1}` (zero-based `i`).
    pub fn variable(n: usize, i: usize) -> Result<Self, PolyError> {
        if i >= n {
            return Err(PolyError::VariableOutOfRange { index: i, vars: n });
        }
        let mut p = Self::zero(n);
        p.terms.insert(Monomial::var(n, i), Rational::one());
        Ok(p)
    }

    /// Builds a polynomial from raw terms, summing duplicates and
    /// dropping zeros.  Panics if an exponent vector has the wrong
    /// length.
    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            assert_eq!(m.vars(), n, "exponent vector length must equal the variable count");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.leading().unwrap().0.is_unit())
    }

    /// The constant value if this polynomial is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.leading().unwrap().1.clone())
        } else {
            None
        }
    }

    /// Iterates terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Leading (graded-lex largest) term.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Coefficient of a monomial, zero when absent.
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.leading().map_or(0, |(m, _)| m.total_degree())
    }

    /// Largest exponent of `x_{i+1}` across all terms.
    pub fn degree_in(&self, i: usize) -> Result<u32, PolyError> {
        if i >= self.n {
            return Err(PolyError::VariableOutOfRange { index: i, vars: self.n });
        }
        Ok(self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
    }

    fn check_dims(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.n != other.n {
            Err(PolyError::DimensionMismatch { left: self.n, right: other.n })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_dims(other)?;
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies by a single term.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        assert_eq!(m.vars(), self.n, "exponent vector length must equal the variable count");
        if c.is_zero() {
            return Self::zero(self.n);
        }
        let terms = self
            .terms
            .iter()
            .map(|(ma, ca)| (ma.mul(m), ca * c))
            .collect();
        MultiPoly { n: self.n, terms }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        self.mul_term(&Monomial::unit(self.n), c)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = Self::one(self.n);
        for _ in 0..e {
            out = out.checked_mul(self).expect("same ring");
        }
        out
    }

    /// Formal partial derivative with respect to `x_{i+1}`.
    pub fn partial(&self, i: usize) -> Result<MultiPoly, PolyError> {
        if i >= self.n {
            return Err(PolyError::VariableOutOfRange { index: i, vars: self.n });
        }
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut lowered = m.clone();
            lowered.0[i] = e - 1;
            out.add_term(lowered, c * Rational::from(BigInt::from(e)));
        }
        Ok(out)
    }

    /// Exact division: returns `q` with `self = q * divisor`, or
    /// `NotDivisible` when no such polynomial exists.
    pub fn divide_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_dims(divisor)?;
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (dm, dc) = divisor.leading().expect("nonzero divisor");
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.n);
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return Err(PolyError::NotDivisible);
            }
            let qm = rm.div(&dm);
            let qc = rc / &dc;
            quot.add_term(qm.clone(), qc.clone());
            rem = rem.checked_sub(&divisor.mul_term(&qm, &qc)).expect("same ring");
        }
        Ok(quot)
    }

    /// Divides by the leading coefficient so the graded-lex leading
    /// coefficient becomes 1.  The zero polynomial is returned as is.
    pub fn make_monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Substitutes `value` for the single variable of a univariate
    /// polynomial.  The result lives in the ring of `value`.
    pub fn substitute_univar(&self, value: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if self.n != 1 {
            return Err(PolyError::DimensionMismatch { left: self.n, right: 1 });
        }
        // Horner evaluation over the dense coefficient list.
        let deg = self.total_degree();
        let mut out = MultiPoly::zero(value.n);
        for d in (0..=deg).rev() {
            out = out.checked_mul(value)?;
            let c = self.coeff(&Monomial(vec![d]));
            out = out.checked_add(&MultiPoly::constant(value.n, c))?;
        }
        Ok(out)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("same ring")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("same ring")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("same ring")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        MultiPoly { n: self.n, terms }
    }
}
