//! Explicit model algebras realised by vector fields, and seeded random
//! rank-one spans for randomized checks.
//!
//! All families are built from a frame `(D0, p, q)`: a reduced field
//! `D0`, an invariant `p` (`D0(p) = 0`, nonconstant) and a coordinate
//! `q` (`D0(q) = 1`).  Abelian families are spanned by `p^i D0`, the
//! almost-abelian ones add `b = -q D0`, and the sl2 copy is
//! `(q^2 D0, 2q D0, -D0)`.  The one-variable families `F_{k,beta}` and
//! `F(beta)` are the same shapes with `q = x + beta` (no `p` exists
//! there, which is why the bigger families need a second variable).

use crate::deriv::Derivation;
use crate::poly::{MultiPoly, Rational};
use crate::span::SpannedAlgebra;
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Errors from the example constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructError {
    /// Families spanned by powers of an invariant need a second
    /// variable; over one variable every such abelian span is
    /// one-dimensional.
    NeedsSecondVariable,
    /// The two-parameter family skips `k = 1`.
    UnsupportedIndex { k: u32 },
    /// A construction was asked for zero size.
    ZeroSize,
    /// A custom frame fails one of its laws.
    InvalidFrame(&'static str),
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::NeedsSecondVariable => write!(
                f,
                "families of invariant powers need a second variable; over one variable the abelian spans here are one-dimensional"
            ),
            ConstructError::UnsupportedIndex { k } => {
                write!(f, "the family has no member at k = {k}")
            }
            ConstructError::ZeroSize => write!(f, "the construction needs a positive size"),
            ConstructError::InvalidFrame(what) => write!(f, "invalid frame: {what}"),
        }
    }
}

impl std::error::Error for ConstructError {}

/// A frame `(D0, p, q)` with `D0` reduced, `D0(p) = 0` for nonconstant
/// `p`, and `D0(q) = 1`.
#[derive(Clone, Debug)]
pub struct RealizationFrame {
    d0: Derivation,
    p: MultiPoly,
    q: MultiPoly,
}

impl RealizationFrame {
    /// The default frame over `n >= 2` variables: `D0 = d/dx2`,
    /// `p = x1`, `q = x2`.
    pub fn standard(n: usize) -> Result<Self, ConstructError> {
        if n < 2 {
            return Err(ConstructError::NeedsSecondVariable);
        }
        let d0 = Derivation::coordinate(n, 1).expect("n >= 2");
        let p = MultiPoly::variable(n, 0).expect("n >= 2");
        let q = MultiPoly::variable(n, 1).expect("n >= 2");
        Ok(RealizationFrame { d0, p, q })
    }

    /// Builds a custom frame after checking the frame laws.
    pub fn new(d0: Derivation, p: MultiPoly, q: MultiPoly) -> Result<Self, ConstructError> {
        if d0.is_zero() {
            return Err(ConstructError::InvalidFrame("the base field is zero"));
        }
        if !d0.is_reduced().expect("nonzero field") {
            return Err(ConstructError::InvalidFrame("the base field is not reduced"));
        }
        if p.vars() != d0.vars() || q.vars() != d0.vars() {
            return Err(ConstructError::InvalidFrame("mismatched variable counts"));
        }
        if !d0.apply(&p).expect("same variable count").is_zero() {
            return Err(ConstructError::InvalidFrame("p is not invariant under the base field"));
        }
        if p.is_constant() {
            return Err(ConstructError::InvalidFrame("p must be nonconstant"));
        }
        if d0.apply(&q).expect("same variable count") != MultiPoly::one(q.vars()) {
            return Err(ConstructError::InvalidFrame("q must map to 1 under the base field"));
        }
        Ok(RealizationFrame { d0, p, q })
    }

    pub fn d0(&self) -> &Derivation {
        &self.d0
    }

    pub fn p(&self) -> &MultiPoly {
        &self.p
    }

    pub fn q(&self) -> &MultiPoly {
        &self.q
    }
}

/// Abelian algebra `< D0, p D0, ..., p^(m-1) D0 >` in a frame.
pub fn abelian_in_frame(frame: &RealizationFrame, m: usize) -> Result<SpannedAlgebra, ConstructError> {
    if m == 0 {
        return Err(ConstructError::ZeroSize);
    }
    let basis: Vec<Derivation> = (0..m as u32)
        .map(|i| frame.d0.mul_poly(&frame.p.pow(i)))
        .collect();
    Ok(SpannedAlgebra::from_span(&basis))
}

/// Abelian algebra of dimension `m` in the standard frame over `n`
/// variables.
pub fn abelian_example(m: usize, n: usize) -> Result<SpannedAlgebra, ConstructError> {
    abelian_in_frame(&RealizationFrame::standard(n)?, m)
}

/// The abelian family plus the witness `b = -q D0` acting on it as the
/// identity.
pub fn almost_abelian_in_frame(
    frame: &RealizationFrame,
    m: usize,
) -> Result<SpannedAlgebra, ConstructError> {
    if m == 0 {
        return Err(ConstructError::ZeroSize);
    }
    let mut basis: Vec<Derivation> = (0..m as u32)
        .map(|i| frame.d0.mul_poly(&frame.p.pow(i)))
        .collect();
    basis.push(-&frame.d0.mul_poly(&frame.q));
    Ok(SpannedAlgebra::from_span(&basis))
}

/// Almost-abelian algebra with an `m`-dimensional ideal in the standard
/// frame over `n` variables.
pub fn almost_abelian_example(m: usize, n: usize) -> Result<SpannedAlgebra, ConstructError> {
    almost_abelian_in_frame(&RealizationFrame::standard(n)?, m)
}

/// The sl2 copy `(q^2 D0, 2q D0, -D0)` for a reduced `D0` and any `q`
/// with `D0(q) = 1`.
pub fn sl2_with(d0: &Derivation, q: &MultiPoly) -> Result<SpannedAlgebra, ConstructError> {
    if d0.is_zero() {
        return Err(ConstructError::InvalidFrame("the base field is zero"));
    }
    if !d0.is_reduced().expect("nonzero field") {
        return Err(ConstructError::InvalidFrame("the base field is not reduced"));
    }
    if q.vars() != d0.vars() {
        return Err(ConstructError::InvalidFrame("mismatched variable counts"));
    }
    if d0.apply(q).expect("same variable count") != MultiPoly::one(q.vars()) {
        return Err(ConstructError::InvalidFrame("q must map to 1 under the base field"));
    }
    let two = MultiPoly::constant(q.vars(), Rational::from(BigInt::from(2)));
    let basis = vec![
        d0.mul_poly(&q.pow(2)),
        d0.mul_poly(&q.checked_mul(&two).expect("same ring")),
        -d0,
    ];
    Ok(SpannedAlgebra::from_span(&basis))
}

/// The sl2 copy over `n` variables: `q = x` for one variable, `q = x2`
/// otherwise.
pub fn sl2_example(n: usize) -> Result<SpannedAlgebra, ConstructError> {
    if n == 0 {
        return Err(ConstructError::ZeroSize);
    }
    let slot = if n == 1 { 0 } else { 1 };
    let d0 = Derivation::coordinate(n, slot).expect("slot in range");
    let q = MultiPoly::variable(n, slot).expect("slot in range");
    sl2_with(&d0, &q)
}

/// The two-dimensional family `F_{k,beta}` over one variable: the pair
/// `((x+beta) d/dx, (x+beta)^k d/dx)` for `k = 0` or `k >= 2`.  The
/// bracket is `(k-1) (x+beta)^k d/dx`, so the span is closed and the
/// first element acts as the scalar `k-1` on the line spanned by the
/// second.
pub fn f_k_beta(k: u32, beta: &Rational) -> Result<SpannedAlgebra, ConstructError> {
    if k == 1 {
        return Err(ConstructError::UnsupportedIndex { k });
    }
    let d0 = Derivation::coordinate(1, 0).expect("one variable");
    let shifted = &MultiPoly::variable(1, 0).expect("one variable")
        + &MultiPoly::constant(1, beta.clone());
    let b = d0.mul_poly(&shifted);
    let a = d0.mul_poly(&shifted.pow(k));
    Ok(SpannedAlgebra::from_span(&[b, a]))
}

/// The sl2 family `F(beta)` over one variable, realised around the
/// point `-beta`.
pub fn f_of_beta(beta: &Rational) -> SpannedAlgebra {
    let d0 = Derivation::coordinate(1, 0).expect("one variable");
    let q = &MultiPoly::variable(1, 0).expect("one variable")
        + &MultiPoly::constant(1, beta.clone());
    sl2_with(&d0, &q).expect("x + beta is a coordinate for d/dx")
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> MultiPoly {
    let terms = rng.random_range(1..=3);
    let mut p = MultiPoly::zero(n);
    for _ in 0..terms {
        let mut remaining = max_degree;
        let mut exps = vec![0u32; n];
        for e in exps.iter_mut() {
            *e = rng.random_range(0..=remaining);
            remaining -= *e;
        }
        let c = loop {
            let c: i64 = rng.random_range(-9..=9);
            if c != 0 {
                break c;
            }
        };
        let term = MultiPoly::from_terms(
            n,
            [(crate::poly::Monomial(exps), Rational::from(BigInt::from(c)))],
        );
        p = &p + &term;
    }
    p
}

fn random_nonzero_poly(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> MultiPoly {
    loop {
        let p = random_poly(rng, n, max_degree);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random reduced field with coefficients of degree at most one.
fn random_reduced_direction(rng: &mut ChaCha8Rng, n: usize) -> Derivation {
    loop {
        let coeffs: Vec<MultiPoly> = (0..n)
            .map(|_| {
                if rng.random_range(0..4) == 0 {
                    MultiPoly::zero(n)
                } else {
                    random_poly(rng, n, 1)
                }
            })
            .collect();
        let d = Derivation::new(coeffs).expect("coefficients built over n variables");
        if !d.is_zero() && d.is_reduced().expect("nonzero field") {
            return d;
        }
    }
}

/// A reproducible random family `f_i * D0` of the given size: one
/// reduced direction, multiplied by nonzero random polynomials of total
/// degree at most `max_degree`.
pub fn random_rank_one_span(
    n: usize,
    dim: usize,
    max_degree: u32,
    seed: u64,
) -> Result<Vec<Derivation>, ConstructError> {
    if n == 0 || dim == 0 {
        return Err(ConstructError::ZeroSize);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d0 = random_reduced_direction(&mut rng, n);
    Ok((0..dim)
        .map(|_| d0.mul_poly(&random_nonzero_poly(&mut rng, n, max_degree)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_rank_one, ClassOutcome};
    use crate::deriv::common_direction;
    use crate::poly::rat;
    use crate::span::is_abelian;
    use crate::textio::{parse_derivation, parse_poly};

    fn d(s: &str, n: usize) -> Derivation {
        parse_derivation(s, n).expect("test derivation parses")
    }

    #[test]
    fn abelian_basis_is_powers_of_the_invariant() {
        let a = abelian_example(3, 2).unwrap();
        assert_eq!(
            a.basis(),
            &[d("d/dx2", 2), d("x1*d/dx2", 2), d("x1^2*d/dx2", 2)]
        );
        assert!(a.is_closed());
        assert!(is_abelian(&a));

        let single = abelian_example(1, 2).unwrap();
        assert_eq!(single.basis(), &[d("d/dx2", 2)]);
    }

    #[test]
    fn abelian_needs_a_second_variable() {
        assert_eq!(abelian_example(3, 1).unwrap_err(), ConstructError::NeedsSecondVariable);
        assert_eq!(abelian_example(0, 2).unwrap_err(), ConstructError::ZeroSize);
    }

    #[test]
    fn almost_abelian_shape_and_classification() {
        let a = almost_abelian_example(1, 2).unwrap();
        assert_eq!(a.basis(), &[d("d/dx2", 2), d("-x2*d/dx2", 2)]);

        let a = almost_abelian_example(3, 2).unwrap();
        assert_eq!(a.dim(), 4);
        match classify_rank_one(a.basis()) {
            ClassOutcome::AlmostAbelian { dim, ideal, witness } => {
                assert_eq!(dim, 4);
                assert_eq!(
                    ideal,
                    vec![d("d/dx2", 2), d("x1*d/dx2", 2), d("x1^2*d/dx2", 2)]
                );
                assert_eq!(witness, d("-x2*d/dx2", 2));
            }
            other => panic!("expected AlmostAbelian, got {other:?}"),
        }
    }

    #[test]
    fn sl2_examples() {
        let a = sl2_example(1).unwrap();
        assert_eq!(
            a.basis(),
            &[d("x^2*d/dx", 1), d("2*x*d/dx", 1), d("-d/dx", 1)]
        );
        assert!(matches!(
            classify_rank_one(a.basis()),
            ClassOutcome::Sl2 { triple: Some(_) }
        ));

        let a = sl2_example(2).unwrap();
        assert_eq!(
            a.basis(),
            &[d("x2^2*d/dx2", 2), d("2*x2*d/dx2", 2), d("-d/dx2", 2)]
        );
        assert!(a.is_closed());

        assert_eq!(sl2_example(0).unwrap_err(), ConstructError::ZeroSize);
    }

    #[test]
    fn custom_frame_laws_are_checked() {
        let d0 = d("d/dx2", 2);
        let p = parse_poly("x1", 2).unwrap();
        let q = parse_poly("x2", 2).unwrap();
        assert!(RealizationFrame::new(d0.clone(), p.clone(), q.clone()).is_ok());
        // q with the wrong image.
        assert!(RealizationFrame::new(d0.clone(), p.clone(), parse_poly("2*x2", 2).unwrap()).is_err());
        // p not invariant.
        assert!(RealizationFrame::new(d0.clone(), q.clone(), q.clone()).is_err());
        // p constant.
        assert!(RealizationFrame::new(d0.clone(), parse_poly("3", 2).unwrap(), q.clone()).is_err());
        // Non-reduced base field.
        assert!(RealizationFrame::new(d("x1*d/dx2", 2), p, q).is_err());
    }

    #[test]
    fn frame_variants_work_with_other_coordinates() {
        // D0 = d/dx1 over three variables, p = x2, q = x1 + x2.
        let d0 = d("d/dx1", 3);
        let p = parse_poly("x2", 3).unwrap();
        let q = parse_poly("x1 + x2", 3).unwrap();
        let frame = RealizationFrame::new(d0, p, q).unwrap();
        let a = almost_abelian_in_frame(&frame, 2).unwrap();
        assert_eq!(a.dim(), 3);
        match classify_rank_one(a.basis()) {
            ClassOutcome::AlmostAbelian { witness, .. } => {
                assert_eq!(witness, d("(-x1 - x2)*d/dx1", 3));
            }
            other => panic!("expected AlmostAbelian, got {other:?}"),
        }
    }

    #[test]
    fn f_k_beta_members() {
        let a = f_k_beta(2, &rat(0, 1)).unwrap();
        assert_eq!(a.basis(), &[d("x*d/dx", 1), d("x^2*d/dx", 1)]);

        let a = f_k_beta(0, &rat(1, 1)).unwrap();
        assert_eq!(a.basis(), &[d("(x + 1)*d/dx", 1), d("d/dx", 1)]);

        let a = f_k_beta(3, &rat(-2, 1)).unwrap();
        assert_eq!(a.basis(), &[d("(x - 2)*d/dx", 1), d("(x - 2)^3*d/dx", 1)]);

        assert_eq!(f_k_beta(1, &rat(0, 1)).unwrap_err(), ConstructError::UnsupportedIndex { k: 1 });
    }

    #[test]
    fn f_k_beta_classifies_with_unit_action() {
        for k in [0u32, 2, 3, 4, 6] {
            for beta in [rat(0, 1), rat(1, 1), rat(-3, 2)] {
                let a = f_k_beta(k, &beta).unwrap();
                match classify_rank_one(a.basis()) {
                    ClassOutcome::AlmostAbelian { dim, ideal, witness } => {
                        assert_eq!(dim, 2);
                        assert_eq!(ideal.len(), 1);
                        assert_eq!(witness.bracket(&ideal[0]).unwrap(), ideal[0]);
                    }
                    other => panic!("k={k}: expected AlmostAbelian, got {other:?}"),
                }
            }
        }
    }

    #[test]
    fn f_of_beta_matches_the_sl2_pattern() {
        let a = f_of_beta(&rat(0, 1));
        assert_eq!(a.basis(), sl2_example(1).unwrap().basis());

        let a = f_of_beta(&rat(1, 1));
        assert!(a.is_closed());
        assert!(matches!(
            classify_rank_one(a.basis()),
            ClassOutcome::Sl2 { triple: Some(_) }
        ));
    }

    #[test]
    fn random_spans_share_a_direction() {
        for seed in [0u64, 1, 17] {
            let fam = random_rank_one_span(2, 4, 3, seed).unwrap();
            assert_eq!(fam.len(), 4);
            let d0 = common_direction(&fam).unwrap();
            // Brackets stay multiples of the same direction.
            let mut with_brackets = fam.clone();
            for i in 0..fam.len() {
                for j in (i + 1)..fam.len() {
                    let w = fam[i].bracket(&fam[j]).unwrap();
                    if !w.is_zero() {
                        with_brackets.push(w);
                    }
                }
            }
            assert_eq!(common_direction(&with_brackets).unwrap(), d0);
        }
    }

    #[test]
    fn random_spans_are_reproducible() {
        let a = random_rank_one_span(3, 4, 3, 99).unwrap();
        let b = random_rank_one_span(3, 4, 3, 99).unwrap();
        assert_eq!(a, b);
        let c = random_rank_one_span(3, 4, 3, 100).unwrap();
        assert_ne!(a, c);
        assert_eq!(random_rank_one_span(0, 1, 1, 0).unwrap_err(), ConstructError::ZeroSize);
    }
}
