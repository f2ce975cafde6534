//! The one-variable specialisation.
//!
//! Over `K[x]` every field is `f(x) d/dx`, so rank-one spans are just
//! spans of polynomial multiples of `d/dx` and the classification
//! collapses to three shapes: lines, the two-dimensional families
//! `F_{k,beta}` spanned by `((x+beta)/(k-1)) d/dx` and
//! `(x+beta)^k d/dx` (`k != 1`), and the sl2 copy `F(beta)` spanned by
//! the fields of degree at most two.  The pair `(f, g)` of a
//! two-dimensional member satisfies `f g' - f' g = g`, which is what
//! [`star_condition`] checks, and an affine substitution moves `beta`
//! to zero.  [`scan_two_dim_spans`] supports the negative side: inside
//! `q K[x] d/dx` with `deg q >= 2` there are no closed two-dimensional
//! spans at all, which the scan confirms exhaustively over a lattice
//! box of coefficients.

use crate::classify::{classify_rank_one, ClassOutcome};
use crate::deriv::Derivation;
use crate::poly::{Monomial, MultiPoly, Rational};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use std::fmt;

/// Errors from the one-variable helpers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum W1Error {
    /// An input does not live over exactly one variable.
    NotUnivariate { vars: usize },
    /// An affine substitution with `alpha = 0` is not invertible.
    ZeroAlpha,
    /// Only the two-parameter families and the sl2 family have an
    /// affine normal form.
    NotNormalizable,
    /// The lattice scan needs integer coefficients.
    NonIntegerCoefficients,
    /// The lattice scan is about multiples of a `q` of degree at least
    /// two.
    DegreeTooSmall { degree: u32 },
}

impl fmt::Display for W1Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            W1Error::NotUnivariate { vars } => {
                write!(f, "expected one variable, got {vars}")
            }
            W1Error::ZeroAlpha => write!(f, "substitution scale must be nonzero"),
            W1Error::NotNormalizable => {
                write!(f, "only the two-dimensional families and the sl2 family normalise")
            }
            W1Error::NonIntegerCoefficients => {
                write!(f, "the lattice scan needs integer coefficients")
            }
            W1Error::DegreeTooSmall { degree } => {
                write!(f, "the lattice scan needs deg q >= 2, got {degree}")
            }
        }
    }
}

impl std::error::Error for W1Error {}

/// Why a one-variable span is not one of the expected subalgebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum W1Witness {
    /// A bracket of basis elements escapes the span.
    Escape { left: usize, right: usize, escape: Derivation },
    /// A structural reason without a single escaping element.
    Diagnostic(String),
}

impl fmt::Display for W1Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            W1Witness::Escape { left, right, escape } => write!(
                f,
                "bracket of basis elements {left} and {right} escapes the span: {escape}"
            ),
            W1Witness::Diagnostic(d) => f.write_str(d),
        }
    }
}

/// Classification of a span of one-variable fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum W1Outcome {
    /// A single line `K f(x) d/dx`.
    OneDim,
    /// The two-dimensional family written with an explicit monic
    /// linear `q`: span of `(q/(k-1)) d/dx` and `q^k d/dx`.
    Fk { k: u32, q: MultiPoly },
    /// The same family parametrised by the root shift.
    FkBeta { k: u32, beta: Rational },
    /// The sl2 copy, presented around the point `-beta`.
    FBeta { beta: Rational },
    NotSubalgebra { witness: W1Witness },
}

impl W1Outcome {
    /// Rewrites `FkBeta` (or `Fk`) with the explicit `q = x + beta`.
    pub fn fk_form(&self) -> Option<W1Outcome> {
        match self {
            W1Outcome::Fk { k, q } => Some(W1Outcome::Fk { k: *k, q: q.clone() }),
            W1Outcome::FkBeta { k, beta } => {
                let q = &MultiPoly::variable(1, 0).expect("one variable")
                    + &MultiPoly::constant(1, beta.clone());
                Some(W1Outcome::Fk { k: *k, q })
            }
            _ => None,
        }
    }
}

/// An affine substitution `x = alpha*y + beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub alpha: Rational,
    pub beta: Rational,
}

/// Checks `f g' - f' g = g`, the identity satisfied exactly by the
/// pairs spanning the two-dimensional subalgebras.
pub fn star_condition(f: &MultiPoly, g: &MultiPoly) -> Result<bool, W1Error> {
    if f.vars() != 1 {
        return Err(W1Error::NotUnivariate { vars: f.vars() });
    }
    if g.vars() != 1 {
        return Err(W1Error::NotUnivariate { vars: g.vars() });
    }
    let fg = f.checked_mul(&g.partial(0).expect("one variable")).expect("same ring");
    let gf = g.checked_mul(&f.partial(0).expect("one variable")).expect("same ring");
    Ok(&fg - &gf == *g)
}

/// The shift `beta` of a degree-one polynomial `c*(x + beta)`.
fn linear_shift(h: &MultiPoly) -> Option<Rational> {
    if h.total_degree() != 1 {
        return None;
    }
    let lc = h.coeff(&Monomial(vec![1]));
    let c0 = h.coeff(&Monomial(vec![0]));
    Some(c0 / lc)
}

/// Classifies a span of one-variable fields into the family catalogue.
///
/// Structural failures come back as `NotSubalgebra` with a witness;
/// only a wrong variable count is an error.
pub fn classify_w1(ds: &[Derivation]) -> Result<W1Outcome, W1Error> {
    for d in ds {
        if d.vars() != 1 {
            return Err(W1Error::NotUnivariate { vars: d.vars() });
        }
    }
    let outcome = match classify_rank_one(ds) {
        ClassOutcome::Abelian { dim: 0 } => W1Outcome::NotSubalgebra {
            witness: W1Witness::Diagnostic("the span is zero-dimensional".to_string()),
        },
        ClassOutcome::Abelian { dim: 1 } => W1Outcome::OneDim,
        ClassOutcome::Abelian { dim } => W1Outcome::NotSubalgebra {
            witness: W1Witness::Diagnostic(format!(
                "an abelian span of dimension {dim} cannot occur over one variable"
            )),
        },
        ClassOutcome::NotClosed { left, right, escape } => {
            W1Outcome::NotSubalgebra { witness: W1Witness::Escape { left, right, escape } }
        }
        ClassOutcome::HypothesisViolated { violation } => {
            W1Outcome::NotSubalgebra { witness: W1Witness::Diagnostic(violation.to_string()) }
        }
        ClassOutcome::AlmostAbelian { dim: 2, ideal, witness } => {
            classify_two_dimensional(&ideal[0], &witness)
        }
        ClassOutcome::AlmostAbelian { dim, .. } => W1Outcome::NotSubalgebra {
            witness: W1Witness::Diagnostic(format!(
                "an almost-abelian span of dimension {dim} cannot occur over one variable"
            )),
        },
        ClassOutcome::Sl2 { .. } => classify_three_dimensional(ds),
    };
    Ok(outcome)
}

/// Identifies `F_{k,beta}` from the normalised witness `b = h(x) d/dx`
/// and the ideal generator `g(x) d/dx`.
fn classify_two_dimensional(ideal_gen: &Derivation, b: &Derivation) -> W1Outcome {
    let h = b.coeff(0);
    // With [b, a] = a the coefficient of b is forced to be linear:
    // h = (x + beta)/(k - 1), and k is read off the leading coefficient.
    let beta = match linear_shift(h) {
        Some(beta) => beta,
        None => {
            return W1Outcome::NotSubalgebra {
                witness: W1Witness::Diagnostic(format!(
                    "the identity-acting element has coefficient {h} of degree {}, expected 1",
                    h.total_degree()
                )),
            }
        }
    };
    let lc = h.coeff(&Monomial(vec![1]));
    let k_rat = Rational::one() + lc.recip();
    let k = match k_rat.is_integer().then(|| k_rat.to_integer().to_u32()).flatten() {
        Some(k) => k,
        None => {
            return W1Outcome::NotSubalgebra {
                witness: W1Witness::Diagnostic(format!(
                    "the action scale gives the non-admissible index {k_rat}"
                )),
            }
        }
    };
    // The ideal generator must be a rational multiple of (x + beta)^k.
    let shifted = &MultiPoly::variable(1, 0).expect("one variable")
        + &MultiPoly::constant(1, beta.clone());
    let expected = shifted.pow(k);
    let g = ideal_gen.coeff(0);
    let ratio = g.leading().expect("ideal generator is nonzero").1
        / expected.leading().expect("power is nonzero").1;
    if *g != expected.scale(&ratio) {
        return W1Outcome::NotSubalgebra {
            witness: W1Witness::Diagnostic(format!(
                "the ideal generator {g} is not a multiple of {expected}"
            )),
        };
    }
    W1Outcome::FkBeta { k, beta }
}

/// Identifies `F(beta)`; the shift is read from the first degree-one
/// element of the presentation, since the subspace itself is the full
/// space of fields of degree at most two.
fn classify_three_dimensional(ds: &[Derivation]) -> W1Outcome {
    if let Some(d) = ds.iter().find(|d| d.coeff(0).total_degree() > 2) {
        return W1Outcome::NotSubalgebra {
            witness: W1Witness::Diagnostic(format!(
                "a three-dimensional span containing {d} cannot close"
            )),
        };
    }
    let beta = ds
        .iter()
        .find_map(|d| linear_shift(d.coeff(0)))
        .unwrap_or_else(Rational::zero);
    W1Outcome::FBeta { beta }
}

/// Applies the substitution `x = alpha*y + beta` to a one-variable
/// field: `f(x) d/dx` becomes `(1/alpha) f(alpha*y + beta) d/dy`.
pub fn affine_change(
    d: &Derivation,
    alpha: &Rational,
    beta: &Rational,
) -> Result<Derivation, W1Error> {
    if d.vars() != 1 {
        return Err(W1Error::NotUnivariate { vars: d.vars() });
    }
    if alpha.is_zero() {
        return Err(W1Error::ZeroAlpha);
    }
    let arg = &MultiPoly::variable(1, 0).expect("one variable").scale(alpha)
        + &MultiPoly::constant(1, beta.clone());
    let moved = d
        .coeff(0)
        .substitute_univar(&arg)
        .expect("one-variable coefficient")
        .scale(&alpha.recip());
    Ok(Derivation::new(vec![moved]).expect("one coefficient, one variable"))
}

/// The affine substitution taking a family to its representative at
/// `beta = 0`, together with the normalised outcome.
pub fn normalize_w1(outcome: &W1Outcome) -> Result<(W1Outcome, AffineMap), W1Error> {
    let identity = AffineMap { alpha: Rational::one(), beta: Rational::zero() };
    match outcome {
        W1Outcome::FkBeta { k, beta } => Ok((
            W1Outcome::FkBeta { k: *k, beta: Rational::zero() },
            AffineMap { alpha: Rational::one(), beta: -beta },
        )),
        W1Outcome::FBeta { beta } => Ok((
            W1Outcome::FBeta { beta: Rational::zero() },
            AffineMap { alpha: Rational::one(), beta: -beta },
        )),
        W1Outcome::Fk { k, q } => match linear_shift(q) {
            Some(beta) => Ok((
                W1Outcome::Fk {
                    k: *k,
                    q: MultiPoly::variable(1, 0).expect("one variable"),
                },
                AffineMap { alpha: Rational::one(), beta: -beta },
            )),
            None => Err(W1Error::NotNormalizable),
        },
        W1Outcome::OneDim => Ok((W1Outcome::OneDim, identity)),
        W1Outcome::NotSubalgebra { .. } => Err(W1Error::NotNormalizable),
    }
}

/// Result of the exhaustive lattice scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeScan {
    /// Unordered pairs of distinct lattice multipliers considered.
    pub pairs_checked: u64,
    /// Pairs spanning a two-dimensional bracket-closed space.
    pub closed_found: u64,
    /// Multiplier coefficient vectors of the first closed pair found.
    pub witness: Option<(Vec<i64>, Vec<i64>)>,
}

fn dense_i64(p: &MultiPoly) -> Option<Vec<i64>> {
    let mut out = vec![0i64; p.total_degree() as usize + 1];
    for (m, c) in p.terms() {
        if !c.denom().is_one() {
            return None;
        }
        out[m.0[0] as usize] = c.numer().to_i64()?;
    }
    Some(out)
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn conv(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn deriv_dense(a: &[i64]) -> Vec<i64> {
    if a.len() <= 1 {
        return Vec::new();
    }
    (1..a.len()).map(|t| (t as i64) * a[t]).collect()
}

fn at(v: &[i64], t: usize) -> i64 {
    v.get(t).copied().unwrap_or(0)
}

fn proportional(f: &[i64], g: &[i64]) -> bool {
    let len = f.len().max(g.len());
    for a in 0..len {
        for b in (a + 1)..len {
            if (at(f, a) as i128) * (at(g, b) as i128) != (at(f, b) as i128) * (at(g, a) as i128) {
                return false;
            }
        }
    }
    true
}

/// Whether `span{f d/dx, g d/dx}` is bracket-closed, decided exactly.
///
/// For a one-dimensional span (proportional inputs) the bracket is
/// zero, hence closed.  Otherwise the bracket coefficient
/// `w = f g' - f' g` must solve `w = a f + b g`, which is settled by a
/// two-position Cramer solve plus full verification in integers.
fn pair_closed(f: &[i64], g: &[i64]) -> bool {
    let f = trim(f.to_vec());
    let g = trim(g.to_vec());
    assert!(!f.is_empty() && !g.is_empty(), "pair members must be nonzero");
    let w = {
        let fg = conv(&f, &deriv_dense(&g));
        let gf = conv(&deriv_dense(&f), &g);
        let len = fg.len().max(gf.len());
        trim((0..len).map(|t| at(&fg, t) - at(&gf, t)).collect())
    };
    if proportional(&f, &g) {
        return w.is_empty();
    }
    // Two positions where (f, g) has rank two.
    let len = f.len().max(g.len()).max(w.len());
    let p1 = (0..len)
        .find(|&t| at(&f, t) != 0 || at(&g, t) != 0)
        .expect("nonzero pair");
    let p2 = match (0..len).find(|&t| {
        (at(&f, p1) as i128) * (at(&g, t) as i128)
            != (at(&f, t) as i128) * (at(&g, p1) as i128)
    }) {
        Some(p) => p,
        None => unreachable!("non-proportional pair has an independent position"),
    };
    let det = (at(&f, p1) as i128) * (at(&g, p2) as i128)
        - (at(&f, p2) as i128) * (at(&g, p1) as i128);
    let a_num = (at(&w, p1) as i128) * (at(&g, p2) as i128)
        - (at(&w, p2) as i128) * (at(&g, p1) as i128);
    let b_num = (at(&f, p1) as i128) * (at(&w, p2) as i128)
        - (at(&f, p2) as i128) * (at(&w, p1) as i128);
    (0..len).all(|t| {
        a_num * (at(&f, t) as i128) + b_num * (at(&g, t) as i128)
            == det * (at(&w, t) as i128)
    })
}

/// All multiplier vectors of exact degree `d` with coefficients in
/// `[-bound, bound]` and positive leading coefficient (sign
/// canonicalisation: negating a multiplier does not change the span).
fn multipliers_of_degree(d: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![-bound; d + 1];
    v[d] = 1;
    loop {
        out.push(v.clone());
        // Odometer over the lower coefficients, lead kept positive.
        let mut i = 0;
        loop {
            if i == d {
                if v[d] == bound {
                    return out;
                }
                v[d] += 1;
                break;
            }
            if v[i] == bound {
                v[i] = -bound;
                i += 1;
            } else {
                v[i] += 1;
                break;
            }
        }
    }
}

/// Exhaustively checks the two-dimensional spans inside
/// `q K[x] d/dx` whose multipliers have coefficients in
/// `[-coeff_bound, coeff_bound]` and total degree at most
/// `max_total_degree`; counts the bracket-closed ones.
///
/// Pairs of different multiplier degrees are settled wholesale: the top
/// coefficient of the bracket cannot cancel there, and its degree
/// exceeds both inputs whenever `deg q >= 2`, so only equal-degree
/// pairs go through the exact check.
pub fn scan_two_dim_spans(
    q: &MultiPoly,
    coeff_bound: i64,
    max_total_degree: u32,
) -> Result<LatticeScan, W1Error> {
    if q.vars() != 1 {
        return Err(W1Error::NotUnivariate { vars: q.vars() });
    }
    let dq = q.total_degree();
    if dq < 2 {
        return Err(W1Error::DegreeTooSmall { degree: dq });
    }
    assert!(coeff_bound >= 1, "the lattice box must contain nonzero vectors");
    let qc = dense_i64(q).ok_or(W1Error::NonIntegerCoefficients)?;
    let max_u = max_total_degree.saturating_sub(dq) as usize;

    let mut total: u64 = 0;
    let mut groups: Vec<(Vec<Vec<i64>>, Vec<Vec<i64>>)> = Vec::new();
    for d in 0..=max_u {
        let us = multipliers_of_degree(d, coeff_bound);
        total += us.len() as u64;
        let fs: Vec<Vec<i64>> = us.iter().map(|u| conv(&qc, u)).collect();
        groups.push((us, fs));
    }
    let pairs_checked = total * (total - 1) / 2;

    let mut closed_found = 0u64;
    let mut witness: Option<(Vec<i64>, Vec<i64>)> = None;
    for (us, fs) in &groups {
        let deg = fs[0].len() - 1;
        let found: Vec<(usize, usize)> = (0..fs.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let fs = &fs[..];
                (i + 1..fs.len()).filter_map(move |j| {
                    let f = &fs[i];
                    let g = &fs[j];
                    // Top bracket coefficient: a 2x2 minor of the two
                    // leading coefficient pairs.  Nonzero means the
                    // bracket degree is 2*deg - 2 > deg, hence escape.
                    let minor = (at(f, deg) as i128) * (at(g, deg - 1) as i128)
                        - (at(f, deg - 1) as i128) * (at(g, deg) as i128);
                    if minor != 0 {
                        return None;
                    }
                    if proportional(f, g) {
                        // A line, not a two-dimensional span.
                        return None;
                    }
                    if pair_closed(f, g) {
                        Some((i, j))
                    } else {
                        None
                    }
                })
            })
            .collect();
        closed_found += found.len() as u64;
        if witness.is_none() {
            if let Some((i, j)) = found.iter().min() {
                witness = Some((us[*i].clone(), us[*j].clone()));
            }
        }
    }
    Ok(LatticeScan { pairs_checked, closed_found, witness })
}
