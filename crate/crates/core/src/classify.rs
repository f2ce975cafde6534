//! Classification of the small Lie algebras spanned by vector fields
//! that are polynomial multiples of one reduced field.
//!
//! Such algebras are very rigid: they are abelian, or an abelian ideal
//! of codimension one plus an element `b` acting on it as the identity
//! (`[b, a] = a`), or a copy of sl2.  [`classify_abstract`] decides the
//! trichotomy from structure constants alone; [`classify_rank_one`]
//! works on concrete fields, normalises `b`, and searches for an
//! explicit rational sl2 triple.

use crate::deriv::{self, Derivation, DerivError};
use crate::poly::Rational;
use crate::span::{self, Inserted, RowSpace, SpannedAlgebra, StructureTensor, TensorError};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// A triple `(e, h, f)` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple<V> {
    pub e: V,
    pub h: V,
    pub f: V,
}

/// Ways the structural hypotheses can fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Some input field is not a multiple of the common reduced field.
    NotRankOne { index: usize },
    /// The derived subalgebra is not abelian (and the algebra is not
    /// three-dimensional perfect).
    DerivedNotAbelian,
    /// The derived subalgebra has the wrong codimension.
    WrongCodimension { dim: usize, derived_dim: usize },
    /// A nonabelian algebra with nonzero center.
    NonzeroCenter { center_dim: usize },
    /// The witness does not act as a scalar on some ideal basis element.
    NonscalarAction { index: usize },
    /// The witness acts by different scalars on different ideal elements.
    MixedEigenvalues,
    /// The witness centralises the ideal, so it cannot be rescaled.
    ZeroEigenvalue,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotRankOne { index } => {
                write!(f, "entry {index} is not a polynomial multiple of the common direction")
            }
            Violation::DerivedNotAbelian => write!(f, "derived subalgebra is not abelian"),
            Violation::WrongCodimension { dim, derived_dim } => write!(
                f,
                "derived subalgebra has dimension {derived_dim} in dimension {dim}, expected codimension 1"
            ),
            Violation::NonzeroCenter { center_dim } => {
                write!(f, "nonabelian algebra has a center of dimension {center_dim}")
            }
            Violation::NonscalarAction { index } => {
                write!(f, "witness does not act as a scalar on ideal element {index}")
            }
            Violation::MixedEigenvalues => {
                write!(f, "witness acts by different scalars on the ideal")
            }
            Violation::ZeroEigenvalue => write!(f, "witness acts as zero on the ideal"),
        }
    }
}

/// Classification result; `V` is `Vec<Rational>` for the abstract form
/// and [`Derivation`] for concrete spans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassOutcome<V> {
    Abelian {
        dim: usize,
    },
    /// An abelian ideal of codimension one and a witness `b` with
    /// `[b, a] = a` on the ideal.  In the abstract form `b` is only
    /// determined up to the normalisation available there.
    AlmostAbelian {
        dim: usize,
        ideal: Vec<V>,
        witness: V,
    },
    /// Three-dimensional simple; the triple is present when a rational
    /// one was found.
    Sl2 {
        triple: Option<Sl2Triple<V>>,
    },
    HypothesisViolated {
        violation: Violation,
    },
    /// The span is not bracket-closed; carries the first witness.
    NotClosed {
        left: usize,
        right: usize,
        escape: V,
    },
}

/// Precondition failures for the verification helpers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassifyError {
    Precondition(&'static str),
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::Precondition(what) => write!(f, "precondition violated: {what}"),
        }
    }
}

impl std::error::Error for ClassifyError {}

fn unit_vec(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

/// Decides the trichotomy from structure constants.
///
/// The tensor must satisfy antisymmetry and the Jacobi identity; the
/// checks run first and malformed input is an error rather than an
/// outcome.
pub fn classify_abstract(
    t: &StructureTensor,
) -> Result<ClassOutcome<Vec<Rational>>, TensorError> {
    t.check_antisymmetry()?;
    t.check_jacobi()?;
    let m = t.dim();
    if t.is_zero_all() {
        return Ok(ClassOutcome::Abelian { dim: m });
    }
    // Derived subalgebra as a row space of coordinate vectors.
    let mut rs = RowSpace::new(m);
    for i in 0..m {
        for j in (i + 1)..m {
            rs.insert(t.bracket_basis(i, j).to_vec());
        }
    }
    let derived_dim = rs.rank();
    if m == 3 && derived_dim == 3 {
        return Ok(ClassOutcome::Sl2 { triple: None });
    }
    let ideal: Vec<Vec<Rational>> = rs.echelon_rows().to_vec();
    for (i, u) in ideal.iter().enumerate() {
        for v in &ideal[(i + 1)..] {
            if t.bracket_coords(u, v).iter().any(|x| !x.is_zero()) {
                return Ok(ClassOutcome::HypothesisViolated {
                    violation: Violation::DerivedNotAbelian,
                });
            }
        }
    }
    if derived_dim + 1 != m {
        return Ok(ClassOutcome::HypothesisViolated {
            violation: Violation::WrongCodimension { dim: m, derived_dim },
        });
    }
    // Center via the kernel of j -> (all brackets [e_j, e_i]).
    let mut center = RowSpace::new(m * m);
    let mut center_dim = 0;
    for j in 0..m {
        let mut row = Vec::with_capacity(m * m);
        for i in 0..m {
            row.extend_from_slice(t.bracket_basis(j, i));
        }
        if matches!(center.insert(row), Inserted::Dependent { .. }) {
            center_dim += 1;
        }
    }
    if center_dim > 0 {
        return Ok(ClassOutcome::HypothesisViolated {
            violation: Violation::NonzeroCenter { center_dim },
        });
    }
    let witness = (0..m)
        .map(|i| unit_vec(m, i))
        .find(|v| rs.coordinates_of(v).is_none())
        .expect("codimension one leaves some unit vector outside");
    Ok(ClassOutcome::AlmostAbelian { dim: m, ideal, witness })
}

/// The scalar `lambda` with `w = lambda * a`, if one exists; `a` must be
/// nonzero.
fn scalar_ratio(w: &Derivation, a: &Derivation) -> Option<Rational> {
    let i = a.coeffs().iter().position(|c| !c.is_zero())?;
    let (m, c) = a.coeff(i).leading().expect("nonzero coefficient");
    let lambda = w.coeff(i).coeff(m) / c;
    if *w == a.scale(&lambda) {
        Some(lambda)
    } else {
        None
    }
}

/// Classifies the Lie algebra spanned by fields that are multiples of a
/// single reduced field.
///
/// Hypothesis failures (mixed directions, open spans) are reported as
/// outcomes, not errors, so callers can show the witness.  For the
/// almost-abelian case the witness is rescaled so that `[b, a] = a`
/// holds exactly on the ideal; for sl2 a rational triple is searched
/// for.
pub fn classify_rank_one(ds: &[Derivation]) -> ClassOutcome<Derivation> {
    if ds.iter().all(|d| d.is_zero()) {
        return ClassOutcome::Abelian { dim: 0 };
    }
    match deriv::common_direction(ds) {
        Ok(_) => {}
        Err(DerivError::NotRankOne { index }) => {
            return ClassOutcome::HypothesisViolated {
                violation: Violation::NotRankOne { index },
            }
        }
        Err(e) => unreachable!("nonzero entries over one variable count: {e}"),
    }
    let a = match span::close_and_structure(ds) {
        Ok(a) => a,
        Err(f) => {
            return ClassOutcome::NotClosed { left: f.left, right: f.right, escape: f.escape }
        }
    };
    let tensor = a.structure().expect("closed span has structure constants");
    let abstract_outcome =
        classify_abstract(tensor).expect("tensor from a closed span satisfies the laws");
    match abstract_outcome {
        ClassOutcome::Abelian { dim } => ClassOutcome::Abelian { dim },
        ClassOutcome::Sl2 { .. } => ClassOutcome::Sl2 {
            triple: find_sl2_triple(&a).expect("dimension and perfectness were just checked"),
        },
        ClassOutcome::HypothesisViolated { violation } => {
            ClassOutcome::HypothesisViolated { violation }
        }
        ClassOutcome::NotClosed { .. } => unreachable!("abstract tensors are always closed"),
        ClassOutcome::AlmostAbelian { dim, ideal, witness } => {
            let ideal: Vec<Derivation> = ideal
                .iter()
                .map(|row| span::combination(a.basis(), row))
                .collect();
            let b_raw = span::combination(a.basis(), &witness);
            let mut lambda: Option<Rational> = None;
            for (index, ai) in ideal.iter().enumerate() {
                let w = b_raw.bracket(ai).expect("same variable count");
                let l = match scalar_ratio(&w, ai) {
                    Some(l) => l,
                    None => {
                        return ClassOutcome::HypothesisViolated {
                            violation: Violation::NonscalarAction { index },
                        }
                    }
                };
                match &lambda {
                    None => lambda = Some(l),
                    Some(prev) if *prev != l => {
                        return ClassOutcome::HypothesisViolated {
                            violation: Violation::MixedEigenvalues,
                        }
                    }
                    _ => {}
                }
            }
            let lambda = lambda.expect("almost-abelian ideal is nonempty");
            if lambda.is_zero() {
                return ClassOutcome::HypothesisViolated {
                    violation: Violation::ZeroEigenvalue,
                };
            }
            let b = b_raw.scale(&lambda.recip());
            debug_assert!(ideal
                .iter()
                .all(|ai| b.bracket(ai).expect("same variable count") == *ai));
            ClassOutcome::AlmostAbelian { dim, ideal, witness: b }
        }
    }
}

/// Exact square root of a positive rational, if it is a square.
fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if !r.is_positive() {
        return None;
    }
    let sn = r.numer().sqrt();
    if &(&sn * &sn) != r.numer() {
        return None;
    }
    let sd = r.denom().sqrt();
    if &(&sd * &sd) != r.denom() {
        return None;
    }
    Some(Rational::new(sn, sd))
}

/// Candidate coordinate vectors: unit vectors first, then primitive
/// integer vectors by increasing max-norm, lexicographically within a
/// shell.
fn sl2_candidates(bound: i64) -> Vec<[i64; 3]> {
    let mut out: Vec<[i64; 3]> = vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for b in 1..=bound {
        for x in -b..=b {
            for y in -b..=b {
                for z in -b..=b {
                    let v = [x, y, z];
                    if v.iter().map(|c| c.abs()).max() != Some(b) {
                        continue;
                    }
                    let g = v.iter().fold(0i64, |acc, &c| num_integer::gcd(acc, c.abs()));
                    if g != 1 {
                        continue;
                    }
                    if out[..3].contains(&v) {
                        continue;
                    }
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Kernel of `(m - lambda I)` as normalised coordinate vectors.
fn eigenvectors(m: &[Vec<Rational>], lambda: &Rational) -> Vec<Vec<Rational>> {
    let dim = m.len();
    let mut rs = RowSpace::new(dim);
    let mut out = Vec::new();
    for j in 0..dim {
        // Column j of (m - lambda I), i.e. the image of the j-th unit
        // vector.
        let col: Vec<Rational> = (0..dim)
            .map(|k| {
                if k == j {
                    &m[k][j] - lambda
                } else {
                    m[k][j].clone()
                }
            })
            .collect();
        if let Inserted::Dependent { mut relation } = rs.insert(col) {
            relation.resize(dim, Rational::zero());
            let lead = relation
                .iter()
                .position(|x| !x.is_zero())
                .expect("dependency relation is nonzero");
            let inv = relation[lead].recip();
            for x in relation.iter_mut() {
                *x *= &inv;
            }
            out.push(relation);
        }
    }
    out
}

fn scalar_ratio_vec(w: &[Rational], h: &[Rational]) -> Option<Rational> {
    let i = h.iter().position(|x| !x.is_zero())?;
    let lambda = &w[i] / &h[i];
    for (wk, hk) in w.iter().zip(h) {
        if *wk != hk * &lambda {
            return None;
        }
    }
    Some(lambda)
}

/// Searches a closed three-dimensional perfect algebra for a rational
/// sl2 triple.
///
/// Candidate semisimple elements are integer coordinate vectors `t` of
/// max-norm at most 6; `t` qualifies when `ad(t)` has eigenvalues
/// `0, s, -s` with `s` a nonzero rational (a square condition on the
/// characteristic polynomial).  Then `h = (2/s) t`, the eigenvectors of
/// `ad(h)` for `2` and `-2` give `e` and `f` after one rescaling, and
/// the triple identities are verified exactly before returning.
/// `Ok(None)` means no candidate in the search box worked.
pub fn find_sl2_triple(
    a: &SpannedAlgebra,
) -> Result<Option<Sl2Triple<Derivation>>, ClassifyError> {
    let t = a
        .structure()
        .ok_or(ClassifyError::Precondition("the span must be bracket-closed"))?;
    if a.dim() != 3 {
        return Err(ClassifyError::Precondition("the algebra must be three-dimensional"));
    }
    let mut rs = RowSpace::new(3);
    for i in 0..3 {
        for j in (i + 1)..3 {
            rs.insert(t.bracket_basis(i, j).to_vec());
        }
    }
    if rs.rank() != 3 {
        return Err(ClassifyError::Precondition("the algebra must be perfect"));
    }
    let two = Rational::from(BigInt::from(2));
    for cand in sl2_candidates(6) {
        let tv: Vec<Rational> = cand.iter().map(|&c| Rational::from(BigInt::from(c))).collect();
        let ad = t.ad_matrix(&tv);
        // Characteristic polynomial x^3 - tr x^2 + s2 x - det; we need
        // eigenvalues 0 and +-s, i.e. tr = det = 0 and s2 = -s^2 < 0.
        let tr = &ad[0][0] + &ad[1][1] + &ad[2][2];
        if !tr.is_zero() {
            continue;
        }
        let det = &(&(&ad[0][0] * &(&(&ad[1][1] * &ad[2][2]) - &(&ad[1][2] * &ad[2][1])))
            - &(&ad[0][1] * &(&(&ad[1][0] * &ad[2][2]) - &(&ad[1][2] * &ad[2][0]))))
            + &(&ad[0][2] * &(&(&ad[1][0] * &ad[2][1]) - &(&ad[1][1] * &ad[2][0])));
        if !det.is_zero() {
            continue;
        }
        let s2 = &(&(&ad[0][0] * &ad[1][1]) - &(&ad[0][1] * &ad[1][0]))
            + &(&(&(&ad[0][0] * &ad[2][2]) - &(&ad[0][2] * &ad[2][0]))
                + &(&(&ad[1][1] * &ad[2][2]) - &(&ad[1][2] * &ad[2][1])));
        let s = match rational_sqrt(&-&s2) {
            Some(s) => s,
            None => continue,
        };
        let h: Vec<Rational> = tv.iter().map(|x| x * &(&two / &s)).collect();
        let ad_h = t.ad_matrix(&h);
        let e = match eigenvectors(&ad_h, &two).as_slice() {
            [only] => only.clone(),
            _ => continue,
        };
        let f0 = match eigenvectors(&ad_h, &-&two).as_slice() {
            [only] => only.clone(),
            _ => continue,
        };
        let w = t.bracket_coords(&e, &f0);
        let c = match scalar_ratio_vec(&w, &h) {
            Some(c) if !c.is_zero() => c,
            _ => continue,
        };
        let f: Vec<Rational> = f0.iter().map(|x| x / &c).collect();
        // Exact final verification of the triple identities.
        let two_e: Vec<Rational> = e.iter().map(|x| x * &two).collect();
        let minus_two_f: Vec<Rational> = f.iter().map(|x| -(x * &two)).collect();
        if t.bracket_coords(&h, &e) != two_e {
            continue;
        }
        if t.bracket_coords(&h, &f) != minus_two_f {
            continue;
        }
        if t.bracket_coords(&e, &f) != h {
            continue;
        }
        return Ok(Some(Sl2Triple {
            e: span::combination(a.basis(), &e),
            h: span::combination(a.basis(), &h),
            f: span::combination(a.basis(), &f),
        }));
    }
    Ok(None)
}

/// Outcome of the randomized centralizer check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerReport {
    pub trials: u32,
    pub passes: u32,
    pub counterexample: Option<CentralizerCounterexample>,
}

/// A failing trial: an element whose centralizer contained a
/// non-commuting pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerCounterexample {
    pub element: Derivation,
    pub left: Derivation,
    pub right: Derivation,
}

/// Draws random nonzero elements of the span and checks that each has
/// an abelian centralizer inside the algebra.
///
/// The span must consist of multiples of one reduced field.  Random
/// coordinates are integers in `[-9, 9]`, redrawn while all are zero,
/// from a ChaCha stream seeded with `seed`, so reports are reproducible.
pub fn verify_abelian_centralizers(
    a: &SpannedAlgebra,
    trials: u32,
    seed: u64,
) -> Result<CentralizerReport, ClassifyError> {
    deriv::common_direction(a.basis()).map_err(|_| {
        ClassifyError::Precondition("the span must consist of multiples of one reduced field")
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = a.dim();
    let mut passes = 0;
    let mut counterexample = None;
    for _ in 0..trials {
        let coords: Vec<Rational> = loop {
            let raw: Vec<i64> = (0..m).map(|_| rng.random_range(-9..=9)).collect();
            if raw.iter().any(|&c| c != 0) {
                break raw.into_iter().map(|c| Rational::from(BigInt::from(c))).collect();
            }
        };
        let x = span::combination(a.basis(), &coords);
        let cz = span::centralizer(&x, a).expect("combination lies in the span");
        let mut bad = None;
        'pairs: for i in 0..cz.len() {
            for j in (i + 1)..cz.len() {
                if !cz[i].bracket(&cz[j]).expect("same variable count").is_zero() {
                    bad = Some((cz[i].clone(), cz[j].clone()));
                    break 'pairs;
                }
            }
        }
        match bad {
            None => passes += 1,
            Some((left, right)) => {
                if counterexample.is_none() {
                    counterexample = Some(CentralizerCounterexample { element: x, left, right });
                }
            }
        }
    }
    Ok(CentralizerReport { trials, passes, counterexample })
}
