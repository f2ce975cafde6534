//! Exact linear algebra over spans of vector fields.
//!
//! Fields are coordinatised by the (variable slot, monomial) pairs that
//! actually occur, so all spans are finite-dimensional rational vector
//! spaces and everything reduces to exact Gaussian elimination.  On top
//! of that sit bracket closure, structure constants, centralizers and
//! the derived subalgebra.

use crate::deriv::Derivation;
use crate::poly::{Monomial, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// Coordinate label: a variable slot together with a monomial.
pub type CoordKey = (usize, Monomial);

/// Errors from span queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanError {
    /// The element does not lie in the algebra's span.
    NotInSpan,
}

impl fmt::Display for SpanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpanError::NotInSpan => write!(f, "element does not lie in the span"),
        }
    }
}

impl std::error::Error for SpanError {}

/// Witness that a span is not closed under the bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureFailure {
    /// Indices into the reduced basis whose bracket escapes.
    pub left: usize,
    pub right: usize,
    /// The escaping bracket itself.
    pub escape: Derivation,
}

impl fmt::Display for ClosureFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bracket of basis elements {} and {} escapes the span: {}",
            self.left, self.right, self.escape
        )
    }
}

impl std::error::Error for ClosureFailure {}

/// A malformed structure-constant tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TensorError {
    Shape { expected: usize, got: usize },
    Antisymmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
}

impl fmt::Display for TensorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorError::Shape { expected, got } => {
                write!(f, "tensor slice has length {got}, expected {expected}")
            }
            TensorError::Antisymmetry { i, j } => {
                write!(f, "antisymmetry fails at entry ({i}, {j})")
            }
            TensorError::Jacobi { i, j, k } => {
                write!(f, "Jacobi identity fails on basis triple ({i}, {j}, {k})")
            }
        }
    }
}

impl std::error::Error for TensorError {}

/// Structure constants `c[i][j][k]`: the coefficient of `e_k` in
/// `[e_i, e_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTensor {
    dim: usize,
    c: Vec<Vec<Vec<Rational>>>,
}

impl StructureTensor {
    /// Builds a tensor after checking only the shape; use
    /// [`StructureTensor::check_antisymmetry`] and
    /// [`StructureTensor::check_jacobi`] for the algebraic laws.
    pub fn new(c: Vec<Vec<Vec<Rational>>>) -> Result<Self, TensorError> {
        let dim = c.len();
        for row in &c {
            if row.len() != dim {
                return Err(TensorError::Shape { expected: dim, got: row.len() });
            }
            for entry in row {
                if entry.len() != dim {
                    return Err(TensorError::Shape { expected: dim, got: entry.len() });
                }
            }
        }
        Ok(StructureTensor { dim, c })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.c[i][j]
    }

    pub fn is_zero_all(&self) -> bool {
        self.c
            .iter()
            .all(|row| row.iter().all(|entry| entry.iter().all(|x| x.is_zero())))
    }

    /// Coordinates of `[u, v]` for coordinate vectors `u`, `v`.
    pub fn bracket_coords(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let scale = ui * vj;
                for k in 0..self.dim {
                    let c = &self.c[i][j][k];
                    if !c.is_zero() {
                        out[k] += c * &scale;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(t) = [t, -]` acting on coordinates; entry `[k][j]`
    /// is the `e_k` component of `[t, e_j]`.
    pub fn ad_matrix(&self, t: &[Rational]) -> Vec<Vec<Rational>> {
        let mut m = vec![vec![Rational::zero(); self.dim]; self.dim];
        for (i, ti) in t.iter().enumerate() {
            if ti.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let c = &self.c[i][j][k];
                    if !c.is_zero() {
                        m[k][j] += ti * c;
                    }
                }
            }
        }
        m
    }

    pub fn check_antisymmetry(&self) -> Result<(), TensorError> {
        for i in 0..self.dim {
            for j in i..self.dim {
                for k in 0..self.dim {
                    if self.c[i][j][k] != -&self.c[j][i][k] {
                        return Err(TensorError::Antisymmetry { i, j });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_jacobi(&self) -> Result<(), TensorError> {
        let unit = |i: usize| {
            let mut v = vec![Rational::zero(); self.dim];
            v[i] = Rational::one();
            v
        };
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let mut total = self.bracket_coords(&self.c[i][j], &unit(k));
                    for (t, extra) in total
                        .iter_mut()
                        .zip(self.bracket_coords(&self.c[j][k], &unit(i)))
                    {
                        *t += extra;
                    }
                    for (t, extra) in total
                        .iter_mut()
                        .zip(self.bracket_coords(&self.c[k][i], &unit(j)))
                    {
                        *t += extra;
                    }
                    if total.iter().any(|x| !x.is_zero()) {
                        return Err(TensorError::Jacobi { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Outcome of inserting a vector into a [`RowSpace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inserted {
    Independent,
    /// The vector was already in the span; `relation` has one entry per
    /// inserted vector so far (this one last, with coefficient 1) and
    /// the weighted sum of inserted vectors is zero.
    Dependent { relation: Vec<Rational> },
}

/// Incremental exact row reduction with bookkeeping that expresses each
/// reduced row as a combination of the inserted vectors.
pub struct RowSpace {
    width: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    transforms: Vec<Vec<Rational>>,
    inserted: usize,
}

impl RowSpace {
    pub fn new(width: usize) -> Self {
        RowSpace { width, rows: Vec::new(), pivots: Vec::new(), transforms: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduced rows in echelon form with unit pivots; row `k` equals
    /// the combination `transforms[k]` of the inserted vectors.
    pub fn echelon_rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn insert(&mut self, v: Vec<Rational>) -> Inserted {
        assert_eq!(v.len(), self.width, "vector width must match the row space");
        let m = self.inserted;
        self.inserted += 1;
        let mut v = v;
        let mut t = vec![Rational::zero(); m + 1];
        t[m] = Rational::one();
        for k in 0..self.rows.len() {
            let c = v[self.pivots[k]].clone();
            if c.is_zero() {
                continue;
            }
            for (vi, ri) in v.iter_mut().zip(&self.rows[k]) {
                *vi -= &c * ri;
            }
            for (ti, si) in t.iter_mut().zip(&self.transforms[k]) {
                *ti -= &c * si;
            }
        }
        let pivot = match v.iter().position(|x| !x.is_zero()) {
            None => return Inserted::Dependent { relation: t },
            Some(p) => p,
        };
        let inv = v[pivot].recip();
        for vi in v.iter_mut() {
            *vi *= &inv;
        }
        for ti in t.iter_mut() {
            *ti *= &inv;
        }
        // Back-substitute to keep the rows fully reduced.
        for k in 0..self.rows.len() {
            let c = self.rows[k][pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (ri, vi) in self.rows[k].iter_mut().zip(&v) {
                *ri -= &c * vi;
            }
            self.transforms[k].resize(m + 1, Rational::zero());
            for (si, ti) in self.transforms[k].iter_mut().zip(&t) {
                *si -= &c * ti;
            }
        }
        self.rows.push(v);
        self.pivots.push(pivot);
        self.transforms.push(t);
        Inserted::Independent
    }

    /// Expresses `v` over the inserted vectors, if it lies in the span.
    pub fn coordinates_of(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.width, "vector width must match the row space");
        let mut v = v.to_vec();
        let mut combo = vec![Rational::zero(); self.inserted];
        for k in 0..self.rows.len() {
            let c = v[self.pivots[k]].clone();
            if c.is_zero() {
                continue;
            }
            for (vi, ri) in v.iter_mut().zip(&self.rows[k]) {
                *vi -= &c * ri;
            }
            for (ci, si) in combo.iter_mut().zip(&self.transforms[k]) {
                *ci += &c * si;
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            Some(combo)
        } else {
            None
        }
    }
}

fn common_vars(ds: &[Derivation]) -> usize {
    let n = ds.first().map_or(0, |d| d.vars());
    assert!(
        ds.iter().all(|d| d.vars() == n),
        "all fields in a span must share the variable count"
    );
    n
}

/// Sorted coordinate labels covering the support of every field.
fn support_keys(ds: &[&Derivation]) -> Vec<CoordKey> {
    let mut keys = BTreeSet::new();
    for d in ds {
        for (i, c) in d.coeffs().iter().enumerate() {
            for (m, _) in c.terms() {
                keys.insert((i, m.clone()));
            }
        }
    }
    keys.into_iter().collect()
}

fn vectorize(d: &Derivation, keys: &[CoordKey]) -> Vec<Rational> {
    keys.iter().map(|(i, m)| d.coeff(*i).coeff(m)).collect()
}

/// Coordinate vectors of the given fields over their joint support,
/// together with the column labels, in increasing graded-lex order.
pub fn coordinatize(ds: &[Derivation]) -> (Vec<Vec<Rational>>, Vec<CoordKey>) {
    common_vars(ds);
    let refs: Vec<&Derivation> = ds.iter().collect();
    let keys = support_keys(&refs);
    let vecs = ds.iter().map(|d| vectorize(d, &keys)).collect();
    (vecs, keys)
}

/// Maximal linearly independent subfamily, kept in input order.
pub fn independent_basis(ds: &[Derivation]) -> Vec<Derivation> {
    let (vecs, keys) = coordinatize(ds);
    let mut rs = RowSpace::new(keys.len());
    ds.iter()
        .zip(vecs)
        .filter(|(_, v)| rs.insert(v.clone()) == Inserted::Independent)
        .map(|(d, _)| d.clone())
        .collect()
}

/// The linear combination `sum coords[i] * basis[i]`.
pub fn combination(basis: &[Derivation], coords: &[Rational]) -> Derivation {
    assert_eq!(basis.len(), coords.len(), "one coordinate per basis element");
    assert!(!basis.is_empty(), "combination over an empty basis");
    let mut acc = Derivation::zero(basis[0].vars());
    for (d, c) in basis.iter().zip(coords) {
        if !c.is_zero() {
            acc = &acc + &d.scale(c);
        }
    }
    acc
}

/// A finite-dimensional space of vector fields with a reduced basis and,
/// when the span is bracket-closed, its structure constants.
#[derive(Clone, Debug)]
pub struct SpannedAlgebra {
    n: usize,
    basis: Vec<Derivation>,
    structure: Option<StructureTensor>,
}

impl SpannedAlgebra {
    /// Reduces the span to an independent basis and records structure
    /// constants when the span happens to be closed.
    pub fn from_span(ds: &[Derivation]) -> SpannedAlgebra {
        match close_and_structure(ds) {
            Ok(a) => a,
            Err(_) => SpannedAlgebra {
                n: common_vars(ds),
                basis: independent_basis(ds),
                structure: None,
            },
        }
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Derivation] {
        &self.basis
    }

    pub fn structure(&self) -> Option<&StructureTensor> {
        self.structure.as_ref()
    }

    pub fn is_closed(&self) -> bool {
        self.structure.is_some()
    }
}

/// Reduces the span, checks bracket closure, and computes structure
/// constants; a failure carries the first escaping bracket.
pub fn close_and_structure(ds: &[Derivation]) -> Result<SpannedAlgebra, ClosureFailure> {
    let n = common_vars(ds);
    let basis = independent_basis(ds);
    let m = basis.len();
    let mut brackets = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            brackets.push((i, j, basis[i].bracket(&basis[j]).expect("same variable count")));
        }
    }
    let mut all: Vec<&Derivation> = basis.iter().collect();
    all.extend(brackets.iter().map(|(_, _, w)| w));
    let keys = support_keys(&all);
    let mut rs = RowSpace::new(keys.len());
    for b in &basis {
        let inserted = rs.insert(vectorize(b, &keys));
        debug_assert_eq!(inserted, Inserted::Independent);
    }
    let mut c = vec![vec![vec![Rational::zero(); m]; m]; m];
    for (i, j, w) in &brackets {
        let coords = rs
            .coordinates_of(&vectorize(w, &keys))
            .ok_or_else(|| ClosureFailure { left: *i, right: *j, escape: w.clone() })?;
        for (k, x) in coords.iter().enumerate() {
            c[*i][*j][k] = x.clone();
            c[*j][*i][k] = -x;
        }
    }
    let tensor = StructureTensor::new(c).expect("square tensor by construction");
    debug_assert!(tensor.check_antisymmetry().is_ok());
    debug_assert!(tensor.check_jacobi().is_ok());
    Ok(SpannedAlgebra { n, basis, structure: Some(tensor) })
}

/// Coordinates of `d` over the algebra's basis, if it lies in the span.
pub fn membership(d: &Derivation, a: &SpannedAlgebra) -> Option<Vec<Rational>> {
    assert_eq!(d.vars(), a.n, "field and algebra must share the variable count");
    let mut all: Vec<&Derivation> = a.basis.iter().collect();
    all.push(d);
    let keys = support_keys(&all);
    let mut rs = RowSpace::new(keys.len());
    for b in &a.basis {
        let inserted = rs.insert(vectorize(b, &keys));
        debug_assert_eq!(inserted, Inserted::Independent);
    }
    rs.coordinates_of(&vectorize(d, &keys))
}

/// Basis of the centralizer of `x` inside the algebra; `x` must lie in
/// the span.
pub fn centralizer(x: &Derivation, a: &SpannedAlgebra) -> Result<Vec<Derivation>, SpanError> {
    membership(x, a).ok_or(SpanError::NotInSpan)?;
    if a.basis.is_empty() {
        return Ok(Vec::new());
    }
    let brackets: Vec<Derivation> = a
        .basis
        .iter()
        .map(|e| x.bracket(e).expect("same variable count"))
        .collect();
    Ok(kernel_combinations(&a.basis, &brackets))
}

/// Basis of the center `{ y : [y, e_i] = 0 for all i }`.
pub fn center(a: &SpannedAlgebra) -> Vec<Derivation> {
    if a.basis.is_empty() {
        return Vec::new();
    }
    // Row j stacks the brackets [e_j, e_i] over all i; the kernel of
    // that stack is exactly the center, closed span or not.
    let m = a.basis.len();
    let mut stacked: Vec<Vec<Derivation>> = Vec::with_capacity(m);
    for ej in &a.basis {
        stacked.push(
            a.basis
                .iter()
                .map(|ei| ej.bracket(ei).expect("same variable count"))
                .collect(),
        );
    }
    let all: Vec<&Derivation> = stacked.iter().flatten().collect();
    let keys = support_keys(&all);
    let mut rs = RowSpace::new(keys.len() * m);
    let mut out = Vec::new();
    for (j, row) in stacked.iter().enumerate() {
        let mut v = Vec::with_capacity(keys.len() * m);
        for w in row {
            v.extend(vectorize(w, &keys));
        }
        debug_assert!(j < m);
        if let Inserted::Dependent { mut relation } = rs.insert(v) {
            relation.resize(m, Rational::zero());
            out.push(combination(&a.basis, &relation));
        }
    }
    out
}

/// Kernel of `y -> (brackets weighted by y)` expressed back in the
/// algebra: one field per dependent row.
fn kernel_combinations(basis: &[Derivation], brackets: &[Derivation]) -> Vec<Derivation> {
    let m = basis.len();
    let refs: Vec<&Derivation> = brackets.iter().collect();
    let keys = support_keys(&refs);
    let mut rs = RowSpace::new(keys.len());
    let mut out = Vec::new();
    for b in brackets {
        if let Inserted::Dependent { mut relation } = rs.insert(vectorize(b, &keys)) {
            relation.resize(m, Rational::zero());
            out.push(combination(basis, &relation));
        }
    }
    out
}

/// Independent basis of the span of all pairwise brackets.
pub fn derived(a: &SpannedAlgebra) -> Vec<Derivation> {
    let m = a.basis.len();
    let mut brackets = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            brackets.push(a.basis[i].bracket(&a.basis[j]).expect("same variable count"));
        }
    }
    independent_basis(&brackets)
}

/// Whether all pairwise brackets vanish.
pub fn is_abelian(a: &SpannedAlgebra) -> bool {
    match &a.structure {
        Some(t) => t.is_zero_all(),
        None => {
            let m = a.basis.len();
            for i in 0..m {
                for j in (i + 1)..m {
                    if !a.basis[i]
                        .bracket(&a.basis[j])
                        .expect("same variable count")
                        .is_zero()
                    {
                        return false;
                    }
                }
            }
            true
        }
    }
}
