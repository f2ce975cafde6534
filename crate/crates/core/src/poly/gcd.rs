//! Multivariate gcd via primitive subresultant remainder sequences.
//!
//! A polynomial is viewed as univariate in its first occurring variable
//! with coefficients in the remaining ones; contents are split off and
//! handled by recursion, and the primitive parts go through the
//! subresultant sequence so intermediate coefficients stay small
//! without any modular tricks.  Results are normalised to have leading
//! graded-lex coefficient 1, which makes the gcd of a pair (and the
//! content of a family) unique.

use super::{MultiPoly, PolyError, Rational};
use num_traits::One;

/// Monic gcd of two polynomials.  `gcd(p, 0) = monic(p)`; both zero is
/// an error.
pub fn gcd(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly, PolyError> {
    if p.vars() != q.vars() {
        return Err(PolyError::DimensionMismatch { left: p.vars(), right: q.vars() });
    }
    match (p.is_zero(), q.is_zero()) {
        (true, true) => Err(PolyError::AllZero),
        (true, false) => Ok(q.make_monic()),
        (false, true) => Ok(p.make_monic()),
        (false, false) => Ok(gcd_nonzero(p, q).make_monic()),
    }
}

/// Monic gcd of a whole family; zero members are ignored.
pub fn content(ps: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
    if let Some(first) = ps.first() {
        for p in ps {
            if p.vars() != first.vars() {
                return Err(PolyError::DimensionMismatch { left: first.vars(), right: p.vars() });
            }
        }
    }
    let mut nonzero = ps.iter().filter(|p| !p.is_zero());
    let mut acc = nonzero.next().ok_or(PolyError::AllZero)?.clone();
    for p in nonzero {
        if acc.is_constant() {
            break;
        }
        acc = gcd_nonzero(&acc, p);
    }
    Ok(acc.make_monic())
}

/// Gcd of two nonzero polynomials, unique only up to a rational factor.
fn gcd_nonzero(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    debug_assert!(!p.is_zero() && !q.is_zero());
    let n = p.vars();
    let var = (0..n).find(|&i| {
        p.degree_in(i).expect("index in range") > 0 || q.degree_in(i).expect("index in range") > 0
    });
    let var = match var {
        // Two nonzero constants.
        None => return MultiPoly::one(n),
        Some(v) => v,
    };
    let a = VarPoly::split(p, var);
    let b = VarPoly::split(q, var);
    // The coefficients involve only variables after `var`, so the
    // content recursion works down a strictly shorter variable list.
    let ca = a.content();
    let cb = b.content();
    let cg = gcd_nonzero(&ca, &cb);
    let g = subresultant_prs(a.div_coeffs(&ca), b.div_coeffs(&cb));
    let gp = if g.degree() == 0 {
        // The primitive parts are coprime in `var`.
        MultiPoly::one(n)
    } else {
        let c = g.content();
        g.div_coeffs(&c).join()
    };
    gp.checked_mul(&cg).expect("same ring")
}

/// A nonzero polynomial seen as univariate in `var`; `coeffs[d]` does
/// not involve `var` and the last entry is nonzero.
#[derive(Clone)]
struct VarPoly {
    var: usize,
    coeffs: Vec<MultiPoly>,
}

impl VarPoly {
    fn split(p: &MultiPoly, var: usize) -> VarPoly {
        let n = p.vars();
        let d = p.degree_in(var).expect("index in range") as usize;
        let mut coeffs = vec![MultiPoly::zero(n); d + 1];
        for (m, c) in p.terms() {
            let e = m.0[var] as usize;
            let mut rest = m.clone();
            rest.0[var] = 0;
            coeffs[e] = coeffs[e].checked_add(&MultiPoly::from_terms(n, [(rest, c.clone())]))
                .expect("same ring");
        }
        VarPoly { var, coeffs }
    }

    fn join(&self) -> MultiPoly {
        let n = self.coeffs[0].vars();
        let mut out = MultiPoly::zero(n);
        for (d, c) in self.coeffs.iter().enumerate() {
            let mut m = super::Monomial::unit(n);
            m.0[self.var] = d as u32;
            out = out.checked_add(&c.mul_term(&m, &Rational::one())).expect("same ring");
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        debug_assert!(!self.is_zero());
        self.coeffs.len() - 1
    }

    fn lead(&self) -> &MultiPoly {
        &self.coeffs[self.degree()]
    }

    fn trim(mut self) -> VarPoly {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    fn scale(&self, by: &MultiPoly) -> VarPoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(by).expect("same ring"))
            .collect();
        VarPoly { var: self.var, coeffs }
    }

    /// `self * by * x_var^shift`.
    fn shift_scale(&self, shift: usize, by: &MultiPoly) -> VarPoly {
        let n = self.coeffs[0].vars();
        let mut coeffs = vec![MultiPoly::zero(n); shift];
        coeffs.extend(self.coeffs.iter().map(|c| c.checked_mul(by).expect("same ring")));
        VarPoly { var: self.var, coeffs }
    }

    fn sub(&self, other: &VarPoly) -> VarPoly {
        let n = self.coeffs[0].vars();
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        let zero = MultiPoly::zero(n);
        for i in 0..len {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = other.coeffs.get(i).unwrap_or(&zero);
            coeffs.push(a.checked_sub(b).expect("same ring"));
        }
        (VarPoly { var: self.var, coeffs }).trim()
    }

    fn div_coeffs(&self, by: &MultiPoly) -> VarPoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.divide_exact(by).expect("coefficient divides"))
            .collect();
        VarPoly { var: self.var, coeffs }
    }

    /// Gcd of the coefficients, up to a rational factor.
    fn content(&self) -> MultiPoly {
        let mut nonzero = self.coeffs.iter().filter(|c| !c.is_zero());
        let mut acc = nonzero.next().expect("nonzero polynomial").clone();
        for c in nonzero {
            if acc.is_constant() {
                break;
            }
            acc = gcd_nonzero(&acc, c);
        }
        acc
    }
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &VarPoly, b: &VarPoly) -> VarPoly {
    let da = a.degree();
    let db = b.degree();
    debug_assert!(da >= db);
    let lb = b.lead().clone();
    let mut r = a.clone();
    let mut e = (da - db + 1) as i64;
    while !r.is_zero() && r.degree() >= db {
        let lr = r.lead().clone();
        let dr = r.degree();
        r = r.scale(&lb).sub(&b.shift_scale(dr - db, &lr));
        e -= 1;
    }
    debug_assert!(e >= 0);
    for _ in 0..e {
        r = r.scale(&lb);
    }
    r
}

/// Last nonzero element of the subresultant remainder sequence of two
/// primitive nonzero polynomials; a gcd of them up to content in the
/// coefficient ring.
fn subresultant_prs(mut a: VarPoly, mut b: VarPoly) -> VarPoly {
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    let n = a.coeffs[0].vars();
    let minus_one = MultiPoly::constant(n, -Rational::one());
    let mut d = a.degree() - b.degree();
    let mut beta = if d % 2 == 0 { minus_one.clone() } else { MultiPoly::one(n) };
    let mut psi = minus_one.clone();
    loop {
        if b.degree() == 0 {
            return b;
        }
        let gamma = b.lead().clone();
        let r = prem(&a, &b).div_coeffs(&beta);
        a = std::mem::replace(&mut b, r);
        if b.is_zero() {
            return a;
        }
        psi = if d == 0 {
            // Equal starting degrees; only possible on the first round.
            MultiPoly::one(n)
        } else {
            let neg_gamma = minus_one.checked_mul(&gamma).expect("same ring");
            neg_gamma.pow(d as u32).divide_exact(&psi.pow(d as u32 - 1))
                .expect("subresultant factor divides")
        };
        d = a.degree() - b.degree();
        let step = psi.pow(d as u32).checked_mul(&gamma).expect("same ring");
        beta = minus_one.checked_mul(&step).expect("same ring");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse_poly;

    fn p(s: &str, n: usize) -> MultiPoly {
        parse_poly(s, n).expect("test polynomial parses")
    }

    #[test]
    fn gcd_difference_of_squares() {
        let g = gcd(&p("x^2 - y^2", 2), &p("x + y", 2)).unwrap();
        assert_eq!(g, p("x + y", 2));
    }

    #[test]
    fn gcd_monomials() {
        assert_eq!(gcd(&p("x*y", 2), &p("x^2", 2)).unwrap(), p("x", 2));
    }

    #[test]
    fn gcd_coprime_across_variables() {
        assert_eq!(gcd(&p("x + 1", 2), &p("y + 1", 2)).unwrap(), p("1", 2));
        assert_eq!(gcd(&p("2*x", 2), &p("3*y", 2)).unwrap(), p("1", 2));
    }

    #[test]
    fn gcd_zero_cases() {
        let q = p("3*x^2 + 3", 1);
        assert_eq!(gcd(&MultiPoly::zero(1), &q).unwrap(), p("x^2 + 1", 1));
        assert_eq!(gcd(&q, &MultiPoly::zero(1)).unwrap(), p("x^2 + 1", 1));
        assert_eq!(
            gcd(&MultiPoly::zero(1), &MultiPoly::zero(1)).unwrap_err(),
            PolyError::AllZero
        );
    }

    #[test]
    fn gcd_univariate_chain() {
        // x^3 - x = x (x - 1)(x + 1) and x^2 - 1 share x^2 - 1.
        let g = gcd(&p("x^3 - x", 1), &p("x^2 - 1", 1)).unwrap();
        assert_eq!(g, p("x^2 - 1", 1));
    }

    #[test]
    fn gcd_is_monic_under_gradlex() {
        let g = gcd(&p("1/2*x + 1/2", 1), &p("3*x + 3", 1)).unwrap();
        assert_eq!(g, p("x + 1", 1));
        // Gradlex leading term of the gcd here is y^2 with coefficient 1.
        let a = p("(2*y^2 + x)*(x + 1)", 2);
        let b = p("(2*y^2 + x)*(y + 3)", 2);
        assert_eq!(gcd(&a, &b).unwrap(), p("y^2 + 1/2*x", 2));
    }

    #[test]
    fn gcd_divides_and_cofactors_are_coprime() {
        // Built as g * a and g * b with a, b coprime, so the gcd must be
        // the monic scaling of g.
        let g0 = p("x + y", 2);
        let a = p("x^2 + 1", 2);
        let b = p("y^3 - 2", 2);
        let u = &g0 * &a;
        let v = &g0 * &b;
        let g = gcd(&u, &v).unwrap();
        assert_eq!(g, g0.make_monic());
        let qa = u.divide_exact(&g).unwrap();
        let qb = v.divide_exact(&g).unwrap();
        assert_eq!(gcd(&qa, &qb).unwrap(), MultiPoly::one(2));
    }

    #[test]
    fn gcd_higher_multiplicity() {
        let a = p("(x + y)^2 * (x - y)", 2);
        let b = p("(x + y) * (x - y)^2", 2);
        let g = gcd(&a, &b).unwrap();
        assert_eq!(g, p("(x + y) * (x - y)", 2).make_monic());
    }

    #[test]
    fn content_of_family() {
        let fam = [p("x*y", 2), p("x^2", 2), p("x^3*y", 2)];
        assert_eq!(content(&fam).unwrap(), p("x", 2));
        let single = [p("2*x + 2*y", 2)];
        assert_eq!(content(&single).unwrap(), p("x + y", 2));
        let coprime = [p("x^2", 2), p("x + 1", 2)];
        assert_eq!(content(&coprime).unwrap(), p("1", 2));
        let with_zero = [MultiPoly::zero(2), p("3*x^2 - 3*x", 2)];
        assert_eq!(content(&with_zero).unwrap(), p("x^2 - x", 2));
    }

    #[test]
    fn content_errors() {
        assert_eq!(content(&[]).unwrap_err(), PolyError::AllZero);
        assert_eq!(
            content(&[MultiPoly::zero(2), MultiPoly::zero(2)]).unwrap_err(),
            PolyError::AllZero
        );
        assert_eq!(
            gcd(&p("x", 1), &p("x + y", 2)).unwrap_err(),
            PolyError::DimensionMismatch { left: 1, right: 2 }
        );
    }

    #[test]
    fn gcd_three_variables() {
        let g0 = p("x*z + y", 3);
        let u = &g0 * &p("x + z^2", 3);
        let v = &g0 * &p("y*z - 1", 3);
        assert_eq!(gcd(&u, &v).unwrap(), g0.make_monic());
    }
}
