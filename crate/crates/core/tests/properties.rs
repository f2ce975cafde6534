//! Property-based checks of the algebraic identities the library is
//! built on: ring axioms, the Leibniz rule, bracket antisymmetry and
//! Jacobi, reduction round trips, parser round trips, and the affine
//! invariance of the one-variable classification.

use num_bigint::BigInt;
use proptest::prelude::*;
use rankone::classify::ClassOutcome;
use rankone::construct::{abelian_example, almost_abelian_example, f_k_beta, sl2_example};
use rankone::deriv::{common_direction, Derivation};
use rankone::poly::{content, gcd, Monomial, MultiPoly, Rational};
use rankone::span::{self, SpannedAlgebra};
use rankone::textio::{parse_derivation, parse_poly, print_derivation, print_poly};
use rankone::w1::{affine_change, classify_w1, W1Outcome};

fn big(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| big(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    arb_rational().prop_filter("nonzero", |c| !c.eq(&big(0, 1)))
}

fn arb_poly(n: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_degree, n), arb_rational()),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        MultiPoly::from_terms(n, terms.into_iter().map(|(e, c)| (Monomial(e), c)))
    })
}

fn nonzero_poly(n: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    arb_poly(n, max_degree, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn arb_derivation(n: usize, max_degree: u32) -> impl Strategy<Value = Derivation> {
    prop::collection::vec(arb_poly(n, max_degree, 3), n)
        .prop_map(|coeffs| Derivation::new(coeffs).expect("matching dimensions"))
}

fn nonzero_derivation(n: usize, max_degree: u32) -> impl Strategy<Value = Derivation> {
    arb_derivation(n, max_degree).prop_filter("nonzero", |d| !d.is_zero())
}

/// (n, items...) with a shared variable count in 1..=3.
fn with_vars<T: std::fmt::Debug>(
    f: impl Fn(usize) -> BoxedStrategy<T> + 'static,
) -> impl Strategy<Value = T> {
    (1usize..=3).prop_flat_map(f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(
        (p, q, r) in with_vars(|n| (arb_poly(n, 3, 3), arb_poly(n, 3, 3), arb_poly(n, 3, 3)).boxed())
    ) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p - &p, MultiPoly::zero(p.vars()));
    }

    #[test]
    fn division_inverts_multiplication(
        (p, d) in with_vars(|n| (arb_poly(n, 3, 3), nonzero_poly(n, 2, 2)).boxed())
    ) {
        let product = &p * &d;
        prop_assert_eq!(product.divide_exact(&d).unwrap(), p);
    }

    #[test]
    fn gcd_divides_and_cofactors_are_coprime(
        (p, q) in with_vars(|n| (nonzero_poly(n, 2, 2), nonzero_poly(n, 2, 2)).boxed())
    ) {
        let g = gcd(&p, &q).unwrap();
        let cp = p.divide_exact(&g).unwrap();
        let cq = q.divide_exact(&g).unwrap();
        prop_assert!(gcd(&cp, &cq).unwrap().is_constant());
    }

    #[test]
    fn gcd_sees_planted_common_factors(
        (p, q, r) in (1usize..=2).prop_flat_map(|n| (
            nonzero_poly(n, 2, 2),
            nonzero_poly(n, 2, 2),
            nonzero_poly(n, 2, 2),
        ))
    ) {
        let g = gcd(&(&p * &r), &(&q * &r)).unwrap();
        // r divides the gcd; the quotient is the gcd of the cofactors
        // up to the monic normalization.
        let reduced = g.divide_exact(&r.make_monic()).unwrap();
        prop_assert_eq!(reduced.make_monic(), gcd(&p, &q).unwrap());
    }

    #[test]
    fn content_divides_every_member(
        (ps,) in with_vars(|n| (prop::collection::vec(arb_poly(n, 2, 2), 1..=3),).boxed())
    ) {
        if ps.iter().all(|p| p.is_zero()) {
            return Ok(());
        }
        let c = content(&ps).unwrap();
        for p in &ps {
            prop_assert!(p.divide_exact(&c).is_ok());
        }
    }

    #[test]
    fn leibniz_rule(
        (d, f, g) in with_vars(|n| (arb_derivation(n, 2), arb_poly(n, 2, 3), arb_poly(n, 2, 3)).boxed())
    ) {
        let lhs = d.apply(&(&f * &g)).unwrap();
        let rhs = &(&d.apply(&f).unwrap() * &g) + &(&f * &d.apply(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_antisymmetry_and_jacobi(
        (d, e, f) in with_vars(|n| (arb_derivation(n, 2), arb_derivation(n, 2), arb_derivation(n, 2)).boxed())
    ) {
        let de = d.bracket(&e).unwrap();
        prop_assert_eq!(&de, &-&e.bracket(&d).unwrap());
        let jac = &(&de.bracket(&f).unwrap()
            + &e.bracket(&f).unwrap().bracket(&d).unwrap())
            + &f.bracket(&d).unwrap().bracket(&e).unwrap();
        // [[d,e],f] + [[e,f],d] + [[f,d],e] = 0.
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn rank_one_bracket_identity(
        (d0, f, g) in with_vars(|n| (arb_derivation(n, 1), arb_poly(n, 2, 2), arb_poly(n, 2, 2)).boxed())
    ) {
        // [f D, g D] = (f D(g) - g D(f)) D for any D.
        let left = d0.mul_poly(&f).bracket(&d0.mul_poly(&g)).unwrap();
        let coeff = &(&f * &d0.apply(&g).unwrap()) - &(&g * &d0.apply(&f).unwrap());
        prop_assert_eq!(left, d0.mul_poly(&coeff));
    }

    #[test]
    fn reduce_round_trip(
        (d,) in with_vars(|n| (nonzero_derivation(n, 3),).boxed())
    ) {
        let r = d.reduce().unwrap();
        prop_assert!(r.direction.is_reduced().unwrap());
        prop_assert_eq!(r.direction.mul_poly(&r.content), d);
    }

    #[test]
    fn common_direction_ignores_scaling(
        (d0, fs, c) in with_vars(|n| (
            nonzero_derivation(n, 1),
            prop::collection::vec(nonzero_poly(n, 2, 2), 1..=3),
            nonzero_rational(),
        ).boxed())
    ) {
        let span: Vec<Derivation> = fs.iter().map(|f| d0.mul_poly(f)).collect();
        let dir = common_direction(&span).unwrap();
        prop_assert!(dir.is_reduced().unwrap());
        // The content is monic, so scaling the span moves the scalar
        // into the direction verbatim.
        let scaled: Vec<Derivation> = span.iter().map(|d| d.scale(&c)).collect();
        prop_assert_eq!(common_direction(&scaled).unwrap(), dir.scale(&c));
    }

    #[test]
    fn poly_print_parse_round_trip(
        (p,) in with_vars(|n| (arb_poly(n, 4, 4),).boxed())
    ) {
        let n = p.vars();
        prop_assert_eq!(parse_poly(&print_poly(&p), n).unwrap(), p);
    }

    #[test]
    fn derivation_print_parse_round_trip(
        (d,) in with_vars(|n| (arb_derivation(n, 3),).boxed())
    ) {
        let n = d.vars();
        prop_assert_eq!(parse_derivation(&print_derivation(&d), n).unwrap(), d);
    }

    #[test]
    fn affine_change_is_invertible_and_a_morphism(
        d in arb_derivation(1, 3),
        e in arb_derivation(1, 3),
        alpha in nonzero_rational(),
        beta in arb_rational()
    ) {
        let moved = affine_change(&d, &alpha, &beta).unwrap();
        let back = affine_change(&moved, &alpha.recip(), &(-&beta / &alpha)).unwrap();
        prop_assert_eq!(back, d.clone());

        let lhs = affine_change(&d.bracket(&e).unwrap(), &alpha, &beta).unwrap();
        let rhs = affine_change(&d, &alpha, &beta).unwrap()
            .bracket(&affine_change(&e, &alpha, &beta).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn classify_w1_commutes_with_affine_substitution(
        k in prop::sample::select(vec![0u32, 2, 3, 4, 5, 6]),
        fam_beta in arb_rational(),
        alpha in nonzero_rational(),
        shift in arb_rational()
    ) {
        let a = f_k_beta(k, &fam_beta).unwrap();
        prop_assert_eq!(
            classify_w1(a.basis()).unwrap(),
            W1Outcome::FkBeta { k, beta: fam_beta.clone() }
        );
        let moved: Vec<Derivation> = a
            .basis()
            .iter()
            .map(|d| affine_change(d, &alpha, &shift).unwrap())
            .collect();
        // x = alpha*y + shift sends x + beta to alpha*(y + (beta+shift)/alpha).
        let expected = (&fam_beta + &shift) / &alpha;
        prop_assert_eq!(
            classify_w1(&moved).unwrap(),
            W1Outcome::FkBeta { k, beta: expected }
        );
    }

    #[test]
    fn structure_tensor_re_expands_to_brackets(
        m in 1usize..=4,
        n in 2usize..=3,
        which in 0usize..3
    ) {
        let a: SpannedAlgebra = match which {
            0 => abelian_example(m, n).unwrap(),
            1 => almost_abelian_example(m, n).unwrap(),
            _ => sl2_example(n).unwrap(),
        };
        let t = a.structure().expect("constructed families are closed");
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let expanded = span::combination(a.basis(), t.bracket_basis(i, j));
                prop_assert_eq!(expanded, a.basis()[i].bracket(&a.basis()[j]).unwrap());
            }
        }
    }

    #[test]
    fn center_lies_in_every_centralizer(
        m in 1usize..=4,
        n in 2usize..=3,
        which in 0usize..3
    ) {
        let a: SpannedAlgebra = match which {
            0 => abelian_example(m, n).unwrap(),
            1 => almost_abelian_example(m, n).unwrap(),
            _ => sl2_example(n).unwrap(),
        };
        for z in span::center(&a) {
            for b in a.basis() {
                prop_assert!(z.bracket(b).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn membership_round_trip(
        (n, coords) in (2usize..=3).prop_flat_map(|n| (
            Just(n),
            prop::collection::vec(arb_rational(), 1..=4),
        ))
    ) {
        let m = coords.len();
        let a = abelian_example(m, n).unwrap();
        let x = span::combination(a.basis(), &coords);
        prop_assert_eq!(span::membership(&x, &a).unwrap(), coords);
    }

    #[test]
    fn higher_degree_multiples_never_close_in_pairs(
        i in 0u32..=5,
        j in 0u32..=5,
        which_q in 0usize..2
    ) {
        prop_assume!(i != j);
        let q = if which_q == 0 {
            parse_poly("x^2", 1).unwrap()
        } else {
            parse_poly("x^2 - 1", 1).unwrap()
        };
        let d0 = Derivation::coordinate(1, 0).unwrap();
        let x = MultiPoly::variable(1, 0).unwrap();
        let a = d0.mul_poly(&(&q * &x.pow(i)));
        let b = d0.mul_poly(&(&q * &x.pow(j)));
        match rankone::classify::classify_rank_one(&[a, b]) {
            ClassOutcome::NotClosed { .. } => {}
            other => prop_assert!(false, "expected NotClosed, got {:?}", other),
        }
    }
}
