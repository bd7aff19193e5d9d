//! Randomized laws for the polynomial and rational-function layers and for
//! the derivation actions on C[N].

use biperfect::coordring::{CoordRing, Side};
use biperfect::symbolic::{MultiPoly, RationalFn};
use biperfect::{rat, Rational};
use proptest::prelude::*;

fn poly3() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, 3), -4i64..5), 0..5)
        .prop_map(|terms| MultiPoly::from_terms(3, terms.into_iter().map(|(e, c)| (e, rat(c)))))
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-5i64..6, 3).prop_map(|v| v.into_iter().map(rat).collect())
}

/// Reciprocal of a nonzero linear form with small integer coefficients.
fn recip_linear() -> impl Strategy<Value = RationalFn> {
    prop::collection::vec(-2i64..3, 3)
        .prop_filter("nonzero form", |v| v.iter().any(|&c| c != 0))
        .prop_map(|v| RationalFn::inverse_linear(&v.into_iter().map(rat).collect::<Vec<_>>()).unwrap())
}

proptest! {
    #[test]
    fn polynomial_ring_axioms(a in poly3(), b in poly3(), c in poly3()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly3(), b in poly3(), p in point()) {
        prop_assert_eq!((&a * &b).eval(&p), a.eval(&p) * b.eval(&p));
        prop_assert_eq!((&a + &b).eval(&p), a.eval(&p) + b.eval(&p));
    }

    #[test]
    fn derivative_obeys_leibniz(a in poly3(), b in poly3(), v in 0usize..3) {
        let lhs = (&a * &b).derivative(v);
        let rhs = &(&a.derivative(v) * &b) + &(&a * &b.derivative(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_functions_add_over_common_denominators(
        f in recip_linear(), g in recip_linear(), a in poly3(), p in point()
    ) {
        let af = &RationalFn::from_poly(a.clone()) * &f;
        let sum = &af + &g;
        let (Ok(x), Ok(y), Ok(z)) = (af.eval(&p), g.eval(&p), sum.eval(&p)) else {
            return Ok(());
        };
        prop_assert_eq!(z, x + y);
        prop_assert!((&sum - &sum).is_zero());
    }

    #[test]
    fn chevalley_derivations_are_derivations(i in 0usize..2, left in any::<bool>(), a in sl3_poly(), b in sl3_poly()) {
        let ring = CoordRing::new(3).unwrap();
        let side = if left { Side::Left } else { Side::Right };
        let lhs = ring.e(side, i, &(&a * &b));
        let rhs = &(&ring.e(side, i, &a) * &b) + &(&a * &ring.e(side, i, &b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_and_right_actions_commute(i in 0usize..2, j in 0usize..2, a in sl3_poly()) {
        let ring = CoordRing::new(3).unwrap();
        let lr = ring.e_left(i, &ring.e_right(j, &a));
        let rl = ring.e_right(j, &ring.e_left(i, &a));
        prop_assert_eq!(lr, rl);
    }

    #[test]
    fn star_is_an_involution(a in sl3_poly()) {
        let ring = CoordRing::new(3).unwrap();
        prop_assert_eq!(ring.star(&ring.star(&a)), a);
    }
}

fn sl3_poly() -> impl Strategy<Value = MultiPoly> {
    poly3()
}

#[test]
fn left_operators_satisfy_serre_relations() {
    let ring = CoordRing::new(3).unwrap();
    let f = ring.parse("x^2*y*z + z^3 - x*y^2*z + 3*x*z").unwrap();
    for (i, j) in [(0, 1), (1, 0)] {
        let e = |k: usize, g: &MultiPoly| ring.e_left(k, g);
        let term1 = e(i, &e(i, &e(j, &f)));
        let term2 = e(i, &e(j, &e(i, &f)));
        let term3 = e(j, &e(i, &e(i, &f)));
        let serre = &(&term1 - &term2.scale(&rat(2))) + &term3;
        assert!(serre.is_zero(), "Serre relation fails for ({i}, {j})");
    }
}
