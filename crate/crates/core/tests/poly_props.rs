use certfit::poly::{rat, Monomial, Poly, Rat, Registry};
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn reg() -> Registry {
    Registry::new(["x", "y", "z"]).unwrap()
}

fn coeff() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat::frac(n, d))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), coeff()), 0..6).prop_map(|terms| {
        Poly::from_terms(&reg(), terms.into_iter().map(|((a, b, c), k)| (Monomial::new(vec![a, b, c]), k)))
    })
}

fn point() -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(coeff(), 3)
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), p in point()) {
        prop_assert_eq!((&a * &b).eval(&p), a.eval(&p) * b.eval(&p));
        prop_assert_eq!((&a + &b).eval(&p), a.eval(&p) + b.eval(&p));
    }

    #[test]
    fn degrees_add_under_products(a in poly(), b in poly()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(
            (&a * &b).total_degree(),
            Some(a.total_degree().unwrap() + b.total_degree().unwrap())
        );
    }

    #[test]
    fn leibniz_rule(a in poly(), b in poly(), v in 0usize..3) {
        prop_assert_eq!((&a * &b).diff(v), &(&a.diff(v) * &b) + &(&a * &b.diff(v)));
    }

    #[test]
    fn rationals_stay_reduced(a in coeff(), b in coeff(), c in coeff()) {
        for r in [&a * &b + &c, &a - &b * &c, &a * &a - &c] {
            prop_assert!(r.numer().gcd(r.denom()).is_one());
            prop_assert!(r.denom().is_positive());
        }
    }
}
