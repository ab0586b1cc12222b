use certfit::groebner::{buchberger, normal_form, quotient_basis, GroebnerBasis};
use certfit::poly::{rat, Monomial, Poly, TermOrder};
use certfit::prolong::{bezout_bound, PolySystem};
use certfit_testkit::variety::random_variety;
use proptest::prelude::*;
use rand::SeedableRng;

fn system(seed: u64) -> (PolySystem, certfit_testkit::variety::Variety) {
    let v = random_variety(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    (v.text.parse().unwrap(), v)
}

fn spoly(f: &Poly, g: &Poly, order: &TermOrder) -> Poly {
    let (mf, cf) = f.leading_term(order).unwrap();
    let (mg, cg) = g.leading_term(order).unwrap();
    let l = mf.lcm(mg);
    let reg = f.registry();
    let a = Poly::term(reg, l.div(mf).unwrap(), cf.recip());
    let b = Poly::term(reg, l.div(mg).unwrap(), cg.recip());
    &(&a * f) - &(&b * g)
}

fn basis(sys: &PolySystem) -> GroebnerBasis {
    buchberger(sys.equations(), &TermOrder::grevlex(sys.registry().len()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn s_polynomials_reduce_to_zero(seed in any::<u64>()) {
        let (sys, _) = system(seed);
        let gb = basis(&sys);
        let gens = gb.generators();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                prop_assert!(normal_form(&spoly(&gens[i], &gens[j], gb.order()), &gb).is_zero());
            }
        }
        for e in sys.equations() {
            prop_assert!(normal_form(e, &gb).is_zero());
        }
    }

    #[test]
    fn normal_form_is_idempotent(seed in any::<u64>(), terms in prop::collection::vec((0u32..4, -9i64..=9), 1..6)) {
        let (sys, _) = system(seed);
        let gb = basis(&sys);
        let n = sys.registry().len();
        let p = Poly::from_terms(
            sys.registry(),
            terms.iter().enumerate().map(|(k, &(e, c))| (Monomial::var(n, k % n, e), rat::int(c))),
        );
        let once = normal_form(&p, &gb);
        prop_assert_eq!(normal_form(&once, &gb), once);
    }

    #[test]
    fn reduced_basis_ignores_input_order(seed in any::<u64>(), perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let (sys, v) = system(seed);
        let perm: Vec<usize> = perm.into_iter().filter(|&k| k < v.nvars).collect();
        let (a, b) = (basis(&sys.permuted(&perm)), basis(&sys));
        prop_assert_eq!(a.generators(), b.generators());
    }

    #[test]
    fn quotient_dimension_counts_constructed_points(seed in any::<u64>()) {
        let (sys, v) = system(seed);
        let qb = quotient_basis(&basis(&sys)).unwrap();
        prop_assert_eq!(qb.dim(), v.solutions);
        prop_assert!(num_bigint::BigInt::from(qb.dim()) <= bezout_bound(&sys).value);
    }
}
