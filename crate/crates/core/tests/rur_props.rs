use certfit::groebner::{buchberger, quotient_basis};
use certfit::budget::Deadline;
use certfit::poly::{Poly, TermOrder};
use certfit::prolong::PolySystem;
use certfit::rur::{certify_rur, multiplication_matrix, rur_from_basis, QuotientRing};
use certfit_testkit::variety::random_variety;
use proptest::prelude::*;
use rand::SeedableRng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn emitted_representations_certify(seed in any::<u64>()) {
        let v = random_variety(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let sys: PolySystem = v.text.parse().unwrap();
        let gb = buchberger(sys.equations(), &TermOrder::grevlex(v.nvars));
        let qb = quotient_basis(&gb).unwrap();
        let rur = rur_from_basis(&gb, &qb, Deadline::none()).unwrap();
        prop_assert_eq!(certify_rur(&rur, sys.equations()), Ok(()));
        prop_assert_eq!(rur.fbar.gcd(&rur.fprime).degree(), Some(0));
        prop_assert_eq!(rur.fbar.degree(), Some(v.solutions));
        prop_assert_eq!(rur.distinct_solutions, v.solutions);
    }

    #[test]
    fn multiplication_matrices_commute(seed in any::<u64>()) {
        let v = random_variety(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let sys: PolySystem = v.text.parse().unwrap();
        let gb = buchberger(sys.equations(), &TermOrder::grevlex(v.nvars));
        let qb = quotient_basis(&gb).unwrap();
        let ring = QuotientRing::new(&gb, &qb);
        for i in 0..v.nvars {
            for j in 0..v.nvars {
                let (a, b) = (ring.variable_matrix(i), ring.variable_matrix(j));
                prop_assert_eq!(a.mul(b), b.mul(a));
            }
        }
        let one = multiplication_matrix(&Poly::one(sys.registry()), &qb, &gb);
        prop_assert_eq!(one.trace(), certfit::poly::rat::int(qb.dim() as i64));
    }
}
