use certfit::budget::Deadline;
use certfit::estimate::{estimate, relative_error, residual_certify, solve_system, EstimateOptions, Outcome, Timings};
use certfit::model::{parse_dataset, parse_model};
use certfit::poly::rat;
use certfit::prolong::PolySystem;
use certfit_testkit::ode::synthetic;
use certfit_testkit::variety::random_variety;
use proptest::prelude::*;
use rand::SeedableRng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn solver_returns_exactly_the_constructed_points(seed in any::<u64>()) {
        let v = random_variety(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let sys: PolySystem = v.text.parse().unwrap();
        let s = solve_system(&sys, &rat::frac(1, 1 << 30), Deadline::none(), &mut Timings::default()).unwrap();
        prop_assert_eq!(s.boxes.len(), v.points.len());
        for b in &s.boxes {
            prop_assert!(residual_certify(&sys, b));
            let inside: Vec<_> = v.points.iter().filter(|p| p.iter().zip(&b.coords).all(|(x, i)| i.contains(x))).collect();
            prop_assert_eq!(inside.len(), 1);
        }
    }

    #[test]
    fn shrinking_eps_only_tightens(seed in any::<u64>()) {
        let v = random_variety(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let sys: PolySystem = v.text.parse().unwrap();
        let wide = solve_system(&sys, &rat::frac(1, 64), Deadline::none(), &mut Timings::default()).unwrap();
        let tight = solve_system(&sys, &rat::frac(1, 1 << 24), Deadline::none(), &mut Timings::default()).unwrap();
        prop_assert_eq!(wide.boxes.len(), tight.boxes.len());
        for (w, t) in wide.boxes.iter().zip(&tight.boxes) {
            for (a, b) in w.coords.iter().zip(&t.coords) {
                prop_assert!(a.lo() <= b.hi() && b.lo() <= a.hi());
            }
        }
    }
}

#[test]
fn synthetic_round_trips_are_sound_and_accurate() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for k in 0..20 {
        let s = synthetic(&mut rng, k, 17, 12);
        let m = parse_model(&s.model).unwrap();
        let d = parse_dataset(&s.data, &m).unwrap();
        let e = estimate(&m, &d, &EstimateOptions::default()).unwrap();
        assert_eq!(e.outcome, Outcome::Ok, "{}", s.name);
        assert_eq!(e.candidates.len() + e.dropped.len(), e.real_solutions, "{}", s.name);
        assert!(e.candidates.iter().all(|c| c.certified));
        let r = relative_error(&e.candidates[0].point_estimates(), &s.truth).unwrap();
        assert!(r.max_rel_pct.unwrap() <= 1.0, "{}: {:?}", s.name, r);
        // tighter boxes keep the ranking
        let tight = estimate(&m, &d, &EstimateOptions { eps: rat::frac(1, 1 << 50), ..Default::default() }).unwrap();
        assert_eq!(tight.candidates.len(), e.candidates.len());
        for (a, b) in e.candidates.iter().zip(&tight.candidates) {
            assert!(a.solution.root.lo <= b.solution.root.hi && b.solution.root.lo <= a.solution.root.hi);
        }
    }
}
