use certfit::model::parse_model;
use proptest::prelude::*;

const STATES: [&str; 2] = ["x1", "x2"];
const PARAMS: [&str; 2] = ["k", "m"];

fn term(nstates: usize) -> impl Strategy<Value = String> {
    let names: Vec<&'static str> = STATES[..nstates].iter().chain(PARAMS.iter()).copied().collect();
    (-5i64..=5, prop::sample::subsequence(names, 0..=2)).prop_map(|(c, vs)| {
        let mut s = format!("({c})");
        for v in vs {
            s.push('*');
            s.push_str(v);
        }
        s
    })
}

fn expr(nstates: usize) -> impl Strategy<Value = String> {
    (prop::collection::vec(term(nstates), 1..4), prop::option::of(term(nstates))).prop_map(|(ts, den)| {
        let num = ts.join(" + ");
        match den {
            Some(d) => format!("({num})/(1 + ({d})^2)"),
            None => num,
        }
    })
}

fn model_text() -> impl Strategy<Value = String> {
    (1usize..=2).prop_flat_map(|n| {
        (prop::collection::vec(expr(n), n), expr(n), any::<bool>(), -3i64..=3).prop_map(move |(rhs, out, input, pin)| {
            let mut s = format!("states: {}\nparams: k, m\n", STATES[..n].join(", "));
            if input {
                s.push_str("inputs: u = t^2 - 1\n");
            }
            s.push_str("dynamics:\n");
            for (i, r) in rhs.iter().enumerate() {
                let extra = if input && i == 0 { " + u" } else { "" };
                s.push_str(&format!("  {}' = {r}{extra}\n", STATES[i]));
            }
            s.push_str(&format!("outputs:\n  y = {out}\n"));
            if pin != 0 {
                s.push_str(&format!("known:\n  x1(0) = {pin}\n"));
            }
            s
        })
    })
}

proptest! {
    #[test]
    fn print_parse_round_trip(text in model_text()) {
        let m = parse_model(&text).unwrap();
        let printed = m.to_string();
        let back = parse_model(&printed).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn expressions_use_registry_variables(text in model_text()) {
        let m = parse_model(&text).unwrap();
        let n = m.registry().len();
        for f in m.rhs().iter().chain(m.outputs().iter().map(|o| &o.1)) {
            prop_assert!(f.variables().iter().all(|&v| v < n));
            prop_assert_eq!(f.registry(), m.registry());
        }
    }
}
