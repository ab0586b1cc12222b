//! Reference trajectories and synthetic round-trip models.

use rand::Rng;

type Rhs = fn(&[f64], &[f64]) -> Vec<f64>;
type Out = fn(&[f64]) -> Vec<f64>;

/// Fine fixed-step RK4 from `t = 0`, sampled at increasing `times >= 0`.
pub fn integrate(rhs: impl Fn(&[f64]) -> Vec<f64>, x0: &[f64], times: &[f64], h: f64) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let (mut t, mut x) = (0.0f64, x0.to_vec());
    let add = |a: &[f64], k: &[f64], s: f64| -> Vec<f64> { a.iter().zip(k).map(|(a, k)| a + s * k).collect() };
    for &target in times {
        let n = ((target - t) / h).ceil() as usize;
        if n > 0 {
            let dt = (target - t) / n as f64;
            for _ in 0..n {
                let k1 = rhs(&x);
                let k2 = rhs(&add(&x, &k1, dt / 2.0));
                let k3 = rhs(&add(&x, &k2, dt / 2.0));
                let k4 = rhs(&add(&x, &k3, dt));
                for i in 0..x.len() {
                    x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
                }
            }
        }
        t = target;
        out.push(x.clone());
    }
    out
}

/// Rounds to `digits` significant decimal digits.
pub fn significant(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let s = format!("{:.*e}", digits - 1, v);
    let (mant, exp) = s.split_once('e').unwrap();
    format!("{mant}e{exp}")
}

struct Template {
    name: &'static str,
    states: &'static [&'static str],
    params: &'static [&'static str],
    outputs: &'static [&'static str],
    dynamics: &'static [&'static str],
    output_exprs: &'static [&'static str],
    rhs: Rhs,
    out: Out,
}

const TEMPLATES: [Template; 7] = [
    Template {
        name: "decay",
        states: &["x"],
        params: &["a"],
        outputs: &["y"],
        dynamics: &["x' = -a*x"],
        output_exprs: &["y = x"],
        rhs: |x, p| vec![-p[0] * x[0]],
        out: |x| vec![x[0]],
    },
    Template {
        name: "logistic",
        states: &["x"],
        params: &["a", "b"],
        outputs: &["y"],
        dynamics: &["x' = a*x - b*x^2"],
        output_exprs: &["y = x"],
        rhs: |x, p| vec![p[0] * x[0] - p[1] * x[0] * x[0]],
        out: |x| vec![x[0]],
    },
    Template {
        name: "inflow",
        states: &["x"],
        params: &["a", "b"],
        outputs: &["y"],
        dynamics: &["x' = b - a*x"],
        output_exprs: &["y = x"],
        rhs: |x, p| vec![p[1] - p[0] * x[0]],
        out: |x| vec![x[0]],
    },
    Template {
        name: "quadratic_decay",
        states: &["x"],
        params: &["a"],
        outputs: &["y"],
        dynamics: &["x' = -a*x^2"],
        output_exprs: &["y = x^2 + x"],
        rhs: |x, p| vec![-p[0] * x[0] * x[0]],
        out: |x| vec![x[0] * x[0] + x[0]],
    },
    Template {
        name: "chain",
        states: &["x1", "x2"],
        params: &["a", "b"],
        outputs: &["y1", "y2"],
        dynamics: &["x1' = -a*x1", "x2' = a*x1 - b*x2"],
        output_exprs: &["y1 = x1", "y2 = x2"],
        rhs: |x, p| vec![-p[0] * x[0], p[0] * x[0] - p[1] * x[1]],
        out: |x| vec![x[0], x[1]],
    },
    Template {
        name: "oscillator",
        states: &["x1", "x2"],
        params: &["a"],
        outputs: &["y"],
        dynamics: &["x1' = x2", "x2' = -a*x1"],
        output_exprs: &["y = x1"],
        rhs: |x, p| vec![x[1], -p[0] * x[0]],
        out: |x| vec![x[0]],
    },
    Template {
        name: "predator_prey",
        states: &["x1", "x2"],
        params: &["a", "b"],
        outputs: &["y1", "y2"],
        dynamics: &["x1' = a*x1 - x1*x2", "x2' = x1*x2 - b*x2"],
        output_exprs: &["y1 = x1", "y2 = x2"],
        rhs: |x, p| vec![p[0] * x[0] - x[0] * x[1], x[0] * x[1] - p[1] * x[1]],
        out: |x| vec![x[0], x[1]],
    },
];

/// A model with data generated from known parameter and initial values.
#[derive(Clone, Debug)]
pub struct Synthetic {
    pub name: String,
    pub model: String,
    /// CSV with a `t` column and one column per output.
    pub data: String,
    /// Parameters, then initial state values, as `(name, value)`.
    pub truth: Vec<(String, f64)>,
    pub states: usize,
    pub params: usize,
}

impl Synthetic {
    pub fn truth_text(&self) -> String {
        self.truth.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

fn draw<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> f64 {
    rng.gen_range(lo..=hi) as f64 / 100.0
}

/// Instance `k` of the synthetic family, with `samples` points on `[0, 1]`.
pub fn synthetic<R: Rng>(rng: &mut R, k: usize, samples: usize, digits: usize) -> Synthetic {
    let tpl = &TEMPLATES[k % TEMPLATES.len()];
    let params: Vec<f64> = tpl.params.iter().map(|_| draw(rng, 20, 150)).collect();
    let x0: Vec<f64> = tpl.states.iter().map(|_| draw(rng, 50, 200)).collect();
    let mut model = format!("states: {}\nparams: {}\ndynamics:\n", tpl.states.join(", "), tpl.params.join(", "));
    for d in tpl.dynamics {
        model.push_str(&format!("  {d}\n"));
    }
    model.push_str("outputs:\n");
    for o in tpl.output_exprs {
        model.push_str(&format!("  {o}\n"));
    }
    let times: Vec<f64> = (0..samples).map(|i| i as f64 / (samples - 1) as f64).collect();
    let traj = integrate(|x| (tpl.rhs)(x, &params), &x0, &times, 1.0 / 8192.0);
    let mut data = format!("t,{}\n", tpl.outputs.join(","));
    for (i, x) in traj.iter().enumerate() {
        let ys: Vec<String> = (tpl.out)(x).iter().map(|&v| significant(v, digits)).collect();
        data.push_str(&format!("{}/{},{}\n", i, samples - 1, ys.join(",")));
    }
    let truth = tpl
        .params
        .iter()
        .zip(&params)
        .chain(tpl.states.iter().zip(&x0))
        .map(|(n, v)| (n.to_string(), *v))
        .collect();
    Synthetic {
        name: format!("{}_{k}", tpl.name),
        model,
        data,
        truth,
        states: tpl.states.len(),
        params: tpl.params.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_integrator_matches_exponential() {
        let out = integrate(|x| vec![-0.5 * x[0]], &[1.0], &[0.5, 1.0], 1.0 / 1024.0);
        assert!((out[1][0] - (-0.5f64).exp()).abs() < 1e-13);
    }

    #[test]
    fn significant_digits() {
        assert_eq!(significant(std::f64::consts::PI, 6), "3.14159e0");
        assert_eq!(significant(-0.000123456789, 3), "-1.23e-4");
    }
}
