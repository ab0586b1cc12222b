//! End-to-end estimation: interpolate, prolong, solve exactly, certify and
//! rank the real solutions against the data.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::budget::{Deadline, TimedOut};
use crate::datafit::{fit_interpolant, DerivError, FitError, InterpKind};
use crate::groebner::{buchberger, buchberger_with_deadline, quotient_basis, GroebnerBasis, NotZeroDimensional};
use crate::interval::{bits_for, eval_poly, eval_uni, Interval};
use crate::isolate::{isolate_real_roots, refine, IsolatingInterval};
use crate::linalg::Matrix;
use crate::model::{DataError, Dataset, Model};
use crate::poly::{rat, Rat, TermOrder};
use crate::prolong::{
    bezout_bound, build_square_system, default_orders, exact_derivatives, lie_prolong, BezoutBound,
    PolySystem, ProlongError, SquareSystem, Unknown,
};
use crate::rur::{certify_rur, rur_from_basis, Rejection, Rur, RurError};

/// Enclosures of every unknown for one real root of the representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateBox {
    pub root: IsolatingInterval,
    pub coords: Vec<Interval>,
}

/// Wall-clock time per pipeline stage, in execution order.
#[derive(Clone, Debug, Default)]
pub struct Timings {
    pub stages: Vec<(&'static str, Duration)>,
}

impl Timings {
    fn run<T>(&mut self, stage: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.stages.push((stage, start.elapsed()));
        out
    }

    pub fn total(&self) -> Duration {
        self.stages.iter().map(|s| s.1).sum()
    }
}

/// Coordinates for each root, refining until `fprime` is bounded away from
/// zero and every coordinate is at most `eps` wide.
pub fn back_substitute(rur: &Rur, roots: &[IsolatingInterval], eps: &Rat) -> Vec<CandidateBox> {
    let bits = bits_for(eps) + 16;
    roots
        .iter()
        .map(|root| {
            let mut iv = refine(&rur.fbar, root, eps);
            loop {
                if iv.exact {
                    let coords = rur.point_at(&iv.lo).into_iter().map(Interval::point).collect();
                    return CandidateBox { root: iv, coords };
                }
                let x = Interval::new(iv.lo.clone(), iv.hi.clone());
                let d = eval_uni(&rur.fprime, &x);
                if !d.contains_zero() {
                    let coords: Vec<Interval> = rur
                        .coords
                        .iter()
                        .map(|g| eval_uni(g, &x).div(&d).expect("checked above").tame(bits))
                        .collect();
                    if coords.iter().all(|c| c.width() <= *eps) {
                        return CandidateBox { root: iv, coords };
                    }
                }
                let half = iv.width() / rat::int(2);
                iv = refine(&rur.fbar, &iv, &half);
            }
        })
        .collect()
}

/// True iff every equation's enclosure over the box contains zero.
pub fn residual_certify(sys: &PolySystem, b: &CandidateBox) -> bool {
    sys.equations().iter().all(|e| eval_poly(e, &b.coords).contains_zero())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("ideal is not zero-dimensional (dimension {})", .0.dimension)]
    NotZeroDimensional(NotZeroDimensional),
    #[error("time budget exhausted")]
    TimedOut,
    #[error("no separating form found")]
    NotSeparating,
    #[error("representation failed its certificate: {0}")]
    Rejected(Rejection),
}

impl From<TimedOut> for SolveError {
    fn from(_: TimedOut) -> Self {
        SolveError::TimedOut
    }
}

impl From<RurError> for SolveError {
    fn from(e: RurError) -> Self {
        match e {
            RurError::TimedOut => SolveError::TimedOut,
            RurError::NotSeparating => SolveError::NotSeparating,
        }
    }
}

/// All real solutions of a polynomial system, with their certificates.
#[derive(Clone, Debug)]
pub struct Solved {
    pub gb: GroebnerBasis,
    pub quotient_dim: usize,
    pub rur: Rur,
    pub boxes: Vec<CandidateBox>,
    /// `residual_certify` for each box.
    pub certified: Vec<bool>,
}

pub fn solve_system(
    sys: &PolySystem,
    eps: &Rat,
    deadline: Deadline,
    timings: &mut Timings,
) -> Result<Solved, SolveError> {
    let order = TermOrder::grevlex(sys.registry().len());
    let gb = timings.run("groebner", || buchberger_with_deadline(sys.equations(), &order, deadline))?;
    let qb = quotient_basis(&gb).map_err(SolveError::NotZeroDimensional)?;
    let rur = timings.run("rur", || rur_from_basis(&gb, &qb, deadline))?;
    certify_rur(&rur, sys.equations()).map_err(SolveError::Rejected)?;
    deadline.check()?;
    let roots = timings.run("isolate", || isolate_real_roots(&rur.fbar, eps));
    let boxes = timings.run("back_substitute", || back_substitute(&rur, &roots, eps));
    let certified = boxes.iter().map(|b| residual_certify(sys, b)).collect();
    Ok(Solved {
        quotient_dim: qb.dim(),
        gb,
        rur,
        boxes,
        certified,
    })
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("trajectory could not be computed")]
pub struct Unsimulatable;

/// States and outputs sampled at the requested times.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub states: Vec<Vec<f64>>,
    pub outputs: Vec<Vec<f64>>,
}

struct Field<'a> {
    model: &'a Model,
    params: &'a [f64],
}

impl Field<'_> {
    fn point(&self, t: f64, x: &[f64]) -> Vec<f64> {
        let mut p = x.to_vec();
        p.extend_from_slice(self.params);
        p.extend(self.model.inputs().iter().map(|(_, u)| u.eval_f64(t)));
        p
    }

    fn rhs(&self, t: f64, x: &[f64]) -> Result<Vec<f64>, Unsimulatable> {
        let p = self.point(t, x);
        self.model
            .rhs()
            .iter()
            .map(|f| {
                let d = f.den().eval_f64(&p);
                let v = f.num().eval_f64(&p) / d;
                if d == 0.0 || !v.is_finite() {
                    Err(Unsimulatable)
                } else {
                    Ok(v)
                }
            })
            .collect()
    }

    fn step(&self, t: f64, x: &[f64], h: f64) -> Result<Vec<f64>, Unsimulatable> {
        let axpy = |a: &[f64], k: &[f64], s: f64| -> Vec<f64> { a.iter().zip(k).map(|(a, k)| a + s * k).collect() };
        let k1 = self.rhs(t, x)?;
        let k2 = self.rhs(t + h / 2.0, &axpy(x, &k1, h / 2.0))?;
        let k3 = self.rhs(t + h / 2.0, &axpy(x, &k2, h / 2.0))?;
        let k4 = self.rhs(t + h, &axpy(x, &k3, h))?;
        Ok(x.iter()
            .enumerate()
            .map(|(i, xi)| xi + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
            .collect())
    }

    /// Integrates from `t0` through the sorted `targets`, all on one side.
    fn sweep(&self, t0: f64, x0: &[f64], targets: &[f64], h: f64) -> Result<Vec<Vec<f64>>, Unsimulatable> {
        let mut out = Vec::with_capacity(targets.len());
        let (mut t, mut x) = (t0, x0.to_vec());
        for &target in targets {
            let span = target - t;
            let n = (span.abs() / h).ceil().max(if span == 0.0 { 0.0 } else { 1.0 }) as usize;
            let dt = if n == 0 { 0.0 } else { span / n as f64 };
            for _ in 0..n {
                x = self.step(t, &x, dt)?;
                t += dt;
            }
            t = target;
            if x.iter().any(|v| !v.is_finite()) {
                return Err(Unsimulatable);
            }
            out.push(x.clone());
        }
        Ok(out)
    }

    fn run(&self, tstar: f64, x0: &[f64], times: &[f64], h: f64) -> Result<Vec<Vec<f64>>, Unsimulatable> {
        let mut fwd: Vec<(usize, f64)> = times.iter().copied().enumerate().filter(|p| p.1 >= tstar).collect();
        let mut bwd: Vec<(usize, f64)> = times.iter().copied().enumerate().filter(|p| p.1 < tstar).collect();
        fwd.sort_by(|a, b| a.1.total_cmp(&b.1));
        bwd.sort_by(|a, b| b.1.total_cmp(&a.1));
        let mut out = vec![Vec::new(); times.len()];
        for side in [fwd, bwd] {
            let ts: Vec<f64> = side.iter().map(|p| p.1).collect();
            for ((k, _), x) in side.iter().zip(self.sweep(tstar, x0, &ts, h)?) {
                out[*k] = x;
            }
        }
        Ok(out)
    }
}

const SIM_TOL: f64 = 1e-8;

/// Fourth-order Runge–Kutta from `x_tstar` at `tstar`, forward and backward.
/// The step is halved until outputs move by less than `1e-8` relative.
pub fn simulate(
    model: &Model,
    params: &[f64],
    x_tstar: &[f64],
    tstar: f64,
    times: &[f64],
) -> Result<Trajectory, Unsimulatable> {
    let field = Field { model, params };
    let reach = times.iter().map(|t| (t - tstar).abs()).fold(0.0, f64::max);
    let mut h = if reach > 0.0 { reach / 32.0 } else { 1.0 };
    let outputs_of = |states: &[Vec<f64>], times: &[f64]| -> Result<Vec<Vec<f64>>, Unsimulatable> {
        states
            .iter()
            .zip(times)
            .map(|(x, &t)| {
                let p = field.point(t, x);
                let y: Vec<f64> = model.outputs().iter().map(|(_, g)| g.eval_f64(&p)).collect();
                if y.iter().all(|v| v.is_finite()) {
                    Ok(y)
                } else {
                    Err(Unsimulatable)
                }
            })
            .collect()
    };
    let mut states = field.run(tstar, x_tstar, times, h)?;
    let mut outputs = outputs_of(&states, times)?;
    for _ in 0..24 {
        h /= 2.0;
        let s2 = field.run(tstar, x_tstar, times, h)?;
        let o2 = outputs_of(&s2, times)?;
        let close = outputs.iter().flatten().zip(o2.iter().flatten()).all(|(a, b)| {
            (a - b).abs() <= SIM_TOL * a.abs().max(b.abs()).max(1e-12)
        });
        states = s2;
        outputs = o2;
        if close {
            break;
        }
    }
    Ok(Trajectory { states, outputs })
}

/// Root-mean-square deviation between simulated outputs and the data.
pub fn rms_residual(traj: &Trajectory, data: &Dataset) -> f64 {
    let mut acc = 0.0;
    let mut n = 0usize;
    for (k, y) in traj.outputs.iter().enumerate() {
        for (j, v) in y.iter().enumerate() {
            let d = v - rat::to_f64(&data.values(j)[k]);
            acc += d * d;
            n += 1;
        }
    }
    (acc / n.max(1) as f64).sqrt()
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Side {
    Above { value: Rat, strict: bool },
    Below { value: Rat, strict: bool },
}

/// One-sided constraint on a parameter or on a state value at `t*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub name: String,
    side: Side,
}

impl Bound {
    pub fn admits(&self, v: &Rat) -> bool {
        match &self.side {
            Side::Above { value, strict } => v > value || (!strict && v == value),
            Side::Below { value, strict } => v < value || (!strict && v == value),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.side {
            Side::Above { value, strict } => write!(f, "{}{}{}", self.name, if *strict { ">" } else { ">=" }, value),
            Side::Below { value, strict } => write!(f, "{}{}{}", self.name, if *strict { "<" } else { "<=" }, value),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad bound `{0}`: expected name>=v, name>v, name<=v or name<v")]
pub struct BoundParseError(pub String);

impl Bound {
    /// Comma-separated list of constraints.
    pub fn parse_list(text: &str) -> Result<Vec<Bound>, BoundParseError> {
        text.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
    }
}

impl FromStr for Bound {
    type Err = BoundParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || BoundParseError(s.trim().to_string());
        let pos = s.find(['<', '>']).ok_or_else(err)?;
        let name = s[..pos].trim();
        let rest = &s[pos..];
        let (op, value) = [">=", "<=", ">", "<"]
            .iter()
            .find_map(|op| rest.strip_prefix(op).map(|v| (*op, v)))
            .ok_or_else(err)?;
        let value = rat::parse(value.trim()).ok_or_else(err)?;
        let ident = name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ident {
            return Err(err());
        }
        let side = match op {
            ">=" => Side::Above { value, strict: false },
            ">" => Side::Above { value, strict: true },
            "<=" => Side::Below { value, strict: false },
            _ => Side::Below { value, strict: true },
        };
        Ok(Bound {
            name: name.to_string(),
            side,
        })
    }
}

#[derive(Clone, Debug)]
pub struct EstimateOptions {
    /// Defaults to the first sample time.
    pub tstar: Option<Rat>,
    /// Derivative order per output; chosen automatically when absent.
    pub orders: Option<Vec<usize>>,
    pub interp: InterpKind,
    /// Target width of every reported enclosure.
    pub eps: Rat,
    pub bounds: Vec<Bound>,
    pub deadline: Deadline,
    /// Seed for the random point of the identifiability probe.
    pub seed: u64,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        EstimateOptions {
            tstar: None,
            orders: None,
            interp: InterpKind::Polynomial,
            eps: rat::frac(1, 1_000_000_000),
            bounds: Vec::new(),
            deadline: Deadline::none(),
            seed: 0,
        }
    }
}

/// A real solution mapped back to model quantities.
#[derive(Clone, Debug)]
pub struct Candidate {
    /// Parameter enclosures in model order.
    pub params: Vec<(String, Interval)>,
    /// State values at `t*`; `None` when the system does not determine one.
    pub states: Vec<(String, Option<Interval>)>,
    pub certified: bool,
    /// `None` when the trajectory could not be simulated.
    pub rms: Option<f64>,
    pub solution: CandidateBox,
}

impl Candidate {
    /// Enclosure of a parameter or of a state value at `t*`.
    pub fn value(&self, name: &str) -> Option<&Interval> {
        self.params
            .iter()
            .find(|p| p.0 == name)
            .map(|p| &p.1)
            .or_else(|| self.states.iter().find(|s| s.0 == name).and_then(|s| s.1.as_ref()))
    }

    /// Midpoints of every determined value, parameters first.
    pub fn point_estimates(&self) -> Vec<(String, f64)> {
        let params = self.params.iter().map(|(n, i)| (n.clone(), rat::to_f64(&i.midpoint())));
        let states = self
            .states
            .iter()
            .filter_map(|(n, i)| i.as_ref().map(|i| (n.clone(), rat::to_f64(&i.midpoint()))));
        params.chain(states).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DropReason {
    /// An equation's enclosure excludes zero.
    NotCertified,
    /// The box meets the zero set of a cleared denominator.
    Denominator,
    OutOfBounds,
}

impl DropReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            DropReason::NotCertified => "not-certified",
            DropReason::Denominator => "denominator",
            DropReason::OutOfBounds => "out-of-bounds",
        }
    }
}

/// Why the solution set is not finite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnosis {
    pub basis: NotZeroDimensional,
    /// Tangent directions of the solution set at a generic exact point,
    /// restricted to their nonzero entries.
    pub directions: Vec<Vec<(String, Rat)>>,
    /// True when the data system itself was inconsistent and the verdict
    /// comes from noise-free synthetic values.
    pub from_probe: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    NoEstimate,
    NotZeroDimensional(Diagnosis),
}

#[derive(Clone, Debug)]
pub struct Estimation {
    pub tstar: Rat,
    pub orders: Vec<usize>,
    /// Interpolant actually used per output (rational falls back to polynomial).
    pub interp: Vec<InterpKind>,
    pub derivatives: Vec<Vec<Rat>>,
    pub system: SquareSystem,
    pub bezout: BezoutBound,
    pub gb: Option<GroebnerBasis>,
    pub rur: Option<Rur>,
    pub quotient_dim: Option<usize>,
    pub distinct_solutions: Option<usize>,
    /// Real roots of the representation, before filtering.
    pub real_solutions: usize,
    /// Survivors, best first.
    pub candidates: Vec<Candidate>,
    pub dropped: Vec<(Candidate, DropReason)>,
    pub outcome: Outcome,
    pub timings: Timings,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EstimateError {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("output {output}: {source}")]
    Fit { output: String, source: FitError },
    #[error("output {output}: {source}")]
    Deriv { output: String, source: DerivError },
    #[error(transparent)]
    Prolong(#[from] ProlongError),
    #[error("bound on `{0}`, which is neither a parameter nor a state")]
    UnknownBound(String),
    #[error("time budget exhausted")]
    TimedOut,
    #[error("no separating form found")]
    NotSeparating,
    #[error("representation failed its certificate: {0}")]
    Rejected(Rejection),
}

impl From<TimedOut> for EstimateError {
    fn from(_: TimedOut) -> Self {
        EstimateError::TimedOut
    }
}

/// Tries a rational interpolant when asked, falling back to polynomial on
/// breakdown or a pole at `tstar`.
fn derivatives_for(
    data: &Dataset,
    j: usize,
    kind: InterpKind,
    tstar: &Rat,
    order: usize,
    name: &str,
) -> Result<(InterpKind, Vec<Rat>), EstimateError> {
    if kind == InterpKind::Rational {
        if let Ok(ip) = fit_interpolant(data, j, kind) {
            if let Ok(d) = ip.derivatives(tstar, order) {
                return Ok((kind, d));
            }
        }
    }
    let ip = fit_interpolant(data, j, InterpKind::Polynomial).map_err(|source| EstimateError::Fit {
        output: name.to_string(),
        source,
    })?;
    let d = ip.derivatives(tstar, order).map_err(|source| EstimateError::Deriv {
        output: name.to_string(),
        source,
    })?;
    Ok((InterpKind::Polynomial, d))
}

pub fn estimate(model: &Model, data: &Dataset, opts: &EstimateOptions) -> Result<Estimation, EstimateError> {
    if let Some(b) = opts
        .bounds
        .iter()
        .find(|b| !model.params().contains(&b.name) && !model.states().contains(&b.name))
    {
        return Err(EstimateError::UnknownBound(b.name.clone()));
    }
    let data = data.aligned_to(model)?;
    let mut timings = Timings::default();
    let tstar = opts.tstar.clone().unwrap_or_else(|| data.times()[0].clone());
    let orders = match &opts.orders {
        Some(o) => o.clone(),
        None => default_orders(model, data.len() - 1)?,
    };
    let names = model.output_names();
    let fitted = timings.run("interpolate", || {
        (0..names.len())
            .map(|j| derivatives_for(&data, j, opts.interp, &tstar, orders[j], &names[j]))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let (interp, derivatives): (Vec<_>, Vec<_>) = fitted.into_iter().unzip();
    let system = timings.run("prolong", || build_square_system(model, &derivatives, &orders, &tstar))?;
    let bezout = bezout_bound(&system.system);
    let mut est = Estimation {
        tstar,
        orders,
        interp,
        derivatives,
        bezout,
        gb: None,
        rur: None,
        quotient_dim: None,
        distinct_solutions: None,
        real_solutions: 0,
        candidates: Vec::new(),
        dropped: Vec::new(),
        outcome: Outcome::NoEstimate,
        timings: Timings::default(),
        system,
    };
    let solved = match solve_system(&est.system.system, &opts.eps, opts.deadline, &mut timings) {
        Ok(s) => s,
        Err(SolveError::NotZeroDimensional(nzd)) => {
            let directions = probe(model, &est, opts.seed).map(|p| p.1).unwrap_or_default();
            est.outcome = Outcome::NotZeroDimensional(Diagnosis {
                basis: nzd,
                directions,
                from_probe: false,
            });
            est.timings = timings;
            return Ok(est);
        }
        Err(SolveError::TimedOut) => return Err(EstimateError::TimedOut),
        Err(SolveError::NotSeparating) => return Err(EstimateError::NotSeparating),
        Err(SolveError::Rejected(r)) => return Err(EstimateError::Rejected(r)),
    };
    est.quotient_dim = Some(solved.quotient_dim);
    est.distinct_solutions = Some(solved.rur.distinct_solutions);
    est.real_solutions = solved.boxes.len();
    if solved.gb.is_inconsistent() {
        // noisy data can make an unidentifiable model inconsistent
        if let Some((Err(nzd), directions)) = probe(model, &est, opts.seed) {
            est.outcome = Outcome::NotZeroDimensional(Diagnosis {
                basis: nzd,
                directions,
                from_probe: true,
            });
        }
    }
    let sq = &est.system;
    let mut kept = Vec::new();
    for (b, &certified) in solved.boxes.iter().zip(&solved.certified) {
        let c = to_candidate(model, sq, b, certified);
        let reason = if !certified {
            Some(DropReason::NotCertified)
        } else if sq.denominators.iter().any(|d| eval_poly(d, &b.coords).contains_zero()) {
            Some(DropReason::Denominator)
        } else if !within_bounds(&c, &opts.bounds) {
            Some(DropReason::OutOfBounds)
        } else {
            None
        };
        match reason {
            Some(r) => est.dropped.push((c, r)),
            None => kept.push(c),
        }
    }
    let times: Vec<f64> = data.times().iter().map(rat::to_f64).collect();
    let t0 = rat::to_f64(&est.tstar);
    timings.run("rank", || {
        let scores: Vec<Option<f64>> = std::thread::scope(|s| {
            let handles: Vec<_> = kept
                .iter()
                .map(|c| s.spawn(|| rank_score(model, c, t0, &times, &data)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("simulation thread")).collect()
        });
        for (c, r) in kept.iter_mut().zip(scores) {
            c.rms = r;
        }
        // unsimulatable last; stable for ties
        kept.sort_by(|a, b| match (a.rms, b.rms) {
            (Some(x), Some(y)) => x.total_cmp(&y),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => std::cmp::Ordering::Equal,
        });
    });
    est.candidates = kept;
    if matches!(est.outcome, Outcome::NoEstimate) && !est.candidates.is_empty() {
        est.outcome = Outcome::Ok;
    }
    est.gb = Some(solved.gb);
    est.rur = Some(solved.rur);
    est.timings = timings;
    Ok(est)
}

fn to_candidate(model: &Model, sq: &SquareSystem, b: &CandidateBox, certified: bool) -> Candidate {
    let params = model
        .params()
        .iter()
        .enumerate()
        .map(|(p, name)| {
            let k = sq.param_index(p).expect("every parameter is an unknown");
            (name.clone(), b.coords[k].clone())
        })
        .collect();
    let states = model
        .states()
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let v = sq
                .state_index(i, 0)
                .map(|k| b.coords[k].clone())
                .or_else(|| model.known().iter().find(|p| p.0 == i).map(|p| Interval::point(p.1.clone())));
            (name.clone(), v)
        })
        .collect();
    Candidate {
        params,
        states,
        certified,
        rms: None,
        solution: b.clone(),
    }
}

fn within_bounds(c: &Candidate, bounds: &[Bound]) -> bool {
    bounds
        .iter()
        .all(|b| c.value(&b.name).is_none_or(|v| b.admits(&v.midpoint())))
}

fn rank_score(model: &Model, c: &Candidate, tstar: f64, times: &[f64], data: &Dataset) -> Option<f64> {
    let params: Vec<f64> = c.params.iter().map(|p| rat::to_f64(&p.1.midpoint())).collect();
    let x0: Option<Vec<f64>> = c.states.iter().map(|s| s.1.as_ref().map(|i| rat::to_f64(&i.midpoint()))).collect();
    let traj = simulate(model, &params, &x0?, tstar, times).ok()?;
    Some(rms_residual(&traj, data))
}

/// Rebuilds the system from exact derivatives at a random parameter and
/// state point, then reports its dimension and tangent directions.
#[allow(clippy::type_complexity)]
fn probe(
    model: &Model,
    est: &Estimation,
    seed: u64,
) -> Option<(Result<usize, NotZeroDimensional>, Vec<Vec<(String, Rat)>>)> {
    let pro = lie_prolong(model, &est.orders).ok()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || rat::frac(rng.gen_range(1..=29), rng.gen_range(1..=7)) * rat::int(if rng.gen_bool(0.5) { 1 } else { -1 });
    for _ in 0..8 {
        let params: Vec<Rat> = model.params().iter().map(|_| draw()).collect();
        let mut states: Vec<Rat> = model.states().iter().map(|_| draw()).collect();
        for (i, c) in model.known() {
            states[*i] = c.clone();
        }
        let Some((point, outs)) = exact_derivatives(&pro, &params, &states, &est.tstar) else {
            continue;
        };
        let Ok(sq) = build_square_system(model, &outs, &est.orders, &est.tstar) else {
            continue;
        };
        let sys = &sq.system;
        // exact solution in system coordinates
        let sol: Vec<Rat> = sq
            .roles
            .iter()
            .map(|r| match *r {
                Unknown::State { state, order } => point[pro.vars.state_var(state, order)].clone(),
                Unknown::Param(p) => params[p].clone(),
                Unknown::Time => est.tstar.clone(),
            })
            .collect();
        if sq.denominators.iter().any(|d| d.eval(&sol).is_zero()) {
            continue;
        }
        let gb = buchberger(sys.equations(), &TermOrder::grevlex(sys.registry().len()));
        let dim = quotient_basis(&gb).map(|qb| qb.dim());
        let directions = if dim.is_err() { tangent_directions(sys, &sol) } else { Vec::new() };
        return Some((dim, directions));
    }
    None
}

/// Kernel of the Jacobian at `point`, as named sparse vectors.
pub fn tangent_directions(sys: &PolySystem, point: &[Rat]) -> Vec<Vec<(String, Rat)>> {
    let n = sys.registry().len();
    if sys.equations().len() != n {
        return Vec::new();
    }
    let rows = sys
        .equations()
        .iter()
        .map(|e| (0..n).map(|v| e.diff(v).eval(point)).collect())
        .collect();
    Matrix::from_rows(rows)
        .null_space()
        .into_iter()
        .map(|v| {
            v.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (sys.registry().name(i).to_string(), c))
                .collect()
        })
        .collect()
}

/// Per-key error of an estimate: relative in percent, or absolute where the
/// true value is zero.
#[derive(Clone, Debug, PartialEq)]
pub enum KeyError {
    RelativePct(f64),
    Absolute(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErrorReport {
    pub per_key: Vec<(String, KeyError)>,
    /// Largest relative error over keys with nonzero truth.
    pub max_rel_pct: Option<f64>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("no estimate for `{0}`")]
pub struct MissingKey(pub String);

pub fn relative_error(estimated: &[(String, f64)], truth: &[(String, f64)]) -> Result<ErrorReport, MissingKey> {
    let mut per_key = Vec::new();
    let mut max: Option<f64> = None;
    for (name, t) in truth {
        let e = estimated
            .iter()
            .find(|p| p.0 == *name)
            .ok_or_else(|| MissingKey(name.clone()))?
            .1;
        if *t == 0.0 {
            per_key.push((name.clone(), KeyError::Absolute((e - t).abs())));
        } else {
            let r = (e - t).abs() / t.abs() * 100.0;
            max = Some(max.map_or(r, |m| m.max(r)));
            per_key.push((name.clone(), KeyError::RelativePct(r)));
        }
    }
    Ok(ErrorReport {
        per_key,
        max_rel_pct: max,
    })
}

/// `name = value` lines; `#` starts a comment.
pub fn parse_truth(text: &str) -> Result<Vec<(String, Rat)>, String> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `name = value`", ln + 1))?;
        let v = rat::parse(v.trim()).ok_or_else(|| format!("line {}: bad number `{}`", ln + 1, v.trim()))?;
        out.push((k.trim().to_string(), v));
    }
    Ok(out)
}
