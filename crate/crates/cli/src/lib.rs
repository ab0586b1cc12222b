//! Command implementations behind the `certfit` binary.

pub mod bench;
pub mod report;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use certfit::budget::Deadline;
use certfit::datafit::InterpKind;
use certfit::estimate::{
    estimate, solve_system, Bound, EstimateError, EstimateOptions, SolveError, Timings,
};
use certfit::groebner::{buchberger, quotient_basis};
use certfit::model::{parse_dataset, parse_model};
use certfit::poly::{rat, Rat, TermOrder};
use certfit::prolong::{bezout_bound, PolySystem};

use report::{EstimateReport, SolutionReport, SolveReport, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Dump {
    System,
    Gb,
    Rur,
}

#[derive(Clone, Debug, Default)]
pub struct EstimateArgs {
    pub model: PathBuf,
    pub data: PathBuf,
    pub tstar: Option<String>,
    pub orders: Option<String>,
    pub rational: bool,
    pub eps: Option<String>,
    pub bounds: Option<String>,
    pub timeout: Option<f64>,
    pub dump: Option<Dump>,
    pub seed: u64,
}

fn parse_eps(text: Option<&str>) -> Result<Rat, String> {
    match text {
        None => Ok(rat::frac(1, 1_000_000_000)),
        Some(t) => match rat::parse(t) {
            Some(e) if e > Rat::from_integer(0.into()) => Ok(e),
            _ => Err(format!("--eps: expected a positive number, got `{t}`")),
        },
    }
}

fn deadline(timeout: Option<f64>) -> Deadline {
    match timeout {
        Some(s) if s.is_finite() && s >= 0.0 => Deadline::after(Duration::from_secs_f64(s)),
        _ => Deadline::none(),
    }
}

fn read(path: &PathBuf, what: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {what} {}: {e}", path.display()))
}

/// Runs the estimation pipeline. The second value is the requested dump.
pub fn cmd_estimate(args: &EstimateArgs) -> (EstimateReport, Option<String>) {
    match try_estimate(args) {
        Ok(r) => r,
        Err((status, msg)) => (EstimateReport::failure(status, msg), None),
    }
}

fn try_estimate(args: &EstimateArgs) -> Result<(EstimateReport, Option<String>), (Status, String)> {
    let fail = |m: String| (Status::Error, m);
    let model = parse_model(&read(&args.model, "model").map_err(fail)?.replace('\r', "")).map_err(|e| fail(format!("{}: {e}", args.model.display())))?;
    let data = parse_dataset(&read(&args.data, "data").map_err(fail)?, &model)
        .map_err(|e| fail(format!("{}: {e}", args.data.display())))?;
    let tstar = match &args.tstar {
        None => None,
        Some(t) => Some(rat::parse(t).ok_or_else(|| fail(format!("--tstar: bad number `{t}`")))?),
    };
    let orders = match &args.orders {
        None => None,
        Some(o) => Some(
            o.split(',')
                .map(|k| k.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| fail(format!("--orders: expected comma-separated integers, got `{o}`")))?,
        ),
    };
    let bounds = match &args.bounds {
        None => Vec::new(),
        Some(b) => Bound::parse_list(b).map_err(|e| fail(e.to_string()))?,
    };
    let opts = EstimateOptions {
        tstar,
        orders,
        interp: if args.rational { InterpKind::Rational } else { InterpKind::Polynomial },
        eps: parse_eps(args.eps.as_deref()).map_err(fail)?,
        bounds,
        deadline: deadline(args.timeout),
        seed: args.seed,
    };
    let start = Instant::now();
    let est = match estimate(&model, &data, &opts) {
        Ok(e) => e,
        Err(EstimateError::TimedOut) => return Err((Status::Timeout, "time budget exhausted".into())),
        Err(e) => return Err(fail(e.to_string())),
    };
    let mut report = EstimateReport::from_estimation(&est, &model.output_names());
    report.timings.push(report::Stage {
        stage: "total".into(),
        seconds: start.elapsed().as_secs_f64(),
    });
    let dump = args.dump.map(|d| match d {
        Dump::System => est.system.system.to_string(),
        Dump::Gb => est.gb.as_ref().map_or_else(|| "# no basis\n".into(), |g| g.to_string()),
        Dump::Rur => est.rur.as_ref().map_or_else(|| "# no representation\n".into(), |r| r.to_string()),
    });
    Ok((report, dump))
}

#[derive(Clone, Debug, Default)]
pub struct SolveArgs {
    pub system: PathBuf,
    pub eps: Option<String>,
    pub timeout: Option<f64>,
    pub dump: Option<Dump>,
}

/// Solves a polynomial system given in text form.
pub fn cmd_solve(args: &SolveArgs) -> (SolveReport, Option<String>) {
    let fail = |s: Status, m: String| (SolveReport::failure(s, m), None);
    let text = match read(&args.system, "system") {
        Ok(t) => t,
        Err(m) => return fail(Status::Error, m),
    };
    let sys: PolySystem = match text.parse() {
        Ok(s) => s,
        Err(e) => return fail(Status::Error, format!("{}: {e}", args.system.display())),
    };
    let eps = match parse_eps(args.eps.as_deref()) {
        Ok(e) => e,
        Err(m) => return fail(Status::Error, m),
    };
    let start = Instant::now();
    let mut timings = Timings::default();
    let mut report = SolveReport::failure(Status::Ok, String::new());
    report.error = None;
    report.unknowns = sys.unknowns().to_vec();
    report.bezout_bound = Some((&bezout_bound(&sys)).into());
    let dump;
    match solve_system(&sys, &eps, deadline(args.timeout), &mut timings) {
        Ok(s) => {
            report.quotient_dimension = Some(s.quotient_dim);
            report.distinct_solutions = Some(s.rur.distinct_solutions);
            report.real_solutions = s.boxes.len();
            report.solutions = s
                .boxes
                .iter()
                .zip(&s.certified)
                .map(|(b, &c)| SolutionReport {
                    certified: c,
                    coordinates: sys
                        .unknowns()
                        .iter()
                        .zip(&b.coords)
                        .map(|(n, i)| report::Enclosure::new(n, i))
                        .collect(),
                })
                .collect();
            dump = args.dump.map(|d| match d {
                Dump::System => sys.to_string(),
                Dump::Gb => s.gb.to_string(),
                Dump::Rur => s.rur.to_string(),
            });
        }
        Err(SolveError::NotZeroDimensional(nzd)) => {
            report.status = Status::NotZeroDimensional;
            report.non_identifiable = Some(report::NonIdentifiable {
                dimension: nzd.dimension,
                free_variables: nzd.free_variables,
                independent_set: nzd.independent_set,
                directions: Vec::new(),
                from_probe: false,
            });
            dump = args.dump.map(|d| match d {
                Dump::Gb => buchberger(sys.equations(), &TermOrder::grevlex(sys.registry().len())).to_string(),
                _ => sys.to_string(),
            });
        }
        Err(SolveError::TimedOut) => return fail(Status::Timeout, "time budget exhausted".into()),
        Err(e) => return fail(Status::Error, e.to_string()),
    }
    report.timings = report::timings(&timings);
    report.timings.push(report::Stage {
        stage: "total".into(),
        seconds: start.elapsed().as_secs_f64(),
    });
    (report, dump)
}

/// Caps this process's address space (Linux `RLIMIT_AS`).
pub fn limit_memory(megabytes: u64) -> Result<(), String> {
    let bytes = megabytes.saturating_mul(1 << 20) as libc::rlim_t;
    let lim = libc::rlimit {
        rlim_cur: bytes,
        rlim_max: bytes,
    };
    // SAFETY: setrlimit only reads the struct we pass.
    let rc = unsafe { libc::setrlimit(libc::RLIMIT_AS, &lim) };
    if rc == 0 {
        Ok(())
    } else {
        Err(format!("setrlimit failed: {}", std::io::Error::last_os_error()))
    }
}

/// Quotient dimension of a text system, used by tests.
pub fn quotient_dimension(sys: &PolySystem) -> Option<usize> {
    let gb = buchberger(sys.equations(), &TermOrder::grevlex(sys.registry().len()));
    quotient_basis(&gb).ok().map(|q| q.dim())
}
