//! JSON report documents. The layout is described by
//! `docs/report.schema.json`; bump `SCHEMA_VERSION` on incompatible changes.

use certfit::estimate::{Candidate, Diagnosis, DropReason, Estimation, Outcome, Timings};
use certfit::interval::Interval;
use certfit::poly::{rat, Rat};
use certfit::prolong::BezoutBound;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    NoEstimate,
    NotZeroDimensional,
    Timeout,
    OutOfMemory,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Error => 1,
            Status::NoEstimate => 2,
            Status::NotZeroDimensional => 3,
            Status::Timeout => 4,
            Status::OutOfMemory => 5,
        }
    }

    pub fn from_exit_code(code: i32) -> Option<Status> {
        Some(match code {
            0 => Status::Ok,
            1 => Status::Error,
            2 => Status::NoEstimate,
            3 => Status::NotZeroDimensional,
            4 => Status::Timeout,
            5 => Status::OutOfMemory,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::NoEstimate => "no-estimate",
            Status::NotZeroDimensional => "not-zero-dimensional",
            Status::Timeout => "timeout",
            Status::OutOfMemory => "out-of-memory",
            Status::Error => "error",
        }
    }
}

/// Exact rational with a floating-point reading.
#[derive(Clone, Debug, Serialize)]
pub struct Number {
    pub exact: String,
    pub approx: f64,
}

impl From<&Rat> for Number {
    fn from(r: &Rat) -> Self {
        Number {
            exact: r.to_string(),
            approx: rat::to_f64(r),
        }
    }
}

/// Certified enclosure and its midpoint.
#[derive(Clone, Debug, Serialize)]
pub struct Enclosure {
    pub name: String,
    pub estimate: f64,
    pub lo: String,
    pub hi: String,
    /// Half the width.
    pub radius: f64,
}

impl Enclosure {
    pub fn new(name: &str, i: &Interval) -> Self {
        Enclosure {
            name: name.to_string(),
            estimate: rat::to_f64(&i.midpoint()),
            lo: i.lo().to_string(),
            hi: i.hi().to_string(),
            radius: rat::to_f64(&i.width()) / 2.0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub stage: String,
    pub seconds: f64,
}

pub fn timings(t: &Timings) -> Vec<Stage> {
    t.stages
        .iter()
        .map(|(s, d)| Stage {
            stage: s.to_string(),
            seconds: d.as_secs_f64(),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Bezout {
    pub value: String,
    pub factored: String,
}

impl From<&BezoutBound> for Bezout {
    fn from(b: &BezoutBound) -> Self {
        Bezout {
            value: b.value.to_string(),
            factored: b.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Weight {
    pub name: String,
    pub weight: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonIdentifiable {
    pub dimension: usize,
    /// Unknowns without a pure power among the leading monomials.
    pub free_variables: Vec<String>,
    pub independent_set: Vec<String>,
    /// Directions along which the solution set extends.
    pub directions: Vec<Vec<Weight>>,
    /// The verdict was reached on noise-free synthetic values because the
    /// data system had no solutions.
    pub from_probe: bool,
}

impl From<&Diagnosis> for NonIdentifiable {
    fn from(d: &Diagnosis) -> Self {
        NonIdentifiable {
            dimension: d.basis.dimension,
            free_variables: d.basis.free_variables.clone(),
            independent_set: d.basis.independent_set.clone(),
            directions: d
                .directions
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|(n, c)| Weight {
                            name: n.clone(),
                            weight: c.to_string(),
                        })
                        .collect()
                })
                .collect(),
            from_probe: d.from_probe,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub rank: usize,
    pub parameters: Vec<Enclosure>,
    /// State values at the expansion time.
    pub states: Vec<Enclosure>,
    pub certified: bool,
    /// Root-mean-square deviation from the data; null when the trajectory
    /// could not be simulated.
    pub rms: Option<f64>,
}

fn candidate(rank: usize, c: &Candidate) -> CandidateReport {
    CandidateReport {
        rank,
        parameters: c.params.iter().map(|(n, i)| Enclosure::new(n, i)).collect(),
        states: c
            .states
            .iter()
            .filter_map(|(n, i)| i.as_ref().map(|i| Enclosure::new(n, i)))
            .collect(),
        certified: c.certified,
        rms: c.rms,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DroppedReport {
    pub reason: &'static str,
    pub candidate: CandidateReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct OutputDerivatives {
    pub output: String,
    pub interpolation: &'static str,
    pub values: Vec<Number>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SystemReport {
    pub unknowns: Vec<String>,
    pub equations: Vec<String>,
    pub degrees: Vec<u32>,
    pub denominators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Diagnostics {
    pub bezout_bound: Bezout,
    pub quotient_dimension: Option<usize>,
    pub distinct_solutions: Option<usize>,
    pub real_solutions: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EstimateReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub status: Status,
    pub error: Option<String>,
    pub tstar: Option<Number>,
    pub orders: Vec<usize>,
    pub derivatives: Vec<OutputDerivatives>,
    pub system: Option<SystemReport>,
    pub diagnostics: Option<Diagnostics>,
    pub candidates: Vec<CandidateReport>,
    pub dropped: Vec<DroppedReport>,
    pub non_identifiable: Option<NonIdentifiable>,
    pub timings: Vec<Stage>,
}

impl EstimateReport {
    pub fn failure(status: Status, message: String) -> Self {
        EstimateReport {
            schema_version: SCHEMA_VERSION,
            command: "estimate",
            status,
            error: Some(message),
            tstar: None,
            orders: Vec::new(),
            derivatives: Vec::new(),
            system: None,
            diagnostics: None,
            candidates: Vec::new(),
            dropped: Vec::new(),
            non_identifiable: None,
            timings: Vec::new(),
        }
    }

    pub fn from_estimation(e: &Estimation, outputs: &[String]) -> Self {
        let (status, non_identifiable) = match &e.outcome {
            Outcome::Ok => (Status::Ok, None),
            Outcome::NoEstimate => (Status::NoEstimate, None),
            Outcome::NotZeroDimensional(d) => (Status::NotZeroDimensional, Some(d.into())),
        };
        let sys = &e.system.system;
        EstimateReport {
            schema_version: SCHEMA_VERSION,
            command: "estimate",
            status,
            error: None,
            tstar: Some((&e.tstar).into()),
            orders: e.orders.clone(),
            derivatives: outputs
                .iter()
                .zip(&e.derivatives)
                .zip(&e.interp)
                .map(|((o, d), k)| OutputDerivatives {
                    output: o.clone(),
                    interpolation: interp_name(*k),
                    values: d.iter().map(Number::from).collect(),
                })
                .collect(),
            system: Some(SystemReport {
                unknowns: sys.unknowns().to_vec(),
                equations: sys.equations().iter().map(|p| p.to_string()).collect(),
                degrees: sys.degrees(),
                denominators: e.system.denominators.iter().map(|p| p.to_string()).collect(),
            }),
            diagnostics: Some(Diagnostics {
                bezout_bound: (&e.bezout).into(),
                quotient_dimension: e.quotient_dim,
                distinct_solutions: e.distinct_solutions,
                real_solutions: e.real_solutions,
            }),
            candidates: e.candidates.iter().enumerate().map(|(k, c)| candidate(k + 1, c)).collect(),
            dropped: e
                .dropped
                .iter()
                .map(|(c, r)| DroppedReport {
                    reason: drop_name(*r),
                    candidate: candidate(0, c),
                })
                .collect(),
            non_identifiable,
            timings: timings(&e.timings),
        }
    }
}

fn interp_name(k: certfit::datafit::InterpKind) -> &'static str {
    match k {
        certfit::datafit::InterpKind::Polynomial => "polynomial",
        certfit::datafit::InterpKind::Rational => "rational",
    }
}

fn drop_name(r: DropReason) -> &'static str {
    r.as_str()
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionReport {
    pub certified: bool,
    pub coordinates: Vec<Enclosure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub status: Status,
    pub error: Option<String>,
    pub unknowns: Vec<String>,
    pub bezout_bound: Option<Bezout>,
    pub quotient_dimension: Option<usize>,
    pub distinct_solutions: Option<usize>,
    pub real_solutions: usize,
    pub solutions: Vec<SolutionReport>,
    pub non_identifiable: Option<NonIdentifiable>,
    pub timings: Vec<Stage>,
}

impl SolveReport {
    pub fn failure(status: Status, message: String) -> Self {
        SolveReport {
            schema_version: SCHEMA_VERSION,
            command: "solve",
            status,
            error: Some(message),
            unknowns: Vec::new(),
            bezout_bound: None,
            quotient_dimension: None,
            distinct_solutions: None,
            real_solutions: 0,
            solutions: Vec::new(),
            non_identifiable: None,
            timings: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub model: String,
    pub states: usize,
    pub params: usize,
    pub time_s: f64,
    pub max_rel_err_pct: Option<f64>,
    pub status: Status,
    pub detail: Option<String>,
}

impl BenchRow {
    pub const CSV_HEADER: &'static str = "model,states,params,time_s,max_rel_err_pct,status";

    pub fn csv_line(&self) -> String {
        let err = self.max_rel_err_pct.map_or_else(|| "n/a".to_string(), |e| format!("{e:.4}"));
        format!(
            "{},{},{},{:.3},{},{}",
            self.model,
            self.states,
            self.params,
            self.time_s,
            err,
            self.status.as_str()
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn csv(&self) -> String {
        let mut s = String::from(BenchRow::CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.csv_line());
            s.push('\n');
        }
        s
    }
}
