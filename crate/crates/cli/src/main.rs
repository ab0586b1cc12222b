use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use certfit_cli::bench::{self, BenchOptions};
use certfit_cli::report::Status;
use certfit_cli::{cmd_estimate, cmd_solve, limit_memory, Dump, EstimateArgs, SolveArgs};

#[derive(Parser)]
#[command(name = "certfit", version, about = "Certified parameter estimation for rational ODE models", args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Interp {
    Poly,
    Rational,
}

#[derive(Subcommand)]
enum Cmd {
    /// Estimate parameters and initial values from sampled outputs.
    Estimate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        data: PathBuf,
        /// Expansion time; defaults to the first sample.
        #[arg(long)]
        tstar: Option<String>,
        /// Derivative order per output, comma separated.
        #[arg(long)]
        orders: Option<String>,
        #[arg(long, value_enum, default_value = "poly")]
        interp: Interp,
        /// Target enclosure width.
        #[arg(long)]
        eps: Option<String>,
        /// Constraints such as `k>0,c<=10`.
        #[arg(long)]
        bounds: Option<String>,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        timeout: Option<f64>,
        /// Address-space limit in megabytes.
        #[arg(long)]
        mem_limit: Option<u64>,
        /// Print an intermediate object to stderr.
        #[arg(long, value_enum)]
        dump: Option<Dump>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Solve a square polynomial system, one equation per line.
    Solve {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long)]
        mem_limit: Option<u64>,
        #[arg(long, value_enum)]
        dump: Option<Dump>,
    },
    /// Run every case of a corpus directory and print a CSV summary.
    Bench {
        /// Directory of cases.
        corpus: PathBuf,
        #[arg(long, default_value_t = 60.0)]
        timeout: f64,
        #[arg(long, default_value_t = 4096)]
        mem_limit: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn apply_mem_limit(mb: Option<u64>) {
    if let Some(mb) = mb {
        if let Err(e) = limit_memory(mb) {
            eprintln!("warning: {e}");
        }
    }
}

fn emit<T: serde::Serialize>(report: &T, dump: Option<String>, status: Status) -> ExitCode {
    if let Some(d) = dump {
        eprint!("{d}");
    }
    match serde_json::to_string_pretty(report) {
        Ok(s) => println!("{s}"),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    ExitCode::from(status.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors share the generic failure code
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match cli.command {
        Cmd::Estimate {
            model,
            data,
            tstar,
            orders,
            interp,
            eps,
            bounds,
            timeout,
            mem_limit,
            dump,
            seed,
        } => {
            apply_mem_limit(mem_limit);
            let args = EstimateArgs {
                model,
                data,
                tstar,
                orders,
                rational: matches!(interp, Interp::Rational),
                eps,
                bounds,
                timeout,
                dump,
                seed,
            };
            let (report, dump) = cmd_estimate(&args);
            let status = report.status;
            emit(&report, dump, status)
        }
        Cmd::Solve {
            system,
            eps,
            timeout,
            mem_limit,
            dump,
        } => {
            apply_mem_limit(mem_limit);
            let (report, dump) = cmd_solve(&SolveArgs {
                system,
                eps,
                timeout,
                dump,
            });
            let status = report.status;
            emit(&report, dump, status)
        }
        Cmd::Bench {
            corpus,
            timeout,
            mem_limit,
            workers,
            json,
        } => {
            let exe = match std::env::current_exe() {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let opts = BenchOptions {
                corpus,
                exe,
                timeout,
                mem_limit_mb: mem_limit,
                workers,
            };
            let report = match bench::run(&opts) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {}: {e}", opts.corpus.display());
                    return ExitCode::from(1);
                }
            };
            print!("{}", report.csv());
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report).expect("serializable");
                if let Err(e) = std::fs::write(&path, text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::SUCCESS
        }
    }
}
