//! Runs every case of a corpus directory in its own process.
//!
//! A case is a subdirectory holding `model.ode`, `data.csv` and `truth.txt`,
//! plus an optional `args.txt` with extra `estimate` flags. Each case gets a
//! time and memory budget; a case that blows either is reported and the run
//! moves on.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitStatus, Stdio};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use certfit::estimate::{parse_truth, relative_error};
use certfit::model::parse_model;
use certfit::poly::rat;
use serde_json::Value;

use crate::report::{BenchReport, BenchRow, Status, SCHEMA_VERSION};

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub corpus: PathBuf,
    /// Executable providing the `estimate` subcommand.
    pub exe: PathBuf,
    pub timeout: f64,
    pub mem_limit_mb: u64,
    pub workers: usize,
}

/// Extra wall time granted past the child's own budget before it is killed.
const GRACE: Duration = Duration::from_secs(2);

pub fn cases(corpus: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(corpus)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.join("model.ode").is_file())
        .collect();
    out.sort();
    Ok(out)
}

pub fn run(opts: &BenchOptions) -> std::io::Result<BenchReport> {
    let cases = cases(&opts.corpus)?;
    let next = AtomicUsize::new(0);
    let rows = Mutex::new(Vec::with_capacity(cases.len()));
    let workers = opts.workers.clamp(1, cases.len().max(1));
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                let Some(case) = cases.get(k) else { break };
                let row = run_case(case, opts);
                rows.lock().unwrap().push(row);
            });
        }
    });
    let mut rows = rows.into_inner().unwrap();
    rows.sort_by(|a, b| a.model.cmp(&b.model));
    Ok(BenchReport {
        schema_version: SCHEMA_VERSION,
        command: "bench",
        rows,
    })
}

fn case_name(case: &Path) -> String {
    case.file_name().map_or_else(|| case.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn run_case(case: &Path, opts: &BenchOptions) -> BenchRow {
    let mut row = BenchRow {
        model: case_name(case),
        states: 0,
        params: 0,
        time_s: 0.0,
        max_rel_err_pct: None,
        status: Status::Error,
        detail: None,
    };
    match std::fs::read_to_string(case.join("model.ode")).map_err(|e| e.to_string()).and_then(|t| parse_model(&t).map_err(|e| e.to_string())) {
        Ok(m) => {
            row.states = m.states().len();
            row.params = m.params().len();
        }
        Err(e) => {
            row.detail = Some(format!("model: {e}"));
            return row;
        }
    }
    let mut cmd = Command::new(&opts.exe);
    cmd.arg("estimate")
        .arg("--model")
        .arg(case.join("model.ode"))
        .arg("--data")
        .arg(case.join("data.csv"))
        .arg("--timeout")
        .arg(opts.timeout.to_string())
        .arg("--mem-limit")
        .arg(opts.mem_limit_mb.to_string());
    if let Ok(extra) = std::fs::read_to_string(case.join("args.txt")) {
        cmd.args(extra.split_whitespace());
    }
    cmd.stdin(Stdio::null()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let start = Instant::now();
    let mut child = match cmd.spawn() {
        Ok(c) => c,
        Err(e) => {
            row.detail = Some(format!("spawn: {e}"));
            return row;
        }
    };
    let drain = |r: Option<Box<dyn Read + Send>>| {
        thread::spawn(move || {
            let mut buf = String::new();
            if let Some(mut r) = r {
                let _ = r.read_to_string(&mut buf);
            }
            buf
        })
    };
    let out = drain(child.stdout.take().map(|s| Box::new(s) as Box<dyn Read + Send>));
    let err = drain(child.stderr.take().map(|s| Box::new(s) as Box<dyn Read + Send>));
    let limit = Duration::from_secs_f64(opts.timeout.max(0.0)) + GRACE;
    let mut killed = false;
    let status = loop {
        match child.try_wait() {
            Ok(Some(s)) => break Some(s),
            Ok(None) if start.elapsed() > limit => {
                let _ = child.kill();
                killed = true;
                break child.wait().ok();
            }
            Ok(None) => thread::sleep(Duration::from_millis(10)),
            Err(_) => break None,
        }
    };
    row.time_s = start.elapsed().as_secs_f64();
    let stdout = out.join().unwrap_or_default();
    let stderr = err.join().unwrap_or_default();
    if killed {
        row.status = Status::Timeout;
        row.detail = Some("killed after exceeding the time budget".into());
        return row;
    }
    classify(&mut row, status, &stdout, &stderr, &case.join("truth.txt"));
    row
}

fn signal_of(status: &ExitStatus) -> Option<i32> {
    use std::os::unix::process::ExitStatusExt;
    status.signal()
}

fn classify(row: &mut BenchRow, status: Option<ExitStatus>, stdout: &str, stderr: &str, truth: &Path) {
    let oom_text = stderr.contains("memory allocation") || stderr.contains("out of memory");
    let Some(status) = status else {
        row.detail = Some("lost track of the child process".into());
        return;
    };
    if let Some(sig) = signal_of(&status) {
        row.status = if sig == libc::SIGABRT || sig == libc::SIGKILL || oom_text {
            Status::OutOfMemory
        } else {
            Status::Error
        };
        row.detail = Some(format!("terminated by signal {sig}"));
        return;
    }
    let json: Option<Value> = serde_json::from_str(stdout).ok();
    let code = status.code().unwrap_or(1);
    row.status = json
        .as_ref()
        .and_then(|j| j.get("status"))
        .and_then(Value::as_str)
        .and_then(parse_status)
        .or_else(|| Status::from_exit_code(code))
        .unwrap_or(Status::Error);
    if oom_text && row.status == Status::Error {
        row.status = Status::OutOfMemory;
    }
    if let Some(msg) = json.as_ref().and_then(|j| j.get("error")).and_then(Value::as_str) {
        row.detail = Some(msg.to_string());
    } else if row.status == Status::Error {
        row.detail = stderr.lines().last().map(str::to_string);
    }
    if row.status != Status::Ok {
        return;
    }
    let Some(top) = json.as_ref().and_then(|j| j.get("candidates")).and_then(|c| c.get(0)) else {
        return;
    };
    let mut est = Vec::new();
    for key in ["parameters", "states"] {
        for e in top.get(key).and_then(Value::as_array).into_iter().flatten() {
            if let (Some(n), Some(v)) = (e.get("name").and_then(Value::as_str), e.get("estimate").and_then(Value::as_f64)) {
                est.push((n.to_string(), v));
            }
        }
    }
    let truth = match std::fs::read_to_string(truth).map_err(|e| e.to_string()).and_then(|t| parse_truth(&t)) {
        Ok(t) => t.iter().map(|(k, v)| (k.clone(), rat::to_f64(v))).collect::<Vec<_>>(),
        Err(e) => {
            row.detail = Some(format!("truth: {e}"));
            return;
        }
    };
    match relative_error(&est, &truth) {
        Ok(r) => row.max_rel_err_pct = r.max_rel_pct,
        Err(e) => row.detail = Some(e.to_string()),
    }
}

fn parse_status(s: &str) -> Option<Status> {
    [
        Status::Ok,
        Status::NoEstimate,
        Status::NotZeroDimensional,
        Status::Timeout,
        Status::OutOfMemory,
        Status::Error,
    ]
    .into_iter()
    .find(|st| st.as_str() == s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_names_round_trip() {
        for code in 0..6 {
            let s = Status::from_exit_code(code).unwrap();
            assert_eq!(parse_status(s.as_str()), Some(s));
            assert_eq!(s.exit_code(), code);
        }
        assert_eq!(parse_status("bogus"), None);
    }
}
