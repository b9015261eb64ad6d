//! The `numidx` command line: configuration, dispatch and report rendering.

mod args;
pub mod format;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use args::Cli;

use crate::error::{Error, Result};
use crate::index::{
    brute_force_index, certified_index_lp, conjugate_exponent, index_report, mp_constant, Certification,
    DEFAULT_RESOLUTION,
};
use crate::norm::{validate, NormDescriptor, NormSpec, Vec2};
use crate::operator::{numerical_radius, operator_norm, Isometry, Operator2x2};
use crate::suites::{run_suite, sandwich_lower, Suite, SuiteOptions, SuiteReport, DEFAULT_SEED};

/// Environment variable overriding the default grid resolution.
pub const GRID_ENV: &str = "NIDX_GRID";
/// Column names of the sweep table.
pub const SWEEP_HEADER: [&str; 9] =
    ["p", "q", "mp", "radius_i4", "bound", "condition", "exact", "brute", "sandwich_lower"];
/// Upper limit on the number of sweep rows.
pub const MAX_SWEEP_ROWS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Radius,
    Norm,
    Index,
    Mp,
    Sweep,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Bound,
    Brute,
    Certified,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

/// `start:stop:step` for the exponent `p`; `stop` is included when it lies on
/// the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SweepRange {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(Error::InvalidInput("sweep range must be finite".into()));
        }
        if !(start > 1.0) {
            return Err(Error::InvalidInput(format!("sweep start must exceed 1, got {start}")));
        }
        if !(stop > start) {
            return Err(Error::InvalidInput(format!("sweep stop {stop} must exceed start {start}")));
        }
        if !(step > 0.0) {
            return Err(Error::InvalidInput(format!("sweep step must be positive, got {step}")));
        }
        let range = Self { start, stop, step };
        if range.count() > MAX_SWEEP_ROWS {
            return Err(Error::InvalidInput(format!("sweep would produce more than {MAX_SWEEP_ROWS} rows")));
        }
        Ok(range)
    }

    fn count(&self) -> usize {
        ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    /// The exponents `start + k·step`, rounded to twelve significant digits so
    /// that `1.5:3:0.1` yields exactly `3` as its last value.
    pub fn values(&self) -> Vec<f64> {
        (0..self.count()).map(|k| format::round_sig(self.start + k as f64 * self.step)).collect()
    }
}

impl FromStr for SweepRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(Error::InvalidInput(format!("sweep range must be start:stop:step, got {s:?}")));
        };
        let num = |t: &str| {
            t.trim().parse::<f64>().map_err(|_| Error::InvalidInput(format!("bad number {t:?} in sweep range")))
        };
        Self::new(num(a)?, num(b)?, num(c)?)
    }
}

/// Everything one invocation needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Norm-spec JSON.
    pub norm_spec: Option<String>,
    /// `t11,t12,t21,t22`.
    pub operator: Option<String>,
    pub method: Method,
    pub sweep_range: Option<SweepRange>,
    /// Exponent for `mp`.
    pub exponent: Option<f64>,
    /// Suite for `verify`; all suites when absent.
    pub suite: Option<Suite>,
    pub seed: u64,
    /// Resolution of the brute-force index search.
    pub grid_resolution: usize,
    /// Defaults to CSV for sweeps and JSON otherwise.
    pub output_format: Option<OutputFormat>,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            norm_spec: None,
            operator: None,
            method: Method::All,
            sweep_range: None,
            exponent: None,
            suite: None,
            seed: DEFAULT_SEED,
            grid_resolution: DEFAULT_RESOLUTION,
            output_format: None,
            output_path: None,
        }
    }

    fn format(&self) -> OutputFormat {
        self.output_format.unwrap_or(match self.command {
            Command::Sweep => OutputFormat::Csv,
            _ => OutputFormat::Json,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    SuiteFailure = 1,
    InputError = 2,
    InternalError = 3,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

/// Result of [`run`]: the status and what goes to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
}

enum Report {
    Record(Value),
    Table(Vec<Vec<Value>>),
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Command::Radius => "radius",
            Command::Norm => "norm",
            Command::Index => "index",
            Command::Mp => "mp",
            Command::Sweep => "sweep",
            Command::Verify => "verify",
        };
        f.write_str(s)
    }
}

/// Runs one command. Output goes to `config.output_path` when set, otherwise
/// into `Outcome::stdout`.
pub fn run(config: &RunConfig) -> Outcome {
    let fail = |status, msg: String| Outcome { status, stdout: String::new(), stderr: format!("error: {msg}\n") };
    let (report, status) = match execute(config) {
        Ok(r) => r,
        Err(e @ Error::Internal(_)) => return fail(ExitStatus::InternalError, e.to_string()),
        Err(e) => return fail(ExitStatus::InputError, e.to_string()),
    };
    let body = render(config.format(), report);
    match &config.output_path {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Outcome { status, stdout: String::new(), stderr: String::new() },
            Err(e) => fail(ExitStatus::InputError, format!("cannot write {}: {e}", path.display())),
        },
        None => Outcome { status, stdout: body, stderr: String::new() },
    }
}

fn render(format: OutputFormat, report: Report) -> String {
    match report {
        Report::Record(mut v) => {
            format::round_value(&mut v);
            match format {
                OutputFormat::Json => pretty(&v),
                OutputFormat::Text => format::record_text(&v),
                OutputFormat::Csv => format::record_csv(&v),
            }
        }
        Report::Table(mut rows) => {
            rows.iter_mut().flatten().for_each(format::round_value);
            match format {
                OutputFormat::Json => pretty(&format::table_json(&SWEEP_HEADER, &rows)),
                OutputFormat::Text => format::table_text(&SWEEP_HEADER, &rows),
                OutputFormat::Csv => format::table_csv(&SWEEP_HEADER, &rows),
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn execute(config: &RunConfig) -> Result<(Report, ExitStatus)> {
    let ok = |v: Value| Ok((Report::Record(v), ExitStatus::Success));
    match config.command {
        Command::Radius => ok(radius(config)?),
        Command::Norm => ok(norm_info(config)?),
        Command::Index => ok(index(config)?),
        Command::Mp => ok(mp(config)?),
        Command::Sweep => {
            let range = config.sweep_range.ok_or_else(|| Error::InvalidInput("sweep needs --range".into()))?;
            Ok((Report::Table(sweep(&range, config.grid_resolution)?), ExitStatus::Success))
        }
        Command::Verify => {
            let (v, passed) = verify(config)?;
            Ok((Report::Record(v), if passed { ExitStatus::Success } else { ExitStatus::SuiteFailure }))
        }
    }
}

/// Parses and validates a norm spec; a failed axiom is reported by name.
pub fn load_norm(text: &str) -> Result<NormDescriptor<f64>> {
    let norm = NormSpec::parse(text)?.to_descriptor::<f64>()?;
    if let Some(v) = validate(&norm).violation {
        return Err(Error::InvalidDescriptor(format!(
            "violates {}: {} (witness {:?})",
            v.property, v.detail, v.witness
        )));
    }
    Ok(norm)
}

fn required_norm(config: &RunConfig) -> Result<NormDescriptor<f64>> {
    let text =
        config.norm_spec.as_deref().ok_or_else(|| Error::InvalidInput(format!("{} needs --norm", config.command)))?;
    load_norm(text)
}

fn to_value<S: Serialize>(s: &S) -> Value {
    serde_json::to_value(s).expect("reports serialize")
}

fn radius(config: &RunConfig) -> Result<Value> {
    let norm = required_norm(config)?;
    let text = config.operator.as_deref().ok_or_else(|| Error::InvalidInput("radius needs --op".into()))?;
    let op = Operator2x2::<f64>::parse(text)?;
    Ok(json!({
        "command": "radius",
        "norm": to_value(&NormSpec::from(&norm)),
        "operator": op.entries(),
        "numerical_radius": numerical_radius(&norm, &op),
        "operator_norm": operator_norm(&norm, &op),
    }))
}

fn norm_info(config: &RunConfig) -> Result<Value> {
    let norm = required_norm(config)?;
    let diag = Vec2::new(1.0, 1.0);
    let mut v = json!({
        "command": "norm",
        "norm": to_value(&NormSpec::from(&norm)),
        "valid": true,
        "norm_1_1": norm.norm(diag),
        "dual_norm_1_1": norm.dual_norm(diag),
        "radius_i4": numerical_radius(&norm, &Isometry::Rotation.matrix()),
    });
    if let NormDescriptor::Polyhedral(ball) = &norm {
        v["vertices"] = to_value(&ball.vertices().iter().map(|p| [p.x, p.y]).collect::<Vec<_>>());
    }
    Ok(v)
}

fn mp(config: &RunConfig) -> Result<Value> {
    let p = config.exponent.ok_or_else(|| Error::InvalidInput("mp needs --p".into()))?;
    let m = mp_constant(p)?;
    Ok(json!({ "command": "mp", "p": p, "q": conjugate_exponent(p)?, "mp": m.value, "t0": m.t0 }))
}

fn index(config: &RunConfig) -> Result<Value> {
    let norm = required_norm(config)?;
    let spec = to_value(&NormSpec::from(&norm));
    let method = config.method;
    let mut v = json!({ "command": "index", "method": method, "norm": spec });
    if matches!(method, Method::Bound | Method::All) {
        let report = index_report(&norm)?;
        for (k, val) in to_value(&report).as_object().expect("struct").iter() {
            v[k] = val.clone();
        }
    }
    if method == Method::Certified {
        let (value, route, exponent) = certified(&norm)?;
        v["value"] = json!(value);
        v["exact"] = json!(true);
        v["certified_by"] = to_value(&route);
        v["exponent_used"] = json!(exponent);
    }
    if matches!(method, Method::Brute | Method::All) {
        let est = brute_force_index(&norm, config.grid_resolution)?;
        v["brute"] = to_value(&est);
    }
    Ok(v)
}

/// A certified index, via the ℓ_p route when the exponent allows it and via
/// the contact condition otherwise.
fn certified(norm: &NormDescriptor<f64>) -> Result<(f64, Certification, Option<f64>)> {
    if let NormDescriptor::Lp(lp) = norm {
        match certified_index_lp(lp.p()) {
            Ok(c) => return Ok((c.value, Certification::LpExponent, Some(c.exponent_used))),
            Err(Error::OutOfCertification(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let report = index_report(norm)?;
    match (report.certified_index, report.certified_by) {
        (Some(value), Some(route)) => Ok((value, route, None)),
        _ => Err(Error::OutOfCertification(match norm {
            NormDescriptor::Lp(lp) => lp.p(),
            NormDescriptor::Polyhedral(_) => f64::NAN,
        })),
    }
}

/// One row per exponent, in increasing `p`.
pub fn sweep(range: &SweepRange, resolution: usize) -> Result<Vec<Vec<Value>>> {
    let rotation = Isometry::Rotation.matrix();
    range
        .values()
        .into_iter()
        .map(|p| {
            let norm = NormDescriptor::lp(p)?;
            let q = conjugate_exponent(p)?;
            let m = mp_constant(p)?.value;
            let report = index_report(&norm)?;
            let brute = brute_force_index(&norm, resolution)?.value;
            Ok(vec![
                json!(p),
                json!(q),
                json!(m),
                json!(numerical_radius(&norm, &rotation)),
                json!(report.lower_bound),
                json!(report.condition_value),
                json!(report.exact),
                json!(brute),
                json!(sandwich_lower(p, q, m)),
            ])
        })
        .collect()
}

fn verify(config: &RunConfig) -> Result<(Value, bool)> {
    let opts = SuiteOptions { seed: config.seed, resolution: config.grid_resolution, ..SuiteOptions::default() };
    let suites: Vec<Suite> = config.suite.map_or(Suite::ALL.to_vec(), |s| vec![s]);
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, &opts)).collect::<Result<_>>()?;
    let passed = reports.iter().all(SuiteReport::passed);
    let entries: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "suite": r.suite,
                "passed": r.passed(),
                "checks": r.checks,
                "failures": r.failures,
                "worst_case": r.worst.as_ref().map(|w| w.case.clone()),
                "worst_excess": r.worst.as_ref().map(|w| w.excess),
            })
        })
        .collect();
    Ok((json!({ "command": "verify", "passed": passed, "seed": config.seed, "suites": entries }), passed))
}
