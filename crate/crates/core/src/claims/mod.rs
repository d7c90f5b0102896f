//! Claim manifests: a JSON list of computations with expected results, run
//! against the engines and summarized as a report.
//!
//! Each claim gets its own seed, `rng::derive(manifest seed, claim id)`, so
//! results do not depend on which other claims run or on the thread count.
//! The generator behind every seed is ChaCha8 (see [`crate::rng`]).

mod ops;

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::groebner::Limits;
use crate::par::{self, ExecMode};
use crate::polycore::Field;
use crate::rng;

pub use ops::{known_ops, OpError};

/// The built-in manifest, one claim per acceptance criterion.
pub const PAPER_CORE: &str = include_str!("../../manifests/paper-core.json");

pub const REPORT_ONLY: &str = "report-only";

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("malformed manifest: {0}")]
    Json(#[from] serde_json::Error),
    #[error("duplicate claim id `{0}`")]
    DuplicateId(String),
    #[error("unknown field `{0}`: expected a prime or `Q`")]
    Field(String),
    #[error("no built-in manifest named `{0}`")]
    UnknownBuiltin(String),
}

/// Per-claim caps. Gröbner caps abort the computation; `max_ms` is checked
/// after the claim finishes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_basis: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_ms: Option<u64>,
}

impl Caps {
    fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits { max_degree: self.max_degree.unwrap_or(d.max_degree), max_basis: self.max_basis.unwrap_or(d.max_basis) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claim {
    pub id: String,
    pub op: String,
    #[serde(default)]
    pub params: Value,
    /// The exact expected value, or the string `"report-only"`.
    pub expected: Value,
    /// Makes the claim informational while keeping `expected` as a recorded
    /// expectation.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub report_only: bool,
    #[serde(default)]
    pub anchor: String,
    #[serde(default)]
    pub caps: Caps,
}

impl Claim {
    pub fn is_report_only(&self) -> bool {
        self.report_only || self.expected == Value::String(REPORT_ONLY.into())
    }
}

fn default_field() -> String {
    "32003".into()
}

fn default_seed() -> u64 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimManifest {
    #[serde(default)]
    pub name: String,
    /// A prime such as `"32003"`, or `"Q"`.
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Default sample count for claims that do not fix one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub claims: Vec<Claim>,
}

impl FromStr for ClaimManifest {
    type Err = ManifestError;
    fn from_str(s: &str) -> Result<Self, ManifestError> {
        let m: ClaimManifest = serde_json::from_str(s)?;
        m.validate()?;
        Ok(m)
    }
}

impl ClaimManifest {
    pub fn builtin(name: &str) -> Result<Self, ManifestError> {
        match name {
            "paper-core" => PAPER_CORE.parse(),
            _ => Err(ManifestError::UnknownBuiltin(name.into())),
        }
    }

    pub fn validate(&self) -> Result<(), ManifestError> {
        parse_field(&self.field)?;
        let mut seen = HashSet::new();
        for c in &self.claims {
            if !seen.insert(c.id.as_str()) {
                return Err(ManifestError::DuplicateId(c.id.clone()));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Result<Field, ManifestError> {
        parse_field(&self.field)
    }

    /// Keeps only the listed claim ids, in manifest order.
    pub fn select(&mut self, ids: &[String]) {
        self.claims.retain(|c| ids.iter().any(|i| i == &c.id));
    }
}

/// `"Q"` or a prime, with `"p"` standing for the default prime.
pub fn parse_field(s: &str) -> Result<Field, ManifestError> {
    match s.trim() {
        "Q" | "q" | "0" => Ok(Field::Rational),
        "p" => Ok(Field::default()),
        t => t.parse::<u32>().ok().and_then(|p| Field::prime(p).ok()).ok_or_else(|| ManifestError::Field(s.into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Limit,
    ReportOnly,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Limit => "limit",
            Status::ReportOnly => REPORT_ONLY,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub id: String,
    pub op: String,
    pub status: Status,
    pub expected: Value,
    pub computed: Value,
    /// Values reported alongside `computed` but not compared.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: u64,
    pub seed: u64,
    pub anchor: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub limit: usize,
    pub report_only: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub manifest: String,
    pub field: String,
    pub seed: u64,
    pub summary: Summary,
    pub claims: Vec<ClaimReport>,
}

impl RunReport {
    /// 0 when nothing failed, 1 on any failure, 3 when limits were hit and
    /// `strict_limits` is set.
    pub fn exit_code(&self, strict_limits: bool) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if strict_limits && self.summary.limit > 0 {
            3
        } else {
            0
        }
    }
}

/// Shared settings for one run.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub field: Field,
    pub seed: u64,
    pub samples: usize,
    pub jobs: usize,
}

impl RunConfig {
    pub fn from_manifest(m: &ClaimManifest) -> Result<Self, ManifestError> {
        Ok(RunConfig { field: m.field()?, seed: m.seed, samples: m.samples.unwrap_or(100), jobs: 0 })
    }
}

fn run_claim(claim: &Claim, cfg: &RunConfig) -> ClaimReport {
    let seed = rng::derive(cfg.seed, &claim.id);
    let ctx = ops::Ctx { field: cfg.field, seed, samples: cfg.samples, limits: claim.caps.limits() };
    let start = Instant::now();
    let result = ops::dispatch(&claim.op, &claim.params, &ctx);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let mut report = ClaimReport {
        id: claim.id.clone(),
        op: claim.op.clone(),
        status: Status::Fail,
        expected: claim.expected.clone(),
        computed: Value::Null,
        detail: None,
        error: None,
        elapsed_ms,
        seed,
        anchor: claim.anchor.clone(),
    };
    match result {
        Ok(out) => {
            report.status = if claim.is_report_only() {
                Status::ReportOnly
            } else if out.computed == claim.expected {
                Status::Pass
            } else {
                Status::Fail
            };
            report.computed = out.computed;
            report.detail = out.detail;
            if claim.caps.max_ms.is_some_and(|ms| elapsed_ms > ms) {
                report.status = Status::Limit;
                report.error = Some(format!("took {elapsed_ms} ms, cap {} ms", claim.caps.max_ms.unwrap_or(0)));
            }
        }
        Err(e) => {
            report.status = if matches!(e, OpError::Limit(_)) { Status::Limit } else { Status::Fail };
            report.error = Some(e.to_string());
        }
    }
    report
}

/// Runs every claim on a pool of `cfg.jobs` threads; the reports come back
/// in manifest order.
pub fn run_manifest(manifest: &ClaimManifest, cfg: &RunConfig) -> RunReport {
    let claims =
        par::with_jobs(cfg.jobs, || par::map_slice(&manifest.claims, ExecMode::Parallel, |c| run_claim(c, cfg)));
    let mut summary = Summary::default();
    for r in &claims {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Limit => summary.limit += 1,
            Status::ReportOnly => summary.report_only += 1,
        }
    }
    RunReport { manifest: manifest.name.clone(), field: cfg.field.to_string(), seed: cfg.seed, summary, claims }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (text or json)")),
        }
    }
}

const VALUE_WIDTH: usize = 48;

fn clip(s: &str, width: usize) -> String {
    if s.chars().count() <= width {
        return s.to_string();
    }
    let mut out: String = s.chars().take(width - 3).collect();
    out.push_str("...");
    out
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}

fn render_text(report: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "manifest {}  field {}  seed {}", report.manifest, report.field, report.seed);
    let _ = writeln!(out, "{:<6} {:<6} {:>8}  {:<w$}  EXPECTED", "ID", "STATUS", "MS", "COMPUTED", w = VALUE_WIDTH);
    for r in &report.claims {
        let mark = match r.status {
            Status::ReportOnly => "",
            s => s.as_str(),
        };
        let computed = match &r.error {
            Some(e) => format!("error: {e}"),
            None => compact(&r.computed),
        };
        let expected = if r.status == Status::ReportOnly { String::new() } else { compact(&r.expected) };
        let line = format!(
            "{:<6} {:<6} {:>8}  {:<w$}  {}",
            r.id,
            mark,
            r.elapsed_ms,
            clip(&computed, VALUE_WIDTH),
            clip(&expected, VALUE_WIDTH),
            w = VALUE_WIDTH
        );
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let s = report.summary;
    let _ = write!(out, "{} pass / {} fail / {} limit", s.pass, s.fail, s.limit);
    if s.report_only > 0 {
        let _ = write!(out, " ({} report-only)", s.report_only);
    }
    out.push('\n');
    out
}

/// Writes the report to `out`, or to standard output when `out` is `None`.
pub fn emit_report(report: &RunReport, format: Format, out: Option<&Path>) -> io::Result<()> {
    let text = render(report, format);
    match out {
        Some(path) => std::fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}
