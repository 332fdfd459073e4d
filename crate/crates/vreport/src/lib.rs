//! Verification reports and run configuration.
//!
//! Every batch command in this workspace produces a [`VerificationReport`]: a
//! list of named checks, each carrying the measured value, the budget it was
//! compared against, and a verdict. Reports serialize to JSON (canonical,
//! deterministic) and to CSV (one row per check).
//!
//! Determinism contract: for a fixed command, configuration, seed and thread
//! count, the default JSON emission is byte-identical across runs. Wall-clock
//! time is therefore kept out of the default document; callers that want it
//! embedded (for archival rather than comparison) pass
//! [`Timing::Include`] to [`emit_json`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// One verified quantity inside a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    /// Stable identifier, e.g. `"transfer/p=2/m=11/M=4/z=3"`.
    pub id: String,
    /// Measured value as a decimal string. Floats use the shortest
    /// round-trip form; exact integers and rationals keep all digits.
    pub measured: String,
    /// Budget the measurement was compared against (tolerance, exact bound,
    /// or expected value), same formatting rules as `measured`.
    pub budget: String,
    /// How `measured` relates to `budget` for this check.
    pub kind: CheckKind,
    pub pass: bool,
    /// Optional context: route names, skip reasons, fit windows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Comparison semantics of a check entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// measured must be `<=` budget (numeric).
    ResidualLe,
    /// measured must equal budget exactly (string comparison of exact values).
    ExactEq,
    /// measured is reported for context; pass is decided by the caller
    /// (trend fits, monotonicity over a family of entries).
    Property,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub command: String,
    /// Effective parameters, as decimal/verbatim strings keyed by name.
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub threads: u32,
    pub checks: Vec<CheckEntry>,
    /// True iff every check passed.
    pub pass: bool,
    /// Wall-clock milliseconds. Excluded from the default JSON document so
    /// that emission stays deterministic; see module docs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(command: impl Into<String>, seed: u64, threads: u32) -> Self {
        VerificationReport {
            command: command.into(),
            params: BTreeMap::new(),
            seed,
            threads,
            checks: Vec::new(),
            pass: true,
            wall_ms: None,
        }
    }

    pub fn param(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    /// Push a residual-style check: pass iff `measured <= budget`.
    pub fn check_residual(&mut self, id: impl Into<String>, measured: f64, budget: f64) {
        let pass = measured.is_finite() && measured <= budget;
        self.push(CheckEntry {
            id: id.into(),
            measured: fmt_float(measured),
            budget: fmt_float(budget),
            kind: CheckKind::ResidualLe,
            pass,
            detail: None,
        });
    }

    /// Push an exact-equality check on already-formatted exact values.
    pub fn check_exact(&mut self, id: impl Into<String>, measured: impl Into<String>, budget: impl Into<String>) {
        let measured = measured.into();
        let budget = budget.into();
        let pass = measured == budget;
        self.push(CheckEntry {
            id: id.into(),
            measured,
            budget,
            kind: CheckKind::ExactEq,
            pass,
            detail: None,
        });
    }

    /// Push a property check whose verdict the caller already decided.
    pub fn check_property(
        &mut self,
        id: impl Into<String>,
        measured: impl Into<String>,
        budget: impl Into<String>,
        pass: bool,
        detail: impl Into<String>,
    ) {
        self.push(CheckEntry {
            id: id.into(),
            measured: measured.into(),
            budget: budget.into(),
            kind: CheckKind::Property,
            pass,
            detail: Some(detail.into()),
        });
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.pass = self.pass && entry.pass;
        self.checks.push(entry);
    }

    /// Merge another report's checks under a `prefix/` namespace.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut entry in other.checks {
            entry.id = format!("{prefix}/{}", entry.id);
            self.push(entry);
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.kind == CheckKind::ResidualLe)
            .filter_map(|c| c.measured.parse::<f64>().ok())
            .fold(0.0, f64::max)
    }
}

/// Whether wall-clock timing is embedded in the serialized document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Timing {
    Include,
    /// Default: strip timing so identical runs emit identical bytes.
    Strip,
}

/// Canonical JSON emission. With [`Timing::Strip`] the output is a pure
/// function of the report content minus `wall_ms`.
pub fn emit_json(report: &VerificationReport, timing: Timing) -> String {
    let mut doc = report.clone();
    if timing == Timing::Strip {
        doc.wall_ms = None;
    }
    let mut out = serde_json::to_string_pretty(&doc).expect("report serialization cannot fail");
    out.push('\n');
    out
}

pub fn parse_json(text: &str) -> Result<VerificationReport, ReportError> {
    Ok(serde_json::from_str(text)?)
}

/// CSV emission: header plus one row per check. Params are not flattened
/// into rows; they are recoverable from the JSON form.
pub fn emit_csv(report: &VerificationReport) -> Result<String, ReportError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["command", "check_id", "kind", "measured", "budget", "pass", "detail"])?;
    for c in &report.checks {
        let kind = match c.kind {
            CheckKind::ResidualLe => "residual_le",
            CheckKind::ExactEq => "exact_eq",
            CheckKind::Property => "property",
        };
        w.write_record([
            report.command.as_str(),
            c.id.as_str(),
            kind,
            c.measured.as_str(),
            c.budget.as_str(),
            if c.pass { "true" } else { "false" },
            c.detail.as_deref().unwrap_or(""),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| ReportError::Csv(e.error().to_string()))?;
    String::from_utf8(bytes).map_err(|e| ReportError::Csv(e.to_string()))
}

/// Shortest round-trip decimal form, `inf`/`nan` spelled out.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{x:e}")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(String),
}

impl From<csv::Error> for ReportError {
    fn from(e: csv::Error) -> Self {
        ReportError::Csv(e.to_string())
    }
}

/// Run-wide configuration shared by the CLI and the batch commands.
///
/// The file format accepted by [`RunConfig::merge_file_text`] is plain
/// `key = value` lines; `#` starts a comment. List-valued keys take
/// comma-separated entries. Unknown keys are an error so that typos in a
/// config file cannot silently change a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Weights for the exact eigenform checks.
    pub weights: Vec<u32>,
    /// Primes for Hecke-side checks.
    pub primes: Vec<u32>,
    /// Lattice truncation for coprime sums.
    pub cutoff_b: u32,
    /// Series truncation for exact q-expansions.
    pub trunc_n: usize,
    /// Override tolerance; `None` keeps each command's documented default.
    pub tol: Option<f64>,
    pub seed: u64,
    pub threads: u32,
    pub format: OutputFormat,
    pub out: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            weights: vec![12, 16, 18, 20, 22, 26],
            primes: vec![2, 3],
            cutoff_b: 200,
            trunc_n: 512,
            tol: None,
            seed: 1,
            threads: 1,
            format: OutputFormat::Json,
            out: None,
        }
    }
}

impl RunConfig {
    /// Apply `key = value` lines on top of `self`.
    pub fn merge_file_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::at(lineno, "expected `key = value`"))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| ConfigError::at(lineno, &e.message))?;
        }
        Ok(())
    }

    /// Set a single configuration key from its string form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        fn list<T: std::str::FromStr>(value: &str) -> Result<Vec<T>, ConfigError> {
            value
                .split(',')
                .map(|s| s.trim().parse::<T>().map_err(|_| ConfigError::new("bad list entry")))
                .collect()
        }
        match key {
            "weight" | "weights" => self.weights = list(value)?,
            "prime" | "primes" => self.primes = list(value)?,
            "cutoff" => self.cutoff_b = value.parse().map_err(|_| ConfigError::new("bad cutoff"))?,
            "trunc" => self.trunc_n = value.parse().map_err(|_| ConfigError::new("bad trunc"))?,
            "tol" => {
                let t: f64 = value.parse().map_err(|_| ConfigError::new("bad tol"))?;
                if t.is_nan() || t <= 0.0 {
                    return Err(ConfigError::new("tol must be positive"));
                }
                self.tol = Some(t);
            }
            "seed" => self.seed = value.parse().map_err(|_| ConfigError::new("bad seed"))?,
            "threads" => {
                let t: u32 = value.parse().map_err(|_| ConfigError::new("bad threads"))?;
                if t == 0 {
                    return Err(ConfigError::new("threads must be >= 1"));
                }
                self.threads = t;
            }
            "format" => {
                self.format = match value {
                    "json" => OutputFormat::Json,
                    "csv" => OutputFormat::Csv,
                    _ => return Err(ConfigError::new("format must be json or csv")),
                }
            }
            "out" => self.out = Some(value.to_string()),
            _ => return Err(ConfigError::new(&format!("unknown key `{key}`"))),
        }
        Ok(())
    }
}

#[derive(Debug, Clone, thiserror::Error)]
#[error("config: {message}")]
pub struct ConfigError {
    pub message: String,
}

impl ConfigError {
    fn new(message: &str) -> Self {
        ConfigError { message: message.to_string() }
    }
    fn at(lineno: usize, message: &str) -> Self {
        ConfigError { message: format!("line {}: {message}", lineno + 1) }
    }
}
