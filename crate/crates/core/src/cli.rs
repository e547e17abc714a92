//! Curve files, the three commands and their exit-code contract.
//!
//! A `.curve` file is JSON:
//!
//! ```json
//! {"name": "triangle_cubic",
//!  "factors": [{"poly": "x"}, {"poly": "y"}, {"poly": "z"},
//!              {"poly": "x^2y+x^2z+y^2x+y^2z+z^2x+z^2y", "genus": 1}],
//!  "profile": {"n": 3, "t": 3},
//!  "options": {"k_max": 15, "field": "rational"}}
//! ```
//!
//! Exit codes: 0 success, 1 internal failure (a guaranteed bound or identity
//! failed), 2 unreadable or malformed input, 3 no stabilization, 4 profile
//! inconsistent with the computed invariants, 5 a point outside the A1/D4 scope.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{Field, LinalgError};
use crate::geometry::{curve_profile, validate_profile, Check, DeclaredProfile, GeometryError, SingularityProfile, ValidationReport};
use crate::hodge::{mixed_hodge_numbers, HodgeError, HodgeReport, Theorem2Report};
use crate::jacobian::Jacobian;
use crate::koszul::SpectralTable;
use crate::milnor::{threshold_line, HilbertFunction, MilnorError};
use crate::poly::{build_curve, CurveError, CurveSpec, FactorSpec};

/// Primes used by `--modp` when none are listed.
pub const DEFAULT_PRIMES: [u64; 3] = [1_073_741_789, 1_073_741_783, 1_073_741_741];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpecFile {
    pub name: String,
    pub factors: Vec<FactorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<DeclaredProfile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<SpecOptions>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldName {
    Rational,
    Modp,
}

impl CurveSpecFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn curve_spec(&self) -> CurveSpec {
        CurveSpec {
            factors: self.factors.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Command-line overrides of the file's options.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub format: OutputFormat,
    pub k_max: Option<usize>,
    /// `Some` selects modular arithmetic; an empty list means the defaults.
    pub modp: Option<Vec<u64>>,
    pub quiet: bool,
}

impl RunOptions {
    pub fn json() -> Self {
        RunOptions {
            format: OutputFormat::Json,
            ..Default::default()
        }
    }

    fn field(&self, spec: &CurveSpecFile) -> Field {
        let opts = spec.options.clone().unwrap_or_default();
        let listed = |p: Option<Vec<u64>>| match p {
            Some(v) if !v.is_empty() => v,
            _ => DEFAULT_PRIMES.to_vec(),
        };
        match (&self.modp, opts.field) {
            (Some(p), _) => Field::Modular(listed(Some(p.clone()))),
            (None, Some(FieldName::Modp)) => Field::Modular(listed(opts.primes)),
            _ => Field::Rational,
        }
    }

    fn k_max(&self, spec: &CurveSpecFile) -> Option<usize> {
        self.k_max.or(spec.options.as_ref().and_then(|o| o.k_max))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("input: {0}")]
    Input(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Milnor(#[from] MilnorError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Hodge(#[from] HodgeError),
    #[error("profile does not match the computed invariants")]
    Profile(ValidationReport),
    #[error("internal: {0}")]
    Internal(String),
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::Milnor(e.into())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Curve(_) => 2,
            CliError::Milnor(MilnorError::NotStable { .. }) => 3,
            CliError::Milnor(MilnorError::Linalg(_)) | CliError::Internal(_) => 1,
            CliError::Milnor(_) => 2,
            CliError::Geometry(GeometryError::HighMultiplicity { .. }) => 5,
            CliError::Geometry(_) | CliError::Hodge(_) | CliError::Profile(_) => 4,
        }
    }
}

fn field_label(field: &Field) -> String {
    match field {
        Field::Rational => "rational".into(),
        Field::Modular(p) => format!(
            "modp:{}",
            p.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        ),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertOutput {
    pub name: String,
    pub field: String,
    pub series: String,
    #[serde(flatten)]
    pub hilbert: HilbertFunction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErEntry {
    pub m: i64,
    pub dim: usize,
}

/// Everything computed for one curve file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub field: String,
    pub f: String,
    pub degree: u32,
    pub series: String,
    pub hilbert: HilbertFunction,
    pub profile: SingularityProfile,
    pub validation: ValidationReport,
    pub hodge: HodgeReport,
    pub spectral_table: SpectralTable,
    pub er: Vec<ErEntry>,
    /// Essential syzygies of the lowest degree, printed.
    pub first_syzygies: Vec<String>,
    pub theorem2: Theorem2Report,
    pub koszul_audits: Vec<Check>,
    pub all_pass: bool,
}

impl Report {
    /// Every check in the report, in order.
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.validation
            .checks
            .iter()
            .chain(&self.hodge.audits)
            .chain(&self.theorem2.identities)
            .chain(&self.koszul_audits)
    }
}

pub fn compute_hilbert(spec: &CurveSpecFile, opts: &RunOptions) -> Result<HilbertOutput, CliError> {
    let curve = build_curve(&spec.curve_spec())?;
    let field = opts.field(spec);
    let jac = Jacobian::with_field(&curve.f, field.clone())?;
    let hilbert = jac.hilbert_series(opts.k_max(spec))?;
    Ok(HilbertOutput {
        name: spec.name.clone(),
        field: field_label(&field),
        series: hilbert.series_string(),
        hilbert,
    })
}

pub fn build_report(spec: &CurveSpecFile, opts: &RunOptions) -> Result<Report, CliError> {
    let curve = build_curve(&spec.curve_spec())?;
    let field = opts.field(spec);
    let jac = Jacobian::with_field(&curve.f, field.clone())?;
    let hilbert = jac.hilbert_series(opts.k_max(spec))?;
    let profile = curve_profile(&curve, spec.profile.as_ref())?;
    let validation = validate_profile(hilbert.tau, &profile);
    if !validation.all_pass() {
        return Err(CliError::Profile(validation));
    }
    let hodge = mixed_hodge_numbers(&profile)?;
    let spectral_table = jac.spectral_table()?;
    let n = curve.degree() as i64;
    let er = (0..=2 * n - 4)
        .map(|m| Ok(ErEntry { m, dim: jac.er_dim(m)? }))
        .collect::<Result<Vec<_>, LinalgError>>()?;
    let first_syzygies = match hilbert.mdr {
        Some(m) => jac
            .syzygy_basis(m as i64)?
            .iter()
            .map(ToString::to_string)
            .collect(),
        None => Vec::new(),
    };
    let theorem2 = jac.theorem2_report(&hilbert, &profile)?;
    let koszul_audits = jac.strand_audits(&hilbert)?;
    let mut report = Report {
        name: spec.name.clone(),
        field: field_label(&field),
        f: curve.f.to_string(),
        degree: curve.degree(),
        series: hilbert.series_string(),
        hilbert,
        profile,
        validation,
        hodge,
        spectral_table,
        er,
        first_syzygies,
        theorem2,
        koszul_audits,
        all_pass: false,
    };
    report.all_pass = report.theorem2.bounds_hold() && report.checks().all(|c| c.pass);
    Ok(report)
}

/// Result of one command: what to print and how to exit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

#[derive(Serialize)]
struct ErrorOutput<'a> {
    name: &'a str,
    error: String,
    exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    validation: Option<&'a ValidationReport>,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn failure(name: &str, err: &CliError, opts: &RunOptions) -> CommandOutput {
    let code = err.exit_code();
    let validation = match err {
        CliError::Profile(v) => Some(v),
        _ => None,
    };
    let mut stderr = format!("error: {err}\n");
    if let Some(v) = validation {
        for c in v.checks.iter().filter(|c| !c.pass) {
            let _ = writeln!(stderr, "  {c}");
        }
    }
    let stdout = match opts.format {
        OutputFormat::Json if !opts.quiet => to_json(&ErrorOutput {
            name,
            error: err.to_string(),
            exit_code: code,
            validation,
        }),
        _ => String::new(),
    };
    CommandOutput {
        stdout,
        stderr,
        exit_code: code,
    }
}

fn load_or_fail(path: &Path, opts: &RunOptions) -> Result<CurveSpecFile, CommandOutput> {
    CurveSpecFile::load(path).map_err(|e| failure(&path.display().to_string(), &e, opts))
}

pub fn render_hilbert_text(h: &HilbertOutput) -> String {
    let dims: Vec<String> = h.hilbert.dims.iter().map(usize::to_string).collect();
    let mut s = format!(
        "{}\nHP(M(f))(t) = {}\ndims = {}\n{}\n",
        h.name,
        h.series,
        dims.join(","),
        threshold_line(&h.hilbert)
    );
    if h.hilbert.ct.is_none() {
        let _ = writeln!(s, "smooth: st=3N-5 bound unused, stable at 0 from degree {}", h.hilbert.st);
    }
    s
}

pub fn cmd_hilbert(path: &Path, opts: &RunOptions) -> CommandOutput {
    let spec = match load_or_fail(path, opts) {
        Ok(s) => s,
        Err(out) => return out,
    };
    match compute_hilbert(&spec, opts) {
        Ok(_) if opts.quiet => CommandOutput::default(),
        Ok(h) => CommandOutput {
            stdout: match opts.format {
                OutputFormat::Json => to_json(&h),
                OutputFormat::Text => render_hilbert_text(&h),
            },
            ..Default::default()
        },
        Err(e) => failure(&spec.name, &e, opts),
    }
}

pub fn render_report_text(r: &Report) -> String {
    let mut s = String::new();
    let p = &r.profile;
    let h = &r.hodge;
    let t2 = &r.theorem2;
    let _ = writeln!(s, "{} ({})", r.name, r.field);
    let _ = writeln!(s, "f = {}", r.f);
    let _ = writeln!(s, "N = {}, r = {}", r.degree, p.r);
    let _ = writeln!(s, "HP(M(f))(t) = {}", r.series);
    let _ = writeln!(s, "{}", threshold_line(&r.hilbert));
    let _ = writeln!(
        s,
        "profile: n={} t={} s={} t'={} sum g_j={}",
        p.n,
        p.t,
        p.s,
        p.t_prime,
        p.total_genus()
    );
    let _ = writeln!(
        s,
        "hodge: gr1={} gr2={} h21=h12={} h22={} b2={}{}",
        h.gr1,
        h.gr2,
        h.h21,
        h.h22,
        h.b2,
        if h.pure { " (pure of type (2,2))" } else { "" }
    );
    let _ = writeln!(s, "P(C) = {}", h.p_curve);
    let _ = writeln!(s, "P(U) = {}", h.p_complement);
    let e1: Vec<String> = r
        .spectral_table
        .entries
        .iter()
        .map(|e| format!("E1^{{{},{}}}={}", e.p, e.q, e.dim))
        .collect();
    let _ = writeln!(s, "{}", e1.join(" "));
    let _ = writeln!(s, "E2^{{2,1}} = {}", r.spectral_table.e2_21);
    let er: Vec<String> = r.er.iter().map(|e| e.dim.to_string()).collect();
    let _ = writeln!(s, "ER(f)_m for m = 0..{}: {}", r.er.len().saturating_sub(1), er.join(","));
    for syz in &r.first_syzygies {
        let _ = writeln!(s, "  {syz}");
    }
    let _ = writeln!(s, "part A: {}", t2.part_a);
    let _ = writeln!(s, "F^2 = P^2: {}", if t2.f2_equals_p2 { "yes" } else { "no" });
    let _ = writeln!(s, "part B: {}", t2.part_b);
    for c in r.checks() {
        let _ = writeln!(s, "[{}] {c}", if c.pass { "ok" } else { "FAIL" });
    }
    let _ = writeln!(s, "all checks: {}", if r.all_pass { "pass" } else { "FAIL" });
    s
}

pub fn report_output(spec: &CurveSpecFile, opts: &RunOptions) -> CommandOutput {
    match build_report(spec, opts) {
        Ok(r) => {
            let exit_code = if r.all_pass { 0 } else { 1 };
            let stderr = if r.all_pass {
                String::new()
            } else {
                "error: a guaranteed bound or identity failed\n".into()
            };
            let stdout = match (opts.quiet, opts.format) {
                (true, _) => String::new(),
                (false, OutputFormat::Json) => to_json(&r),
                (false, OutputFormat::Text) => render_report_text(&r),
            };
            CommandOutput {
                stdout,
                stderr,
                exit_code,
            }
        }
        Err(e) => failure(&spec.name, &e, opts),
    }
}

pub fn cmd_report(path: &Path, opts: &RunOptions) -> CommandOutput {
    match load_or_fail(path, opts) {
        Ok(spec) => report_output(&spec, opts),
        Err(out) => out,
    }
}

/// Path of the frozen JSON report next to a curve file.
pub fn expected_path(curve: &Path) -> PathBuf {
    curve.with_extension("expected.json")
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub passed: Vec<String>,
    pub failed: Vec<String>,
    pub skipped: Vec<String>,
}

/// Re-runs every `*.curve` file in `dir` and byte-compares its JSON report
/// with the frozen `*.expected.json`. With `bless`, fixtures are rewritten.
pub fn verify_corpus(dir: &Path, bless: bool) -> Result<CorpusSummary, CliError> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "curve"))
        .collect();
    files.sort();
    let mut summary = CorpusSummary::default();
    let opts = RunOptions::json();
    for file in files {
        let label = file.file_name().unwrap().to_string_lossy().into_owned();
        let actual = cmd_report(&file, &opts).stdout;
        let expected = expected_path(&file);
        if bless {
            fs::write(&expected, &actual).map_err(|e| CliError::Input(e.to_string()))?;
            summary.passed.push(label);
            continue;
        }
        match fs::read_to_string(&expected) {
            Err(_) => summary.skipped.push(label),
            Ok(want) if want == actual => summary.passed.push(label),
            Ok(_) => summary.failed.push(label),
        }
    }
    Ok(summary)
}

pub fn cmd_verify_corpus(dir: &Path, opts: &RunOptions, bless: bool) -> CommandOutput {
    let summary = match verify_corpus(dir, bless) {
        Ok(s) => s,
        Err(e) => return failure(&dir.display().to_string(), &e, opts),
    };
    let mut out = CommandOutput {
        exit_code: if summary.failed.is_empty() { 0 } else { 1 },
        ..Default::default()
    };
    let total = summary.passed.len() + summary.failed.len() + summary.skipped.len();
    if total == 0 {
        out.stderr.push_str("warning: no .curve files found\n");
    }
    for s in &summary.skipped {
        let _ = writeln!(out.stderr, "warning: {s} has no expected fixture, skipped");
    }
    if opts.quiet {
        return out;
    }
    out.stdout = match opts.format {
        OutputFormat::Json => to_json(&summary),
        OutputFormat::Text => {
            let mut s = String::new();
            for f in &summary.passed {
                let _ = writeln!(s, "{} {f}", if bless { "blessed" } else { "pass" });
            }
            for f in &summary.failed {
                let _ = writeln!(s, "FAIL {f}");
            }
            for f in &summary.skipped {
                let _ = writeln!(s, "skip {f}");
            }
            let _ = writeln!(
                s,
                "{} passed, {} failed, {} skipped",
                summary.passed.len(),
                summary.failed.len(),
                summary.skipped.len()
            );
            s
        }
    };
    out
}
