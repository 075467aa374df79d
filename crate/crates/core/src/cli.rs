//! Command-line front end.
//!
//! Exit codes: 0 verified or ok, 1 a theorem check failed, 2 invalid input,
//! 3 the hypotheses of the theorems do not hold.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::oracle::default_truncation;
use crate::algebra::{truncated_quotient, Hypotheses};
use crate::error::{Error, Result};
use crate::invariants::{self, CartanMatrix};
use crate::path::ScalarAssignment;
use crate::quiver::{adjacency_quiver, Quiver};
use crate::surface::{nice_triangulation, nice_triangulation_with, parse_triangulation, MarkedSurface, Triangulation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_HYPOTHESES: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qpsurf", version, about = "Quivers with potentials from triangulated punctured surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a triangulation and report its surface and valence conditions.
    Validate(Common),
    /// Build a triangulation of the surface with the given genus and punctures.
    Construct(Common),
    /// Adjacency quiver and its structural conditions.
    Quiver(Common),
    /// Dimension from the puncture valences and from the truncated quotient.
    Dimension(Common),
    /// Cartan matrix with rank and determinant.
    Cartan(Common),
    /// Verify basis, dimension, Cartan matrix and non-rigidity.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Also verify symmetry and the center.
        #[arg(long)]
        all: bool,
        /// Seed for the random full-product symmetry trials.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify every surface with genus and punctures up to the given bounds.
    Report {
        #[arg(long, default_value_t = 2)]
        max_genus: usize,
        #[arg(long, default_value_t = 6)]
        max_punctures: usize,
        /// Seed for where extra punctures are inserted; omit for the
        /// deterministic smallest-arc choice.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Triangulation JSON, `{"triangles": [[a, b, c], ...]}`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub genus: Option<usize>,
    #[arg(long)]
    pub punctures: Option<usize>,
    /// Comma-separated nonzero rationals, one per puncture in g-orbit order.
    #[arg(long)]
    pub scalars: Option<String>,
    /// Truncation degree N of the quotient oracle.
    #[arg(long)]
    pub truncation: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// What a command produced: exit status, report on stdout (or the output
/// file), diagnostic on stderr.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub report: Option<String>,
    pub diagnostic: Option<String>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::HypothesesNotMet(_) => EXIT_HYPOTHESES,
        Error::OracleMismatch(_) => EXIT_CHECK_FAILED,
        _ => EXIT_INVALID_INPUT,
    }
}

fn load(common: &Common) -> Result<Triangulation> {
    match (&common.input, common.genus, common.punctures) {
        (Some(path), None, None) => parse_triangulation(&std::fs::read_to_string(path)?),
        (None, Some(g), Some(p)) => nice_triangulation(MarkedSurface::new(g, p)?),
        _ => Err(Error::Parse(
            "give either --input or both --genus and --punctures".into(),
        )),
    }
}

fn valid_quiver(t: &Triangulation) -> Result<Quiver> {
    let report = t.validate();
    if !report.is_valid() {
        return Err(Error::InvalidTriangulation(report.messages().join("; ")));
    }
    adjacency_quiver(t)
}

fn scalars_for(q: &Quiver, list: Option<&str>) -> Result<ScalarAssignment> {
    let c = match list {
        Some(s) => ScalarAssignment::parse(s)?,
        None => ScalarAssignment::default_for(q),
    };
    c.check_for(q)?;
    Ok(c)
}

fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut lines = Vec::new();
            flatten("", value, &mut lines);
            let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            let mut out = String::new();
            for (k, v) in lines {
                let _ = writeln!(out, "{k:<width$}  {v}");
            }
            out
        }
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionReport {
    pub formula: usize,
    pub truncation: usize,
    pub oracle: usize,
    pub per_degree: Vec<usize>,
    pub stabilized: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub surface: MarkedSurface,
    pub arcs: usize,
    pub hypotheses: Hypotheses,
    pub scalars: Vec<String>,
    pub dimension: DimensionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonrigidity: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<Value>,
    /// Absent when the hypotheses fail: nothing is verified then.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

impl VerifyReport {
    pub fn exit_code(&self) -> i32 {
        match self.verified {
            None => EXIT_HYPOTHESES,
            Some(true) => EXIT_OK,
            Some(false) => EXIT_CHECK_FAILED,
        }
    }
}

fn cartan_value(cm: &CartanMatrix, matches_oracle: Option<bool>) -> Value {
    let mut v = to_value(cm);
    v["matches_oracle"] = json!(matches_oracle);
    v["pass"] = json!(cm.pass() && matches_oracle != Some(false));
    v
}

/// The full verification pipeline for one triangulation.
pub fn verify(
    t: &Triangulation,
    scalars: Option<&str>,
    truncation: Option<usize>,
    all: bool,
    seed: u64,
) -> Result<VerifyReport> {
    let q = valid_quiver(t)?;
    let c = scalars_for(&q, scalars)?;
    let n = truncation.unwrap_or_else(|| default_truncation(&q));
    let a = truncated_quotient(&q, &c, n)?;
    let hypotheses = a.hypotheses();
    let dimension = DimensionReport {
        formula: invariants::algebra_dimension(t),
        truncation: n,
        oracle: a.dimension(),
        per_degree: a.dims_per_degree().to_vec(),
        stabilized: a.stabilized(),
    };
    let mut report = VerifyReport {
        surface: t.surface()?,
        arcs: t.arc_count(),
        hypotheses,
        scalars: c.values().iter().map(ToString::to_string).collect(),
        dimension,
        basis: None,
        cartan: None,
        nonrigidity: None,
        symmetric: None,
        symmetry: None,
        center: None,
        verified: None,
    };
    if !hypotheses.theorems_apply {
        return Ok(report);
    }
    if !a.stabilized() {
        return Err(Error::Precondition(format!(
            "no stabilization up to N = {n}; raise --truncation"
        )));
    }
    let mut ok = report.dimension.oracle == report.dimension.formula
        && report.dimension.per_degree.iter().skip(q.arrows().map(|x| q.n(x)).max().unwrap_or(0) + 1).all(|&d| d == 0);

    let jb = invariants::jacobian_basis(t, &a)?;
    ok &= jb.pass;
    let mut basis = to_value(&jb);
    basis.as_object_mut().expect("object").remove("elements");
    report.basis = Some(basis);

    let cm = invariants::cartan_matrix(t);
    let matches = invariants::cartan_vs_algebra(t, &a)?;
    ok &= cm.pass() && matches;
    report.cartan = Some(cartan_value(&cm, Some(matches)));

    let nr = invariants::nonrigidity_check(&a)?;
    ok &= nr.pass;
    report.nonrigidity = Some(to_value(&nr));

    if all {
        let cert = invariants::symmetry_check(&a, 4, &mut ChaCha8Rng::seed_from_u64(seed))?;
        ok &= cert.verdict;
        report.symmetric = Some(cert.verdict);
        let mut sym = to_value(&cert);
        let failing: Vec<Value> = cert.pairs.iter().filter(|p| !p.pass).map(to_value).collect();
        let obj = sym.as_object_mut().expect("object");
        obj.insert("pairs_checked".into(), json!(cert.pairs.len()));
        obj.insert("pairs".into(), Value::Array(failing));
        report.symmetry = Some(sym);

        let cd = invariants::center_basis(&a)?;
        ok &= cd.pass;
        let mut center = to_value(&cd);
        center.as_object_mut().expect("object").remove("basis");
        report.center = Some(center);
    }
    report.verified = Some(ok);
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchCase {
    pub genus: usize,
    pub punctures: usize,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchSummary {
    pub cases: Vec<BatchCase>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// Runs the pipeline on a nice triangulation of every triangulable surface
/// in the family; failures are recorded, not fatal.
pub fn batch_verify(family: &[(usize, usize)], seed: Option<u64>, all: bool) -> BatchSummary {
    let mut cases = Vec::new();
    for &(g, p) in family {
        let surface = match MarkedSurface::new(g, p) {
            Ok(s) if s.is_triangulable() => s,
            _ => {
                cases.push(BatchCase { genus: g, punctures: p, status: "skipped".into(), detail: None });
                continue;
            }
        };
        let t = match seed {
            None => nice_triangulation(surface),
            Some(s) => {
                let case_seed = s ^ ((g as u64) << 32) ^ p as u64;
                nice_triangulation_with(surface, &mut ChaCha8Rng::seed_from_u64(case_seed))
            }
        };
        let result = t.and_then(|t| verify(&t, None, None, all, seed.unwrap_or(0)));
        let (status, detail) = match result {
            Ok(r) if r.verified == Some(true) => ("pass", None),
            Ok(r) if r.verified.is_none() => ("hypotheses not met", r.hypotheses.failure_reason()),
            Ok(_) => ("fail", None),
            Err(e) => ("fail", Some(e.to_string())),
        };
        cases.push(BatchCase { genus: g, punctures: p, status: status.into(), detail });
    }
    let count = |s: &str| cases.iter().filter(|c| c.status == s).count();
    BatchSummary {
        passed: count("pass"),
        skipped: count("skipped"),
        failed: cases.len() - count("pass") - count("skipped"),
        cases,
    }
}

fn finish(value: Value, code: i32, diagnostic: Option<String>, format: Format, output: &Option<PathBuf>) -> Result<Outcome> {
    let text = render(&value, format);
    let report = match output {
        Some(path) => {
            std::fs::write(path, text)?;
            None
        }
        None => Some(text),
    };
    Ok(Outcome { code, report, diagnostic })
}

fn run_inner(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate(o) => {
            let t = load(o)?;
            let report = t.validate();
            let mut v = json!({ "valid": report.is_valid(), "violations": report.messages() });
            if report.is_valid() {
                v["euler"] = to_value(&t.euler_data()?);
                v["conditions"] = to_value(&t.condition_report());
                v["punctures"] = to_value(&t.puncture_cycles());
            }
            let code = if report.is_valid() { EXIT_OK } else { EXIT_INVALID_INPUT };
            let diag = (!report.is_valid()).then(|| format!("invalid triangulation: {}", report.messages().join("; ")));
            finish(v, code, diag, o.format, &o.output)
        }
        Command::Construct(o) => {
            let (Some(g), Some(p)) = (o.genus, o.punctures) else {
                return Err(Error::Parse("construct needs --genus and --punctures".into()));
            };
            let t = nice_triangulation(MarkedSurface::new(g, p)?)?;
            let v: Value = serde_json::from_str(&t.to_json()).expect("valid json");
            finish(v, EXIT_OK, None, o.format, &o.output)
        }
        Command::Quiver(o) => {
            let t = load(o)?;
            let q = valid_quiver(&t)?;
            let c = scalars_for(&q, o.scalars.as_deref())?;
            let mut v: Value = serde_json::from_str(&q.to_json()).expect("valid json");
            v["conditions"] = to_value(&q.conditions());
            v["hypotheses"] = to_value(&Hypotheses::of(&q, &c));
            finish(v, EXIT_OK, None, o.format, &o.output)
        }
        Command::Dimension(o) => {
            let t = load(o)?;
            let q = valid_quiver(&t)?;
            let c = scalars_for(&q, o.scalars.as_deref())?;
            let n = o.truncation.unwrap_or_else(|| default_truncation(&q));
            let a = truncated_quotient(&q, &c, n)?;
            let h = a.hypotheses();
            let d = DimensionReport {
                formula: invariants::algebra_dimension(&t),
                truncation: n,
                oracle: a.dimension(),
                per_degree: a.dims_per_degree().to_vec(),
                stabilized: a.stabilized(),
            };
            let v = json!({ "hypotheses": h, "dimension": d });
            let (code, diag) = match h.failure_reason() {
                Some(r) => (EXIT_HYPOTHESES, Some(format!("hypotheses not met: {r}"))),
                None if !d.stabilized => (EXIT_CHECK_FAILED, Some(format!("no stabilization up to N = {n}"))),
                None => (if d.oracle == d.formula { EXIT_OK } else { EXIT_CHECK_FAILED }, None),
            };
            finish(v, code, diag, o.format, &o.output)
        }
        Command::Cartan(o) => {
            let t = load(o)?;
            let q = valid_quiver(&t)?;
            let c = scalars_for(&q, o.scalars.as_deref())?;
            let cm = invariants::cartan_matrix(&t);
            let matches = if Hypotheses::of(&q, &c).theorems_apply {
                let n = o.truncation.unwrap_or_else(|| default_truncation(&q));
                Some(invariants::cartan_vs_algebra(&t, &truncated_quotient(&q, &c, n)?)?)
            } else {
                None
            };
            let v = cartan_value(&cm, matches);
            let code = if v["pass"] == json!(true) { EXIT_OK } else { EXIT_CHECK_FAILED };
            finish(v, code, None, o.format, &o.output)
        }
        Command::Verify { common: o, all, seed } => {
            let t = load(o)?;
            let r = verify(&t, o.scalars.as_deref(), o.truncation, *all, *seed)?;
            let diag = match r.verified {
                None => r.hypotheses.failure_reason().map(|m| format!("hypotheses not met: {m}")),
                Some(false) => Some("verification failed".into()),
                Some(true) => None,
            };
            finish(to_value(&r), r.exit_code(), diag, o.format, &o.output)
        }
        Command::Report { max_genus, max_punctures, seed, all, format, output } => {
            let family: Vec<(usize, usize)> = (0..=*max_genus)
                .flat_map(|g| (1..=*max_punctures).map(move |p| (g, p)))
                .collect();
            let s = batch_verify(&family, *seed, *all);
            let code = if s.failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED };
            finish(to_value(&s), code, None, *format, output)
        }
    }
}

/// Runs a parsed command; errors become their exit code and a diagnostic.
pub fn run(cli: &Cli) -> Outcome {
    run_inner(cli).unwrap_or_else(|e| Outcome {
        code: exit_code(&e),
        report: None,
        diagnostic: Some(e.to_string()),
    })
}

/// Parses `args` (program name first) and runs; usage errors exit with 2.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID_INPUT } else { EXIT_OK };
            let text = e.to_string();
            if code == EXIT_OK {
                Outcome { code, report: Some(text), diagnostic: None }
            } else {
                Outcome { code, report: None, diagnostic: Some(text) }
            }
        }
    }
}
