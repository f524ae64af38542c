//! The `qprep` command line.
//!
//! Every command prints a JSON report `{"manifest": …, "report": …}` to
//! stdout (or a flat text rendering with `--format text`). Commands that
//! produce an artifact (frame, dual, vector, certificate) write it to
//! `--out` when given and embed it in the report otherwise.
//!
//! Exit codes: 0 success, 1 I/O or parse error, 2 domain-invariant failure,
//! 3 numerical non-decision.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::coexistence::{
    coexist_feasibility, combine_coexistent, theorem5_experiment, triple_witness, CertificateJson,
    CoexistenceCertificate, DykstraConfig, Status, CERTIFICATE_TOL,
};
use crate::error::Error;
use crate::frame::{operators_from_json, DualFrameJson, Frame, FrameJson};
use crate::operator::{basis_vector, Effect, HermitianOperator, MatrixJson, DEFAULT_TOL};
use crate::random;
use crate::representation::{QPRepresentation, QuasiProbVector, VectorJson, VectorKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

/// Environment variable capping operator dimension on ingestion.
pub const MAX_DIM_ENV: &str = "QPREP_MAX_DIM";
const DEFAULT_MAX_DIM: usize = 64;

#[derive(Debug, Parser)]
#[command(
    name = "qprep",
    version,
    about = "Operator frames, quasi-probability representations and coexistence of effects"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Numerical tolerance: boundary tests (default 1e-10), or the
    /// feasibility tolerance for `coexist pair` (default 1e-8).
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Where to write the artifact produced by the command.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PivotRule {
    Bland,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build, validate and dualize frames.
    #[command(subcommand)]
    Frame(FrameCmd),
    /// Apply the maps of a quasi-probability representation.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Decide and construct coexistence of effects.
    #[command(subcommand)]
    Coexist(CoexistCmd),
    /// Reproducible numerical experiments.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
}

#[derive(Debug, Subcommand)]
pub enum FrameCmd {
    /// Random basis of positive operators summing to I.
    BuildRandom {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Dyadic POVM from a list of effects (`{"dim", "elements"}` file).
    BuildTheorem1 {
        #[arg(long)]
        effects: PathBuf,
    },
    /// The four-element tetrahedral qubit POVM.
    BuildTetrahedral,
    Validate {
        #[arg(long)]
        frame: PathBuf,
    },
    Dual {
        #[arg(long)]
        frame: PathBuf,
    },
    Completeness {
        #[arg(long)]
        frame: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct RepArgs {
    #[arg(long)]
    pub frame: PathBuf,
    /// Dual frame file; computed from the frame when omitted.
    #[arg(long)]
    pub dual: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum RepCmd {
    MapState {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long)]
        op: PathBuf,
    },
    MapEffect {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long)]
        op: PathBuf,
    },
    /// Prints tr(VA), ⟨TV, SA⟩ and the residual; uses a random state/effect
    /// pair drawn from `--seed` unless both files are given.
    Reconstruct {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, requires = "effect")]
        state: Option<PathBuf>,
        #[arg(long, requires = "state")]
        effect: Option<PathBuf>,
        #[arg(long, required_unless_present = "state")]
        seed: Option<u64>,
    },
    Adjoint {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long)]
        vector: PathBuf,
    },
    Invert {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long)]
        vector: PathBuf,
    },
    Negativity {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum CoexistCmd {
    /// Decide coexistence of two effects by Dykstra's algorithm.
    Pair {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long, default_value_t = 20_000)]
        max_iter: usize,
    },
    /// Certificate for convex combinations from per-pair certificates.
    Combine {
        #[arg(long)]
        certs: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        beta: Vec<f64>,
    },
    /// Re-validate a certificate file.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// The pairwise-but-not-jointly coexistent triple on the standard basis.
    Triple {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 20_000)]
        max_iter: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCmd {
    /// Minimax approximation of P_φ and P_χ by a positive frame.
    Theorem5 {
        #[arg(long)]
        frame: PathBuf,
    },
}

/// Configuration recorded in every manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub tol: f64,
    pub dykstra_max_iter: usize,
    pub lp_pivot_rule: PivotRule,
    pub output_format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentManifest {
    pub command: String,
    pub config: RunConfig,
    pub input_hashes: Vec<String>,
    pub artifact_version: String,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Io(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io(_) => EXIT_IO,
            Self::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Domain(e.to_string())
    }
}

/// Hex SHA-256 digest of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

struct Context {
    tol: f64,
    explicit_tol: Option<f64>,
    out: Option<PathBuf>,
    max_dim: usize,
    inputs: Vec<String>,
    seed: Option<u64>,
    max_iter: usize,
}

impl Context {
    fn read(&mut self, path: &Path) -> Result<Vec<u8>, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        self.inputs.push(sha256_hex(&bytes));
        Ok(bytes)
    }

    fn parse<T: for<'de> Deserialize<'de>>(&mut self, path: &Path) -> Result<(T, Vec<u8>), CliError> {
        let bytes = self.read(path)?;
        let value = serde_json::from_slice(&bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Ok((value, bytes))
    }

    fn check_dim(&self, dim: usize) -> Result<(), CliError> {
        if dim > self.max_dim {
            return Err(CliError::Domain(format!("dimension {dim} exceeds {MAX_DIM_ENV}={}", self.max_dim)));
        }
        Ok(())
    }

    fn load_frame(&mut self, path: &Path) -> Result<(Frame, Vec<u8>), CliError> {
        let (json, bytes): (FrameJson, _) = self.parse(path)?;
        self.check_dim(json.dim)?;
        Ok((Frame::from_json(&json)?, bytes))
    }

    fn load_operator(&mut self, path: &Path) -> Result<HermitianOperator, CliError> {
        let (json, _): (MatrixJson, _) = self.parse(path)?;
        self.check_dim(json.dim)?;
        Ok(HermitianOperator::from_json(&json)?)
    }

    fn load_rep(&mut self, args: &RepArgs) -> Result<QPRepresentation, CliError> {
        let (frame, bytes) = self.load_frame(&args.frame)?;
        match &args.dual {
            None => Ok(QPRepresentation::new(frame)?),
            Some(path) => {
                let (json, _): (DualFrameJson, _) = self.parse(path)?;
                let expected = sha256_hex(&bytes);
                if json.parent_hash != expected {
                    return Err(CliError::Domain(format!(
                        "dual frame belongs to parent {} but frame file hashes to {expected}",
                        json.parent_hash
                    )));
                }
                if json.dim != frame.dim() {
                    return Err(Error::DimensionMismatch(frame.dim(), json.dim).into());
                }
                let elements = operators_from_json(json.dim, &json.elements)?;
                Ok(QPRepresentation::with_dual(frame, elements)?)
            }
        }
    }

    fn load_vector(&mut self, path: &Path) -> Result<QuasiProbVector, CliError> {
        let (json, _): (VectorJson, _) = self.parse(path)?;
        Ok(QuasiProbVector::from_json(&json)?)
    }
}

/// Result of a successful command.
struct Outcome {
    report: Value,
    artifact: Option<String>,
    exit: i32,
}

impl Outcome {
    fn report(report: impl Serialize) -> Self {
        Self { report: to_value(report), artifact: None, exit: EXIT_OK }
    }

    fn with_artifact(mut self, artifact: impl Serialize) -> Self {
        self.artifact = Some(to_json_string(&artifact));
        self
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Pretty JSON with a trailing newline; floats use shortest round-trip form.
pub fn to_json_string(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Parses arguments and runs one command, writing to the given streams.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_IO } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    let max_dim = std::env::var(MAX_DIM_ENV).ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MAX_DIM);
    match execute(&cli, max_dim, stdout) {
        Ok(code) => code,
        Err(e) => {
            let (kind, msg) = match &e {
                CliError::Io(m) => ("error", m),
                CliError::Domain(m) => ("invariant violation", m),
            };
            let _ = writeln!(stderr, "{kind}: {msg}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, max_dim: usize, stdout: &mut dyn Write) -> Result<i32, CliError> {
    if cli.tol.is_some_and(|t| !(t > 0.0)) {
        return Err(CliError::Domain("--tol must be positive".into()));
    }
    let mut ctx = Context {
        tol: cli.tol.unwrap_or(DEFAULT_TOL),
        explicit_tol: cli.tol,
        out: cli.out.clone(),
        max_dim,
        inputs: Vec::new(),
        seed: None,
        max_iter: DykstraConfig::default().max_iter,
    };
    let (name, outcome) = match &cli.command {
        Command::Frame(c) => frame_cmd(&mut ctx, c)?,
        Command::Rep(c) => rep_cmd(&mut ctx, c)?,
        Command::Coexist(c) => coexist_cmd(&mut ctx, c)?,
        Command::Experiment(c) => experiment_cmd(&mut ctx, c)?,
    };

    let manifest = ExperimentManifest {
        command: name,
        config: RunConfig {
            seed: ctx.seed,
            tol: ctx.tol,
            dykstra_max_iter: ctx.max_iter,
            lp_pivot_rule: PivotRule::Bland,
            output_format: cli.format,
        },
        input_hashes: ctx.inputs.clone(),
        artifact_version: env!("CARGO_PKG_VERSION").to_owned(),
    };

    let mut report = outcome.report;
    if let Some(artifact) = &outcome.artifact {
        match &ctx.out {
            Some(path) => {
                std::fs::write(path, artifact).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                if let Value::Object(map) = &mut report {
                    map.insert("artifact_path".into(), Value::String(path.display().to_string()));
                    map.insert("artifact_sha256".into(), Value::String(sha256_hex(artifact.as_bytes())));
                }
            }
            None => {
                if let Value::Object(map) = &mut report {
                    let parsed: Value = serde_json::from_str(artifact).expect("artifact is JSON");
                    map.insert("artifact".into(), parsed);
                }
            }
        }
    }

    let doc = json!({ "manifest": manifest, "report": report });
    let text = match cli.format {
        OutputFormat::Json => to_json_string(&doc),
        OutputFormat::Text => render_text(&doc),
    };
    stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(outcome.exit)
}

fn frame_cmd(ctx: &mut Context, cmd: &FrameCmd) -> Result<(String, Outcome), CliError> {
    Ok(match cmd {
        FrameCmd::BuildRandom { dim, seed } => {
            ctx.check_dim(*dim)?;
            ctx.seed = Some(*seed);
            let frame = Frame::random_positive_basis(*dim, *seed)?;
            ("frame build-random".into(), frame_summary(&frame).with_artifact(frame.to_json()))
        }
        FrameCmd::BuildTheorem1 { effects } => {
            let (json, _): (FrameJson, _) = ctx.parse(effects)?;
            ctx.check_dim(json.dim)?;
            let ops = operators_from_json(json.dim, &json.elements)?;
            let effects: Vec<Effect> = ops.into_iter().map(|op| Effect::new(op, ctx.tol)).collect::<Result<_, _>>()?;
            let frame = Frame::dyadic_from_effects(&effects, json.dim)?;
            ("frame build-theorem1".into(), frame_summary(&frame).with_artifact(frame.to_json()))
        }
        FrameCmd::BuildTetrahedral => {
            let frame = Frame::tetrahedral();
            ("frame build-tetrahedral".into(), frame_summary(&frame).with_artifact(frame.to_json()))
        }
        FrameCmd::Validate { frame } => {
            let (frame, _) = ctx.load_frame(frame)?;
            ("frame validate".into(), frame_summary(&frame))
        }
        FrameCmd::Dual { frame } => {
            let (frame, bytes) = ctx.load_frame(frame)?;
            let dual = frame.dual()?;
            let report = json!({
                "dim": frame.dim(),
                "len": dual.len(),
                "biorthogonality_residual": dual.biorthogonality_residual(&frame)?,
                "trace_residual": dual.trace_residual(),
                "gram_condition_number": dual.condition_number(),
            });
            let artifact = dual.to_json(&sha256_hex(&bytes));
            ("frame dual".into(), Outcome::report(report).with_artifact(artifact))
        }
        FrameCmd::Completeness { frame } => {
            let (frame, _) = ctx.load_frame(frame)?;
            ("frame completeness".into(), Outcome::report(frame.completeness()))
        }
    })
}

fn frame_summary(frame: &Frame) -> Outcome {
    Outcome::report(json!({
        "dim": frame.dim(),
        "len": frame.len(),
        "positive": frame.is_positive(),
        "normalization_residual": frame.normalization_residual(),
        "completeness": frame.completeness(),
    }))
}

fn rep_cmd(ctx: &mut Context, cmd: &RepCmd) -> Result<(String, Outcome), CliError> {
    Ok(match cmd {
        RepCmd::MapState { rep, op } => {
            let rep = ctx.load_rep(rep)?;
            let v = ctx.load_operator(op)?;
            let p = rep.t_map(&v)?;
            let report = json!({ "values": p.values(), "total": p.total(), "trace": v.trace() });
            ("rep map-state".into(), Outcome::report(report).with_artifact(p.to_json()))
        }
        RepCmd::MapEffect { rep, op } => {
            let rep = ctx.load_rep(rep)?;
            let a = ctx.load_operator(op)?;
            let q = rep.s_map(&a)?;
            let report = json!({ "values": q.values() });
            ("rep map-effect".into(), Outcome::report(report).with_artifact(q.to_json()))
        }
        RepCmd::Reconstruct { rep, state, effect, seed } => {
            let rep = ctx.load_rep(rep)?;
            let (v, a) = match (state, effect) {
                (Some(s), Some(e)) => (ctx.load_operator(s)?, ctx.load_operator(e)?),
                _ => {
                    let seed = seed.expect("clap requires --seed without files");
                    ctx.seed = Some(seed);
                    let w = random::random_state(rep.dim(), rep.dim(), seed)?;
                    let a = random::random_effect(rep.dim(), seed.wrapping_add(1))?;
                    (w.into_op(), a.into_op())
                }
            };
            let r = rep.reconstruct(&v, &a)?;
            ("rep reconstruct".into(), Outcome::report(r))
        }
        RepCmd::Adjoint { rep, vector } => {
            let rep = ctx.load_rep(rep)?;
            let a = ctx.load_vector(vector)?;
            let op = rep.t_adjoint(a.values())?;
            ("rep adjoint".into(), Outcome::report(json!({ "trace": op.trace() })).with_artifact(op.to_json()))
        }
        RepCmd::Invert { rep, vector } => {
            let rep = ctx.load_rep(rep)?;
            let p = ctx.load_vector(vector)?;
            if p.kind() != VectorKind::StateImage {
                return Err(CliError::Domain("invert expects a state_image vector".into()));
            }
            let op = rep.inverse_t(p.values())?;
            let back = rep.t_map(&op)?;
            let residual = back.values().iter().zip(p.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            let report = json!({ "trace": op.trace(), "round_trip_residual": residual });
            ("rep invert".into(), Outcome::report(report).with_artifact(op.to_json()))
        }
        RepCmd::Negativity { rep, trials, seed } => {
            let rep = ctx.load_rep(rep)?;
            ctx.seed = Some(*seed);
            let report = rep.negativity_report(*trials, *seed)?;
            ("rep negativity".into(), Outcome::report(report))
        }
    })
}

/// `{"certificates": [[<certificate> | null, ...], ...]}` indexed `[i][j]`
/// for the pair `(F_i, G_j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateTableJson {
    pub certificates: Vec<Vec<Option<CertificateJson>>>,
}

fn coexist_cmd(ctx: &mut Context, cmd: &CoexistCmd) -> Result<(String, Outcome), CliError> {
    Ok(match cmd {
        CoexistCmd::Pair { f, g, max_iter } => {
            let f = Effect::new(ctx.load_operator(f)?, DEFAULT_TOL)?;
            let g = Effect::new(ctx.load_operator(g)?, DEFAULT_TOL)?;
            ctx.max_iter = *max_iter;
            let tol = ctx.explicit_tol.unwrap_or(DykstraConfig::default().tol);
            ctx.tol = tol;
            let config = DykstraConfig { max_iter: *max_iter, tol, ..DykstraConfig::default() };
            let outcome = coexist_feasibility(&f, &g, &config)?;
            let mut report = json!({
                "status": outcome.status.name(),
                "iterations": outcome.iterations,
                "final_violation": outcome.final_violation,
                "dykstra": config,
            });
            let mut result = match &outcome.status {
                Status::Feasible(cert) => {
                    let residual = cert.residual(f.op(), g.op())?;
                    report["certificate_residual"] = to_value(residual);
                    Outcome::report(report).with_artifact(cert.to_json())
                }
                Status::Infeasible { gap } => {
                    report["gap"] = json!(gap);
                    Outcome::report(report)
                }
                Status::Undecided => Outcome::report(report),
            };
            if matches!(outcome.status, Status::Undecided) {
                result.exit = EXIT_UNDECIDED;
            }
            ("coexist pair".into(), result)
        }
        CoexistCmd::Combine { certs, alpha, beta } => {
            let (table, _): (CertificateTableJson, _) = ctx.parse(certs)?;
            let (f_list, g_list, pair_certs) = certificate_table(&table)?;
            let (cert, segments) = combine_coexistent(&f_list, alpha, &g_list, beta, &pair_certs)?;
            let f = crate::operator::HermitianOperator::linear_combination(alpha, &f_list);
            let g = crate::operator::HermitianOperator::linear_combination(beta, &g_list);
            let residual = cert.verify(&f, &g, CERTIFICATE_TOL)?;
            let delta_sum: f64 = segments.iter().map(|s| s.delta).sum();
            let report = json!({ "segments": segments, "delta_sum": delta_sum, "certificate_residual": residual });
            ("coexist combine".into(), Outcome::report(report).with_artifact(cert.to_json()))
        }
        CoexistCmd::Verify { cert } => {
            let (json, _): (CertificateJson, _) = ctx.parse(cert)?;
            ctx.check_dim(json.h.dim)?;
            let cert = CoexistenceCertificate::from_json(&json, CERTIFICATE_TOL)?;
            let residual = cert.verify_self(CERTIFICATE_TOL)?;
            ("coexist verify".into(), Outcome::report(json!({ "valid": true, "residual": residual })))
        }
        CoexistCmd::Triple { dim, max_iter } => {
            if *dim < 2 {
                return Err(CliError::Domain("triple needs --dim at least 2".into()));
            }
            ctx.check_dim(*dim)?;
            ctx.max_iter = *max_iter;
            let config = DykstraConfig { max_iter: *max_iter, ..DykstraConfig::default() };
            let report = triple_witness(&basis_vector(*dim, 0), &basis_vector(*dim, 1), &config)?;
            ("coexist triple".into(), Outcome::report(report))
        }
    })
}

type CertTable = (Vec<HermitianOperator>, Vec<HermitianOperator>, Vec<Vec<Option<CoexistenceCertificate>>>);

/// Recovers `F_i`, `G_j` from the table (first certificate in each row and
/// column) and parses every certificate.
fn certificate_table(table: &CertificateTableJson) -> Result<CertTable, CliError> {
    let rows = table.certificates.len();
    let cols = table.certificates.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 || table.certificates.iter().any(|r| r.len() != cols) {
        return Err(CliError::Io("certificate table must be a non-empty rectangular array".into()));
    }
    let parsed: Vec<Vec<Option<CoexistenceCertificate>>> = table
        .certificates
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| c.as_ref().map(|c| CoexistenceCertificate::from_json(c, CERTIFICATE_TOL)).transpose())
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let f_list = (0..rows)
        .map(|i| parsed[i].iter().flatten().next().map(|c| c.f()).ok_or(Error::MissingCertificate(i, 0)))
        .collect::<Result<Vec<_>, _>>()?;
    let g_list = (0..cols)
        .map(|j| {
            parsed.iter().filter_map(|r| r[j].as_ref()).next().map(|c| c.g()).ok_or(Error::MissingCertificate(0, j))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((f_list, g_list, parsed))
}

fn experiment_cmd(ctx: &mut Context, cmd: &ExperimentCmd) -> Result<(String, Outcome), CliError> {
    Ok(match cmd {
        ExperimentCmd::Theorem5 { frame } => {
            let (frame, _) = ctx.load_frame(frame)?;
            if frame.dim() < 2 {
                return Err(CliError::Domain("experiment needs dimension at least 2".into()));
            }
            let phi = basis_vector(frame.dim(), 0);
            let psi = basis_vector(frame.dim(), 1);
            let report = theorem5_experiment(&frame, &phi, &psi)?;
            let mut outcome = Outcome::report(&report);
            if !report.bound_check {
                outcome.exit = EXIT_DOMAIN;
            }
            ("experiment theorem5".into(), outcome)
        }
    })
}

/// Flat `path: value` lines for the text output format.
fn render_text(doc: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, v) in map {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, v, out);
                }
            }
            Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                for (i, v) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), v, out);
                }
            }
            other => {
                out.push_str(prefix);
                out.push_str(": ");
                out.push_str(&other.to_string());
                out.push('\n');
            }
        }
    }
    let mut out = String::new();
    walk("", doc, &mut out);
    out
}

/// Writes a frame file in the wire format.
pub fn write_frame(path: &Path, frame: &Frame) -> std::io::Result<()> {
    std::fs::write(path, to_json_string(&frame.to_json()))
}

/// Writes a single matrix file in the wire format.
pub fn write_operator(path: &Path, op: &HermitianOperator) -> std::io::Result<()> {
    std::fs::write(path, to_json_string(&op.to_json()))
}
