//! Command-line front end.
//!
//! Exit codes: 0 success or verified, 1 verification failed, 2 bad arguments,
//! 3 I/O error. Every command can read defaults from a TOML config file whose
//! keys are the long flag names; flags given on the command line win.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::circuit_sim::{
    circuit_unitary, dft_matrix, qft_circuit, qft_gate_count, Circuit, CircuitRecord,
};
use crate::error::Error;
use crate::exciton_ring::{full_spectrum, is_degenerate, RingModel};
use crate::format::{fmt_sig, sig15};
use crate::hidden_subgroup::{hsp_report, HspInstance};
use crate::linalg::ComplexMatrix;
use crate::qft_equivalence::{approximation_report, k_from_n, verify_equivalence};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

const DEFAULT_HALF_SIZE: usize = 8;
const DEFAULT_TOLERANCE: f64 = 1e-10;
const DEFAULT_QUBITS: usize = 4;
const DEFAULT_TARGET_DIM: usize = 18;

#[derive(Debug, Parser)]
#[command(
    name = "exciton-qft",
    version,
    about = "Exciton ring spectra, QFT equivalence checks, QFT circuits and hidden subgroup demos"
)]
pub struct Cli {
    /// TOML file with default values for any long flag.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exciton energies of the 2N-site ring.
    Spectrum(RingArgs),
    /// Check that the relabeled exciton states are the DFT columns.
    Verify(VerifyArgs),
    /// Synthesize the QFT circuit: dump it, export its unitary, or check it.
    Circuit(CircuitArgs),
    /// Compare the 18-point DFT with the zero-padded 4-qubit QFT.
    Approx(ApproxArgs),
    /// Recover a hidden subgroup generator of Z_N.
    Hsp(HspArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RingArgs {
    /// N, half the number of ring sites.
    #[arg(long)]
    pub half_size: Option<usize>,
    /// Site excitation energy E0.
    #[arg(long, allow_negative_numbers = true)]
    pub e0: Option<f64>,
    /// Nearest-neighbour coupling V0.
    #[arg(long, allow_negative_numbers = true)]
    pub v0: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CircuitArgs {
    /// Number of qubits.
    #[arg(short = 'n', long)]
    pub qubits: Option<usize>,
    /// Emit the gate list (default).
    #[arg(long)]
    pub dump: bool,
    /// Emit the dense unitary.
    #[arg(long, conflicts_with_all = ["dump", "check"])]
    pub unitary: bool,
    /// Compare the unitary with the DFT matrix; exit 1 on mismatch.
    #[arg(long, conflicts_with = "dump")]
    pub check: bool,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    /// Dimension of the ring DFT to approximate.
    #[arg(long)]
    pub target_dim: Option<usize>,
    /// Qubits of the QFT circuit.
    #[arg(short = 'n', long)]
    pub qubits: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct HspArgs {
    /// Order of the cyclic group Z_N.
    #[arg(long)]
    pub group: Option<usize>,
    /// Order of the hidden subgroup; must divide the group order.
    #[arg(long)]
    pub subgroup_order: Option<usize>,
    /// Coset offset j0.
    #[arg(long)]
    pub offset: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Config file contents; keys mirror the long flags.
#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct FileConfig {
    pub half_size: Option<usize>,
    pub e0: Option<f64>,
    pub v0: Option<f64>,
    pub tolerance: Option<f64>,
    pub qubits: Option<usize>,
    pub target_dim: Option<usize>,
    pub group: Option<usize>,
    pub subgroup_order: Option<usize>,
    pub offset: Option<usize>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Rendered command output plus the verdict for verifying commands.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    ExitCode::from(run_with(args, &mut stdout.lock(), &mut stderr.lock()))
}

/// Runs the CLI against explicit output streams and returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let rendered = e.render().to_string();
            let _ = write!(sink, "{rendered}");
            if e.use_stderr() && !rendered.contains("Usage:") {
                let _ = writeln!(sink, "\n{}", Cli::command().render_usage());
            }
            return code;
        }
    };

    let (out_path, result) = match load_config(cli.config.as_deref()) {
        Ok(cfg) => {
            let out = output_of(&cli.command)
                .out
                .clone()
                .or_else(|| cfg.out.clone());
            (out, execute(&cli.command, &cfg))
        }
        Err(e) => (None, Err(e)),
    };

    let outcome = match result {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}\n");
            let _ = write!(stderr, "{}", Cli::command().render_usage());
            let _ = writeln!(stderr);
            return EXIT_USAGE;
        }
        Err(CliError::Io(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_IO;
        }
    };

    let written = match &out_path {
        Some(path) => std::fs::write(path, &outcome.text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout
            .write_all(outcome.text.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_IO;
    }

    if outcome.passed {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn output_of(cmd: &Command) -> &OutputArgs {
    match cmd {
        Command::Spectrum(a) => &a.output,
        Command::Verify(a) => &a.ring.output,
        Command::Circuit(a) => &a.output,
        Command::Approx(a) => &a.output,
        Command::Hsp(a) => &a.output,
    }
}

fn load_config(path: Option<&Path>) -> Result<FileConfig, CliError> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
}

/// Runs a parsed command and renders its output without touching any stream.
pub fn execute(cmd: &Command, cfg: &FileConfig) -> Result<Outcome, CliError> {
    let format = output_of(cmd)
        .format
        .or(cfg.format)
        .unwrap_or(OutputFormat::Json);
    match cmd {
        Command::Spectrum(a) => cmd_spectrum(&ring_model(a, cfg)?, format),
        Command::Verify(a) => {
            let tolerance = tolerance(a.tolerance.or(cfg.tolerance))?;
            cmd_verify(&ring_model(&a.ring, cfg)?, tolerance, format)
        }
        Command::Circuit(a) => {
            let n = a.qubits.or(cfg.qubits).unwrap_or(DEFAULT_QUBITS);
            let mode = if a.unitary {
                CircuitMode::Unitary
            } else if a.check {
                CircuitMode::Check(tolerance(a.tolerance.or(cfg.tolerance))?)
            } else {
                CircuitMode::Dump
            };
            cmd_circuit(n, mode, format)
        }
        Command::Approx(a) => cmd_approx(
            a.target_dim
                .or(cfg.target_dim)
                .unwrap_or(DEFAULT_TARGET_DIM),
            a.qubits.or(cfg.qubits).unwrap_or(DEFAULT_QUBITS),
            format,
        ),
        Command::Hsp(a) => {
            let group = a
                .group
                .or(cfg.group)
                .ok_or_else(|| CliError::Usage("hsp needs --group".into()))?;
            let sub = a
                .subgroup_order
                .or(cfg.subgroup_order)
                .ok_or_else(|| CliError::Usage("hsp needs --subgroup-order".into()))?;
            let offset = a.offset.or(cfg.offset).unwrap_or(0);
            cmd_hsp(&HspInstance::new(group, sub, offset)?, format)
        }
    }
}

fn ring_model(a: &RingArgs, cfg: &FileConfig) -> Result<RingModel, CliError> {
    Ok(RingModel::new(
        a.half_size.or(cfg.half_size).unwrap_or(DEFAULT_HALF_SIZE),
        a.e0.or(cfg.e0).unwrap_or(0.0),
        a.v0.or(cfg.v0).unwrap_or(1.0),
    )?)
}

fn tolerance(t: Option<f64>) -> Result<f64, CliError> {
    match t {
        None => Ok(DEFAULT_TOLERANCE),
        Some(t) if t.is_finite() && t >= 0.0 => Ok(t),
        Some(t) => Err(CliError::Usage(format!(
            "tolerance must be a non-negative number, got {t}"
        ))),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

fn csv_bool(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

#[derive(Debug, Serialize)]
struct SpectrumRow {
    n: i64,
    k: usize,
    #[serde(serialize_with = "sig15")]
    energy: f64,
    is_lowest: bool,
    is_bright: bool,
}

#[derive(Debug, Serialize)]
struct SpectrumDoc {
    schema: u32,
    command: &'static str,
    half_size: usize,
    ring_size: usize,
    #[serde(serialize_with = "sig15")]
    e0: f64,
    #[serde(serialize_with = "sig15")]
    v0: f64,
    rows: Vec<SpectrumRow>,
}

pub fn cmd_spectrum(model: &RingModel, format: OutputFormat) -> Result<Outcome, CliError> {
    let spectrum = full_spectrum(model);
    let lowest = spectrum.entries()[0].energy;
    let big_n = model.half_size() as i64;
    let rows: Vec<SpectrumRow> = spectrum
        .entries()
        .iter()
        .map(|e| SpectrumRow {
            n: e.n,
            k: k_from_n(model.half_size(), e.n).expect("spectrum n values are valid"),
            energy: e.energy,
            is_lowest: is_degenerate(lowest, e.energy),
            is_bright: big_n >= 2 && e.n.abs() == big_n - 1,
        })
        .collect();

    let text = match format {
        OutputFormat::Json => to_json(&SpectrumDoc {
            schema: SCHEMA_VERSION,
            command: "spectrum",
            half_size: model.half_size(),
            ring_size: model.ring_size(),
            e0: model.site_energy(),
            v0: model.coupling(),
            rows,
        }),
        OutputFormat::Csv => {
            let mut s = String::from("n,k,energy,is_lowest,is_bright\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.n,
                    r.k,
                    fmt_sig(r.energy),
                    csv_bool(r.is_lowest),
                    csv_bool(r.is_bright)
                );
            }
            s
        }
    };
    Ok(Outcome { text, passed: true })
}

#[derive(Debug, Serialize)]
struct VerifyDoc<'a> {
    schema: u32,
    command: &'static str,
    #[serde(serialize_with = "sig15")]
    tolerance: f64,
    verified: bool,
    #[serde(flatten)]
    report: &'a crate::qft_equivalence::EquivalenceReport,
}

pub fn cmd_verify(
    model: &RingModel,
    tolerance: f64,
    format: OutputFormat,
) -> Result<Outcome, CliError> {
    let report = verify_equivalence(model);
    let passed = report.holds(tolerance);
    let text = match format {
        OutputFormat::Json => to_json(&VerifyDoc {
            schema: SCHEMA_VERSION,
            command: "verify",
            tolerance,
            verified: passed,
            report: &report,
        }),
        OutputFormat::Csv => {
            let mut s = String::from("k,n,fidelity,phase_error,max_deviation\n");
            for r in &report.per_k {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.k,
                    r.n,
                    fmt_sig(r.fidelity),
                    fmt_sig(r.phase_error),
                    fmt_sig(r.max_deviation)
                );
            }
            s
        }
    };
    Ok(Outcome { text, passed })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircuitMode {
    Dump,
    Unitary,
    Check(f64),
}

#[derive(Debug, Serialize)]
struct CircuitDoc {
    schema: u32,
    #[serde(flatten)]
    circuit: CircuitRecord,
}

#[derive(Debug, Serialize)]
struct UnitaryDoc {
    schema: u32,
    n_qubits: usize,
    dimension: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize)]
struct CheckDoc {
    schema: u32,
    command: &'static str,
    n_qubits: usize,
    gate_count: usize,
    expected_gate_count: usize,
    #[serde(serialize_with = "sig15")]
    max_abs_diff: f64,
    #[serde(serialize_with = "sig15")]
    unitarity_error: f64,
    #[serde(serialize_with = "sig15")]
    tolerance: f64,
    passed: bool,
}

/// One matrix row per line, alternating real and imaginary parts.
pub fn unitary_csv(m: &ComplexMatrix) -> String {
    let mut s = String::new();
    for r in 0..m.rows() {
        let fields: Vec<String> = m
            .row(r)
            .iter()
            .map(|z| format!("{},{}", fmt_sig(z.re), fmt_sig(z.im)))
            .collect();
        s.push_str(&fields.join(","));
        s.push('\n');
    }
    s
}

pub fn cmd_circuit(n: usize, mode: CircuitMode, format: OutputFormat) -> Result<Outcome, CliError> {
    let circuit = qft_circuit(n)?;
    match mode {
        CircuitMode::Dump => Ok(Outcome {
            text: dump_circuit(&circuit, format),
            passed: true,
        }),
        CircuitMode::Unitary => {
            let u = circuit_unitary(&circuit)?;
            let text = match format {
                OutputFormat::Csv => unitary_csv(&u),
                OutputFormat::Json => {
                    let part = |f: fn(&num_complex::Complex64) -> f64| -> Vec<Vec<f64>> {
                        (0..u.rows())
                            .map(|r| {
                                u.row(r)
                                    .iter()
                                    .map(|z| crate::format::round_sig(f(z)))
                                    .collect()
                            })
                            .collect()
                    };
                    to_json(&UnitaryDoc {
                        schema: SCHEMA_VERSION,
                        n_qubits: n,
                        dimension: u.rows(),
                        re: part(|z| z.re),
                        im: part(|z| z.im),
                    })
                }
            };
            Ok(Outcome { text, passed: true })
        }
        CircuitMode::Check(tolerance) => {
            let u = circuit_unitary(&circuit)?;
            let doc = CheckDoc {
                schema: SCHEMA_VERSION,
                command: "circuit-check",
                n_qubits: n,
                gate_count: circuit.len(),
                expected_gate_count: qft_gate_count(n),
                max_abs_diff: u.max_abs_diff(&dft_matrix(1 << n)),
                unitarity_error: u.unitarity_error(),
                tolerance,
                passed: false,
            };
            let passed = doc.max_abs_diff <= tolerance && doc.gate_count == doc.expected_gate_count;
            let doc = CheckDoc { passed, ..doc };
            let text = match format {
                OutputFormat::Json => to_json(&doc),
                OutputFormat::Csv => format!(
                    "n_qubits,gate_count,expected_gate_count,max_abs_diff,unitarity_error,tolerance,passed\n{},{},{},{},{},{},{}\n",
                    doc.n_qubits,
                    doc.gate_count,
                    doc.expected_gate_count,
                    fmt_sig(doc.max_abs_diff),
                    fmt_sig(doc.unitarity_error),
                    fmt_sig(doc.tolerance),
                    csv_bool(passed)
                ),
            };
            Ok(Outcome { text, passed })
        }
    }
}

fn dump_circuit(circuit: &Circuit, format: OutputFormat) -> String {
    let record = CircuitRecord::from(circuit);
    match format {
        OutputFormat::Json => to_json(&CircuitDoc {
            schema: SCHEMA_VERSION,
            circuit: record,
        }),
        OutputFormat::Csv => {
            let mut s = String::from("index,kind,targets,p\n");
            for (i, g) in record.gates.iter().enumerate() {
                let targets: Vec<String> = g.targets.iter().map(usize::to_string).collect();
                let p = g.p.map(|p| p.to_string()).unwrap_or_default();
                let _ = writeln!(s, "{i},{},{},{p}", g.kind, targets.join(" "));
            }
            s
        }
    }
}

#[derive(Debug, Serialize)]
struct ApproxDoc<'a> {
    schema: u32,
    command: &'static str,
    #[serde(flatten)]
    report: &'a crate::qft_equivalence::ApproxReport,
}

pub fn cmd_approx(
    target_dim: usize,
    qubits: usize,
    format: OutputFormat,
) -> Result<Outcome, CliError> {
    let report = approximation_report(target_dim, qubits)?;
    let text = match format {
        OutputFormat::Json => to_json(&ApproxDoc {
            schema: SCHEMA_VERSION,
            command: "approx",
            report: &report,
        }),
        OutputFormat::Csv => {
            let mut s = format!(
                "# target_dimension={} circuit_qubits={} fractional_qubits={} mean_fidelity={} min_fidelity={}\nk,best_match_j,fidelity\n",
                report.target_dimension,
                report.circuit_qubits,
                fmt_sig(report.fractional_qubits),
                fmt_sig(report.mean_fidelity),
                fmt_sig(report.min_fidelity)
            );
            for r in &report.rows {
                let _ = writeln!(s, "{},{},{}", r.k, r.best_match_j, fmt_sig(r.fidelity));
            }
            s
        }
    };
    Ok(Outcome { text, passed: true })
}

#[derive(Debug, Serialize)]
struct HspDoc<'a> {
    schema: u32,
    command: &'static str,
    #[serde(flatten)]
    report: &'a crate::hidden_subgroup::HspReport,
}

pub fn cmd_hsp(inst: &HspInstance, format: OutputFormat) -> Result<Outcome, CliError> {
    let report = hsp_report(inst);
    let text = match format {
        OutputFormat::Json => to_json(&HspDoc {
            schema: SCHEMA_VERSION,
            command: "hsp",
            report: &report,
        }),
        OutputFormat::Csv => format!(
            "group_order,subgroup_order,coset_offset,generator,recovered,match\n{},{},{},{},{},{}\n",
            report.group_order,
            report.subgroup_order,
            report.coset_offset,
            report.generator,
            report.recovered,
            csv_bool(report.matches)
        ),
    };
    Ok(Outcome {
        text,
        passed: report.matches,
    })
}
