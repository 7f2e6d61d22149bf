//! Command-line front end. [`run`] holds the whole program so it can be
//! driven from tests; the `qsdiag` binary only forwards to it.
//!
//! Exit codes: 0 success, 1 domain failure (a state or channel that fails
//! validation), 2 unreadable or malformed input.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::angle::parse_angle;
use crate::bloch::{affine_map_of_channel, bloch_from_dm, ellipsoid_samples, points_to_csv};
use crate::channels::ChannelSpec;
use crate::composite::{partial_trace, QubitSubset};
use crate::diagram::{build_diagram, parse_circuit, render_svg, render_text, DiagramMode};
use crate::error::Error;
use crate::kraus::{apply_channel, validate_channel, KrausChannel};
use crate::matrix::ComplexMatrix;
use crate::purify::{purify_single_qubit, synthesize_purification_circuit};
use crate::state::{validate_density, DensityMatrix};
use crate::TOL_SPECTRAL;

/// Environment variable that replaces the default tolerance.
pub const TOL_ENV: &str = "QSDIAG_TOL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Svg,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Complete,
    Simplified,
}

#[derive(Debug, Parser)]
#[command(name = "qsdiag", version, about = "Density matrices, Kraus channels and diagrams of states")]
pub struct Cli {
    /// Numerical tolerance (decimal or a fraction of pi); overrides QSDIAG_TOL.
    #[arg(long, global = true, value_parser = parse_tol)]
    pub tol: Option<f64>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a density-matrix JSON file.
    Validate { file: PathBuf },
    /// Apply a channel `kind:theta[:a,b,c,d]` (or `@kraus.json`) repeatedly.
    Evolve {
        rho: PathBuf,
        channel: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Purify a single-qubit density matrix.
    Purify { rho: PathBuf },
    /// Trace out the listed qubits.
    Trace {
        rho: PathBuf,
        #[arg(required = true)]
        qubits: Vec<usize>,
    },
    /// Image of the unit sphere under a channel's Bloch map, as CSV.
    Ellipsoid {
        channel: String,
        /// Latitude rings by longitude meridians.
        #[arg(long, default_value = "9x16", value_parser = parse_grid)]
        grid: (usize, usize),
    },
    /// Diagram of states of a circuit file.
    Diagram {
        circuit: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Simplified)]
        mode: Mode,
    },
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match parse_angle(s) {
        Some(t) if t > 0.0 => Ok(t),
        _ => Err(format!("tolerance must be a positive number, got `{s}`")),
    }
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected LATxLON, got `{s}`"))?;
    let lat = a.trim().parse().map_err(|_| format!("bad latitude count `{a}`"))?;
    let lon = b.trim().parse().map_err(|_| format!("bad longitude count `{b}`"))?;
    Ok((lat, lon))
}

struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidDensity(_)
            | Error::IncompleteChannel { .. }
            | Error::NotUnitary { .. }
            | Error::OutsideBlochBall(_) => EXIT_DOMAIN,
            _ => EXIT_INPUT,
        };
        Self { code, msg: e.to_string() }
    }
}

/// Result of one command: the primary output and the exit code.
struct Output {
    body: String,
    code: i32,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn load_density(path: &Path, tol: f64) -> Result<DensityMatrix, Failure> {
    let m = ComplexMatrix::from_json(&read(path)?)?;
    Ok(DensityMatrix::with_tol(m, tol, tol)?)
}

fn load_channel(spec: &str) -> Result<KrausChannel, Failure> {
    match spec.strip_prefix('@') {
        Some(path) => Ok(KrausChannel::from_json(&read(Path::new(path))?)?),
        None => Ok(spec.parse::<ChannelSpec>()?.build()?),
    }
}

fn matrix_text(m: &ComplexMatrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|j| {
                let z = m[(i, j)];
                format!("{:>11.8}{:+.8}i", z.re, z.im)
            })
            .collect();
        let _ = writeln!(s, "{}", row.join("  "));
    }
    s
}

fn density_output(rho: &DensityMatrix, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(rho.matrix().to_json_pretty() + "\n"),
        Format::Text => {
            let mut s = matrix_text(rho.matrix());
            if rho.n_qubits() == 1 {
                let b = bloch_from_dm(rho)?;
                let _ = writeln!(s, "bloch: {:.12} {:.12} {:.12}", b.x, b.y, b.z);
            }
            Ok(s)
        }
        f => Err(Failure::input(format!("format {f:?} is not available for density matrices"))),
    }
}

fn execute(cli: &Cli, tol: f64) -> Result<Output, Failure> {
    let ok = |body: String| Ok(Output { body, code: EXIT_OK });
    match &cli.command {
        Command::Validate { file } => {
            let m = ComplexMatrix::from_json(&read(file)?)?;
            let report = validate_density(&m, tol)?;
            let passed = report.passed();
            let body = match cli.format.unwrap_or(Format::Text) {
                Format::Text => format!(
                    "hermiticity defect: {:.3e}\ntrace defect:       {:.3e}\nmin eigenvalue:     {:.3e}\ntolerance:          {:.3e}\nresult: {}\n",
                    report.hermiticity_defect,
                    report.trace_defect,
                    report.min_eigenvalue,
                    report.tol,
                    if passed { "valid" } else { "invalid" }
                ),
                Format::Json => {
                    let v = json!({
                        "hermiticity_defect": report.hermiticity_defect,
                        "trace_defect": report.trace_defect,
                        "min_eigenvalue": report.min_eigenvalue,
                        "tol": report.tol,
                        "valid": passed,
                    });
                    serde_json::to_string_pretty(&v).expect("plain json") + "\n"
                }
                f => return Err(Failure::input(format!("format {f:?} is not available for validate"))),
            };
            Ok(Output { body, code: if passed { EXIT_OK } else { EXIT_DOMAIN } })
        }
        Command::Evolve { rho, channel, steps } => {
            let mut state = load_density(rho, tol)?;
            let ch = load_channel(channel)?;
            let defect = validate_channel(&ch);
            if defect > tol {
                return Err(Error::IncompleteChannel { defect }.into());
            }
            for _ in 0..*steps {
                state = apply_channel(&ch, &state)?;
            }
            ok(density_output(&state, cli.format.unwrap_or(Format::Json))?)
        }
        Command::Purify { rho } => {
            let rho = load_density(rho, tol)?;
            let p = purify_single_qubit(&rho)?;
            let circuit = synthesize_purification_circuit(&rho)?.to_dsl();
            let body = match cli.format.unwrap_or(Format::Json) {
                Format::Json => {
                    let v = json!({
                        "state": {
                            "re": p.state.amplitudes().iter().map(|z| z.re).collect::<Vec<_>>(),
                            "im": p.state.amplitudes().iter().map(|z| z.im).collect::<Vec<_>>(),
                        },
                        "theta1": p.theta1,
                        "theta2": p.theta2,
                        "phi": p.phi,
                        "circuit": circuit,
                    });
                    serde_json::to_string_pretty(&v).expect("plain json") + "\n"
                }
                Format::Text => {
                    let mut s = String::new();
                    for (k, z) in p.coefficients.iter().enumerate() {
                        let _ = writeln!(s, "C{}{} = {:+.12} {:+.12}i", k >> 1, k & 1, z.re, z.im);
                    }
                    let _ = writeln!(s, "theta1 = {:.12}\ntheta2 = {:.12}\nphi    = {:.12}\n", p.theta1, p.theta2, p.phi);
                    s.push_str(&circuit);
                    s
                }
                f => return Err(Failure::input(format!("format {f:?} is not available for purify"))),
            };
            ok(body)
        }
        Command::Trace { rho, qubits } => {
            let rho = load_density(rho, tol)?;
            let subset = QubitSubset::new(rho.n_qubits(), qubits)?;
            let reduced = partial_trace(&rho, &subset)?;
            ok(density_output(&reduced, cli.format.unwrap_or(Format::Json))?)
        }
        Command::Ellipsoid { channel, grid } => {
            let ch = load_channel(channel)?;
            let map = affine_map_of_channel(&ch)?;
            let points = ellipsoid_samples(&map, grid.0, grid.1)?;
            match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => ok(points_to_csv(&points)),
                f => Err(Failure::input(format!("format {f:?} is not available for ellipsoid"))),
            }
        }
        Command::Diagram { circuit, mode } => {
            let circ = parse_circuit(&read(circuit)?)
                .map_err(|e| Failure { code: EXIT_INPUT, msg: format!("{}: {e}", circuit.display()) })?;
            let mode = match mode {
                Mode::Complete => DiagramMode::Complete,
                Mode::Simplified => DiagramMode::Simplified,
            };
            let d = build_diagram(&circ, mode)?;
            match cli.format.unwrap_or(Format::Text) {
                Format::Text => ok(render_text(&d)),
                Format::Svg => ok(render_svg(&d)),
                f => Err(Failure::input(format!("format {f:?} is not available for diagram"))),
            }
        }
    }
}

/// Runs the program on `args` (including the program name). `env_tol` is
/// the value of [`TOL_ENV`], if set.
pub fn run_with_env<I, T>(args: I, env_tol: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let tol = match (cli.tol, env_tol) {
        (Some(t), _) => t,
        (None, Some(s)) => match parse_tol(s) {
            Ok(t) => t,
            Err(msg) => {
                let _ = writeln!(err, "error: {TOL_ENV}: {msg}");
                return EXIT_INPUT;
            }
        },
        (None, None) => TOL_SPECTRAL,
    };
    match execute(&cli, tol) {
        Ok(output) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &output.body)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out.write_all(output.body.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => output.code,
                Err(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    EXIT_INPUT
                }
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

/// [`run_with_env`] reading the tolerance variable from the process
/// environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let env = std::env::var(TOL_ENV).ok();
    run_with_env(args, env.as_deref(), out, err)
}
