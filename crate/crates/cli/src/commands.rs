use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use krein_osc::localization::Localization;
use krein_osc::oned::{apply_1d, build_op_1d, eigencheck_1d, inner_1d, ladder_state_1d, localization_1d, solve_vacuum_1d, Op1DName, State1D, DEFAULT_DEPTH_LIMIT};
use krein_osc::radial::{bridge_audit, radial_reduce};
use krein_osc::rat::{parse_rational, Rational};
use krein_osc::scalar::EpsAffine;
use krein_osc::sector::{
    classify_limit, dark_check, eps_sector, eps_sector_mirror, fig1_sector, fig2_sector, fig3_sector, generate_sector, gram,
    identity_audit, lattice_export, quotient_report, ExportFormat, SectorLattice, ALL_GENERATORS, DEFAULT_DARK_DEGREE,
    DEFAULT_SECTOR_DEPTH,
};
use krein_osc::twod::{apply_2d, inner_2d, localization_2d, renorm_inner, Op2DName, State2D};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::expr::{eval_1d, eval_2d, parse_operator_expr, ExprError, Space};

/// Environment variable overriding the ladder depth cap.
pub const DEPTH_ENV: &str = "KREIN_OSC_DEPTH_LIMIT";

#[derive(Debug, Parser)]
#[command(name = "krein-osc", version, about = "Exact laboratory for oscillator states with singular vacua")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every operator identity and the polar bridge; JSON report.
    Audit {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
    },
    /// Ladder states (A+)^n applied to the vacuum of a-_alpha, with energies.
    Spectrum {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        depth_limit: Option<usize>,
    },
    /// The state annihilated by a-_alpha.
    Vacuum {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Regularized inner product of two state files.
    Inner {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        /// Take the eps -> 0 limit of the renormalized product (2d only).
        #[arg(long)]
        renorm: bool,
    },
    /// Generate a sector lattice; JSON to stdout or --out.
    Sector {
        /// fig1, fig2, fig3, eps:N, eps-mirror:N, or a 2d state file.
        #[arg(long)]
        seed: String,
        /// Comma-separated generators (b++,b+-,b-+,b--) or `all`; presets choose their own.
        #[arg(long)]
        gens: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SECTOR_DEPTH)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gram block of one charge with its signature.
    Gram {
        #[arg(long)]
        sector: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        charge: String,
    },
    /// Null directions of a sector metric.
    Quotient {
        #[arg(long)]
        sector: PathBuf,
    },
    /// Matrix elements between two sectors for all b-monomials up to a degree.
    Dark {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DARK_DEGREE)]
        degree: usize,
    },
    /// Localization of a state at the origin.
    Localize {
        #[arg(long)]
        state: PathBuf,
    },
    /// Ordinary or singular eps -> 0 limit of a 2d state.
    Classify {
        #[arg(long)]
        state: PathBuf,
    },
    /// Radial function of a pure-charge 2d state.
    Reduce {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        charge: String,
    },
    /// Render a sector as dot, json or csv.
    Export {
        #[arg(long)]
        format: String,
        #[arg(long, conflicts_with = "seed")]
        sector: Option<PathBuf>,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long)]
        gens: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SECTOR_DEPTH)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply an operator expression to a state file.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        state: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Lab(#[from] krein_osc::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Expr(e) => e.code(),
            CliError::Lab(e) => e.code(),
        }
    }

    /// 1 for errors raised by the mathematics, 2 for bad invocations or inputs.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lab(krein_osc::Error::Parse(_) | krein_osc::Error::UnsupportedFormat(_)) => 2,
            CliError::Lab(_) => 1,
            CliError::Usage(_) | CliError::Expr(_) => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// A state file of either dimension, told apart by its `space` field.
pub enum AnyState {
    OneD(State1D),
    TwoD(State2D),
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn load_state(path: &Path) -> CliResult<AnyState> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    match value.get("space").and_then(|s| s.as_str()) {
        Some("1d") => Ok(AnyState::OneD(State1D::from_json(&text)?)),
        Some("2d") => Ok(AnyState::TwoD(State2D::from_json(&text)?)),
        _ => Err(CliError::Usage(format!("{}: missing or unknown \"space\"", path.display()))),
    }
}

fn load_2d(path: &Path) -> CliResult<State2D> {
    match load_state(path)? {
        AnyState::TwoD(s) => Ok(s),
        AnyState::OneD(_) => Err(CliError::Usage(format!("{}: expected a 2d state", path.display()))),
    }
}

fn load_sector(path: &Path) -> CliResult<SectorLattice> {
    Ok(SectorLattice::from_json(&read(path)?)?)
}

fn rational_arg(name: &str, text: &str) -> CliResult<Rational> {
    parse_rational(text).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn depth_limit(flag: Option<usize>) -> CliResult<usize> {
    if let Some(d) = flag {
        return Ok(d);
    }
    match std::env::var(DEPTH_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{DEPTH_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_DEPTH_LIMIT),
    }
}

fn parse_gens(text: &str) -> CliResult<Vec<Op2DName>> {
    if text == "all" {
        return Ok(ALL_GENERATORS.to_vec());
    }
    text.split(',').map(|g| g.trim().parse::<Op2DName>().map_err(CliError::from)).collect()
}

/// Builds a sector from a preset name or a seed state file.
pub fn build_sector(seed: &str, gens: Option<&str>, depth: usize) -> CliResult<SectorLattice> {
    let explicit = gens.map(parse_gens).transpose()?;
    let preset = |s: SectorLattice| -> CliResult<SectorLattice> {
        match &explicit {
            Some(g) => Ok(generate_sector(&s.seed, g, depth)?),
            None => Ok(s),
        }
    };
    let order = |n: &str| n.parse::<u32>().map_err(|_| CliError::Usage(format!("--seed: bad order `{n}`")));
    match seed {
        "fig1" => preset(fig1_sector(depth)?),
        "fig2" => preset(fig2_sector(depth)?),
        "fig3" => preset(fig3_sector(depth)?),
        s if s.starts_with("eps-mirror:") => preset(eps_sector_mirror(order(&s["eps-mirror:".len()..])?, depth)?),
        s if s.starts_with("eps:") => preset(eps_sector(order(&s["eps:".len()..])?, depth)?),
        path => {
            let state = load_2d(Path::new(path))?;
            let g = explicit.unwrap_or_else(|| ALL_GENERATORS.to_vec());
            Ok(generate_sector(&state, &g, depth)?)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value).map(|s| s + "\n").map_err(|e| CliError::Usage(e.to_string()))
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Usage(e.to_string())),
    }
}

#[derive(Serialize)]
struct SpectrumEntry {
    n: usize,
    #[serde(serialize_with = "krein_osc::rat::serialize_pq")]
    energy: Rational,
    eigenvalue: Option<String>,
    state: State1D,
}

fn localization_json(l: &Localization) -> CliResult<String> {
    to_json(l)
}

/// Runs one parsed command, writing its report to `stdout`.
pub fn execute(cmd: Command, stdout: &mut dyn Write) -> CliResult<()> {
    let text = match cmd {
        Command::Audit { n_max } => to_json(&json!({
            "identities": identity_audit(),
            "bridge": bridge_audit(n_max)?,
        }))?,
        Command::Spectrum { alpha, n, depth_limit: flag } => {
            let alpha = rational_arg("alpha", &alpha)?;
            let limit = depth_limit(flag)?;
            let h1 = build_op_1d(Op1DName::H1, None)?;
            let mut entries = Vec::new();
            for k in 0..=n {
                let (state, energy) = ladder_state_1d(&alpha, k, limit)?;
                let eigenvalue = eigencheck_1d(&h1, &state).map(|v| v.to_string());
                entries.push(SpectrumEntry { n: k, energy, eigenvalue, state });
            }
            to_json(&entries)?
        }
        Command::Vacuum { alpha } => {
            let alpha = rational_arg("alpha", &alpha)?;
            let state = solve_vacuum_1d(&alpha);
            let lowered = apply_1d(&build_op_1d(Op1DName::AMinus, Some(&alpha))?, &state);
            to_json(&json!({ "state": state, "annihilated": lowered.is_zero() }))?
        }
        Command::Inner { lhs, rhs, renorm } => match (load_state(&lhs)?, load_state(&rhs)?) {
            (AnyState::OneD(f), AnyState::OneD(g)) => {
                if renorm {
                    return Err(CliError::Usage("--renorm applies to 2d states only".into()));
                }
                format!("{}\n", inner_1d(&f, &g)?)
            }
            (AnyState::TwoD(f), AnyState::TwoD(g)) => {
                if renorm {
                    format!("{}\n", renorm_inner(&f, &g)?)
                } else {
                    let v = inner_2d(&f, &g)?;
                    match (&v.finite, v.pole.is_zero()) {
                        (Some(x), true) => format!("{x}\n"),
                        _ => to_json(&v)?,
                    }
                }
            }
            _ => return Err(CliError::Usage("states live in different spaces".into())),
        },
        Command::Sector { seed, gens, depth, out } => {
            let s = build_sector(&seed, gens.as_deref(), depth)?;
            let text = lattice_export(&s, ExportFormat::Json)?;
            return emit(out.as_deref(), &text, stdout);
        }
        Command::Gram { sector, charge } => {
            let s = load_sector(&sector)?;
            let q: EpsAffine = charge.parse().map_err(|e: krein_osc::Error| CliError::Usage(format!("--charge: {e}")))?;
            to_json(&gram(&s, &q)?)?
        }
        Command::Quotient { sector } => to_json(&quotient_report(&load_sector(&sector)?)?)?,
        Command::Dark { a, b, degree } => to_json(&dark_check(&load_sector(&a)?, &load_sector(&b)?, degree)?)?,
        Command::Localize { state } => match load_state(&state)? {
            AnyState::OneD(s) => localization_json(&localization_1d(&s))?,
            AnyState::TwoD(s) => localization_json(&localization_2d(&s)?)?,
        },
        Command::Classify { state } => to_json(&classify_limit(&load_2d(&state)?)?)?,
        Command::Reduce { state, charge } => {
            let q = rational_arg("charge", &charge)?;
            to_json(&radial_reduce(&load_2d(&state)?, &q)?)?
        }
        Command::Export { format, sector, seed, gens, depth, out } => {
            let format: ExportFormat = format.parse()?;
            let s = match (sector, seed) {
                (Some(path), _) => load_sector(&path)?,
                (None, Some(seed)) => build_sector(&seed, gens.as_deref(), depth)?,
                (None, None) => return Err(CliError::Usage("export needs --sector FILE or --seed".into())),
            };
            let text = lattice_export(&s, format)?;
            return emit(out.as_deref(), &text, stdout);
        }
        Command::Eval { expr, state } => match load_state(&state)? {
            AnyState::OneD(s) => to_json(&apply_1d(&eval_1d(&parse_operator_expr(&expr, Space::OneD)?)?, &s))?,
            AnyState::TwoD(s) => to_json(&apply_2d(&eval_2d(&parse_operator_expr(&expr, Space::TwoD)?)?, &s))?,
        },
    };
    emit(None, &text, stdout)
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
/// Errors go to `stderr` as one JSON line with a machine-readable `code`.
pub fn run_command<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = if code == 0 { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{}", json!({ "error": e.code(), "message": e.to_string() }));
            e.exit_code()
        }
    }
}
