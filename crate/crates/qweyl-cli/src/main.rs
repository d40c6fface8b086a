use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qweyl_cli::commands::{self, DeriveStage, ExpandTarget, Mode};
use qweyl_cli::report::Outcome;

#[derive(Parser)]
#[command(
    name = "qweyl",
    about = "Exact checks for a twisted multi-dimensional Weyl algebra",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Output rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the rendered output to this file. Relative paths resolve
    /// under `QWEYL_OUTPUT_DIR` when that variable is set.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Series,
    Numeric,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Series => Mode::Series,
            ModeArg::Numeric => Mode::Numeric,
            ModeArg::Both => Mode::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpandArg {
    Beta,
    Qpower,
    #[value(name = "X", alias = "x")]
    X,
    #[value(name = "dX", alias = "dx")]
    Dx,
    #[value(name = "P", alias = "p")]
    P,
}

impl From<ExpandArg> for ExpandTarget {
    fn from(t: ExpandArg) -> ExpandTarget {
        match t {
            ExpandArg::Beta => ExpandTarget::Beta,
            ExpandArg::Qpower => ExpandTarget::Qpower,
            ExpandArg::X => ExpandTarget::X,
            ExpandArg::Dx => ExpandTarget::Dx,
            ExpandArg::P => ExpandTarget::P,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DeriveArg {
    Momentum,
    Gauge,
    Bfield,
}

impl From<DeriveArg> for DeriveStage {
    fn from(s: DeriveArg) -> DeriveStage {
        match s {
            DeriveArg::Momentum => DeriveStage::Momentum,
            DeriveArg::Gauge => DeriveStage::Gauge,
            DeriveArg::Bfield => DeriveStage::Bfield,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Verify the defining relations in the deformed-derivative realization.
    VerifyAq {
        /// Exact series check, floating-point spot check, or both.
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        /// Truncation order for the series check.
        #[arg(long, default_value_t = 3)]
        order: usize,
        /// Deformation angles for the numeric check (repeatable).
        #[arg(long = "theta", num_args = 1..)]
        thetas: Vec<f64>,
        /// Maximum total monomial degree probed numerically.
        #[arg(long, default_value_t = 5)]
        cutoff: u32,
        /// Numeric residual tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Print one realized operator as an explicit series.
    Expand {
        #[arg(value_enum)]
        target: ExpandArg,
        /// Coordinate index (1..=3).
        #[arg(long, default_value_t = 1)]
        coord: usize,
        /// Truncation order.
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Apply the realized operators to a plane wave and report the result.
    Derive {
        #[arg(value_enum)]
        stage: DeriveArg,
        /// Truncation order.
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Check symplectic covariance of the defining relations.
    CheckSpq6 {
        /// Run the mutation self-test with this many corrupted matrices.
        #[arg(long, value_name = "COUNT")]
        self_test: Option<usize>,
        /// Seed for the mutation self-test.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Also evaluate the structure numerically at this real q value.
        #[arg(long)]
        q_special: Option<f64>,
    },
    /// Fit truncation-error slopes against the exact diagonal action.
    OracleConvergence {
        /// Truncation orders to probe (repeatable).
        #[arg(long = "order", num_args = 1.., default_values_t = [1usize, 2, 3])]
        orders: Vec<usize>,
        /// Deformation angles to sample (repeatable, at least two).
        #[arg(long = "theta", num_args = 1..)]
        thetas: Vec<f64>,
    },
}

fn default_thetas() -> Vec<f64> {
    vec![1e-1, 1e-2, 1e-3]
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::VerifyAq {
            mode,
            order,
            thetas,
            cutoff,
            tol,
        } => {
            let thetas = if thetas.is_empty() {
                vec![0.3, 0.05]
            } else {
                thetas.clone()
            };
            if *tol <= 0.0 {
                return Err("tolerance must be positive".to_string());
            }
            Ok(commands::verify_aq(
                (*mode).into(),
                *order,
                &thetas,
                *cutoff,
                *tol,
            ))
        }
        Command::Expand {
            target,
            coord,
            order,
        } => {
            if !(1..=3).contains(coord) {
                return Err("coordinate index must be 1, 2, or 3".to_string());
            }
            Ok(commands::expand((*target).into(), *coord, *order))
        }
        Command::Derive { stage, order } => Ok(commands::derive((*stage).into(), *order)),
        Command::CheckSpq6 {
            self_test,
            seed,
            q_special,
        } => Ok(commands::check_spq6(*self_test, *seed, *q_special)),
        Command::OracleConvergence { orders, thetas } => {
            let thetas = if thetas.is_empty() {
                default_thetas()
            } else {
                thetas.clone()
            };
            commands::oracle_convergence(orders, &thetas)
        }
    }
}

fn rendered<'a>(outcome: &'a Outcome, format: Format) -> &'a str {
    match format {
        Format::Text => &outcome.text,
        Format::Json => &outcome.json,
        Format::Latex => &outcome.latex,
    }
}

fn write_output(path: &Path, body: &str) -> Result<(), String> {
    let resolved = if path.is_relative() {
        match std::env::var_os("QWEYL_OUTPUT_DIR") {
            Some(dir) => PathBuf::from(dir).join(path),
            None => path.to_path_buf(),
        }
    } else {
        path.to_path_buf()
    };
    if let Some(parent) = resolved.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| format!("cannot create {}: {e}", parent.display()))?;
        }
    }
    std::fs::write(&resolved, body).map_err(|e| format!("cannot write {}: {e}", resolved.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let body = rendered(&outcome, cli.output.format);
            print!("{body}");
            if !body.ends_with('\n') {
                println!();
            }
            if let Some(path) = &cli.output.output {
                if let Err(e) = write_output(path, body) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
