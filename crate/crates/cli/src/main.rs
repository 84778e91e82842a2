//! `trigspline`: build, evaluate and analyze trigonometric interpolation
//! splines from CSV samples and a JSON spline description.

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod data;

#[derive(Debug, Parser)]
#[command(name = "trigspline", version, about = "Trigonometric interpolation splines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Oracle {
    Linear,
    Cubic,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TestFunction {
    /// exp(sin t)
    Expsin,
    /// |sin t|
    Abssin,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Grid nodes as CSV column `t`.
    Nodes {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 0)]
        indicator: u8,
    },
    /// Fourier coefficients of the interpolating trigonometric polynomial.
    Coeffs {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        indicator: u8,
    },
    /// Spline values on `--points` equispaced abscissae in [t0, t1].
    Eval {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t0: f64,
        #[arg(long, default_value_t = std::f64::consts::TAU, allow_hyphen_values = true)]
        t1: f64,
        #[arg(long, default_value_t = 1000)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        deriv: usize,
        /// Allow `--deriv r`, whose series is not uniformly convergent.
        #[arg(long)]
        unsafe_derivative: bool,
        /// Fail instead of relaxing the tail tolerance.
        #[arg(long)]
        strict_tail: bool,
        /// Write hc, hs and the tail plans as JSON.
        #[arg(long)]
        dump_factors: Option<PathBuf>,
    },
    /// Average power of the q-th derivative, by series and by quadrature.
    Power {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        deriv: usize,
        #[arg(long)]
        strict_tail: bool,
    },
    /// Sup and L2 distance to a periodic polynomial spline.
    Compare {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        oracle: Oracle,
        #[arg(long, default_value_t = 1000)]
        points: usize,
    },
    /// Cubic spline moments from the trigonometric spline and the cyclic system.
    Moments {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Power over a grid of parameter vectors against the polynomial spline.
    Sweep {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, default_value = "nu1")]
        nu: String,
        #[arg(long, default_value_t = 2)]
        deriv: usize,
        /// `default` or a comma-separated list of values for g2 and g3.
        #[arg(long, default_value = "default", allow_hyphen_values = true)]
        grid: String,
    },
    /// Measured convergence order on a sequence of grid sizes.
    Convergence {
        #[arg(long = "fn", value_enum)]
        func: TestFunction,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "nu1")]
        nu: String,
        #[arg(long = "Ns", value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Where to write the JSON summary; stderr when absent.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

fn run(cli: Cli, out: &mut impl Write) -> anyhow::Result<()> {
    match cli.command {
        Command::Nodes { n, indicator } => commands::nodes(out, n, indicator),
        Command::Coeffs { input, indicator } => commands::coeffs(out, &input, indicator),
        Command::Eval {
            spec,
            input,
            t0,
            t1,
            points,
            deriv,
            unsafe_derivative,
            strict_tail,
            dump_factors,
        } => commands::eval(
            out,
            &commands::EvalArgs {
                spec,
                input,
                t0,
                t1,
                points,
                deriv,
                unsafe_derivative,
                strict_tail,
                dump_factors,
            },
        ),
        Command::Power {
            spec,
            input,
            deriv,
            strict_tail,
        } => commands::power(out, &spec, &input, deriv, strict_tail),
        Command::Compare {
            spec,
            input,
            oracle,
            points,
        } => commands::compare(out, &spec, &input, oracle, points),
        Command::Moments { input } => commands::moments(out, &input),
        Command::Sweep {
            input,
            r,
            nu,
            deriv,
            grid,
        } => commands::sweep(out, &input, r, &nu, deriv, &grid),
        Command::Convergence {
            func,
            r,
            nu,
            sizes,
            summary,
        } => commands::convergence(out, func, r, &nu, &sizes, summary.as_deref()),
    }
}

/// 3 for numerical failures, 2 for everything the caller can fix.
fn exit_code(err: &anyhow::Error) -> u8 {
    let numerical = err
        .chain()
        .filter_map(|e| e.downcast_ref::<trigspline::Error>())
        .any(trigspline::Error::is_numerical);
    if numerical {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|()| out.flush().map_err(Into::into));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
