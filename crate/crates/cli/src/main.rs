mod records;
mod tables;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dirac2d::magnetic::shift_nonrel;
use dirac2d::{
    build_radial, energy, enumerate_levels, run_verification, validate_state, Error, HalfInt, PhysicalParams,
    RouteRegistry, VerifyOptions, SPEED_OF_LIGHT,
};

use records::{render_records, render_samples, round_decimals, round_significant, Format, OutputRecord, Sample};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SUPERCRITICAL: u8 = 3;
const EXIT_ROUTES: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "dirac2d", version, about = "Bound states and linear Zeeman shifts of the 2-D relativistic hydrogen atom")]
struct Cli {
    #[command(flatten)]
    physics: Physics,

    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Physics {
    /// Nuclear charge
    #[arg(long = "Z", default_value_t = 1.0, global = true)]
    z: f64,

    /// Speed of light in atomic units
    #[arg(long = "c", default_value_t = SPEED_OF_LIGHT, global = true)]
    c: f64,
}

#[derive(Debug, Args)]
struct StateArgs {
    #[arg(long)]
    n: u32,

    /// Half-odd integer written as a fraction, e.g. 3/2 or -1/2
    #[arg(long, allow_hyphen_values = true)]
    kappa: HalfInt,

    /// Defaults to |kappa|
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<HalfInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Closed,
    Quadrature,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    T1,
    T2,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Field-free energies, one row per (n, kappa)
    Levels {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
    },
    /// First-order magnetic shift of one state
    Zeeman {
        #[command(flatten)]
        state: StateArgs,

        #[arg(long, value_enum, default_value_t = Route::Both)]
        route: Route,

        /// Scaled field B/Z²; adds the first-order energy E + B·E1
        #[arg(long = "B", allow_hyphen_values = true)]
        field: Option<f64>,

        #[arg(long, default_value_t = 1e-10, hide = true)]
        route_tolerance: f64,
    },
    /// Sampled radial amplitudes, normalized to ∫(F² + λG²) dr = 1
    Wavefunction {
        #[command(flatten)]
        state: StateArgs,

        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
        samples: u32,

        #[arg(long, default_value_t = 20.0)]
        r_max: f64,
    },
    /// Reference tables
    Tables {
        #[arg(value_enum)]
        which: Which,
    },
    /// Run the self-check suite
    Verify {
        /// Also run the finite-difference eigensolver checks
        #[arg(long)]
        with_grid: bool,

        #[arg(long, default_value_t = 1.0, hide = true)]
        tolerance_scale: f64,
    },
}

/// Failure carrying its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SupercriticalCharge { .. } => EXIT_SUPERCRITICAL,
            Error::Internal(_) | Error::ConvergenceFailure(_) => EXIT_VERIFY,
            _ => EXIT_USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = out.flush();
            eprintln!("dirac2d: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    let params = PhysicalParams::new(cli.physics.z, cli.physics.c)?;
    match cli.command {
        Command::Levels { n_max } => {
            let rows = enumerate_levels(n_max)
                .iter()
                .map(|qn| Ok(OutputRecord::level(qn, energy(qn, &params)?.e)))
                .collect::<dirac2d::Result<Vec<_>>>()?;
            render_records(&rows, cli.format, out)?;
        }
        Command::Zeeman { state, route, field, route_tolerance } => {
            let row = zeeman(&state, route, field, route_tolerance, &params)?;
            render_records(&[row], cli.format, out)?;
        }
        Command::Wavefunction { state, samples, r_max } => {
            if !(r_max > 0.0 && r_max.is_finite()) {
                return Err(Error::InvalidParams(format!("r-max must be positive, got {r_max}")).into());
            }
            let qn = validate_state(state.n, state.kappa, state.mu.unwrap_or(state.kappa.abs()))?;
            let sol = build_radial(&qn, &params, true)?;
            let lambda = params.lambda();
            let rows = (1..=samples)
                .map(|k| {
                    let r = r_max * f64::from(k) / f64::from(samples);
                    let (f, g) = (sol.large.eval(r)?, sol.small.eval(r)?);
                    Ok(Sample { r, large: f, small: g, density: f * f + lambda * g * g })
                })
                .collect::<dirac2d::Result<Vec<_>>>()?;
            render_samples(&rows, cli.format, out)?;
        }
        Command::Tables { which } => {
            let text = match which {
                Which::T1 => tables::table1(&params)?,
                Which::T2 => tables::table2(&params)?,
            };
            out.write_all(text.as_bytes()).map_err(|e| Error::Internal(e.to_string()))?;
        }
        Command::Verify { with_grid, tolerance_scale } => {
            let results = run_verification(&VerifyOptions { with_grid, tolerance_scale });
            for r in &results {
                writeln!(out, "{r}").map_err(|e| Error::Internal(e.to_string()))?;
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                return Err(Failure { code: EXIT_VERIFY, message: format!("{failed} of {} checks failed", results.len()) });
            }
            writeln!(out, "all {} checks passed", results.len()).map_err(|e| Error::Internal(e.to_string()))?;
        }
    }
    Ok(())
}

fn zeeman(
    state: &StateArgs,
    route: Route,
    field: Option<f64>,
    tolerance: f64,
    params: &PhysicalParams,
) -> Result<OutputRecord, Failure> {
    let qn = validate_state(state.n, state.kappa, state.mu.unwrap_or(state.kappa.abs()))?;
    let reg = RouteRegistry::with_defaults();
    let e1 = match route {
        Route::Closed => reg.shift("closed", &qn, params)?.e1,
        Route::Quadrature => reg.shift("quadrature", &qn, params)?.e1,
        Route::Both => {
            let closed = reg.shift("closed", &qn, params)?.e1;
            let quad = reg.shift("quadrature", &qn, params)?.e1;
            let gap = (closed - quad).abs();
            if gap > tolerance * closed.abs().max(1.0) {
                return Err(Failure {
                    code: EXIT_ROUTES,
                    message: format!("routes disagree for {qn}: closed {closed:e}, quadrature {quad:e}"),
                });
            }
            closed
        }
    };
    let e = energy(&qn, params)?.e;
    let mut row = OutputRecord::level(&qn, e);
    row.mu = Some(qn.mu.to_string());
    row.shift_e1 = Some(round_significant(e1, 12));
    row.shift_nonrel = Some(shift_nonrel(&qn));
    row.energy_in_field = field.map(|b| round_decimals(e + b * e1, 12));
    Ok(row)
}
