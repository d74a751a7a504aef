mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "potdyn",
    version,
    about = "Stability analysis of production-consumption systems, market-price landscapes and energy-flux budgets"
)]
pub struct Cli {
    /// Output format; series commands default to csv, the rest to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the document here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Unit-conversion constant set.
    #[arg(long, global = true, default_value = "exact", value_parser = ["exact", "paper-approximate"])]
    pub constants: String,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Derived stocks, alpha, regime and stationary points of a system.
    Classify(ClassifyArgs),
    /// Lyapunov potential on a grid or at given points.
    Potential(EvalArgs),
    /// Rate of change on a grid or at given points.
    Flux(EvalArgs),
    /// RK4 trajectory with junction and absorption events.
    Simulate(SimulateArgs),
    /// Price landscape of a stock system.
    Price(PriceArgs),
    /// Fix the price constant and productivity from an observed equilibrium.
    Calibrate(CalibrateArgs),
    /// Markup of a sector from the two-sector GDP decomposition.
    Markup(MarkupArgs),
    /// Vacant-sector share and its equivalents in working time.
    ThreeSector(ThreeSectorArgs),
    /// Read a country table, validate it and aggregate.
    Ingest(IngestArgs),
    /// Energy-flux estimators next to the reference budget tables.
    Budget(BudgetArgs),
    /// Convert a value between registered units.
    Convert(ConvertArgs),
    /// List the named parameter sets.
    PresetList,
    /// Sample a preset curve for plotting.
    Emit(EmitArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct SystemArgs {
    /// Named parameter set (see preset-list).
    #[arg(long)]
    pub preset: Option<String>,
    /// Saturated production rate P+.
    #[arg(long, allow_hyphen_values = true)]
    pub p_plus: Option<f64>,
    /// Consumption rate P-.
    #[arg(long, allow_hyphen_values = true)]
    pub p_minus: Option<f64>,
    /// Turnover time via production T+.
    #[arg(long, allow_hyphen_values = true)]
    pub t_plus: Option<f64>,
    /// Turnover time via consumption T-.
    #[arg(long, allow_hyphen_values = true)]
    pub t_minus: Option<f64>,
    /// Stable stock M_s (alternative to --p-plus).
    #[arg(long, allow_hyphen_values = true)]
    pub m_s: Option<f64>,
    /// Unstable stock M_u (alternative to --p-minus).
    #[arg(long, allow_hyphen_values = true)]
    pub m_u: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Band on |alpha - 1| treated as the inflection case.
    #[arg(long, default_value_t = potdyn::dynamics::DEFAULT_REGIME_TOL)]
    pub tol: f64,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Evaluate at these points instead of a grid (comma-separated).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub at: Vec<f64>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Initial stock.
    #[arg(long)]
    pub m0: Option<f64>,
    #[arg(long)]
    pub dt: f64,
    #[arg(long)]
    pub steps: usize,
    /// Several initial stocks, `a,b,c` or `start:stop:step`; runs in parallel.
    #[arg(long)]
    pub sweep: Option<String>,
    /// Add the closed-form solution as a column.
    #[arg(long)]
    pub compare: bool,
}

#[derive(Args, Debug)]
pub struct PriceArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Price-stock product C (D = C/M).
    #[arg(long)]
    pub c: Option<f64>,
    /// Breakdown cap on the price.
    #[arg(long)]
    pub d_max: Option<f64>,
    /// Also evaluate potential and flux at these prices.
    #[arg(long, value_delimiter = ',')]
    pub at: Vec<f64>,
}

#[derive(Args, Debug)]
pub struct CalibrateArgs {
    /// Observed cost price.
    #[arg(long)]
    pub d_s: f64,
    /// Employment at saturation.
    #[arg(long)]
    pub n_s: f64,
    /// Saturated consumption rate.
    #[arg(long)]
    pub p_s_minus: f64,
    #[arg(long)]
    pub t_minus: f64,
    #[arg(long)]
    pub gdp: Option<f64>,
    #[arg(long)]
    pub population: Option<f64>,
    #[arg(long)]
    pub working_fraction: Option<f64>,
    #[arg(long)]
    pub hours: Option<f64>,
}

#[derive(Args, Debug)]
pub struct MarkupArgs {
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub gdp: Option<f64>,
    #[arg(long)]
    pub n1_over_n2: Option<f64>,
    #[arg(long)]
    pub n1: Option<f64>,
    #[arg(long)]
    pub n2: Option<f64>,
    #[arg(long)]
    pub sector2_revenue: Option<f64>,
    /// Annual energy sold, GJ (with --price-per-gj, replaces the revenue).
    #[arg(long)]
    pub energy_gj: Option<f64>,
    #[arg(long)]
    pub price_per_gj: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ThreeSectorArgs {
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub gdp: Option<f64>,
    /// Share of GDP paid for energy.
    #[arg(long)]
    pub share: Option<f64>,
    /// Share of the population producing energy.
    #[arg(long)]
    pub employment_share: Option<f64>,
    #[arg(long)]
    pub markup: Option<f64>,
    /// World production value, for the money/energy factor.
    #[arg(long)]
    pub production_value: Option<f64>,
    /// Annual energy consumption in joules, for the money/energy factor.
    #[arg(long)]
    pub energy_j: Option<f64>,
}

#[derive(Args, Debug)]
pub struct IngestArgs {
    /// Table to read; defaults to the bundled country table.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = potdyn::econ::DEFAULT_ENERGY_FRACTION_OF_MINING)]
    pub energy_fraction: f64,
    #[arg(long, default_value_t = potdyn::econ::DEFAULT_FOOD_THRESHOLD)]
    pub food_threshold: f64,
}

#[derive(Args, Debug)]
pub struct BudgetArgs {
    #[arg(long, default_value = "appendix_budget")]
    pub preset: String,
    /// Include the reference tables in the output.
    #[arg(long)]
    pub tables: bool,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub value: f64,
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
}

#[derive(Args, Debug)]
pub struct EmitArgs {
    #[arg(long)]
    pub preset: String,
    /// potential, flux or trajectory.
    #[arg(long, value_parser = ["potential", "flux", "trajectory"])]
    pub curve: String,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Trajectory start.
    #[arg(long)]
    pub x0: Option<f64>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Several trajectory starts, `a,b,c` or `start:stop:step`.
    #[arg(long)]
    pub sweep: Option<String>,
}

/// Error carrying the process exit status.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;
pub const EXIT_IO: u8 = 4;

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_IO,
            message: message.into(),
        }
    }
}

impl From<potdyn::Error> for CliError {
    fn from(e: potdyn::Error) -> Self {
        CliError {
            code: EXIT_DOMAIN,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let (report, default_format) = commands::dispatch(cli)?;
    let text = report.render(cli.format.unwrap_or(default_format));
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io(format!("cannot write to stdout: {e}")))
        }
    }
}
