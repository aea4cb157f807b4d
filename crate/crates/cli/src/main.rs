//! `dmeur`: reports, grid sweeps and figure data for the two-qubit
//! Heisenberg chain with DM interaction.

mod config;

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use dmeur::measures::convexity_margin;
use dmeur::random::{RandomStates, DEFAULT_SEED};
use dmeur::sweep::{
    figure_data, run_report, run_sweep, v_collapse_check, write_csv, Axis, FigureId, GridOverrides,
    GridSpec, SweepError, DEFAULT_PRECISION,
};
use dmeur::{tol, Error, ModelParams};

use crate::config::Config;

#[derive(Parser)]
#[command(name = "dmeur", version, about)]
struct Cli {
    /// Plain-text `key = value` file; explicit flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Significant digits in CSV output
    #[arg(long, global = true)]
    precision: Option<String>,

    /// Seed for randomized checks
    #[arg(long, global = true)]
    seed: Option<String>,

    /// Worker threads for grid evaluation (default: all cores)
    #[arg(long, global = true)]
    threads: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct GridArgs {
    /// Coupling J: `x`, `a,b,c` or `min:max:count[:lin|log]`
    #[arg(long, allow_hyphen_values = true)]
    j: Option<String>,

    /// DM strength D, same syntax as --j
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,

    /// Temperature T, same syntax as --j
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the CSV row for a single (J, D, T)
    Report {
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Evaluate a (J, D, T) grid and write it as CSV
    Sweep {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the data behind one figure (fig2 .. fig10); axes may be overridden
    Figure {
        id: Option<String>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare V(Y) curves for two couplings of the same sign
    Vcollapse {
        /// DM strengths to test
        #[arg(long, allow_hyphen_values = true)]
        d: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        j1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        j2: Option<String>,
        /// Temperature grid (default: 200 log points over [0.05 min|J|, 10 max|J|])
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Check mixedness convexity on random state pairs
    Check {
        #[arg(long)]
        samples: Option<String>,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
    Io(String),
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Io(m) | CliError::Failed(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Model(e) => e.into(),
            other => CliError::Io(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn parse_value<T: FromStr>(raw: Option<String>, name: &str) -> Result<Option<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    raw.map(|s| {
        s.parse::<T>()
            .map_err(|e| CliError::Usage(format!("--{name}: {e}")))
    })
    .transpose()
}

fn required<T>(value: Option<T>, name: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing --{name}")))
}

struct Settings {
    config: Config,
    precision: usize,
    seed: u64,
}

impl Settings {
    fn pick<T: FromStr>(&self, flag: Option<&str>, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        parse_value(self.config.pick(flag, key), key)
    }

    fn axes(&self, grid: &GridArgs) -> Result<GridOverrides, CliError> {
        Ok(GridOverrides {
            j: self.pick(grid.j.as_deref(), "j")?,
            d: self.pick(grid.d.as_deref(), "d")?,
            t: self.pick(grid.t.as_deref(), "t")?,
        })
    }

    fn out(&self, flag: &Option<PathBuf>) -> Result<PathBuf, CliError> {
        let raw = self
            .config
            .pick(flag.as_ref().and_then(|p| p.to_str()), "out");
        required(raw.map(PathBuf::from), "out")
    }
}

fn scalar(axis: Option<Axis>, name: &str) -> Result<f64, CliError> {
    match required(axis, name)? {
        Axis::List(v) if v.len() == 1 => Ok(v[0]),
        other => Err(CliError::Usage(format!(
            "--{name} expects one value, got '{other}'"
        ))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(path) => Config::load(path).map_err(CliError::Usage)?,
        None => Config::default(),
    };
    let precision = parse_value::<usize>(
        config.pick(cli.precision.as_deref(), "precision"),
        "precision",
    )?
    .unwrap_or(DEFAULT_PRECISION);
    if !(1..=17).contains(&precision) {
        return Err(CliError::Usage("--precision must be in 1..=17".into()));
    }
    let seed = parse_value::<u64>(config.pick(cli.seed.as_deref(), "seed"), "seed")?
        .unwrap_or(DEFAULT_SEED);
    if let Some(n) =
        parse_value::<usize>(config.pick(cli.threads.as_deref(), "threads"), "threads")?
    {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let s = Settings {
        config,
        precision,
        seed,
    };

    match cli.command {
        Command::Report { grid } => {
            let axes = s.axes(&grid)?;
            let p = ModelParams::new(
                scalar(axes.j, "j")?,
                scalar(axes.d, "d")?,
                scalar(axes.t, "t")?,
            )?;
            let row = run_report(&p)?;
            write_csv(&[row], s.precision, io::stdout().lock())?;
        }
        Command::Sweep { grid, out } => {
            let axes = s.axes(&grid)?;
            let spec = GridSpec::new(
                required(axes.j, "j")?,
                required(axes.d, "d")?,
                required(axes.t, "t")?,
            )?;
            let out = s.out(&out)?;
            let n = run_sweep(&spec, &out, s.precision)?;
            println!("{n} rows -> {}", out.display());
        }
        Command::Figure { id, grid, out } => {
            let fig: FigureId = required(s.pick(id.as_deref(), "id")?, "id")?;
            let axes = s.axes(&grid)?;
            let out = s.out(&out)?;
            let n = figure_data(fig, &axes, &out, s.precision)?;
            println!("{fig}: {n} rows -> {}", out.display());
        }
        Command::Vcollapse { d, j1, j2, t } => {
            let ds: Axis = s.pick(d.as_deref(), "d")?.unwrap_or(Axis::scalar(1.0));
            ds.validate()?;
            let j1: f64 = required(s.pick(j1.as_deref(), "j1")?, "j1")?;
            let j2: f64 = required(s.pick(j2.as_deref(), "j2")?, "j2")?;
            let ts = match s.pick::<Axis>(t.as_deref(), "t")? {
                Some(axis) => axis,
                None => {
                    let (lo, hi) = (j1.abs().min(j2.abs()), j1.abs().max(j2.abs()));
                    Axis::log(0.05 * lo, 10.0 * hi, 200)
                }
            };
            ts.validate()?;
            let t_grid = ts.values();
            let devs = ds
                .values()
                .into_iter()
                .map(|d| Ok((d, v_collapse_check(d, j1, j2, &t_grid)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            println!("D,max_dV,collapses");
            for (d, dev) in devs {
                println!("{d},{dev:e},{}", dev <= tol::V_COLLAPSE);
            }
        }
        Command::Check { samples } => {
            let n: usize = s.pick(samples.as_deref(), "samples")?.unwrap_or(1000);
            let mut rng = RandomStates::new(s.seed);
            let mut worst = f64::INFINITY;
            for k in 0..n {
                let dim = if k % 2 == 0 { 4 } else { 2 };
                let a = rng.density_matrix(dim);
                let b = rng.density_matrix(dim);
                let x = rng.uniform(0.0, 1.0);
                worst = worst.min(convexity_margin(&a, &b, x)?);
            }
            println!(
                "seed {}: {n} triples, min convexity margin {worst:e}",
                s.seed
            );
            if worst < -tol::ATOL_EIG {
                return Err(CliError::Failed("convexity violated".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
