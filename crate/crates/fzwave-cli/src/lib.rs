//! Command-line front end: grids of evaluations written as CSV or SVG.
//!
//! Every command returns a [`Table`]; [`run`] renders it and maps failures to
//! exit codes (0 success, 2 bad flags, 3 numerical failure).

pub mod commands;
pub mod input;
pub mod svg;
pub mod table;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fzwave::{QuadratureConfig, ZenerParams};

pub use table::Table;

#[derive(Debug, Parser)]
#[command(name = "fzwave", version, about = "Fractional Zener wave equation: tables and figures")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Fractional order; defaults to 0.5 (1 for `sls`).
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true, default_value_t = 0.5)]
    pub tau: f64,
    #[arg(long = "rel-tol", global = true, default_value_t = 1e-8)]
    pub rel_tol: f64,
    #[arg(long = "abs-tol", global = true, default_value_t = 1e-10)]
    pub abs_tol: f64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SlsMode {
    /// `S = jump + E` on an x grid at fixed t.
    Grid,
    /// One-sided values of `S` across the front at each x.
    Probe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CauchyMode {
    /// Distance of the rescaled outgoing packets from `A·k_∞`.
    Split,
    /// `max|u|·t^{1/(1+α)}/‖u₀‖₁` per time.
    Bound,
    /// `u(·, t)` on an x grid.
    Solve,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The kernel l_α(s) on a log grid of |s| and a set of arguments.
    Kernel {
        #[arg(long = "s-min", default_value_t = 1e-4)]
        s_min: f64,
        #[arg(long = "s-max", default_value_t = 1e4)]
        s_max: f64,
        #[arg(long, default_value_t = 64)]
        points: usize,
        /// Arguments of s as fractions of π.
        #[arg(long = "arg-fracs", allow_hyphen_values = true, value_delimiter = ',', default_value = "-0.9,-0.5,0,0.5,0.9")]
        arg_fracs: Vec<f64>,
    },
    /// Data behind the three reference figures.
    Figures {
        which: Figure,
        /// Grid size for fig1, fig3 and both fig2 blocks.
        #[arg(long, default_value_t = 256)]
        points: usize,
    },
    /// Phase and group velocity and attenuation on a log frequency grid.
    Dispersion {
        #[arg(long = "omega-min", default_value_t = 1e-4)]
        omega_min: f64,
        #[arg(long = "omega-max", default_value_t = 1e4)]
        omega_max: f64,
        #[arg(long, default_value_t = 64)]
        points: usize,
    },
    /// Standard linear solid (alpha = 1): jump and continuous part.
    Sls {
        #[arg(long, value_enum, default_value_t = SlsMode::Grid)]
        mode: SlsMode,
        #[arg(long = "x-min", allow_negative_numbers = true, default_value_t = 0.0)]
        x_min: f64,
        #[arg(long = "x-max", allow_negative_numbers = true, default_value_t = 2.0)]
        x_max: f64,
        #[arg(long, default_value_t = 21)]
        points: usize,
        #[arg(long, default_value_t = 2.0)]
        t: f64,
    },
    /// Rescaled packet k_t next to its limit k_∞.
    Packet {
        #[arg(long, default_value_t = 100.0)]
        t: f64,
        #[arg(long = "nu-min", allow_negative_numbers = true, default_value_t = -1.0)]
        nu_min: f64,
        #[arg(long = "nu-max", allow_negative_numbers = true, default_value_t = 1.0)]
        nu_max: f64,
        #[arg(long, default_value_t = 41)]
        points: usize,
    },
    /// Cauchy problem for sampled initial data (bundled bump by default).
    Cauchy {
        #[arg(long, value_enum, default_value_t = CauchyMode::Split)]
        mode: CauchyMode,
        /// CSV with columns x,u0 and optionally v0 on a uniform grid.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 100.0)]
        t: f64,
        /// Times for `--mode bound`.
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
        times: Vec<f64>,
        #[arg(long = "x-min", allow_negative_numbers = true)]
        x_min: Option<f64>,
        #[arg(long = "x-max", allow_negative_numbers = true)]
        x_max: Option<f64>,
        /// Output points for `--mode solve`; the data step is used when absent.
        #[arg(long)]
        points: Option<usize>,
    },
}

/// Failure classes with their exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Flag(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Flag(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Flag(m) => write!(f, "invalid flags: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<fzwave::Error> for CliError {
    fn from(e: fzwave::Error) -> Self {
        match e {
            fzwave::Error::InvalidParameter(m) => CliError::Flag(m),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

/// Parameters shared by all commands.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub params: ZenerParams,
    pub cfg: QuadratureConfig,
}

impl RunConfig {
    /// Fractional model; `alpha = 1` is redirected to the `sls` command.
    pub fn fractional(g: &GlobalArgs) -> Result<Self, CliError> {
        let alpha = g.alpha.unwrap_or(0.5);
        if alpha == 1.0 {
            return Err(CliError::Flag(
                "alpha = 1 is the standard linear solid; use the `sls` command".into(),
            ));
        }
        Self::build(ZenerParams::new(alpha, g.tau), g)
    }

    pub fn sls(g: &GlobalArgs) -> Result<Self, CliError> {
        if let Some(a) = g.alpha {
            if a != 1.0 {
                return Err(CliError::Flag(format!("the sls command needs alpha = 1, got {a}")));
            }
        }
        Self::build(ZenerParams::sls(g.tau), g)
    }

    fn build(p: fzwave::Result<ZenerParams>, g: &GlobalArgs) -> Result<Self, CliError> {
        let params = p.map_err(|e| CliError::Flag(e.to_string()))?;
        let cfg = QuadratureConfig::new(g.rel_tol, g.abs_tol).map_err(|e| CliError::Flag(e.to_string()))?;
        Ok(RunConfig { params, cfg })
    }

    pub fn header(&self) -> String {
        format!(
            "alpha={:?} tau={:?} rel_tol={:?} abs_tol={:?}",
            self.params.alpha(),
            self.params.tau(),
            self.cfg.rel_tol,
            self.cfg.abs_tol
        )
    }
}

/// Runs a parsed command and returns its table.
pub fn execute(cli: &Cli) -> Result<Table, CliError> {
    use commands::*;
    let g = &cli.global;
    match &cli.command {
        Command::Kernel { s_min, s_max, points, arg_fracs } => {
            kernel(&RunConfig::fractional(g)?, *s_min, *s_max, *points, arg_fracs)
        }
        Command::Figures { which, points } => figures(&RunConfig::fractional(g)?, *which, *points),
        Command::Dispersion { omega_min, omega_max, points } => {
            dispersion(&RunConfig::fractional(g)?, *omega_min, *omega_max, *points)
        }
        Command::Sls { mode, x_min, x_max, points, t } => sls(&RunConfig::sls(g)?, *mode, *x_min, *x_max, *points, *t),
        Command::Packet { t, nu_min, nu_max, points } => {
            packet(&RunConfig::fractional(g)?, *t, *nu_min, *nu_max, *points)
        }
        Command::Cauchy { mode, input, t, times, x_min, x_max, points } => {
            let rc = RunConfig::fractional(g)?;
            let data = match input {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    input::parse_initial_data(&text)?
                }
                None => input::bundled_bump(),
            };
            let opts = CauchyOptions { mode: *mode, t: *t, times: times.clone(), x_min: *x_min, x_max: *x_max, points: *points };
            cauchy(&rc, &data, &opts)
        }
    }
}

/// Renders a table in the requested format.
pub fn render(table: &Table, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Svg => svg::render(table),
    }
}

/// Parses, executes, writes, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let table = match execute(&cli) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("fzwave: {e}");
            return e.exit_code();
        }
    };
    let text = render(&table, cli.global.format);
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
        }
    };
    if let Err(e) = written {
        eprintln!("fzwave: {e}");
        return e.exit_code();
    }
    let failed = table.failures();
    if failed > 0 {
        eprintln!("fzwave: {failed} row(s) failed; see the status column");
        return 3;
    }
    0
}
