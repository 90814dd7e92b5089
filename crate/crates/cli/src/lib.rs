//! Command-line front end for the `nonstatic` library.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{AxisSpec, Format, Overrides, RunConfig, SpaceSel, StateSpec};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "nonstatic", version, about = "Nonstatic quantum light waves: densities, exponent ratios, measures and self-checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Probability density table (t, x, density) per space.
    Density(RunArgs),
    /// Exponent-parameter ratio series (t, ratio, re, im) per space.
    Ratio(RunArgs),
    /// RMS measure of nonstaticity, with the closed form for Fock states.
    Measure(RunArgs),
    /// Oracle checks on the configured state; exit 2 if any fails.
    Verify(RunArgs),
    /// Period, peak time and centroid motion of a density CSV.
    Analyze {
        file: PathBuf,
    },
}

#[derive(Debug, Args, Clone, Default)]
pub struct RunArgs {
    /// TOML file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long = "A", allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// Defaults to +√(AB − 1).
    #[arg(long = "C", allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Take C = −√(AB − 1) when --C is not given.
    #[arg(long = "C-negative")]
    pub c_negative: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub hbar: Option<f64>,
    /// fock:<n> or gauss:<K_re>,<K_im>,<xi>
    #[arg(long, allow_hyphen_values = true)]
    pub state: Option<StateSpec>,
    /// q, p or both
    #[arg(long)]
    pub space: Option<SpaceSel>,
    /// Coordinate axis <min>,<max>,<count>
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<AxisSpec>,
    /// Time sweep <min>,<max>,<count>
    #[arg(long, allow_hyphen_values = true)]
    pub times: Option<AxisSpec>,
    /// csv or json
    #[arg(long)]
    pub format: Option<Format>,
    /// Output file; with --space both, _q and _p are appended to the stem.
    #[arg(long)]
    pub out: Option<String>,
    /// Print the merged configuration as TOML and exit.
    #[arg(long)]
    pub print_config: bool,
    /// Skip the AB − C² = 1 check.
    #[arg(long, hide = true)]
    pub unchecked: bool,
}

impl RunArgs {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            a: self.a,
            b: self.b,
            c: self.c,
            c_negative: self.c_negative.then_some(true),
            omega: self.omega,
            phi: self.phi,
            t0: self.t0,
            epsilon: self.epsilon,
            hbar: self.hbar,
            state: self.state,
            space: self.space,
            grid: self.grid,
            times: self.times,
            format: self.format,
            out: self.out.clone(),
        }
    }

    pub fn merged_config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        cfg.apply(&self.overrides());
        Ok(cfg)
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    type Action = fn(&config::Resolved) -> Result<(), CliError>;
    let (args, action): (RunArgs, Action) = match cli.command {
        Command::Analyze { file } => return commands::run_analyze(&file),
        Command::Density(a) => (a, commands::run_density),
        Command::Ratio(a) => (a, commands::run_ratio),
        Command::Measure(a) => (a, commands::run_measure),
        Command::Verify(a) => (a, commands::run_verify),
    };
    let cfg = args.merged_config()?;
    let resolved = cfg.resolve(args.unchecked)?;
    if args.print_config {
        print!("{}", cfg.to_toml());
        return Ok(());
    }
    action(&resolved)
}
