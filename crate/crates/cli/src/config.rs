use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gft_core::oracles::OracleConfig;
use gft_core::radii::ClassParam;
use gft_core::{Error, Result};

/// Environment variable selecting grid density: `quick` (x0.25) or `full`.
pub const SCALE_ENV: &str = "GFT_ORACLE_SCALE";

#[derive(Debug, Parser)]
#[command(
    name = "gft",
    version,
    about = "Radius computations for the operator f/f'"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArg,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum CommandArg {
    /// Closed-form and polynomial-root radii.
    Radii,
    /// r6 at the tabulated values of |a2|.
    Table1,
    /// Run the verification suite.
    Verify,
    /// Sampling estimate of a radius for one function.
    Estimate,
    /// Univalence radii of P_f across the univalent catalogue.
    Conjecture,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Order of starlikeness, in [0,1).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// G(alpha) parameter, in (0,1].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// |a2|, in [0,2].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a2: Option<f64>,
    /// koebe, koebe-beta, f1, f2, half-line, identity or custom:<path>.
    #[arg(long, global = true, default_value = "koebe")]
    pub zoo: String,
    #[arg(long, global = true, value_enum, default_value_t = Target::P)]
    pub target: Target,
    #[arg(long, global = true, value_enum, default_value_t = Property::Univalence)]
    pub property: Property,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub n_radial: Option<usize>,
    #[arg(long, global = true)]
    pub n_angular: Option<usize>,
    /// Final bracket width of the oracle radius search.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// The function itself.
    F,
    /// Its image P_f = f/f'.
    P,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Univalence,
    U,
    Starlike,
    #[value(name = "g-alpha")]
    GAlpha,
}

pub type Command = CommandArg;

/// Everything a command needs, validated.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub beta: Option<f64>,
    pub alpha: Option<f64>,
    pub a2: Option<f64>,
    pub zoo_id: String,
    pub target: Target,
    pub property: Property,
    pub oracle: OracleConfig,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    /// `scale` is the value of [`SCALE_ENV`], if set.
    pub fn from_cli(cli: Cli, scale: Option<&str>) -> Result<Self> {
        let o = cli.options;
        let factor = match scale {
            None | Some("full") => 1.0,
            Some("quick") => 0.25,
            Some(other) => {
                return Err(Error::InvalidConfig(format!(
                    "{SCALE_ENV} must be quick or full, got {other:?}"
                )))
            }
        };
        let mut oracle = OracleConfig::default().scaled(factor);
        if let Some(n) = o.n_radial {
            oracle.n_radial = n;
        }
        if let Some(n) = o.n_angular {
            oracle.n_angular = n;
        }
        if let Some(t) = o.tol {
            oracle.refine_tol = t;
        }
        oracle.validate()?;

        let probe = ClassParam {
            beta: o.beta.unwrap_or(0.0),
            alpha: o.alpha.unwrap_or(1.0),
            a2_abs: o.a2.unwrap_or(0.0),
            ..ClassParam::default()
        };
        probe.check_beta()?;
        probe.check_alpha()?;
        probe.check_a2()?;

        let format = o.format.unwrap_or(match cli.command {
            Command::Radii | Command::Verify => Format::Text,
            Command::Table1 => Format::Csv,
            Command::Estimate | Command::Conjecture => Format::Json,
        });
        Ok(Self {
            command: cli.command,
            beta: o.beta,
            alpha: o.alpha,
            a2: o.a2,
            zoo_id: o.zoo,
            target: o.target,
            property: o.property,
            oracle,
            output_path: o.out,
            format,
        })
    }

    /// Parameters with defaults filled in: beta 0, alpha 1, |a2| 0.
    pub fn params(&self) -> ClassParam {
        ClassParam {
            beta: self.beta.unwrap_or(0.0),
            alpha: self.alpha.unwrap_or(1.0),
            a2_abs: self.a2.unwrap_or(0.0),
            ..ClassParam::default()
        }
    }
}
