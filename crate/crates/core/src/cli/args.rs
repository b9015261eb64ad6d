use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::cli::{Command, Method, OutputFormat, RunConfig, SweepRange, GRID_ENV};
use crate::index::DEFAULT_RESOLUTION;
use crate::suites::{Suite, DEFAULT_SEED};

/// Numerical radius and numerical index of absolute symmetric norms on R².
#[derive(Debug, Parser)]
#[command(name = "numidx", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,

    /// Norm spec, e.g. '{"family":"lp","p":1.5}'.
    #[arg(long, global = true)]
    pub norm: Option<String>,

    /// Operator entries t11,t12,t21,t22.
    #[arg(long = "op", global = true, allow_hyphen_values = true)]
    pub op: Option<String>,

    /// Resolution of the brute-force index search.
    #[arg(long, global = true, env = GRID_ENV, default_value_t = DEFAULT_RESOLUTION)]
    pub grid: usize,

    /// Output format [default: csv for sweep, json otherwise].
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Numerical radius and operator norm of --op.
    Radius,
    /// Validate a norm spec and print basic quantities.
    Norm,
    /// Numerical index bounds, certificate and estimate.
    Index {
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// The constant M_p.
    Mp {
        #[arg(long)]
        p: f64,
    },
    /// Tabulate the ℓ_p family over start:stop:step.
    Sweep {
        #[arg(long, value_parser = parse_range)]
        range: SweepRange,
    },
    /// Run a property suite; all of them when none is named.
    Verify {
        #[arg(value_enum)]
        suite: Option<Suite>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn parse_range(s: &str) -> Result<SweepRange, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        let command = match &self.command {
            Cmd::Radius => Command::Radius,
            Cmd::Norm => Command::Norm,
            Cmd::Index { .. } => Command::Index,
            Cmd::Mp { .. } => Command::Mp,
            Cmd::Sweep { .. } => Command::Sweep,
            Cmd::Verify { .. } => Command::Verify,
        };
        let mut config = RunConfig::new(command);
        config.norm_spec = self.norm;
        config.operator = self.op;
        config.grid_resolution = self.grid;
        config.output_format = self.format;
        config.output_path = self.output;
        match self.command {
            Cmd::Index { method } => config.method = method,
            Cmd::Mp { p } => config.exponent = Some(p),
            Cmd::Sweep { range } => config.sweep_range = Some(range),
            Cmd::Verify { suite, seed } => {
                config.suite = suite;
                config.seed = seed;
            }
            Cmd::Radius | Cmd::Norm => {}
        }
        config
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_invocations() {
        let c =
            Cli::try_parse_from(["numidx", "index", "--norm", r#"{"family":"lp","p":1.5}"#, "--method", "certified"])
                .unwrap()
                .into_config();
        assert_eq!(c.command, Command::Index);
        assert_eq!(c.method, Method::Certified);

        let c = Cli::try_parse_from(["numidx", "radius", "--op", "-1,0,0,1"]).unwrap().into_config();
        assert_eq!(c.operator.as_deref(), Some("-1,0,0,1"));

        let c = Cli::try_parse_from(["numidx", "sweep", "--range", "1.5:3.0:0.5", "--format", "text"])
            .unwrap()
            .into_config();
        assert_eq!(c.sweep_range.unwrap().values().len(), 4);
        assert_eq!(c.output_format, Some(OutputFormat::Text));

        let c = Cli::try_parse_from(["numidx", "verify", "minimax", "--seed", "9"]).unwrap().into_config();
        assert_eq!((c.suite, c.seed), (Some(Suite::Minimax), 9));

        assert!(Cli::try_parse_from(["numidx", "sweep", "--range", "0.5:3:0.5"]).is_err());
    }
}
