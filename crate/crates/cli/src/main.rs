//! `grouploc`: verification suites, localization tables and pairing series.
//!
//! Exit codes: 0 when every checked quantity is within tolerance, 1 when a
//! check fails or a series does not converge, 2 on configuration errors.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grouploc::config::RunConfig;

#[derive(Parser)]
#[command(
    name = "grouploc",
    version,
    about = "Group-valued equivariant localization checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an algebraic identity suite and report every residual.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Fixed-point values per weight or per Cartan parameter, optionally against an oracle.
    Localize {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Smoothed partial sums of the intersection pairing with Cauchy diagnostics.
    Pairing {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Dump a restricted Fourier coefficient table.
    Fourier {
        /// `point-mass` (at the element given by --C), `haar`, or `character:<k1,k2,..>`.
        #[arg(long, default_value = "point-mass")]
        source: String,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    Clifford,
    Rmatrix,
    Restriction,
    Quantization,
}

impl VerifyTarget {
    pub fn name(self) -> &'static str {
        match self {
            VerifyTarget::Clifford => "clifford",
            VerifyTarget::Rmatrix => "rmatrix",
            VerifyTarget::Restriction => "restriction",
            VerifyTarget::Quantization => "quantization",
        }
    }
}

/// Flags override the `--config` file key by key.
#[derive(Args)]
struct RunArgs {
    /// Flat `key = value` file with the same keys as the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    group: Option<String>,
    /// `c-theta:<angle>`, `orbit:<s>` or `torus-free`.
    #[arg(long)]
    model: Option<String>,
    /// `one`, `liouville`, `casimir`, `height`, `contraction`, or products `a*b`.
    #[arg(long)]
    cocycle: Option<String>,
    #[arg(long)]
    lambda_max: Option<String>,
    /// `start:stop:step`, inclusive.
    #[arg(long)]
    xi_grid: Option<String>,
    /// Add oracle columns and fail on discrepancies above --tol.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long = "box")]
    box_size: Option<String>,
    /// Angles of the class C, comma separated.
    #[arg(long = "C", alias = "class", allow_hyphen_values = true)]
    class: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    /// `rule:nodes:levels:tolerance`.
    #[arg(long)]
    quadrature: Option<String>,
    /// Output path stem; `.json` and `.csv` are appended. Standard output if absent.
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    format: Option<String>,
}

impl RunArgs {
    fn resolve(&self) -> grouploc::Result<RunConfig> {
        let mut config = match &self.config {
            Some(path) => RunConfig::parse(&std::fs::read_to_string(path)?)?,
            None => RunConfig::default(),
        };
        let flags = [
            ("group", &self.group),
            ("model", &self.model),
            ("cocycle", &self.cocycle),
            ("lambda-max", &self.lambda_max),
            ("xi-grid", &self.xi_grid),
            ("sigma", &self.sigma),
            ("box", &self.box_size),
            ("class", &self.class),
            ("tol", &self.tol),
            ("quadrature", &self.quadrature),
            ("out", &self.out),
            ("format", &self.format),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                config.set(key, v)?;
            }
        }
        if self.oracle {
            config.set("oracle", "true")?;
        }
        Ok(config)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify { target, run } => {
            run.resolve().and_then(|c| commands::verify(*target, &c))
        }
        Command::Localize { run } => run.resolve().and_then(|c| commands::localize(&c)),
        Command::Pairing { run } => run.resolve().and_then(|c| commands::pairing(&c)),
        Command::Fourier { source, run } => {
            run.resolve().and_then(|c| commands::fourier(source, &c))
        }
    };
    match outcome {
        Ok(passed) => ExitCode::from(if passed { 0 } else { 1 }),
        Err(e) => {
            eprintln!("grouploc: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
