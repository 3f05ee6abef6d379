//! Command-line front end: reads instance files, runs the pipelines and writes a
//! JSON report to standard output with a short summary on standard error.

pub mod commands;
pub mod instance;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use reesdual_core::groebner::GroebnerError;
use reesdual_core::hypotheses::HypothesisError;
use reesdual_core::rees::ReesError;
use thiserror::Error;

pub use commands::run;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Hypothesis(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    CrossCheck(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Hypothesis(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Resource(_) => 3,
            CliError::CrossCheck(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Hypothesis(_) => "hypothesis",
            CliError::Parse(_) => "parse",
            CliError::Resource(_) => "resource",
            CliError::CrossCheck(_) => "cross-check",
        }
    }
}

impl From<GroebnerError> for CliError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::ResourceCap(_) => CliError::Resource(e.to_string()),
            other => CliError::CrossCheck(other.to_string()),
        }
    }
}

impl From<ReesError> for CliError {
    fn from(e: ReesError) -> Self {
        match e {
            ReesError::Groebner(g) => g.into(),
            ReesError::Hypothesis(_)
            | ReesError::Characteristic { .. }
            | ReesError::DegreeNotInvertible { .. }
            | ReesError::VanishingDeterminant { .. } => CliError::Hypothesis(e.to_string()),
            ReesError::RetryBudget { .. } => CliError::Hypothesis(format!("{e}; try another --seed")),
            ReesError::CrossCheck { .. } | ReesError::Fiber(_) => CliError::CrossCheck(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<HypothesisError> for CliError {
    fn from(e: HypothesisError) -> Self {
        match e {
            HypothesisError::Groebner(g) => g.into(),
            HypothesisError::RetryBudget { .. } => CliError::Hypothesis(format!("{e}; try another --seed")),
            HypothesisError::Parameters(_) => CliError::Parse(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "reesdual", version, about = "Defining equations of Rees algebras via Jacobian dual iterations")]
pub struct Cli {
    /// Include wall-clock time in the report, which makes it run dependent.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Mjd,
    Matrix,
    Diffop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Greedy,
    Euler,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the hypotheses under which the iteration gives the defining ideal.
    Hypotheses { file: PathBuf },
    /// Compute the defining ideal.
    Iterate {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "mjd")]
        method: Method,
        #[arg(long, value_enum, default_value = "greedy")]
        mode: Mode,
        /// Compare against the saturation `𝓛 : (x)^∞`.
        #[arg(long)]
        verify: bool,
    },
    /// Compare the iteration against the saturation and report its index.
    Verify {
        file: PathBuf,
        /// Multiply the last generator by `x1` before comparing.
        #[arg(long)]
        inject: bool,
    },
    /// Reduce a module to an ideal through a random Bourbaki ideal and cross-check.
    Bourbaki {
        file: PathBuf,
        #[arg(long)]
        seed: u64,
    },
    /// Draw a random instance passing the hypotheses.
    Random {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        seed: u64,
        /// Module rank; 1 gives an ideal.
        #[arg(long, default_value_t = 1)]
        e: usize,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Also write the instance as a TOML file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}
