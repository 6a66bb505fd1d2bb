use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use varchenko_core::coxeter::{FloorAmbient, DEFAULT_ORDER_LIMIT};
use varchenko_core::varchenko::WeightMode;

#[derive(Debug, Parser)]
#[command(name = "varchenko", version, about = "Varchenko determinants of finite Coxeter arrangements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the determinant as a product over relevant edges.
    Det(Common),
    /// Dump the Varchenko matrix.
    Matrix(Common),
    /// Reproduce the tables of full support reflections and class multiplicities.
    Tables(Common),
    /// Check the determinant identity by modular evaluation.
    Verify(Common),
    /// Compare the multiplicity formula with chamber counting, class by class.
    Multiplicity(Common),
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Self::Det(c) | Self::Matrix(c) | Self::Tables(c) | Self::Verify(c) | Self::Multiplicity(c) => c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assign {
    Mode(WeightMode),
    Explicit(PathBuf),
}

fn parse_assign(s: &str) -> Result<Assign, String> {
    if let Some(path) = s.strip_prefix("explicit:") {
        if path.is_empty() {
            return Err("explicit needs a file: explicit:FILE".into());
        }
        return Ok(Assign::Explicit(PathBuf::from(path)));
    }
    match s.parse::<WeightMode>()? {
        WeightMode::Explicit => Err("explicit needs a file: explicit:FILE".into()),
        m => Ok(Assign::Mode(m)),
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Group spec such as A3, B4, I2(5) or A2xA1.
    pub group: String,
    /// per-hyperplane, per-orbit, q, or explicit:FILE
    #[arg(long, default_value = "per-hyperplane", value_parser = parse_assign)]
    pub assign: Assign,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of primes used by verify.
    #[arg(long, default_value_t = 3, value_parser = positive)]
    pub primes: usize,
    /// Random points per prime used by verify.
    #[arg(long, default_value_t = 5, value_parser = positive)]
    pub trials: usize,
    /// Group in which conjugacy is taken when counting |⌊t⌉|.
    #[arg(long, default_value = "WJ")]
    pub floor_ambient: FloorAmbient,
    /// Largest group order that will be enumerated.
    #[arg(long, default_value_t = DEFAULT_ORDER_LIMIT)]
    pub limit: usize,
    /// Raise the determinant budget to |W| = 14400 and lift the matrix dump cap.
    #[arg(long)]
    pub unsafe_large: bool,
}
