//! Command-line workbench: code generation and ingestion, profiling,
//! MacWilliams tables, tester and corrector experiments, and the full
//! verification suite.
//!
//! Exit codes: 0 all hard assertions pass, 1 assertion or operation
//! failure, 2 usage/parse error, 3 enumeration guard exceeded.

pub mod commands;
pub mod report_doc;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use sparsecode::Rat;
use std::str::FromStr;
use thiserror::Error;

/// Default cap on candidate dual words per enumeration; override with the
/// SPARSECODE_GUARD_LIMIT environment variable.
pub const DEFAULT_GUARD_LIMIT: u64 = 100_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error in {0}: {1}")]
    Parse(String, String),
    #[error("{0}")]
    Failure(String),
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("io error on {0}: {1}")]
    Io(String, String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) | CliError::Parse(_, _) | CliError::Io(_, _) => 2,
            CliError::Guard(_) => 3,
        }
    }
}

pub fn guard_limit() -> u64 {
    std::env::var("SPARSECODE_GUARD_LIMIT")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_GUARD_LIMIT)
}

/// Parses "3/4", "0.25", or "2" into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|e| e.to_string())?;
        let d = BigInt::from_str(den.trim()).map_err(|e| e.to_string())?;
        if d == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int_part = if int.is_empty() || int == "-" {
            BigInt::from(0)
        } else {
            BigInt::from_str(int).map_err(|e| e.to_string())?
        };
        let digits = frac.trim();
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("bad decimal {s}"));
        }
        let scale = BigInt::from(10u32).pow(digits.len() as u32);
        let frac_part = BigInt::from_str(digits).map_err(|e| e.to_string())?;
        let negative = s.starts_with('-');
        let total = &int_part * &scale + if negative { -frac_part } else { frac_part };
        return Ok(Rat::new(total, scale));
    }
    let n = BigInt::from_str(s).map_err(|e| e.to_string())?;
    Ok(Rat::from_integer(n))
}

/// Comma-separated residues: "1,0,2".
pub fn parse_word_residues(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|e| e.to_string()))
        .collect()
}

/// Corruption spec "pos:val,pos:val" (values are added to the codeword).
pub fn parse_corruption(s: &str) -> Result<Vec<(usize, u64)>, String> {
    s.split(',')
        .map(|pair| {
            let (p, v) = pair
                .split_once(':')
                .ok_or_else(|| format!("bad corruption entry {pair}, want pos:val"))?;
            let pos = p.trim().parse::<usize>().map_err(|e| e.to_string())?;
            let val = v.trim().parse::<u64>().map_err(|e| e.to_string())?;
            Ok((pos, val))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// The sparsity/bias parameter flags shared by the analysis commands.
#[derive(Debug, Args, Clone)]
pub struct ParamArgs {
    /// Sparsity exponent t in |C| <= n^t (rational)
    #[arg(long, default_value = "2", value_parser = parse_rational)]
    pub t: Rat,
    /// Bias exponent gamma in bias <= n^-gamma (rational)
    #[arg(long, default_value = "1/2", value_parser = parse_rational)]
    pub gamma: Rat,
    /// Target error exponent c (rational)
    #[arg(long, default_value = "1", value_parser = parse_rational)]
    pub c: Rat,
    /// Distance parameter delta in [0, 1/2] (rational)
    #[arg(long, default_value = "1/4", value_parser = parse_rational)]
    pub delta: Rat,
    /// Closeness parameter tau in [0, 1/2) (rational)
    #[arg(long, default_value = "1/10", value_parser = parse_rational)]
    pub tau: Rat,
}

#[derive(Debug, Args, Clone)]
pub struct OutputArgs {
    /// Write the machine-readable report here
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Report format
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Omit the timestamp field (reports become byte-reproducible)
    #[arg(long)]
    pub no_timestamp: bool,
}

#[derive(Debug, Parser)]
#[command(name = "sparsecode", version, about = "Workbench for local testability and self-correction of sparse low-bias linear codes over prime fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random full-rank code and write its code file
    Gen {
        /// Field order (prime)
        #[arg(long)]
        q: u64,
        /// Block length
        #[arg(long)]
        n: usize,
        /// Dimension (number of generator rows)
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resample until the measured bias is at most this (rational)
        #[arg(long, value_parser = parse_rational)]
        max_bias: Option<Rat>,
        /// Resampling budget for --max-bias
        #[arg(long, default_value_t = 1000)]
        retries: usize,
        /// Output code file
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Print the exact profile of a code file
    Inspect {
        #[arg(long = "in")]
        input: std::path::PathBuf,
    },
    /// Weight distributions of a code and its dual, cross-checked against
    /// dual enumeration for k <= kmax
    Macwilliams {
        #[arg(long = "in")]
        input: std::path::PathBuf,
        #[arg(long)]
        kmax: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the canonical tester on a word: exact rejection probability,
    /// Monte Carlo estimate, soundness ratio
    Test {
        #[arg(long = "in")]
        input: std::path::PathBuf,
        /// Test weight, or "auto" for the theorem-level selection
        #[arg(long, default_value = "3")]
        k: String,
        /// Explicit word "1,0,2"; defaults to a random word at distance
        /// floor(delta * n) from the code
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the canonical self-corrector at an index against a corrupted
    /// codeword
    Correct {
        #[arg(long = "in")]
        input: std::path::PathBuf,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Index to correct
        #[arg(long)]
        index: usize,
        /// Explicit corruption "pos:val,pos:val" (additive, nonzero values)
        #[arg(long)]
        corrupt: Option<String>,
        /// Or: this many random corrupted positions
        #[arg(long)]
        errors: Option<usize>,
        /// Slack added to the k*tau bound (models the theta(1/n) term)
        #[arg(long, default_value = "1/20", value_parser = parse_rational)]
        slack: Rat,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Full verification suite: Krawtchouk properties, and (with a code
    /// file) the weight-distribution, counting and bound checks
    Verify {
        /// Code file; omit for a Krawtchouk-only report
        #[arg(long = "in")]
        input: Option<std::path::PathBuf>,
        /// Field order (required without --in; must match the file with it)
        #[arg(long)]
        q: Option<u64>,
        /// Block length (required without --in)
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// Weight for the enumeration-backed identity checks
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Self-test hook: inject a defect into the MacWilliams
        /// cross-check so the failure path is exercised
        #[arg(long, hide = true)]
        inject_macwilliams_defect: bool,
    },
}

pub fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { q, n, dim, seed, max_bias, retries, out } => {
            commands::cmd_gen(q, n, dim, seed, max_bias.as_ref(), retries, &out)
        }
        Command::Inspect { input } => commands::cmd_inspect(&input),
        Command::Macwilliams { input, kmax, output } => {
            commands::cmd_macwilliams(&input, kmax, &output)
        }
        Command::Test { input, k, word, trials, seed, params, output } => {
            commands::cmd_test(&input, &k, word.as_deref(), trials, seed, &params, &output)
        }
        Command::Correct {
            input,
            k,
            index,
            corrupt,
            errors,
            slack,
            trials,
            seed,
            params,
            output,
        } => commands::cmd_correct(
            &input,
            k,
            index,
            corrupt.as_deref(),
            errors,
            &slack,
            trials,
            seed,
            &params,
            &output,
        ),
        Command::Verify {
            input,
            q,
            n,
            kmax,
            k,
            seed,
            params,
            output,
            inject_macwilliams_defect,
        } => commands::cmd_verify(
            input.as_deref(),
            q,
            n,
            kmax,
            k,
            seed,
            &params,
            &output,
            inject_macwilliams_defect,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/4").unwrap(), Rat::new(3.into(), 4.into()));
        assert_eq!(parse_rational("0.25").unwrap(), Rat::new(1.into(), 4.into()));
        assert_eq!(parse_rational("2").unwrap(), Rat::from_integer(2.into()));
        assert_eq!(parse_rational("-0.5").unwrap(), Rat::new((-1).into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn word_and_corruption_parsing() {
        assert_eq!(parse_word_residues("1,0,2").unwrap(), vec![1, 0, 2]);
        assert!(parse_word_residues("1,x").is_err());
        assert_eq!(parse_corruption("2:1,5:2").unwrap(), vec![(2, 1), (5, 2)]);
        assert!(parse_corruption("2").is_err());
    }

    #[test]
    fn exit_codes_match_the_contract() {
        assert_eq!(CliError::Failure("x".into()).exit_code(), 1);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Parse("f".into(), "d".into()).exit_code(), 2);
        assert_eq!(CliError::Guard("g".into()).exit_code(), 3);
    }
}
