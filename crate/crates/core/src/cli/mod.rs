//! Command-line surface.
//!
//! Exit codes: 0 success, 1 validation mismatch, 2 usage or domain error,
//! 3 factorization timeout.

mod input;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{ExactRational, FactorConfig, Rounding};
use crate::density::{density_interval, series_partial_sum, DECIMAL_DIGITS};
use crate::error::Error;
use crate::membership::{classify, classify_with_hint, g_mod, ClassifyConfig, ORACLE_LIMIT};
use crate::sieve::{checkpoint_counts, cross_validate, write_checkpoints_csv, SieveConfig, CROSS_VALIDATE_LIMIT};

pub use input::NumberInput;
pub use output::{OutputRecord, CSV_HEADER};

/// Environment variable holding the default worker count.
pub const JOBS_ENV: &str = "GIUGA_HALF_JOBS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TIMEOUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "giuga-half", version, about = "Membership and density for odd n with n | Σ j^((n-1)/2)")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify one odd integer (decimal, `2^m+1` or `p^k`).
    Check {
        n: String,
        /// Also evaluate the power sum directly (n <= 10^6).
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
        /// Factorization budget in milliseconds.
        #[arg(long, default_value_t = 10_000)]
        timeout_ms: u64,
    },
    /// Classify every odd integer in `lo..=hi`.
    Range {
        lo: u64,
        hi: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Worker threads (default: $GIUGA_HALF_JOBS, else all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Exact or empirical density.
    Density {
        #[command(subcommand)]
        mode: DensityMode,
    },
    /// Cross-check oracle, factorization test and sieve up to `limit`.
    Validate {
        #[arg(long)]
        limit: u64,
    },
}

#[derive(Debug, Subcommand)]
enum DensityMode {
    /// Rational interval of width `eps` containing the density.
    Exact {
        #[arg(long)]
        eps: String,
        #[arg(long)]
        json: bool,
    },
    /// Member counts from the complement sieve, as CSV.
    Empirical {
        #[arg(long)]
        limit: u64,
        /// Extra limits to report, comma separated.
        #[arg(long, value_delimiter = ',')]
        checkpoints: Vec<u64>,
        #[arg(long, default_value_t = crate::sieve::DEFAULT_SEGMENT_SLOTS)]
        segment_slots: usize,
    },
    /// Partial sum of the series over `m ∈ M ∪ {1}` with primes below the bound.
    Series {
        #[arg(long)]
        prime_bound: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Output is buffered so commands can run inside the worker pool.
#[derive(Default)]
struct Io {
    out: Vec<u8>,
    err: Vec<u8>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::FactorizationTimeout { .. } => EXIT_TIMEOUT,
        Error::EvenInput(_) | Error::InvalidInput(_) => EXIT_USAGE,
    }
}

fn jobs_from_env() -> Option<usize> {
    std::env::var(JOBS_ENV).ok()?.trim().parse().ok()
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let jobs = match &cli.command {
        Command::Range { jobs: Some(j), .. } => Some(*j),
        _ => jobs_from_env(),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_USAGE;
        }
    };
    let (code, io) = pool.install(|| {
        let mut io = Io::default();
        let code = dispatch(cli.command, &mut io);
        (code, io)
    });
    let _ = out.write_all(&io.out).and_then(|_| out.flush());
    let _ = err.write_all(&io.err).and_then(|_| err.flush());
    code
}

fn dispatch(command: Command, io: &mut Io) -> i32 {
    let result = match command {
        Command::Check { n, oracle, json, timeout_ms } => check(&n, oracle, json, timeout_ms, io),
        Command::Range { lo, hi, format, .. } => range(lo, hi, format, io),
        Command::Density { mode } => density(mode, io),
        Command::Validate { limit } => validate(limit, io),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::InvalidInput(format!("write failed: {e}"))
}

#[derive(Serialize)]
struct OracleCheck {
    g_mod: String,
    agree: bool,
}

#[derive(Serialize)]
struct CheckOutput {
    #[serde(flatten)]
    record: OutputRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleCheck>,
}

fn check(raw: &str, oracle: bool, json: bool, timeout_ms: u64, io: &mut Io) -> Result<i32, Error> {
    let input: NumberInput = raw.parse()?;
    let config = ClassifyConfig { factor: FactorConfig { budget: Duration::from_millis(timeout_ms) } };
    let record = classify_with_hint(&input.value, input.factorization, &config)?;
    let out = OutputRecord::from(&record);

    let oracle_value = if oracle {
        let n = input.value.to_u64().filter(|&n| n <= ORACLE_LIMIT).ok_or_else(|| {
            Error::InvalidInput(format!("--oracle needs n <= {ORACLE_LIMIT}"))
        })?;
        Some(g_mod(n))
    } else {
        None
    };
    let agree = oracle_value.map(|g| (g == 0) == record.member);

    if json {
        let oracle = oracle_value.zip(agree).map(|(g, agree)| OracleCheck { g_mod: g.to_string(), agree });
        let line = serde_json::to_string(&CheckOutput { record: out, oracle }).expect("plain data serializes");
        writeln!(io.out, "{line}").map_err(io_error)?;
    } else {
        let mut line = out.to_text();
        if let (Some(g), Some(a)) = (oracle_value, agree) {
            line.push_str(&format!(" oracle_g_mod={g} agree={a}"));
        }
        writeln!(io.out, "{line}").map_err(io_error)?;
    }
    Ok(if agree == Some(false) { EXIT_MISMATCH } else { EXIT_OK })
}

fn range(lo: u64, hi: u64, format: Format, io: &mut Io) -> Result<i32, Error> {
    if lo < 1 || lo > hi {
        return Err(Error::InvalidInput(format!("need 1 <= lo <= hi, got {lo}..{hi}")));
    }
    let first = if lo % 2 == 1 { lo } else { lo + 1 };
    let odds: Vec<u64> = (first..=hi).step_by(2).collect();
    let config = ClassifyConfig::default();
    let records: Vec<OutputRecord> = odds
        .par_iter()
        .map(|&n| classify(&BigUint::from(n), &config).map(|r| OutputRecord::from(&r)))
        .collect::<Result<_, _>>()?;
    if format == Format::Csv {
        writeln!(io.out, "{CSV_HEADER}").map_err(io_error)?;
    }
    for r in &records {
        let line = match format {
            Format::Json => r.to_json(),
            Format::Csv => r.to_csv(),
        };
        writeln!(io.out, "{line}").map_err(io_error)?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct DensityJson<'a> {
    epsilon: String,
    k: usize,
    primes_used: &'a [u64],
    union_density: String,
    lower: String,
    upper: String,
    decimal_lower: &'a str,
    decimal_upper: &'a str,
}

fn density(mode: DensityMode, io: &mut Io) -> Result<i32, Error> {
    match mode {
        DensityMode::Exact { eps, json } => {
            let eps: ExactRational = eps.parse()?;
            if !eps.is_positive() {
                return Err(Error::InvalidInput("--eps must be positive".into()));
            }
            let rep = density_interval(&eps);
            if json {
                let value = DensityJson {
                    epsilon: eps.to_string(),
                    k: rep.k,
                    primes_used: &rep.primes_used,
                    union_density: rep.union_density.to_string(),
                    lower: rep.lower.to_string(),
                    upper: rep.upper.to_string(),
                    decimal_lower: &rep.decimal_lower,
                    decimal_upper: &rep.decimal_upper,
                };
                let value = serde_json::to_string(&value).expect("plain data serializes");
                writeln!(io.out, "{value}").map_err(io_error)?;
            } else {
                let primes: Vec<String> = rep.primes_used.iter().map(|p| p.to_string()).collect();
                let lines = [
                    format!("epsilon={}", rep.epsilon),
                    format!("k={}", rep.k),
                    format!("primes_used={}", primes.join(",")),
                    format!("union_density={}", rep.union_density),
                    format!("union_density_decimal={}", rep.union_density.to_decimal(DECIMAL_DIGITS, Rounding::Nearest)),
                    format!("lower={}", rep.lower),
                    format!("upper={}", rep.upper),
                    format!("interval=[{}, {}]", rep.decimal_lower, rep.decimal_upper),
                ];
                for l in lines {
                    writeln!(io.out, "{l}").map_err(io_error)?;
                }
            }
        }
        DensityMode::Empirical { limit, mut checkpoints, segment_slots } => {
            if limit < 3 || segment_slots == 0 {
                return Err(Error::InvalidInput("need --limit >= 3 and a positive segment size".into()));
            }
            if checkpoints.iter().any(|&c| c < 1 || c > limit) {
                return Err(Error::InvalidInput("checkpoints must lie in 1..=limit".into()));
            }
            checkpoints.push(limit);
            checkpoints.sort_unstable();
            checkpoints.dedup();
            let rows = checkpoint_counts(&checkpoints, &SieveConfig { segment_slots });
            write_checkpoints_csv(&rows, &mut io.out).map_err(io_error)?;
        }
        DensityMode::Series { prime_bound } => {
            if prime_bound < 2 {
                return Err(Error::InvalidInput("--prime-bound must be at least 2".into()));
            }
            let sum = series_partial_sum(prime_bound);
            writeln!(io.out, "{sum}").map_err(io_error)?;
            writeln!(io.out, "decimal={}", sum.to_decimal(DECIMAL_DIGITS, Rounding::Nearest)).map_err(io_error)?;
        }
    }
    Ok(EXIT_OK)
}

fn validate(limit: u64, io: &mut Io) -> Result<i32, Error> {
    if !(1..=CROSS_VALIDATE_LIMIT).contains(&limit) {
        return Err(Error::InvalidInput(format!("--limit must lie in 1..={CROSS_VALIDATE_LIMIT}")));
    }
    let mismatches = cross_validate(limit)?;
    if mismatches.is_empty() {
        writeln!(io.out, "OK").map_err(io_error)?;
        return Ok(EXIT_OK);
    }
    writeln!(io.out, "MISMATCH {}", mismatches.len()).map_err(io_error)?;
    for m in mismatches {
        let oracle = m.oracle.map_or("-".to_string(), |o| o.to_string());
        writeln!(io.out, "n={} oracle={} theorem={} sieve={}", m.n, oracle, m.theorem, m.sieve).map_err(io_error)?;
    }
    Ok(EXIT_MISMATCH)
}
