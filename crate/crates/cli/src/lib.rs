//! The `dlcusp` command line: batch verification over prime ranges with
//! text, JSON, CSV and markdown output and an on-disk table cache.

pub mod args;
pub mod cache;
mod commands;
pub mod error;
pub mod output;

use dlcusp_core::arith::is_prime;
use dlcusp_core::cuspform::Reading;
use dlcusp_core::group::check_prime;

pub use args::{Cli, Command, Format, RangeArgs, ReadingArg};
pub use cache::Cache;
pub use error::CliError;

pub const DEFAULT_RANGE: (u64, u64) = (7, 101);

/// What a command printed and how the process should exit.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn error(e: CliError) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Job {
    Classes(u64),
    Chartable(u64),
    Decompose(u64),
    Verify(Vec<u64>),
    Corollaries(Vec<u64>),
    Papertable(Vec<u64>),
}

/// A validated invocation.
#[derive(Debug)]
pub struct RunConfig {
    pub job: Job,
    pub range: Option<(u64, u64)>,
    pub mod12: Option<u64>,
    pub format: Format,
    pub readings: Vec<Reading>,
    pub jobs: Option<usize>,
    pub cache: Cache,
    pub timestamp: bool,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let single = |p: u64| check_prime(p).map(|_| p).map_err(CliError::from);
        let mut range = None;
        let mut mod12 = None;
        let mut ranged = |a: &RangeArgs| -> Result<Vec<u64>, CliError> {
            let (lo, hi) = match a.range.as_deref() {
                Some([lo, hi]) => (*lo, *hi),
                Some(_) => return Err(CliError::Usage("--range takes MIN MAX".into())),
                None => DEFAULT_RANGE,
            };
            if lo > hi {
                return Err(CliError::Usage(format!("empty range {lo}..{hi}")));
            }
            if lo < 7 {
                return Err(CliError::Usage(format!(
                    "p must be prime ≥ 7 (range starts at {lo})"
                )));
            }
            if let Some(r) = a.mod12 {
                if ![1, 5, 7, 11].contains(&r) {
                    return Err(CliError::Usage(format!(
                        "--mod12 must be 1, 5, 7 or 11 (got {r})"
                    )));
                }
            }
            let primes: Vec<u64> = (lo..=hi)
                .filter(|&p| is_prime(p) && a.mod12.is_none_or(|r| p % 12 == r))
                .collect();
            if primes.is_empty() {
                return Err(CliError::Usage(format!(
                    "no primes in {lo}..{hi} match the filter"
                )));
            }
            range = Some((lo, hi));
            mod12 = a.mod12;
            Ok(primes)
        };
        let job = match &cli.command {
            Command::Classes { p } => Job::Classes(single(*p)?),
            Command::Chartable { p } => Job::Chartable(single(*p)?),
            Command::Decompose { p } => Job::Decompose(single(*p)?),
            Command::Verify(a) => Job::Verify(ranged(a)?),
            Command::Corollaries(a) => Job::Corollaries(ranged(a)?),
            Command::Papertable(a) => Job::Papertable(ranged(a)?),
        };
        let readings = match cli.reading {
            ReadingArg::Primary => vec![Reading::Primary],
            ReadingArg::Alternative => vec![Reading::Alternative],
            ReadingArg::Both => Reading::BOTH.to_vec(),
        };
        if matches!(job, Job::Papertable(_)) && readings.len() > 1 {
            return Err(CliError::Usage("papertable takes a single reading".into()));
        }
        if cli.jobs == Some(0) {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        let format = cli.format.unwrap_or(match job {
            Job::Papertable(_) => Format::Markdown,
            _ => Format::Text,
        });
        Ok(RunConfig {
            job,
            range,
            mod12,
            format,
            readings,
            jobs: cli.jobs,
            cache: Cache::resolve(cli.cache_dir, cli.no_cache),
            timestamp: !cli.no_timestamp,
        })
    }
}

/// Runs a parsed command line.
pub fn run(cli: Cli) -> Outcome {
    match RunConfig::from_cli(cli) {
        Ok(cfg) => execute(&cfg),
        Err(e) => Outcome::error(e),
    }
}

/// Runs a validated configuration on a pool of `cfg.jobs` threads.
pub fn execute(cfg: &RunConfig) -> Outcome {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.jobs {
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return Outcome::error(CliError::Usage(format!("thread pool: {e}"))),
    };
    match pool.install(|| commands::dispatch(cfg)) {
        Ok(o) => o,
        Err(e) => Outcome::error(e),
    }
}
