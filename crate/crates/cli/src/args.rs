use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "dlcusp",
    version,
    about = "Exact verification of the Deligne–Lusztig decomposition of the weight-2 cusp form character of SL2(F_p)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format (default: text, or markdown for papertable).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Reading of the character sets where only one of G̃_x, G̃_y embeds.
    #[arg(long, global = true, value_enum, default_value_t = ReadingArg::Primary)]
    pub reading: ReadingArg,

    /// Worker threads for per-prime work (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Cache directory; overrides DLCUSP_CACHE.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Never read or write cached character tables.
    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Omit run-dependent fields (timestamp, timings, cache hits).
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the conjugacy classes of SL2(F_p).
    Classes { p: u64 },
    /// Emit the irreducible character table.
    Chartable { p: u64 },
    /// Decompose S_2,p into Deligne–Lusztig characters.
    Decompose { p: u64 },
    /// Check decompositions, the printed table and identities over a range.
    Verify(RangeArgs),
    /// Check the multiplicity corollaries over a range.
    Corollaries(RangeArgs),
    /// Rebuild the coefficient table from computation and compare with the printed one.
    Papertable(RangeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RangeArgs {
    /// Inclusive prime range.
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"])]
    pub range: Option<Vec<u64>>,

    /// Keep only primes with this residue mod 12 (1, 5, 7 or 11).
    #[arg(long)]
    pub mod12: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    Primary,
    Alternative,
    Both,
}
