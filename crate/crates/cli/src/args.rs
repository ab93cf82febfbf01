use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dpknot::enumerate::DEFAULT_ORACLE_LIMIT;
use dpknot::SearchFilter;

#[derive(Debug, Parser)]
#[command(
    name = "dpknot",
    version,
    about = "Alexander polynomials and genera of doubly primitive knots from lens-space surgery triples (p, q, k)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Rendering of the result.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,

    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Alexander polynomial, genus, n-sequence and Saito status of one triple.
    Compute(TripleArgs),
    /// Run the full invariant suite on one triple.
    Verify(TripleArgs),
    /// Compare the closed formula with the Fox-calculus gcd.
    Oracle(TripleArgs),
    /// Enumerate every valid triple with p <= pmax as a JSONL catalog.
    Search(SearchArgs),
    /// Check whether every excessive index lies in W(1), for all p <= pmax.
    #[command(name = "scan-w1")]
    ScanW1(ScanArgs),
    /// Replay the trefoil and (-2,3,7)-pretzel reference tables.
    Examples,
}

#[derive(Debug, Args)]
pub struct TripleArgs {
    #[arg(short, long, value_parser = parse_decimal, allow_negative_numbers = true)]
    pub p: i64,
    #[arg(short, long, value_parser = parse_decimal, allow_negative_numbers = true)]
    pub q: i64,
    #[arg(short, long, value_parser = parse_decimal, allow_negative_numbers = true)]
    pub k: i64,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, value_parser = parse_decimal, allow_negative_numbers = true)]
    pub pmax: i64,
    #[arg(long, value_enum, default_value_t = FilterArg::All)]
    pub filter: FilterArg,
    /// Largest p for which the Fox-calculus oracle runs.
    #[arg(long, value_parser = parse_decimal, default_value_t = DEFAULT_ORACLE_LIMIT)]
    pub oracle_limit: i64,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_parser = parse_decimal, allow_negative_numbers = true)]
    pub pmax: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    All,
    Saito,
}

impl From<FilterArg> for SearchFilter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::All => SearchFilter::All,
            FilterArg::Saito => SearchFilter::SaitoOnly,
        }
    }
}

/// Optional minus sign followed by ASCII digits, nothing else.
fn parse_decimal(s: &str) -> Result<i64, String> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("'{s}' is not a decimal integer"));
    }
    s.parse().map_err(|_| format!("'{s}' does not fit in a 64-bit integer"))
}
