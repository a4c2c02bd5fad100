//! Command-line flags.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};
use tetra_core::{Height, ScanFilter, TenadicConstant};

#[derive(Debug, Parser)]
#[command(
    name = "tetra",
    version,
    about = "Rightmost decimal digits of integer tetrations",
    long_about = None
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Last digits of ^b a.
    Digits(DigitsArgs),
    /// Digits of ^b a for b = 1..max-height with the first unstable position marked.
    Grid(GridArgs),
    /// Run the regression suite of published constants.
    Verify(VerifyArgs),
    /// Congruence speed at one height, or the speed profile of a base.
    Speed(SpeedArgs),
    /// Phase shift at one height, or the asymptotic phase shift of a base.
    Aps(ApsArgs),
    /// Last digits of the 10-adic limit of ^b a.
    Limit(LimitArgs),
    /// Digit at position n of ^m a - ^n a.
    Diff(DiffArgs),
    /// Integer super-logarithm.
    Slog(SlogArgs),
    /// Sweep a range of bases and report speeds and asymptotic phase shifts.
    Scan(ScanArgs),
    /// Digits of the 10-adic constants built from 5^(2^n) and 2^(5^n).
    Constants(ConstantsArgs),
    /// Stable-digit facts about Graham's number, checked at proxy heights.
    Graham(GrahamArgs),
    /// base^exponent modulo 10^m.
    Modpow(ModpowArgs),
    /// p-adic valuation of an integer.
    Valuation(ValuationArgs),
}

/// A tower height: a positive integer, or `inf` for the 10-adic limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeightArg(pub Height);

impl FromStr for HeightArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "inf" | "limit" => Ok(HeightArg(Height::Limit)),
            _ => s
                .parse::<u64>()
                .map(|b| HeightArg(Height::Finite(b)))
                .map_err(|_| format!("{s:?} is neither a height nor `inf`")),
        }
    }
}

impl fmt::Display for HeightArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Height::Finite(b) => write!(f, "{b}"),
            Height::Limit => f.write_str("inf"),
        }
    }
}

impl Serialize for HeightArg {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Height::Finite(b) => s.serialize_u64(b),
            Height::Limit => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct DigitsArgs {
    #[arg(long)]
    pub base: u64,
    /// Height, or `inf` for the limit.
    #[arg(long)]
    pub height: HeightArg,
    /// Number of trailing digits; defaults to height + 2.
    #[arg(long)]
    pub mod_digits: Option<usize>,
    /// Print only the digit at this 1-based position from the right.
    #[arg(long)]
    pub position: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct GridArgs {
    #[arg(long)]
    pub base: u64,
    #[arg(long)]
    pub max_height: u64,
    /// Trailing digits shown per row.
    #[arg(long)]
    pub width: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Run a single named check.
    #[arg(long)]
    pub only: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct SpeedArgs {
    #[arg(long)]
    pub base: u64,
    /// Report V(a,b) and #S(a,b) at this height only.
    #[arg(long, conflicts_with = "max_height")]
    pub height: Option<u64>,
    /// Profile at least this many heights.
    #[arg(long)]
    pub max_height: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct ApsArgs {
    #[arg(long)]
    pub base: u64,
    /// Phase shift at this height instead of the asymptotic cycle.
    #[arg(long)]
    pub height: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct LimitArgs {
    #[arg(long)]
    pub base: u64,
    #[arg(long)]
    pub mod_digits: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct DiffArgs {
    #[arg(long, default_value_t = 3)]
    pub base: u64,
    /// Lower height n.
    #[arg(long)]
    pub height: u64,
    /// Upper height m > n.
    #[arg(long)]
    pub upper: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct SlogArgs {
    #[arg(long)]
    pub base: u64,
    /// Decimal integer.
    #[arg(long)]
    pub value: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Csv,
    Jsonl,
}

#[derive(Debug, Args, Serialize)]
pub struct ScanArgs {
    #[arg(long)]
    pub from: u64,
    #[arg(long)]
    pub to: u64,
    /// coprime, ending-in-5 or all (bases divisible by 10 are always skipped).
    #[arg(long, default_value = "all")]
    pub filter: ScanFilter,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report format for --out.
    #[arg(long, value_enum, default_value_t = ReportKind::Csv)]
    pub report: ReportKind,
}

#[derive(Debug, Args, Serialize)]
pub struct ConstantsArgs {
    /// five-pow-two-tower, two-pow-five-tower or difference; all three if omitted.
    #[arg(long)]
    pub which: Option<TenadicConstant>,
    #[arg(long)]
    pub mod_digits: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct GrahamArgs {
    /// Odd proxy height n >= 5 standing in for slog_3(G).
    #[arg(long, conflicts_with = "mod_digits")]
    pub height: Option<u64>,
    /// Heights n + c compared against n.
    #[arg(long, value_delimiter = ',', default_values_t = [1u64, 2, 3])]
    pub c: Vec<u64>,
    /// Print this many trailing digits of G.
    #[arg(long)]
    pub mod_digits: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct ModpowArgs {
    /// Decimal integer.
    #[arg(long)]
    pub base: String,
    /// Decimal integer.
    #[arg(long)]
    pub exponent: String,
    #[arg(long)]
    pub mod_digits: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct ValuationArgs {
    #[arg(long)]
    pub prime: u64,
    #[arg(long)]
    pub value: u128,
}
