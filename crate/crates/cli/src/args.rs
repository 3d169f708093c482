use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use psrange::primes::RationalExponent;
use psrange::Rational;

#[derive(Parser, Debug)]
#[command(name = "psrange", version, about = "Admissible ranges for primes of the form floor(n^c), and the numerical checks behind them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct OutputArgs {
    /// JSON output (the default)
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,

    /// CSV output, to PATH if given
    #[arg(long, value_name = "PATH", num_args = 0..=1)]
    pub csv: Option<Option<PathBuf>>,

    /// Write output to PATH instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Worker threads; results do not depend on this
    #[arg(long, visible_alias = "segments", value_name = "K")]
    pub threads: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// Exponent pair kappa (defaults to the reference pair)
    #[arg(long, requires = "lambda", allow_hyphen_values = true)]
    pub kappa: Option<Rational>,

    #[arg(long, requires = "kappa", allow_hyphen_values = true)]
    pub lambda: Option<Rational>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact admissible range for one exponent pair
    DeriveRange {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Best A/B word up to a given length
    Search {
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Published thresholds next to the computed one
    History {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Count primes floor(n^c) <= x
    Count {
        #[arg(long)]
        c: RationalExponent,
        /// One or more bounds, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        #[arg(long, default_value_t = psrange::primes::DEFAULT_COUNT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Is the prime P of the form floor(n^c)?
    Membership {
        #[arg(long = "p")]
        pr: u64,
        #[arg(long)]
        c: RationalExponent,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Lambda-weighted sawtooth difference sum over (x/2, x]
    PsiSum {
        #[arg(long)]
        c: RationalExponent,
        #[arg(long)]
        x: u64,
        #[arg(long, default_value_t = psrange::primes::DEFAULT_PSI_BUDGET)]
        budget: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Numerical checks of the analytic inequalities
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Exponent pair produced by an A/B word
    Pairs {
        /// Letters A and B, applied left to right to (0, 1)
        #[arg(long)]
        word: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum Suite {
    Default,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// Sawtooth approximation inequality on a grid
    Vaaler {
        #[arg(long = "H", value_delimiter = ',', required = true)]
        h: Vec<u32>,
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Kusmin-Landau bound on a fixed suite of monomial phases
    Kl {
        #[arg(long, value_enum, default_value_t = Suite::Default)]
        suite: Suite,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Spacing count against its bound
    Spacing {
        #[arg(long = "M", value_delimiter = ',', required = true)]
        m: Vec<u64>,
        #[arg(long = "N", value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        alpha: Vec<Rational>,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        beta: Vec<Rational>,
        #[arg(long, value_delimiter = ',', required = true)]
        delta: Vec<Rational>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Trilinear sum against the twelve-term envelope
    T2 {
        #[arg(long = "X", value_delimiter = ',', required = true)]
        x: Vec<Rational>,
        #[arg(long = "H", value_delimiter = ',', required = true)]
        h: Vec<u64>,
        #[arg(long = "M", value_delimiter = ',', required = true)]
        m: Vec<u64>,
        #[arg(long = "N", value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Rational,
        #[arg(long, allow_hyphen_values = true)]
        beta: Rational,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Rational,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Also report the smallest envelope from Wu's bound
        #[arg(long)]
        wu_compare: bool,
        #[arg(long, default_value_t = psrange::expsum::trilinear::DEFAULT_TERM_BUDGET)]
        budget: u128,
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::DeriveRange { .. } => "derive-range",
            Command::Search { .. } => "search",
            Command::History { .. } => "history",
            Command::Count { .. } => "count",
            Command::Membership { .. } => "membership",
            Command::PsiSum { .. } => "psi-sum",
            Command::Pairs { .. } => "pairs",
            Command::Verify { check } => match check {
                VerifyCommand::Vaaler { .. } => "verify vaaler",
                VerifyCommand::Kl { .. } => "verify kl",
                VerifyCommand::Spacing { .. } => "verify spacing",
                VerifyCommand::T2 { .. } => "verify t2",
            },
        }
    }

    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::DeriveRange { output, .. }
            | Command::Search { output, .. }
            | Command::History { output, .. }
            | Command::Count { output, .. }
            | Command::Membership { output, .. }
            | Command::PsiSum { output, .. }
            | Command::Pairs { output, .. } => output,
            Command::Verify { check } => match check {
                VerifyCommand::Vaaler { output, .. }
                | VerifyCommand::Kl { output, .. }
                | VerifyCommand::Spacing { output, .. }
                | VerifyCommand::T2 { output, .. } => output,
            },
        }
    }
}
