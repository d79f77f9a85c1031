//! `mcf`: base-m continued fractions with digits drawn from {-1, 0, 1, ...}.
//!
//! Exit codes: 0 success, 2 input or usage error, 3 precision exhausted
//! on an interval input (the certified partial output is still printed),
//! 4 audit or verification found a violated identity.

mod commands;
mod input;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use render::Format;

#[derive(Parser)]
#[command(
    name = "mcf",
    version,
    about = "Exact base-m continued fraction expansions, convergents, and identity audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a value into base-m digits
    Expand(ValueArgs),
    /// Print the convergent table p_n/q_n for a value
    Convergents(ValueArgs),
    /// Per-depth approximation errors with exact or certified bounds
    Bounds(BoundsArgs),
    /// Check every identity against a single value
    Verify(VerifyArgs),
    /// Check every identity over a grid of rational inputs
    Audit(AuditArgs),
    /// Statistical experiments over random inputs
    #[command(subcommand)]
    Stats(StatsCommand),
    /// Regular continued fraction of a rational in (0, 1)
    Rcf(RcfArgs),
}

#[derive(Args)]
struct ValueArgs {
    /// Value to expand: "p/q", an integer, a decimal, or "sqrt(n)"
    value: String,

    /// Expansion base m
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    base: u32,

    /// Maximum number of digits to produce
    #[arg(
        long,
        env = "MCF_MAX_DIGITS",
        default_value_t = 5000,
        value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..)
    )]
    max_digits: usize,

    /// Working precision in bits, required for sqrt values
    #[arg(long, value_parser = clap::value_parser!(u32).range(16..))]
    precision: Option<u32>,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    value: ValueArgs,

    /// Report a single depth instead of every depth
    #[arg(short)]
    n: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Value to verify: "p/q", an integer, a decimal, or "sqrt(n)"
    value: String,

    /// Expansion base m
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    base: u32,

    /// Digit cap for the expansion under audit
    #[arg(
        long,
        env = "MCF_MAX_DIGITS",
        default_value_t = 48,
        value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..)
    )]
    max_digits: usize,

    /// Working precision in bits, required for sqrt values
    #[arg(long, value_parser = clap::value_parser!(u32).range(16..))]
    precision: Option<u32>,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct AuditArgs {
    /// Bases to audit, comma separated
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "2,3,5,10",
        value_parser = clap::value_parser!(u32).range(2..)
    )]
    bases: Vec<u32>,

    /// Exhaustive grid: every p/q with denominators up to this bound
    #[arg(long, default_value_t = 60)]
    grid_q: u64,

    /// Extra uniformly sampled rationals beyond the exhaustive grid
    #[arg(long, default_value_t = 10_000)]
    samples: u64,

    /// RNG seed for the sampled inputs
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Digit cap per expansion
    #[arg(
        long,
        env = "MCF_MAX_DIGITS",
        default_value_t = 48,
        value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..)
    )]
    max_digits: usize,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum StatsCommand {
    /// Empirical remainder distribution of the classical Gauss map
    GaussKuzmin(GaussArgs),
    /// Digit histogram over random base-m expansions
    McfDigits(McfDigitsArgs),
}

#[derive(Args)]
struct GaussArgs {
    /// Number of random starting points
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,

    /// Map iterations applied to each sample before measuring
    #[arg(short, default_value_t = 8)]
    n: u32,

    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct McfDigitsArgs {
    /// Expansion base m
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    base: u32,

    /// Number of random starting points
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,

    /// Digits drawn per sample
    #[arg(long, default_value_t = 20)]
    depth: u32,

    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Largest digit with its own bin; larger digits land in an overflow bin
    #[arg(long, default_value_t = 12)]
    digit_cap: i64,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct RcfArgs {
    /// Rational in (0, 1) as "p/q" or a decimal
    value: String,

    /// Maximum number of partial quotients
    #[arg(
        long,
        env = "MCF_MAX_DIGITS",
        default_value_t = 5000,
        value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..)
    )]
    max_digits: usize,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Expand(args) => commands::expand_cmd(args),
        Command::Convergents(args) => commands::convergents_cmd(args),
        Command::Bounds(args) => commands::bounds_cmd(args),
        Command::Verify(args) => commands::verify_cmd(args),
        Command::Audit(args) => commands::audit_cmd(args),
        Command::Stats(StatsCommand::GaussKuzmin(args)) => commands::gauss_kuzmin_cmd(args),
        Command::Stats(StatsCommand::McfDigits(args)) => commands::mcf_digits_cmd(args),
        Command::Rcf(args) => commands::rcf_cmd(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
