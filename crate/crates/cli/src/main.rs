mod commands;
mod report;

use std::io;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use regmap_core::error::Error;

use report::Format;

#[derive(Parser, Debug)]
#[command(name = "regmaps", version, about = "Finite (2,m,n)-groups and the Euler characteristics of their maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Largest group order to construct.
    #[arg(long, global = true, default_value_t = 2_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_order: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for pair enumeration.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    pub jobs: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Euler characteristic of the map for a group order and generator orders.
    Chi {
        #[arg(long, conflicts_with = "order", required_unless_present = "order")]
        group: Option<String>,
        #[arg(long)]
        order: Option<u64>,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Run one of the verification suites.
    Verify {
        #[arg(value_enum)]
        target: Target,
        #[arg(long, default_value = "default")]
        tier: String,
        #[arg(long, default_value_t = 24)]
        a: u32,
    },
    /// Print structural data for a group.
    Analyze {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum)]
        what: What,
    },
    /// Enumerate generating pairs, for one (m, n) or every pair matching a signature.
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long, requires = "n")]
        m: Option<u64>,
        #[arg(long, requires = "m")]
        n: Option<u64>,
        /// `pm2power`, `minus2powerTimesOddPrimePower` or `any`.
        #[arg(long, default_value = "any")]
        signature: String,
    },
    /// Certificate for the SL2(8) x D_2x family at exponent `a`.
    Family {
        #[arg(long)]
        a: u32,
    },
    /// Primitive prime divisors of q^a - 1.
    Zsigmondy {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        q: u64,
        /// All a in 1..=20 when omitted.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        a: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Target {
    Thm12,
    Tables,
    Bounds,
    Family,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum What {
    Gk,
    Spectrum,
    Classes,
    F,
}

const EXIT_PARSE: u8 = 1;
const EXIT_ARITH: u8 = 2;
const EXIT_FAIL: u8 = 3;
const EXIT_CAP: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::NonPositive(_)
        | Error::NotDivisor(..)
        | Error::OddOrder(_)
        | Error::NonIntegralChi { .. }
        | Error::FactorZero
        | Error::FamilyExponent { .. }
        | Error::FamilyTooLarge(_) => EXIT_ARITH,
        Error::InvariantViolated(_) | Error::BoundViolated(_) | Error::OrderMismatch { .. } => EXIT_FAIL,
        _ => EXIT_PARSE,
    }
}

fn run(cli: Cli) -> Result<report::Report, Error> {
    let o = &cli.opts;
    match cli.command {
        Command::Chi { group, order, m, n } => commands::chi(o, group.as_deref(), order, m, n),
        Command::Verify { target, tier, a } => commands::verify(o, target, &tier, a),
        Command::Analyze { group, what } => commands::analyze(o, &group, what),
        Command::Classify {
            group,
            m,
            n,
            signature,
        } => commands::classify(o, &group, m.zip(n), &signature),
        Command::Family { a } => commands::family(a),
        Command::Zsigmondy { q, a } => commands::zsigmondy(q, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_PARSE),
            };
        }
    };
    let format = cli.opts.format;
    match run(cli) {
        Ok(rep) => {
            if let Err(e) = rep.write(format, &mut io::stdout().lock()) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_PARSE);
            }
            match (rep.pass, rep.capped) {
                (false, _) => ExitCode::from(EXIT_FAIL),
                (true, true) => ExitCode::from(EXIT_CAP),
                (true, false) => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
