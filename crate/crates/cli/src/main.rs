//! `ttw`: type-check, normalize and evaluate definitions, verify finite
//! presheaf instances, and run the generated property suites.

mod corpus;
mod kernel;
mod lab;
mod outcome;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use corpus::CorpusSuite;
use lab::PshSuite;

#[derive(Parser)]
#[command(name = "ttw", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Type-check every definition in a file.
    Check { file: PathBuf },
    /// Print the normal form of a definition.
    Norm {
        file: PathBuf,
        #[arg(long = "def", value_name = "NAME")]
        name: String,
    },
    /// Evaluate a closed boolean definition.
    Canon {
        file: PathBuf,
        #[arg(long = "def", value_name = "NAME")]
        name: String,
    },
    /// Check a presheaf instance given as JSON.
    PshVerify {
        file: PathBuf,
        #[arg(long, value_enum)]
        suite: PshSuite,
    },
    /// Run a seeded suite of generated instances.
    Corpus {
        #[arg(long, value_enum)]
        suite: CorpusSuite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        size: usize,
        /// Number of random instances (the default depends on the suite).
        #[arg(long)]
        count: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check { file } => kernel::check(file),
        Command::Norm { file, name } => kernel::normalize(file, name),
        Command::Canon { file, name } => kernel::canon(file, name),
        Command::PshVerify { file, suite } => lab::verify(file, *suite),
        Command::Corpus {
            suite,
            seed,
            size,
            count,
        } => corpus::run(*suite, *seed, *size, *count),
    };
    match cli.format {
        Format::Text => outcome.print_text(),
        Format::Json => println!("{}", outcome.to_json()),
    }
    outcome.exit_code()
}
