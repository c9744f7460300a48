//! `brauer`: blocks, Brauer trees and tower verdicts from group and tower specs.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::Failure;

#[derive(Parser, Debug)]
#[command(name = "brauer", version, about = "Blocks and Brauer trees of group algebras in characteristic p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// The characteristic.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Work over F_{p^m} instead of the computed splitting field.
    #[arg(long, global = true, value_name = "M")]
    field_degree: Option<u32>,
    /// Truncation length for infinite multiplicity.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    /// MeatAxe seed; BRAUER_SEED takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Block index (blocks are ordered principal first, then by dimension).
    #[arg(long, global = true, default_value_t = 0)]
    block: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Block decomposition with simples and defect groups.
    Blocks {
        /// Group spec: a JSON file or inline JSON.
        spec: String,
    },
    /// Brauer tree of one block.
    Tree { spec: String },
    /// Stabilization verdict along a tower of finite quotients.
    Tower {
        /// Tower spec: a JSON file or inline JSON.
        spec: String,
    },
    /// Compare a block with the projectives its Brauer tree predicts.
    Verify {
        spec: String,
        /// Perturb the extracted tree before comparing (negative control).
        #[arg(long, hide = true)]
        corrupt_tree: bool,
    },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(out) = f.output() {
                print!("{out}");
            }
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let seed = match std::env::var("BRAUER_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Failure::usage(format!("BRAUER_SEED={s:?} is not an integer")))?,
        Err(_) => cli.seed,
    };
    let opts = commands::Options {
        p: cli.p,
        field_degree: cli.field_degree,
        cap: cli.cap as usize,
        seed,
        block: cli.block,
    };
    match cli.command {
        Command::Blocks { spec } => commands::blocks(&spec, &opts, format(cli.format, Format::Json, false)?),
        Command::Tree { spec } => commands::tree(&spec, &opts, format(cli.format, Format::Dot, true)?),
        Command::Tower { spec } => commands::tower(&spec, &opts, format(cli.format, Format::Json, false)?),
        Command::Verify { spec, corrupt_tree } => {
            commands::verify(&spec, &opts, format(cli.format, Format::Text, false)?, corrupt_tree)
        }
        Command::Selftest => commands::selftest(format(cli.format, Format::Text, false)?),
    }
}

fn format(requested: Option<Format>, default: Format, dot_allowed: bool) -> Result<Format, Failure> {
    match requested.unwrap_or(default) {
        Format::Dot if !dot_allowed => Err(Failure::usage("DOT output is only available for trees")),
        f => Ok(f),
    }
}
