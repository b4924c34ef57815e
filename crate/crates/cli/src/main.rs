use std::path::PathBuf;
use std::process::ExitCode;

use aslk_cli::suites::{self, Suite};
use aslk_cli::{commands, CliError, Manifest, Outcome};
use clap::{Parser, Subcommand};

/// Affine self-linking toolkit.
#[derive(Debug, Parser)]
#[command(name = "aslk", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate loop words, path records, Gauss codes and power decompositions.
    Eval {
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Describe the centralizer of the knot class.
    Centralizer {
        #[arg(long)]
        manifest: PathBuf,
        /// Cross-check against all words of at most L syllables.
        #[arg(long, value_name = "L")]
        oracle: Option<usize>,
    },
    /// Count the isotopy classes of framings of the knot.
    Classify {
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Run a self-check suite.
    Verify {
        /// matrices, triangle, centralizer, loop-identities, gauss or fixed-lattice
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Oracle radius for the centralizer suite.
        #[arg(long, value_name = "L")]
        oracle: Option<usize>,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Eval { manifest } => commands::eval(&Manifest::load(manifest)?),
        Command::Centralizer { manifest, oracle } => commands::centralizer(&Manifest::load(manifest)?, *oracle),
        Command::Classify { manifest } => commands::classify(&Manifest::load(manifest)?),
        Command::Verify { suite, seed, oracle } => suites::run(suite.parse::<Suite>()?, *seed, *oracle),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let text = if cli.json { outcome.report.to_json() } else { outcome.report.to_text() };
            println!("{}", text.trim_end());
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
