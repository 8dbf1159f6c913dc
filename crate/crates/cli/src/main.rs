mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::output::Report;

#[derive(Parser, Debug)]
#[command(
    name = "jumploci",
    version,
    about = "Cohomology jump loci of groups and 3-manifolds"
)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Trial count for sampled checks.
    #[arg(long, global = true, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Holonomy degree.
    #[arg(long, global = true, default_value_t = 4)]
    degree: usize,
    /// Largest b1 for which R1 fullness is decided symbolically.
    #[arg(long, global = true, default_value_t = 9, value_parser = clap::value_parser!(u64).range(1..))]
    symbolic_threshold: u64,
    /// Largest holonomy degree accepted.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    degree_cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alexander matrix, elementary ideals, Alexander polynomial.
    Alex {
        /// Presentation file (`<x, y | r1, r2>` or JSON).
        file: PathBuf,
        /// Elementary ideals to report.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        ideals: Vec<usize>,
    },
    /// Membership of torsion characters in V_d, by rank and by ideal.
    Charvar {
        file: PathBuf,
        /// Character `m:e1,...,eb`; repeatable. Sampled when absent.
        #[arg(long = "character", short = 'c')]
        characters: Vec<String>,
        #[arg(short, long, default_value_t = 1)]
        d: usize,
    },
    /// Malcev class and corank from a triple cup-product form.
    Classify {
        /// Form as JSON `{n, terms: [{i, j, k, c}]}` with 1-based indices.
        file: PathBuf,
    },
    /// Seifert invariants and V_1 components of Brieskorn links.
    Brieskorn {
        /// Exponents such as `3,3,6`, or `sweep`.
        target: String,
        /// Largest exponent in a sweep.
        #[arg(long, default_value_t = 12)]
        max: u64,
        /// Tuple lengths in a sweep.
        #[arg(long, value_delimiter = ',', default_value = "3,4")]
        n: Vec<usize>,
    },
    /// Graded ranks of the holonomy Lie algebra.
    Holonomy {
        /// Cup form JSON, or `{n, relations: [[{i, j, c}, ...]]}`.
        file: PathBuf,
    },
}

/// Settings shared by all subcommands.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub symbolic_threshold: usize,
    pub degree: usize,
    pub degree_cap: usize,
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let cfg = RunConfig {
        seed: cli.seed,
        trials: cli.trials as usize,
        symbolic_threshold: cli.symbolic_threshold as usize,
        degree: cli.degree,
        degree_cap: cli.degree_cap as usize,
    };
    match &cli.command {
        Command::Alex { file, ideals } => commands::alex(&read(file)?, ideals, &cfg),
        Command::Charvar {
            file,
            characters,
            d,
        } => commands::charvar(&read(file)?, characters, *d, &cfg),
        Command::Classify { file } => commands::classify(&read(file)?, &cfg),
        Command::Brieskorn { target, max, n } if target == "sweep" => commands::sweep(*max, n),
        Command::Brieskorn { target, .. } => commands::brieskorn(target),
        Command::Holonomy { file } => commands::holonomy(&read(file)?, &cfg),
    }
}

fn read(path: &PathBuf) -> anyhow::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| anyhow::Error::new(e).context(format!("cannot read {}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if report.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("{}", output::error_record(&e));
            ExitCode::from(2)
        }
    }
}
