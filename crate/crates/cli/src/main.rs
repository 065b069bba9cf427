use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use hodgez_cli::commands::{self, build_library, CommandOutput, OutputFormat};
use hodgez_cli::error::CliError;

/// Exact integral Hodge functions of cohomology profiles and
/// Grothendieck-ring classes.
#[derive(Parser)]
#[command(name = "hodgez", version, about)]
struct Cli {
    /// Profile files to load into the library (repeatable).
    #[arg(long = "profiles", global = true, value_name = "PATH")]
    profiles: Vec<PathBuf>,

    /// Treat realizability lints as hard errors.
    #[arg(long, global = true)]
    strict: bool,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> OutputFormat {
        match f {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Suite {
    Kunneth,
    Blowup,
    Cells,
    Degree,
    Ring,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Kunneth => "kunneth",
            Suite::Blowup => "blowup",
            Suite::Cells => "cells",
            Suite::Degree => "degree",
            Suite::Ring => "ring",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the integral Hodge function of a profile file.
    Hz {
        /// Path to a profile document.
        path: PathBuf,
    },
    /// Print the Künneth product of two library profiles.
    Product { x: String, y: String },
    /// Print the blow-up and exceptional-divisor profiles for a center of
    /// the given codimension.
    Blowup { x: String, z: String, codim: u32 },
    /// Reconstruct integral cohomology groups from a class expression.
    #[command(group(ArgGroup::new("selection").required(true).args(["degree", "all"])))]
    Reconstruct {
        /// Class expression over library profiles, integers, and L.
        expr: String,
        /// Reconstruct a single cohomological degree.
        #[arg(long)]
        degree: Option<u32>,
        /// Reconstruct every degree up to the top of the support.
        #[arg(long)]
        all: bool,
    },
    /// Evaluate the class of a cell decomposition with the given cell
    /// dimensions.
    Cells { dims: Vec<u32> },
    /// Print the degree of a class expression's image.
    Degree { expr: String },
    /// Run a randomized verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// RNG seed; identical seeds reproduce reports byte for byte.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of randomized cases.
        #[arg(long, default_value_t = 100)]
        cases: u64,
    },
}

fn run(cli: Cli) -> Result<CommandOutput, CliError> {
    let format: OutputFormat = cli.format.into();
    match cli.command {
        Command::Hz { path } => commands::run_hz(&path, cli.strict, format),
        Command::Product { x, y } => {
            let (library, warnings) = build_library(&cli.profiles, cli.strict)?;
            let mut out = commands::run_product(&library, &x, &y, format)?;
            out.warnings.splice(0..0, warnings);
            Ok(out)
        }
        Command::Blowup { x, z, codim } => {
            let (library, warnings) = build_library(&cli.profiles, cli.strict)?;
            let mut out = commands::run_blowup(&library, &x, &z, codim, format)?;
            out.warnings.splice(0..0, warnings);
            Ok(out)
        }
        Command::Reconstruct { expr, degree, all } => {
            debug_assert!(degree.is_some() != all);
            let (library, warnings) = build_library(&cli.profiles, cli.strict)?;
            let mut out = commands::run_reconstruct(&library, &expr, degree, format)?;
            out.warnings.splice(0..0, warnings);
            Ok(out)
        }
        Command::Cells { dims } => commands::run_cells(&dims, format),
        Command::Degree { expr } => {
            let (library, warnings) = build_library(&cli.profiles, cli.strict)?;
            let mut out = commands::run_degree(&library, &expr, format)?;
            out.warnings.splice(0..0, warnings);
            Ok(out)
        }
        Command::Verify { suite, seed, cases } => {
            commands::run_verify(suite.name(), seed, cases, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            for warning in &output.warnings {
                eprintln!("warning: {warning}");
            }
            print!("{}", output.stdout);
            if output.verification_failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
