//! `qzeta`: build and check the q-analogue identities for ζ(2k) from the
//! command line.

mod commands;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Rendered;

#[derive(Debug, Parser)]
#[command(
    name = "qzeta",
    version,
    about = "Exact q-series checks of the q-analogues of ζ(2k)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the a_k / b_k tables and the P^e (and, for odd k, P^o) polynomials.
    Poly {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Verify the identity for one k, or for k = 1..6 when --k is omitted.
    /// Exits 0 only if every check passes.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: Option<u32>,
        /// Truncation order N (must be at least 4k).
        #[arg(long, default_value_t = 200)]
        order: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Tabulate t_4k(n), the closed form, and brute-force counts.
    Count {
        /// Sum of 4k triangular numbers.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..), conflicts_with = "fourk", required_unless_present = "fourk")]
        k: Option<u32>,
        /// Number of triangular summands directly (4, 8, 12, 16 or 20).
        #[arg(long)]
        fourk: Option<u32>,
        #[arg(long, default_value_t = 20)]
        n_max: u64,
        /// Truncation order; defaults to 2 * n_max + k.
        #[arg(long)]
        order: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Numeric approach to the q -> 1 limits.
    Limit {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        /// Comma-separated q values in (0, 1); defaults to 1 - 2^-m, m = 4..10.
        #[arg(long, value_name = "a,b,c")]
        q_points: Option<String>,
        #[arg(long, value_enum, default_value_t = LimitChoice::Zeta)]
        kind: LimitChoice,
        #[command(flatten)]
        output: Output,
    },
    /// Time schoolbook against Karatsuba on the ψ^{4k} expansion.
    Bench {
        #[arg(long, default_value_t = 1024)]
        order: usize,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimitChoice {
    Zeta,
    Qgamma,
}

/// Exit code for invalid arguments, matching clap's own usage errors.
const USAGE_ERROR: u8 = 2;

fn emit(rendered: &Rendered, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, &rendered.body)
            .with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(rendered.body.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Rendered, commands::CliError> {
    match cli.command {
        Command::Poly { k, output } => commands::poly(k, output.format),
        Command::Verify { k, order, output } => commands::verify(k, order, output.format),
        Command::Count {
            k,
            fourk,
            n_max,
            order,
            output,
        } => commands::count(k, fourk, n_max, order, output.format),
        Command::Limit {
            k,
            q_points,
            kind,
            output,
        } => commands::limit(k, q_points.as_deref(), kind, output.format),
        Command::Bench { order, k, output } => commands::bench(order, k, output.format),
    }
}

fn out_path(cli: &Cli) -> Option<PathBuf> {
    match &cli.command {
        Command::Poly { output, .. }
        | Command::Verify { output, .. }
        | Command::Count { output, .. }
        | Command::Limit { output, .. }
        | Command::Bench { output, .. } => output.out.clone(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = out_path(&cli);
    match run(cli) {
        Ok(rendered) => {
            if let Err(e) = emit(&rendered, out.as_ref()) {
                eprintln!("error: {e:#}");
                return ExitCode::FAILURE;
            }
            if rendered.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(commands::CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE_ERROR)
        }
        Err(commands::CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
