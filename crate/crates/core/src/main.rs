use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use plane_curves::cli::{cmd_hilbert, cmd_report, cmd_verify_corpus, OutputFormat, RunOptions};

#[derive(Parser)]
#[command(name = "plane-curves", version, about = "Graded invariants and Hodge numbers of plane curves")]
struct Args {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Last degree of the Hilbert function (at least 3N-3).
    #[arg(long, global = true)]
    k_max: Option<usize>,
    /// Compute ranks modulo these comma-separated primes, cross-checked;
    /// `default` uses three built-in 30-bit primes.
    #[arg(long, value_name = "PRIMES", value_parser = parse_primes, global = true)]
    modp: Option<Primes>,
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert function of the Milnor algebra with ct, st, tau, mdr.
    Hilbert { spec: PathBuf },
    /// Full report: profile, Hodge numbers, Koszul data and bounds.
    Report { spec: PathBuf },
    /// Re-run every .curve file in a directory against its frozen report.
    VerifyCorpus {
        dir: PathBuf,
        /// Rewrite the expected fixtures instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone)]
struct Primes(Vec<u64>);

fn parse_primes(s: &str) -> Result<Primes, String> {
    if s == "default" {
        return Ok(Primes(Vec::new()));
    }
    s.split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(Primes)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = RunOptions {
        format: match args.format {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
        },
        k_max: args.k_max,
        modp: args.modp.map(|p| p.0),
        quiet: args.quiet,
    };
    let out = match &args.command {
        Command::Hilbert { spec } => cmd_hilbert(spec, &opts),
        Command::Report { spec } => cmd_report(spec, &opts),
        Command::VerifyCorpus { dir, bless } => cmd_verify_corpus(dir, &opts, *bless),
    };
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.exit_code as u8)
}
