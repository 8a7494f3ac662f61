use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use rigidity_cli::{run, Options, Suite};
use rigidity_core::algebra::AlgebraTag;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Runs the exact verification suites.
#[derive(Debug, Parser)]
#[command(name = "verify", version)]
struct Args {
    /// all, algebra, jordan, weights, surfaces or degeneration
    suite: Suite,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Samples per randomized identity.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Restrict the per-algebra checks to one of C, CxC, HC, OC.
    #[arg(long)]
    algebra: Option<AlgebraTag>,
    /// Include the derivation-algebra kernel for the octonions.
    #[arg(long)]
    deep: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock durations (reports are then no longer reproducible).
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = Options { seed: args.seed, samples: args.samples, algebra: args.algebra, deep: args.deep, timings: args.timings };
    let report = run(args.suite, &opts, &mut |name| {
        if args.deep && name.ends_with("OC.derivation_dim") {
            eprintln!("running {name}");
        }
    });
    let body = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("verify: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
