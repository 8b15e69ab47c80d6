use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tcanon::bench::{run_bench, BenchConfig};
use tcanon::frontend::{canonicalize_traced, parse_definitions, BaseChoice, CanonOptions, Commutation};
use tcanon::{Error, Metric};

#[derive(Parser)]
#[command(name = "tcanon", version, about = "Canonical forms of tensor monomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonicalize one monomial (use `-` to read it from stdin).
    Canon {
        #[arg(long)]
        defs: PathBuf,
        /// symmetric, antisymmetric or none; overrides the definitions file
        #[arg(long)]
        metric: Option<Metric>,
        /// Print the intermediate group elements to stderr.
        #[arg(long)]
        trace: bool,
        /// Order slots by the Schreier-Sims base instead of 1..N.
        #[arg(long)]
        sgs_base: bool,
        /// Exchanging equal factors changes the sign.
        #[arg(long)]
        anticommuting: bool,
        expr: String,
    },
    /// Time canonicalization of random Riemann scalar invariants.
    Bench {
        #[arg(long)]
        max_degree: usize,
        #[arg(long, default_value_t = 1)]
        min_degree: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        drop_zeros: bool,
        /// Also write `degree mean_seconds` lines to this file.
        #[arg(long)]
        plot_data: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Canon {
            defs,
            metric,
            trace,
            sgs_base,
            anticommuting,
            expr,
        } => canon(defs, metric, trace, sgs_base, anticommuting, expr),
        Command::Bench {
            max_degree,
            min_degree,
            samples,
            seed,
            drop_zeros,
            plot_data,
        } => bench(
            BenchConfig {
                min_degree,
                max_degree,
                samples,
                seed,
                drop_zeros,
            },
            plot_data,
        ),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn classify(e: Error) -> Failure {
    match e {
        Error::Parse(_) | Error::CycleSyntax { .. } => Failure::Input(e.to_string()),
        other => Failure::Internal(other.to_string()),
    }
}

fn canon(
    defs: PathBuf,
    metric: Option<Metric>,
    trace: bool,
    sgs_base: bool,
    anticommuting: bool,
    expr: String,
) -> Result<(), Failure> {
    let text = fs::read_to_string(&defs).map_err(|e| Failure::Input(format!("{}: {e}", defs.display())))?;
    let registry = parse_definitions(&text).map_err(|e| Failure::Input(e.to_string()))?;
    let expr = if expr == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        buf.trim().to_string()
    } else {
        expr
    };
    let options = CanonOptions {
        metric,
        commutation: if anticommuting {
            Commutation::Anticommuting
        } else {
            Commutation::Commuting
        },
        base: if sgs_base { BaseChoice::Sgs } else { BaseChoice::Natural },
        ..CanonOptions::default()
    };
    let (out, steps) = canonicalize_traced(&expr, &registry, &options).map_err(classify)?;
    if trace {
        eprint!("{steps}");
    }
    println!("{out}");
    Ok(())
}

fn bench(config: BenchConfig, plot_data: Option<PathBuf>) -> Result<(), Failure> {
    let report = run_bench(&config).map_err(|e| Failure::Internal(e.to_string()))?;
    let stdout = io::stdout();
    report
        .write_csv(stdout.lock())
        .map_err(|e| Failure::Internal(e.to_string()))?;
    if let Some(path) = plot_data {
        let mut file = fs::File::create(&path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        report
            .write_plot_data(&mut file)
            .and_then(|_| file.flush())
            .map_err(|e| Failure::Internal(e.to_string()))?;
    }
    Ok(())
}
