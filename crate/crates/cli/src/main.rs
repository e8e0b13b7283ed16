use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use mckay_cli::commands::{
    run_all, run_duality, run_fixed_points, run_fold, run_fold_table, run_mckay, run_root_fibres,
    run_roots, CliError, Prepared,
};
use mckay_cli::document::InputDocument;
use mckay_cli::report::Report;
use mckay_core::fixtures::{ex51, ex52};

#[derive(Parser)]
#[command(
    name = "mckay",
    version,
    about = "McKay quivers, folding and fixed-point Lie algebras"
)]
struct Cli {
    /// Seed for randomized searches and samples.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the text table.
    #[arg(long, global = true)]
    json: bool,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build Q̂ and its induced action.
    Mckay { input: PathBuf },
    /// Fold to Γ: B, D, C, classification.
    Fold { input: PathBuf },
    /// Positive roots of Q, Γ and Q̂.
    Roots {
        input: PathBuf,
        #[arg(long)]
        height: Option<i64>,
    },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Built-in fixtures.
    Examples {
        #[command(subcommand)]
        which: Example,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Root fibres of h and the folding identities.
    #[command(name = "thm1.1")]
    RootFibres {
        input: PathBuf,
        #[arg(long)]
        height: Option<i64>,
    },
    /// Fixed points of the lifted action on 𝔤(Q̂).
    #[command(name = "thm1.2")]
    FixedPoints { input: PathBuf },
    /// Ĉ = Cᵀ, D̂, B̂ and Q̂̂ ≅ Q.
    Duality { input: PathBuf },
}

#[derive(Subcommand)]
enum Example {
    Ex51,
    Ex52,
    #[command(name = "fold-table")]
    FoldTable {
        #[arg(long)]
        n: usize,
    },
}

fn load(path: &PathBuf) -> Result<Prepared, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
    let doc = InputDocument::parse(&text).map_err(|e| CliError::Schema(e.to_string()))?;
    let (q, a) = doc.resolve().map_err(|e| CliError::Schema(e.to_string()))?;
    Prepared::new(path.display().to_string(), q, a)
}

fn execute(cli: &Cli, report: &mut Report) -> Result<(), CliError> {
    let seed = cli.seed;
    match &cli.command {
        Command::Mckay { input } => {
            let p = identify(report, load(input)?);
            run_mckay(report, &p)
        }
        Command::Fold { input } => {
            let p = identify(report, load(input)?);
            run_fold(report, &p)
        }
        Command::Roots { input, height } => {
            let p = identify(report, load(input)?);
            run_roots(report, &p, *height)
        }
        Command::Verify { suite } => match suite {
            Suite::RootFibres { input, height } => {
                let p = identify(report, load(input)?);
                run_root_fibres(report, &p, *height, seed)
            }
            Suite::FixedPoints { input } => {
                let p = identify(report, load(input)?);
                run_fixed_points(report, &p, seed)
            }
            Suite::Duality { input } => {
                let p = identify(report, load(input)?);
                run_duality(report, &p)
            }
        },
        Command::Examples { which } => match which {
            Example::Ex51 => {
                let p = identify(report, Prepared::from_fixture(ex51())?);
                run_all(report, &p, None, seed)
            }
            Example::Ex52 => {
                let p = identify(report, Prepared::from_fixture(ex52())?);
                run_all(report, &p, None, seed)
            }
            Example::FoldTable { n } => {
                report.fixture = format!("fold-table n={n}");
                run_fold_table(report, *n, seed)
            }
        },
    }
}

fn identify(report: &mut Report, p: Prepared) -> Prepared {
    report.fixture = p.name.clone();
    p
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: Vec<String> = std::env::args().skip(1).collect();
    let mut report = Report::new(command, "", cli.seed);
    let start = Instant::now();
    let outcome = execute(&cli, &mut report);
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    if let Err(e) = outcome {
        eprintln!("mckay: {e}");
        if let CliError::InvalidAction(v) = &e {
            eprintln!("{}", serde_json::to_string_pretty(v).unwrap_or_default());
        }
        return ExitCode::from(e.exit_code() as u8);
    }
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("mckay: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
