use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use simplex_billiards::families::FamilyKind;

mod commands;
mod render;

use commands::{Outcome, TraceStart, EXIT_INPUT};

#[derive(Parser)]
#[command(
    name = "simplex-billiards",
    version,
    about = "Exact periodic billiard orbits in regular simplices"
)]
struct Cli {
    /// Output format (csv applies to trace, off to hull).
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Off,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    First,
    Second,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    First,
    Second,
}

impl From<FamilyArg> for FamilyKind {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::First => FamilyKind::First,
            FamilyArg::Second => FamilyKind::Second,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form orbit families with their mirror-law verification.
    Families {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Both)]
        kind: KindArg,
    },
    /// Solve for periodic points of a word and certify the result.
    Find {
        #[arg(long)]
        n: usize,
        /// Face labels, e.g. 0123 or 0,10,2 for labels above 9.
        #[arg(long)]
        word: String,
    },
    /// Follow a trajectory exactly.
    Trace {
        #[arg(long)]
        n: usize,
        /// Start on a family orbit.
        #[arg(long, value_enum, conflicts_with_all = ["point", "direction"], required_unless_present = "point")]
        family: Option<FamilyArg>,
        /// Barycentric start point with one zero coordinate, e.g. 0,3,4,3.
        #[arg(long, requires = "direction", allow_hyphen_values = true)]
        point: Option<String>,
        /// Direction with zero coordinate sum, e.g. 1/4,-1/2,1/4.
        #[arg(long, requires = "point", allow_hyphen_values = true)]
        direction: Option<String>,
        /// Number of face hits (defaults to one period for a family).
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Convex hull of the first-family boundary points in one face.
    Hull {
        #[arg(long)]
        n: usize,
        /// Hull of the permutations of this sub-multiset instead, e.g. 5,8,8,9.
        #[arg(long)]
        subset: Option<String>,
        /// Also analyze the second-family points on face 0.
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
    },
}

fn run(cli: &Cli) -> (Outcome, &'static str) {
    match &cli.command {
        Command::Families { n, kind } => {
            let kinds = match kind {
                KindArg::First => vec![FamilyKind::First],
                KindArg::Second => vec![FamilyKind::Second],
                KindArg::Both => vec![FamilyKind::First, FamilyKind::Second],
            };
            (commands::families(*n, &kinds), "families")
        }
        Command::Find { n, word } => (commands::find(*n, word), "find"),
        Command::Trace {
            n,
            family,
            point,
            direction,
            steps,
        } => {
            let start = match (family, point, direction) {
                (Some(f), _, _) => TraceStart::Family((*f).into()),
                (None, Some(point), Some(direction)) => TraceStart::Explicit { point, direction },
                _ => unreachable!("clap enforces a start"),
            };
            (commands::trace_cmd(*n, start, *steps), "trace")
        }
        Command::Hull { n, subset, family } => (
            commands::hull(
                *n,
                subset.as_deref(),
                matches!(family, Some(FamilyArg::Second)),
            ),
            "hull",
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let (outcome, command) = run(&cli);
    let body = match cli.format {
        Format::Json => {
            Some(serde_json::to_string_pretty(&outcome.json).expect("valid json") + "\n")
        }
        Format::Text => Some(outcome.text.clone()),
        Format::Csv => outcome.csv.clone(),
        Format::Off => outcome.off.clone(),
    };
    let Some(body) = body else {
        eprintln!("error: format not available for the {command} command");
        return ExitCode::from(EXIT_INPUT as u8);
    };
    if outcome.code != 0 {
        if let Some(msg) = outcome.json.get("error").and_then(|v| v.as_str()) {
            eprintln!("error: {msg}");
        }
    }
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(outcome.code as u8)
}
