use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hyplp::constructions::hypergraph_from_oa;
use hyplp::Hypergraph;

mod analyze;
mod bound;
mod construct;
mod report;
mod table;

use construct::Built;
use report::{Cell, Format};

pub type CliResult<T> = Result<T, Box<dyn std::error::Error + Send + Sync>>;

#[derive(Parser, Debug)]
#[command(name = "hyplp", version, about = "Spectral order bounds for regular uniform hypergraphs")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Decimal places for real numbers
    #[arg(long, default_value_t = 5, global = true)]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute one bound
    Bound {
        #[command(subcommand)]
        kind: bound::BoundKind,
    },
    /// Report on a hypergraph file ("-" for stdin)
    Analyze { file: String },
    /// Regenerate, and optionally verify, the shipped tables
    Table {
        #[command(subcommand)]
        which: table::TableKind,
    },
    /// Build a hypergraph or an orthogonal array
    Construct {
        #[command(subcommand)]
        kind: construct::ConstructKind,
    },
}

pub fn read_input(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}").into())
    }
}

/// Returns `false` when a verification found a mismatch.
fn run(cli: &Cli) -> CliResult<bool> {
    let (fmt, prec) = (cli.format, cli.precision);
    match &cli.command {
        Command::Bound { kind } => {
            print!("{}", bound::run(kind)?.render(fmt, prec));
            Ok(true)
        }
        Command::Analyze { file } => {
            let h: Hypergraph = read_input(file)?.parse()?;
            print!("{}", analyze::analyze(&h).render(fmt, prec));
            Ok(true)
        }
        Command::Table { which } => {
            let (t, ok) = table::run(which)?;
            print!("{}", t.render(fmt, prec));
            if fmt == Format::Text {
                let verified = t.rows.iter().filter(|r| matches!(r.last(), Some(Cell::Bool(_)))).count();
                let matched = t.rows.iter().filter(|r| r.last() == Some(&Cell::Bool(true))).count();
                if t.columns.last().map(String::as_str) == Some("match") {
                    println!("{matched}/{verified} rows match");
                }
            }
            Ok(ok)
        }
        Command::Construct { kind } => {
            let (built, output) = construct::run(kind)?;
            let (text, h) = match built {
                Built::Hypergraph(h) => (h.to_string(), h),
                Built::Array(oa) => (oa.to_string(), hypergraph_from_oa(&oa)?),
            };
            let report = (!output.quiet).then(|| analyze::analyze(&h).render(fmt, prec));
            match &output.out {
                Some(path) => {
                    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
                    if let Some(r) = report {
                        print!("{r}");
                    }
                }
                None => {
                    print!("{text}");
                    if let Some(r) = report {
                        eprint!("{r}");
                    }
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
