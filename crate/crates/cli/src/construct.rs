use std::path::PathBuf;

use clap::{Args, Subcommand};
use hyplp::constructions::{hypergraph_from_oa, mols_oa, named_fixture, oa_minus_transversal, oa_validate, OrthogonalArray};

use crate::{read_input, CliResult};

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write the result here instead of stdout; the report then goes to stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Skip the analysis report
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Subcommand, Debug)]
pub enum ConstructKind {
    /// Hypergraph of an orthogonal array file ("-" for stdin)
    FromOa {
        file: String,
        #[command(flatten)]
        output: Output,
    },
    /// Delete the columns where the last row shows `symbol`, then the last row
    OaMinus {
        #[arg(long)]
        symbol: usize,
        /// Orthogonal array file; stdin by default
        #[arg(long, default_value = "-")]
        input: String,
        #[command(flatten)]
        output: Output,
    },
    /// A catalog hypergraph: petersen, fano, heawood, oa33, oa45-minus, k<n>, k<n>,<n>, k<n>,<n>-minus
    Named {
        name: String,
        #[command(flatten)]
        output: Output,
    },
    /// Orthogonal array with `rows` rows over a prime alphabet from cyclic Latin squares
    MolsOa {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        rows: usize,
        #[command(flatten)]
        output: Output,
    },
}

/// What a construction produced.
pub enum Built {
    Hypergraph(hyplp::Hypergraph),
    Array(OrthogonalArray),
}

fn read_oa(path: &str) -> CliResult<OrthogonalArray> {
    let oa: OrthogonalArray = read_input(path)?.parse()?;
    oa_validate(&oa).map_err(|w| format!("not an orthogonal array: {w}"))?;
    Ok(oa)
}

pub fn run(kind: &ConstructKind) -> CliResult<(Built, &Output)> {
    Ok(match kind {
        ConstructKind::FromOa { file, output } => (Built::Hypergraph(hypergraph_from_oa(&read_oa(file)?)?), output),
        ConstructKind::OaMinus { symbol, input, output } => {
            (Built::Hypergraph(oa_minus_transversal(&read_oa(input)?, *symbol)?), output)
        }
        ConstructKind::Named { name, output } => (Built::Hypergraph(named_fixture(name)?), output),
        ConstructKind::MolsOa { p, rows, output } => (Built::Array(mols_oa(*p, *rows)?), output),
    })
}
