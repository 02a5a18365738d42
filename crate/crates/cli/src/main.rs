use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use hdvf_core::explicit_basis::DEFAULT_SUBSET_LIMIT;
use hdvf_core::persistence::Filtration;
use hdvf_core::ChainComplex;
use hdvf_cli::commands;
use hdvf_cli::formats::{parse_basis, parse_complex, parse_cubical, parse_filtration};
use hdvf_cli::ResultDocument;

/// Homology generators, explicit bases, tri-partitions and persistence over
/// GF(2) with homological discrete vector fields. Results are printed as JSON.
#[derive(Parser)]
#[command(name = "hdvf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A complex file, or a 0/1 pixel grid with `--cubical`.
#[derive(Args)]
struct ComplexInput {
    /// Complex file: `<id> <dim> <k> <faces…>` per line.
    #[arg(required_unless_present = "cubical", conflicts_with = "cubical")]
    complex: Option<PathBuf>,
    /// Pixel grid: `<width> <height>` then rows of 0/1.
    #[arg(long, value_name = "GRID")]
    cubical: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers and homology generators from a completed field.
    Homology {
        #[command(flatten)]
        input: ComplexInput,
    },
    /// Decide whether a homology basis is explicit.
    CheckExplicit {
        #[command(flatten)]
        input: ComplexInput,
        /// Basis file: `<q> <cell ids…>` per generator.
        #[arg(long)]
        basis: PathBuf,
        /// Dimension of an empty basis (default 1).
        #[arg(long)]
        dim: Option<usize>,
        /// Also evaluate the subset-enumeration characterizations.
        #[arg(long)]
        all_characterizations: bool,
        /// Largest basis accepted by the subset enumeration.
        #[arg(long, default_value_t = DEFAULT_SUBSET_LIMIT)]
        limit: usize,
    },
    /// Build a perfect field whose homology basis is the given explicit basis.
    BasisToHdvf {
        #[command(flatten)]
        input: ComplexInput,
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Persistence diagram and generators of a filtration.
    Persistence {
        /// Filtration file: `<id> <dim> <value> <k> <faces…>` per line.
        #[arg(required_unless_present = "cubical", conflicts_with = "cubical")]
        filtration: Option<PathBuf>,
        /// Pixel grid, filtered in its natural cell order.
        #[arg(long, value_name = "GRID")]
        cubical: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
        /// Fail unless boundary-matrix column reduction gives the same diagram.
        #[arg(long)]
        oracle: bool,
    },
    /// Tree / cotree / essential layers of a completed field.
    Tripartition {
        #[command(flatten)]
        input: ComplexInput,
        /// Only this dimension.
        #[arg(long)]
        dim: Option<usize>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_complex(input: &ComplexInput) -> Result<ChainComplex> {
    match (&input.complex, &input.cubical) {
        (_, Some(grid)) => {
            let pixels = parse_cubical(&read(grid)?).with_context(|| grid.display().to_string())?;
            Ok(ChainComplex::cubical(&pixels)?)
        }
        (Some(path), None) => Ok(parse_complex(&read(path)?).with_context(|| path.display().to_string())?),
        (None, None) => unreachable!("clap requires an input"),
    }
}

fn run(cli: Cli) -> Result<ResultDocument> {
    match cli.command {
        Command::Homology { input } => commands::homology(&load_complex(&input)?),
        Command::CheckExplicit {
            input,
            basis,
            dim,
            all_characterizations,
            limit,
        } => {
            let k = load_complex(&input)?;
            let chains = parse_basis(&read(&basis)?, &k).with_context(|| basis.display().to_string())?;
            commands::check_explicit(&k, chains, dim, all_characterizations, limit)
        }
        Command::BasisToHdvf { input, basis, dim } => {
            let k = load_complex(&input)?;
            let chains = parse_basis(&read(&basis)?, &k).with_context(|| basis.display().to_string())?;
            commands::basis_to_hdvf(&k, chains, dim)
        }
        Command::Persistence {
            filtration,
            cubical,
            svg,
            csv,
            oracle,
        } => {
            let f = match (filtration, cubical) {
                (_, Some(grid)) => {
                    let pixels = parse_cubical(&read(&grid)?).with_context(|| grid.display().to_string())?;
                    Filtration::new(ChainComplex::cubical(&pixels)?, None)?
                }
                (Some(path), None) => parse_filtration(&read(&path)?).with_context(|| path.display().to_string())?,
                (None, None) => unreachable!("clap requires an input"),
            };
            let out = commands::persistence(&f, oracle)?;
            if let Some(path) = csv {
                fs::write(&path, commands::diagram_csv(&out.diagram)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = svg {
                fs::write(&path, commands::diagram_svg(&out.diagram, f.len()))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(out.document)
        }
        Command::Tripartition { input, dim } => commands::tripartition(&load_complex(&input)?, dim),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(doc) => {
            println!("{}", doc.to_json());
            ExitCode::SUCCESS
        }
        Err(e) => {
            let message = format!("{e:#}");
            println!("{}", ResultDocument::error(message.clone()).to_json());
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
