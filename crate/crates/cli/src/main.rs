//! `ultranorm`: batch front end for the amenability, cohomology,
//! quasimorphism and topology computations.

mod commands;
mod input;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ultranorm_core::Error;

#[derive(Parser, Debug)]
#[command(name = "ultranorm", version, about = "Exact non-Archimedean amenability norms, bounded cohomology and quasimorphisms")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Resolve a field descriptor and classify its characteristics.
    Field(FieldArgs),
    /// Amenability norm of a group descriptor over a field.
    Norm(NormArgs),
    /// Cohomology of a finite group with trivial coefficients, or H^1_b of an abelian group.
    Cohomology(CohomologyArgs),
    /// Sections, defects and products of quasimorphisms.
    Qm(QmArgs),
    /// Cohomology, subdivision, Mayer-Vietoris and simplicial volume of finite complexes.
    Topo(TopoArgs),
    /// Regenerate the table of named families and their norms.
    Catalogue(CatalogueArgs),
}

/// Values naming a document accept inline JSON, `@path`, or a path to an existing file.
#[derive(Args, Debug)]
pub struct FieldArgs {
    /// Registry label (`Qp:<p>`, `Fp_laurent:<p>`, `trivial:Q`, `trivial:Fp:<p>`) or a descriptor document.
    #[arg(long)]
    pub field: String,
}

#[derive(Args, Debug)]
pub struct NormArgs {
    /// Group descriptor: JSON document, family short form (`prufer:2`), or finite group name.
    #[arg(long)]
    pub group: String,
    /// Field label or descriptor document.
    #[arg(long)]
    pub field: String,
    /// Sampling depth for streams without a certified exponent.
    #[arg(long, default_value_t = 8)]
    pub depth: u32,
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    /// Finite group name (`S3`, `Z/4`, `Z/2xZ/2`) or multiplication-table document.
    #[arg(long, required_unless_present = "abelian")]
    pub group: Option<String>,
    /// Coefficient characteristic: 0 or a prime.
    #[arg(long = "char", default_value_t = 0)]
    pub field_char: u64,
    #[arg(long, default_value_t = 1)]
    pub degree: usize,
    /// Bound on |G|^(n+1); overrides ULTRANORM_BUDGET.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Abelianization `rank:d1,d2,...` for dim H^1_b (with --field).
    #[arg(long, conflicts_with = "group", requires = "field")]
    pub abelian: Option<String>,
    /// Field label or descriptor document for --abelian.
    #[arg(long)]
    pub field: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QmMode {
    Section,
    Defect,
    Laurent,
    Product,
}

#[derive(Args, Debug)]
pub struct QmArgs {
    #[arg(long, value_enum)]
    pub mode: QmMode,
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    /// Truncation depth: the subgroup Z/p^N, or principal parts of degree at most N.
    #[arg(long = "N", default_value_t = 1)]
    pub depth: u32,
    /// Value-table documents (repeat for products).
    #[arg(long)]
    pub table: Vec<String>,
    /// Digits a_{-1},a_{-2},... of a Prüfer element (section mode).
    #[arg(long, value_delimiter = ',')]
    pub digits: Option<Vec<u64>>,
    /// Depths of standard-section factors Z/p^a (product mode without tables).
    #[arg(long, value_delimiter = ',')]
    pub factors: Option<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TopoOp {
    Dims,
    Mv,
    Subdiv,
    Volume,
}

#[derive(Args, Debug)]
pub struct TopoArgs {
    /// Built-in name (circle3, sphere2, wedge2, torus, edge, point, circle_cw, torus_cw) or complex document.
    #[arg(long)]
    pub complex: String,
    #[arg(long, value_enum, default_value_t = TopoOp::Dims)]
    pub op: TopoOp,
    #[arg(long = "char", default_value_t = 0)]
    pub field_char: u64,
    /// Prime for the simplicial volume.
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    /// Degree for the subdivision check (all degrees when omitted).
    #[arg(long)]
    pub degree: Option<usize>,
    /// Maximal simplices of the first cover piece, as a JSON list of vertex-name lists.
    #[arg(long)]
    pub a: Option<String>,
    /// Maximal simplices of the second cover piece.
    #[arg(long)]
    pub b: Option<String>,
}

#[derive(Args, Debug)]
pub struct CatalogueArgs {
    #[arg(long, default_value_t = 8)]
    pub depth: u32,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) | Error::Descriptor(_) => 2,
        Error::Precondition(_) | Error::Budget(_) | Error::Domain(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match cli.command {
        Command::Field(a) => commands::field(&a),
        Command::Norm(a) => commands::norm(&a),
        Command::Cohomology(a) => commands::cohomology(&a),
        Command::Qm(a) => commands::qm(&a),
        Command::Topo(a) => commands::topo(&a),
        Command::Catalogue(a) => commands::catalogue(&a),
    };
    match report.and_then(|r| output::emit(&r, cli.format)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
