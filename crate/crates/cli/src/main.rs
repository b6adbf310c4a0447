//! `gassmann`: verify triples, build new ones, transplant tilings, and
//! compare drum spectra.

mod commands;
mod io;
mod pipeline;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use io::Failure;

#[derive(Parser, Debug)]
#[command(name = "gassmann", version, about = "Gassmann triples, transplantation and isospectral drums")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Upper limit on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Enumeration bound (the GF_BOUND environment variable also sets it).
    #[arg(long, global = true)]
    bound: Option<u128>,
    /// Largest coset table.
    #[arg(long, global = true)]
    index_bound: Option<usize>,
    /// Stage timings on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check AC, EC, FF, MAX, PAIR and INV for a triple spec.
    Verify(VerifyArgs),
    /// Build a triple from a spec's construction stanza, a kernel, or a power.
    Construct(ConstructArgs),
    /// Solve the transplantation equation for two involution systems.
    Transplant {
        a: PathBuf,
        b: PathBuf,
    },
    /// Unfold an involution system into a tiled domain.
    Unfold {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, value_enum, default_value_t = TileKind::HalfSquare)]
        tile: TileKind,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Domain file (JSON, exact coordinates).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lowest Dirichlet eigenvalues of a domain.
    Spectrum {
        #[arg(long)]
        domain: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Lowest eigenvalues of two domains and their relative gaps.
    SpectrumCompare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Largest accepted relative gap [default: 0.01 for h ≤ 1/64, else 0.02].
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Built-in PSL triples.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Transplantable pairs coming from one triple.
    Scan {
        spec: PathBuf,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        /// Writes `pair-N-a.sys` and `pair-N-b.sys` here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// The seven-tile pipeline from the (3, 2) triple to two spectra.
    Gww(GwwArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    spec: PathBuf,
    /// Comma-separated subset of ac,ec,ff,max,pair,inv.
    #[arg(long, value_enum, value_delimiter = ',')]
    props: Option<Vec<Prop>>,
    /// Sides of the INV system.
    #[arg(long, default_value_t = 3)]
    r: usize,
    /// Accept INV systems whose graph has cycles.
    #[arg(long)]
    no_tree: bool,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    spec: PathBuf,
    /// Expected stanza variant.
    #[arg(long = "type", value_parser = ["1", "2", "3", "I", "II", "III"])]
    kind: Option<String>,
    /// Group spec of a kernel E: builds (G×E, H×E, K×E).
    #[arg(long, conflicts_with_all = ["kind", "power"])]
    kernel: Option<PathBuf>,
    /// Direct power of the triple.
    #[arg(long, conflicts_with = "kind")]
    power: Option<usize>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct GridArgs {
    #[arg(long, default_value_t = 10)]
    k: usize,
    /// Grid spacing, as `1/64` or `0.015625`.
    #[arg(long, default_value = "1/64")]
    h: String,
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    /// The flagship (n, q) pairs.
    List,
    /// Writes the triple spec of PSL(n, q) on points and hyperplanes.
    Emit {
        /// `n,q`.
        #[arg(long, value_delimiter = ',', required = true)]
        nq: Vec<usize>,
        /// The action on points alone; no pair candidate.
        #[arg(long)]
        points: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct GwwArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = TileKind::HalfSquare)]
    tile: TileKind,
    /// Systems, domains and SVG drawings are written here.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum TileKind {
    HalfSquare,
    Equilateral,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Prop {
    Ac,
    Ec,
    Ff,
    Max,
    Pair,
    Inv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
