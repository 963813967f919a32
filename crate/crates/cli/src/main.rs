use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use posetforge::cache::PosetCache;
use posetforge::catalog::{enumerate_catalog, Catalog};
use posetforge::reconstruct::{reconstruct_omega, reconstruct_p, CatalogIndex, Outcome};
use posetforge::verify::{collisions, collisions_text, run_suite, Suite};
use posetforge::{poset_isomorphic, Graph, PosetKind, WeightedPoset};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_AMBIGUOUS: u8 = 3;

#[derive(Parser)]
#[command(name = "posetforge", version, about = "Edge-subgraph posets, bond lattices and induced-subgraph posets of small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graph catalog operations.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Build or compare posets.
    Poset {
        #[command(subcommand)]
        command: PosetCommand,
    },
    /// Catalog graphs sharing an abstract poset.
    Collisions {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        max_edges: usize,
        /// Keep only classes whose members differ in this poset.
        #[arg(long, value_enum)]
        require_different: Option<Target>,
    },
    /// Bond lattice or induced-subgraph poset from an abstract edge-subgraph poset.
    Reconstruct {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 6)]
        max_edges: usize,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    Build {
        #[arg(long)]
        max_edges: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum PosetCommand {
    Build {
        #[arg(long, value_enum)]
        kind: Kind,
        /// graph6 or "n=<int>; u-v,u-v,...".
        #[arg(long)]
        graph: String,
        /// Omit element graphs.
        #[arg(long = "abstract")]
        abstract_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exit 0 if the two poset files are isomorphic, 1 otherwise.
    Iso { a: PathBuf, b: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Q,
    P,
    Omega,
}

impl From<Kind> for PosetKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Q => PosetKind::Q,
            Kind::P => PosetKind::P,
            Kind::Omega => PosetKind::Omega,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Omega,
    P,
}

impl From<Target> for PosetKind {
    fn from(t: Target) -> Self {
        match t {
            Target::Omega => PosetKind::Omega,
            Target::P => PosetKind::P,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Inversion,
    MainTheorem,
    Families,
    Identities,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Inversion => Suite::Inversion,
            SuiteArg::MainTheorem => Suite::MainTheorem,
            SuiteArg::Families => Suite::Families,
            SuiteArg::Identities => Suite::Identities,
        }
    }
}

/// An error with the exit code it should produce.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(error: anyhow::Error) -> Failure {
    Failure { code: EXIT_USAGE, error }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(usage)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Catalog { command: CatalogCommand::Build { max_edges, out } } => {
            let catalog = enumerate_catalog(max_edges).map_err(|e| usage(e.into()))?;
            emit(Some(&out), &catalog.to_text()).map_err(usage)?;
            for (i, count) in catalog.level_counts().iter().enumerate() {
                println!("edges={} count={count}", i + 1);
            }
            println!("total={}", catalog.len());
            Ok(0)
        }
        Command::Poset { command: PosetCommand::Build { kind, graph, abstract_only, out } } => {
            let g: Graph = graph.parse().map_err(|e: posetforge::GraphError| usage(e.into()))?;
            let kind = PosetKind::from(kind);
            if kind == PosetKind::Q && g.has_isolated() {
                eprintln!("warning: ignoring {} isolated vertices", g.isolated_count());
            }
            let poset = PosetCache::from_env().get_or_build(&g, kind).map_err(|e| usage(e.into()))?;
            let poset = if abstract_only { poset.to_abstract() } else { poset };
            emit(out.as_deref(), &poset.to_file_text()).map_err(usage)?;
            Ok(0)
        }
        Command::Poset { command: PosetCommand::Iso { a, b } } => {
            let parse = |p: &Path| -> Result<WeightedPoset, Failure> {
                WeightedPoset::from_file_text(&read(p)?)
                    .with_context(|| format!("parsing {}", p.display()))
                    .map_err(usage)
            };
            let (a, b) = (parse(&a)?, parse(&b)?);
            if poset_isomorphic(&a, &b) {
                println!("isomorphic");
                Ok(0)
            } else {
                println!("not isomorphic");
                Ok(EXIT_FAILED)
            }
        }
        Command::Collisions { kind, max_edges, require_different } => {
            let catalog = enumerate_catalog(max_edges).map_err(|e| usage(e.into()))?;
            let classes = collisions(&catalog, kind.into(), require_different.map(PosetKind::from));
            print!("{}", collisions_text(&classes));
            Ok(0)
        }
        Command::Reconstruct { target, input, catalog, out } => {
            let q = WeightedPoset::from_file_text(&read(&input)?)
                .with_context(|| format!("parsing {}", input.display()))
                .map_err(usage)?;
            let catalog = Catalog::from_text(&read(&catalog)?).map_err(|e| usage(e.into()))?;
            let index = CatalogIndex::new(catalog);
            let outcome = match target {
                Target::Omega => reconstruct_omega(&q, &index),
                Target::P => reconstruct_p(&q, &index),
            }
            .map_err(|e| usage(e.into()))?;
            match outcome {
                Outcome::Success(p) => {
                    emit(out.as_deref(), &p.to_file_text()).map_err(usage)?;
                    Ok(0)
                }
                Outcome::Ambiguous(report) => {
                    emit(out.as_deref(), &report.to_text()).map_err(usage)?;
                    Ok(EXIT_AMBIGUOUS)
                }
            }
        }
        Command::Verify { suite, max_edges } => {
            let report = run_suite(suite.into(), max_edges).map_err(|e| usage(e.into()))?;
            print!("{}", report.to_text());
            Ok(if report.ok() { 0 } else { EXIT_FAILED })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
