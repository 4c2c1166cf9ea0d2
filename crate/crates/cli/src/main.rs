//! `upb`: verify and analyse symbolic orthogonal matrices of qubit product
//! states.

mod report;

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use uom_core::audit::{submatrix_audit, AUDIT_COLS, AUDIT_ROWS};
use uom_core::catalog::{self, gen_odd_q};
use uom_core::extension::DEFAULT_SEARCH_BUDGET;
use uom_core::graph::{build_graph, column_subgraph};
use uom_core::locc::audit_all_subsets;
use uom_core::{Matrix, Uom};

use report::{Format, Record, ReportBundle};

/// Environment variable capping the exhaustive oracle's tuple count.
const BUDGET_VAR: &str = "UPB_SEARCH_BUDGET";

#[derive(Parser)]
#[command(
    name = "upb",
    version,
    about = "Exact checks for unextendible product bases of qubits"
)]
struct Cli {
    /// Use a built-in matrix instead of an input file
    #[arg(long, global = true, value_name = "NAME")]
    catalog: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate orthogonality and decide unextendibility (exit 0 iff UPB)
    Verify {
        input: Option<PathBuf>,
        /// Cross-check with exhaustive enumeration, capped by UPB_SEARCH_BUDGET
        #[arg(long)]
        oracle: bool,
    },
    /// Per-column multiplicities, p_j and the pair-counting bound
    Stats { input: Option<PathBuf> },
    /// Export the orthogonality graph as DOT
    Graph {
        input: Option<PathBuf>,
        /// Whole multigraph, edges coloured by column (default)
        #[arg(long, conflicts_with = "column")]
        full: bool,
        /// Only the edges of this column (1-based)
        #[arg(long, value_name = "J")]
        column: Option<usize>,
        /// Write the DOT file here
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Local reducibility for every bipartition with |S| = k
    Distinguish {
        input: Option<PathBuf>,
        #[arg(long)]
        k: usize,
    },
    /// Column orbits under local unitaries, with explicit maps
    Orbits { input: Option<PathBuf> },
    /// Columns grouped by isomorphism type of their subgraphs
    Classes { input: Option<PathBuf> },
    /// Built-in matrices
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Write a (q+1) x q UOM for odd q >= 3
    Generate {
        #[arg(long = "odd-q", value_name = "Q")]
        odd_q: usize,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Verify { input, oracle } => {
            let (source, m) = load(cli, input.as_deref())?;
            let budget = if *oracle {
                Some(search_budget()?)
            } else {
                None
            };
            let bundle = ReportBundle::build(&source, &m, budget)?;
            emit(
                cli.out.as_deref(),
                &report::render(&bundle.records, cli.format),
            )?;
            if bundle.oracle_disagrees {
                return Err(Failure(
                    "exhaustive oracle disagrees with the pruned search".into(),
                ));
            }
            Ok(if bundle.valid && bundle.is_upb { 0 } else { 1 })
        }
        Command::Stats { input } => {
            let (source, m) = load(cli, input.as_deref())?;
            let mut records = vec![
                report::matrix_record(&source, &m),
                report::validation_record(&m),
            ];
            records.extend(report::stats_records(&m));
            if (m.rows(), m.cols()) == (AUDIT_ROWS, AUDIT_COLS) {
                records.extend(report::audit_records(&submatrix_audit(&m)?));
            }
            emit(cli.out.as_deref(), &report::render(&records, cli.format))?;
            Ok(0)
        }
        Command::Graph {
            input,
            full: _,
            column,
            dot,
        } => {
            let (source, u) = load_uom(cli, input.as_deref())?;
            let g = build_graph(&u);
            let name = graph_name(&source);
            let text = match column {
                Some(0) => return Err(Failure("columns are numbered from 1".into())),
                Some(j) => column_subgraph(&g, j - 1)?.to_dot(&format!("{name}_c{j}")),
                None => g.to_dot(&name),
            };
            emit(dot.as_deref().or(cli.out.as_deref()), &text)?;
            Ok(0)
        }
        Command::Distinguish { input, k } => {
            let (source, u) = load_uom(cli, input.as_deref())?;
            let mut records = vec![report::matrix_record(&source, &u)];
            records.extend(report::table_records(&audit_all_subsets(&u, *k)?));
            emit(cli.out.as_deref(), &report::render(&records, cli.format))?;
            Ok(0)
        }
        Command::Orbits { input } => {
            let (source, u) = load_uom(cli, input.as_deref())?;
            let mut records = vec![report::matrix_record(&source, &u)];
            records.extend(report::orbit_records(&u));
            emit(cli.out.as_deref(), &report::render(&records, cli.format))?;
            Ok(0)
        }
        Command::Classes { input } => {
            let (source, u) = load_uom(cli, input.as_deref())?;
            let records = vec![
                report::matrix_record(&source, &u),
                report::graph_record(&u),
                report::classes_record(&u),
            ];
            emit(cli.out.as_deref(), &report::render(&records, cli.format))?;
            Ok(0)
        }
        Command::Catalog { action } => {
            let records = match action {
                CatalogAction::List => catalog::list()
                    .into_iter()
                    .map(|name| Record::CatalogItem {
                        name: name.to_owned(),
                    })
                    .collect(),
                CatalogAction::Show { name } => report::catalog_records(&catalog::builtin(name)?),
            };
            emit(cli.out.as_deref(), &report::render(&records, cli.format))?;
            Ok(0)
        }
        Command::Generate { odd_q } => {
            let u = gen_odd_q(*odd_q)?;
            emit(cli.out.as_deref(), &uom_core::serialize_uom(&u))?;
            Ok(0)
        }
    }
}

fn search_budget() -> Result<u128, Failure> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure(format!(
                "{BUDGET_VAR} must be a non-negative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_SEARCH_BUDGET),
    }
}

/// Reads the input file (`-` for stdin) or the `--catalog` entry.
fn load(cli: &Cli, input: Option<&Path>) -> Result<(String, Matrix), Failure> {
    match (&cli.catalog, input) {
        (Some(_), Some(_)) => Err(Failure(
            "give either an input file or --catalog, not both".into(),
        )),
        (None, None) => Err(Failure(
            "no input: give a file path or --catalog NAME".into(),
        )),
        (Some(name), None) => Ok((name.clone(), catalog::builtin(name)?.uom.into_matrix())),
        (None, Some(path)) => {
            let text = if path == Path::new("-") {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            } else {
                std::fs::read_to_string(path)
                    .map_err(|e| Failure(format!("{}: {e}", path.display())))?
            };
            Ok((path.display().to_string(), Matrix::parse(&text)?))
        }
    }
}

fn load_uom(cli: &Cli, input: Option<&Path>) -> Result<(String, Uom), Failure> {
    let (source, m) = load(cli, input)?;
    Ok((source, Uom::new(m)?))
}

/// DOT identifier derived from the input name.
fn graph_name(source: &str) -> String {
    let stem = Path::new(source)
        .file_stem()
        .map_or_else(|| source.to_owned(), |s| s.to_string_lossy().into_owned());
    let cleaned: String = stem
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    match cleaned.chars().next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => cleaned,
        _ => format!("g_{cleaned}"),
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}
