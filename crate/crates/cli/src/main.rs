use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use operad_forge::deform::DInfinity;
use operad_forge::operad::differential;
use operad_forge::report::{Format, Report, SCHEMA};
use operad_forge::shleib::{shleib_operad, tree_diff};
use operad_forge::tables::{dims, schroeder_table, Family};
use operad_forge::trees::{count_trees_from_corollas, CorollaMultiset};
use operad_forge::verify::{self, Limits, Suite};
use operad_forge::Error;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "operad-forge",
    version,
    about = "Exact computations with graded operads and derived brackets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest arity to compute.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_n: Option<u64>,

    /// Keep only this degree in dimension tables.
    #[arg(long, global = true, allow_hyphen_values = true)]
    degree: Option<i64>,

    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    /// Run checks above the default arity bounds.
    #[arg(long, global = true)]
    long_run: bool,

    /// Seed for sampled property checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Schröder numbers s(n) with the dimension-sum cross-check.
    Schroeder,
    /// Dimension table of Lie, D, sPerm, sLeib or Lie⊗D.
    Dims { operad: String },
    /// Differential of an element of D∞ or of the sh-Leibniz operad.
    Diff {
        element: String,
        /// `D` or `tree`; guessed from the element when omitted.
        #[arg(long = "in", value_enum)]
        context: Option<DiffContext>,
    },
    /// Run a verification suite: theorem, homology, axioms, counting or all.
    Verify { suite: String },
    /// Number of planar trees built from a multiset of corollas, e.g. `c2:1,c3:1`.
    CountTrees { corollas: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
    Plain,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum DiffContext {
    #[value(name = "D", alias = "d")]
    D,
    Tree,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
            OutputFormat::Plain => Format::Plain,
        }
    }
}

enum Failure {
    Usage(String),
    Verification,
    Resource,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn max_n(cli: &Cli, default: usize) -> usize {
    cli.max_n.map_or(default, |n| n as usize)
}

fn table<T: serde::Serialize>(format: Format, header: &[&str], rows: &[T], line: impl Fn(&T) -> Vec<String>) -> String {
    match format {
        Format::Json => {
            let v = json!({ "schema": SCHEMA, "rows": rows });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Csv => {
            let mut out = header.join(",") + "\n";
            for r in rows {
                out += &(line(r).join(",") + "\n");
            }
            out
        }
        Format::Plain => {
            let cells: Vec<Vec<String>> = rows.iter().map(&line).collect();
            let widths: Vec<usize> = (0..header.len())
                .map(|i| {
                    cells
                        .iter()
                        .map(|c| c[i].len())
                        .chain([header[i].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let fmt_row = |c: Vec<String>| {
                let parts: Vec<String> = c.iter().zip(&widths).map(|(x, w)| format!("{x:>w$}")).collect();
                parts.join("  ").trim_end().to_string() + "\n"
            };
            let mut out = fmt_row(header.iter().map(|s| s.to_string()).collect());
            for c in cells {
                out += &fmt_row(c);
            }
            out
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let format = cli.format.map(Format::from);
    match &cli.command {
        Command::Schroeder => {
            let rows = schroeder_table(max_n(cli, 10))?;
            let text = match format.unwrap_or(Format::Csv) {
                // the cross-check column is shown in plain and json output
                Format::Csv => table(Format::Csv, &["n", "s"], &rows, |r| {
                    vec![r.n.to_string(), r.schroeder.to_string()]
                }),
                f => table(f, &["n", "s", "cross_check"], &rows, |r| {
                    vec![r.n.to_string(), r.schroeder.to_string(), r.cross_check.to_string()]
                }),
            };
            emit(cli, &text)?;
            if rows.iter().any(|r| r.schroeder != r.cross_check) {
                return Err(Failure::Verification);
            }
        }
        Command::Dims { operad } => {
            let family: Family = operad.parse()?;
            let rows = dims(family, max_n(cli, 6), cli.degree)?;
            let text = table(
                format.unwrap_or(Format::Csv),
                &["n", "degree", "dim", "formula"],
                &rows,
                |r| {
                    vec![
                        r.n.to_string(),
                        r.degree.to_string(),
                        r.dim.to_string(),
                        r.formula.map(|f| f.to_string()).unwrap_or_default(),
                    ]
                },
            );
            emit(cli, &text)?;
            if rows.iter().any(|r| r.formula.is_some_and(|f| f != r.dim)) {
                return Err(Failure::Verification);
            }
        }
        Command::Diff { element, context } => {
            let context = context.unwrap_or(if element.contains('T') {
                DiffContext::Tree
            } else {
                DiffContext::D
            });
            let (text, json) = match context {
                DiffContext::D => {
                    let d = differential(&DInfinity, &DInfinity.parse_element(element)?);
                    (d.to_string(), d.to_json())
                }
                DiffContext::Tree => {
                    let d = tree_diff(&shleib_operad().parse_element(element)?)?;
                    (d.to_string(), d.to_json())
                }
            };
            let out = match format.unwrap_or(Format::Plain) {
                Format::Json => format!("{}\n", json!({ "schema": SCHEMA, "element": json })),
                _ => text + "\n",
            };
            emit(cli, &out)?;
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let limits = Limits::from_env(cli.long_run, cli.seed)?;
            let report: Report = verify::run(suite, cli.max_n.map(|n| n as usize), &limits)?;
            emit(cli, &report.render(format.unwrap_or(Format::Plain)))?;
            if report.resource_exceeded && cli.long_run {
                return Err(Failure::Resource);
            }
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
        Command::CountTrees { corollas } => {
            let c: CorollaMultiset = corollas.parse()?;
            let n = count_trees_from_corollas(&c)?;
            let out = match format.unwrap_or(Format::Plain) {
                Format::Json => format!(
                    "{}\n",
                    json!({ "schema": SCHEMA, "corollas": c.to_string(), "count": n.to_string() })
                ),
                _ => format!("{n}\n"),
            };
            emit(cli, &out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verification) => {
            eprintln!("verification failed");
            ExitCode::from(EXIT_FAILED)
        }
        Err(Failure::Resource) => {
            eprintln!("resource bound exceeded");
            ExitCode::from(EXIT_RESOURCE)
        }
    }
}
