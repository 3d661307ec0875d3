//! Command-line front end for building groups, running constructions,
//! verifying circles and searching small Cayley graphs.

mod construct;
mod input;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hamcircle::constructions::{certify, context_free_genset, free_group_genset, pak_genset, Construction};
use hamcircle::graphs::{cayley_window, schreier_graph, FiniteGraph};
use hamcircle::oracle::{hamilton_cycle, hamilton_path, SearchOutcome};
use hamcircle::verify::VerificationReport;
use hamcircle::{Error, Group, SubgroupSpec};

use input::{budget, GroupArgs};

#[derive(Parser, Debug)]
#[command(name = "hamcircle", version, about = "Hamilton circles in Cayley graphs")]
struct Cli {
    /// Time budget for searches in milliseconds (default: HC_BUDGET_MS or 30000).
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe a group.
    Group {
        #[command(subcommand)]
        what: GroupCommand,
    },
    /// Emit a ball of the Cayley graph.
    Window {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a construction and emit its object and certificate.
    Construct(construct::ConstructArgs),
    /// Verify a saved object on Cayley graph windows.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        /// JSON file written by `construct`; its group is used unless one is given.
        #[arg(long)]
        object: PathBuf,
        #[arg(long = "radius", default_values_t = [4, 6, 8])]
        radii: Vec<usize>,
    },
    /// Exact Hamilton cycle or path search on a finite graph.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        /// Graph file: vertex count, then one `u v [label]` per line.
        #[arg(long, conflicts_with = "named")]
        graph: Option<PathBuf>,
        /// petersen, k<n>, q<d>, c<n>:<j>,<j>… (circulant)
        #[arg(long)]
        named: Option<String>,
    },
    /// Generating sets with Hamilton cycles or circles.
    Genset {
        #[arg(value_enum)]
        kind: GensetKind,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        rank: Option<usize>,
        /// Basis of the free normal subgroup, words separated by commas.
        #[arg(long)]
        basis: Option<String>,
        /// Verify the circle at this radius when one is built.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Emit the Schreier graph on the right cosets of a subgroup.
    Schreier {
        #[command(flatten)]
        group: GroupArgs,
        /// Subgroup generators, words separated by commas.
        #[arg(long)]
        subgroup: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    Info {
        #[command(flatten)]
        group: GroupArgs,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OracleKind {
    Cycle,
    Path,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GensetKind {
    Pak,
    Free,
    ContextFree,
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    pub fn refuted(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded | Error::Undecided(_) => 3,
            Error::SearchExhausted => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

pub type Outcome = std::result::Result<(), Failure>;

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

pub fn print_json<T: Serialize>(v: &T) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("serializable output")));
}

fn write_or_print(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            emit(text);
            Ok(())
        }
    }
}

/// Reports as JSON plus whether all were consistent.
pub fn summarize(reports: &[VerificationReport]) -> (serde_json::Value, bool) {
    let ok = !reports.is_empty() && reports.iter().all(|r| r.is_consistent());
    (serde_json::to_value(reports).expect("reports serialize"), ok)
}

fn group_info(g: &Group) -> serde_json::Value {
    json!({
        "group": g.to_string(),
        "generators": g.gens.iter().map(|s| s.name.clone()).collect::<Vec<_>>(),
        "symbol_count": g.gens.symbol_count(),
        "pair_count": g.gens.pair_count(),
        "order": g.family.order(),
        "ends": g.end_kind().map(|k| format!("{k:?}")),
    })
}

fn named_graph(name: &str) -> Result<FiniteGraph, Failure> {
    let bad = || Failure::usage(format!("unknown graph {name:?}"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    if name == "petersen" {
        return Ok(FiniteGraph::petersen());
    }
    if let Some((n, jumps)) = name.strip_prefix('c').and_then(|r| r.split_once(':')) {
        let jumps = jumps.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
        return Ok(FiniteGraph::circulant(num(n)?, &jumps));
    }
    match name.split_at(1) {
        ("k", n) => Ok(FiniteGraph::complete(num(n)?)),
        ("q", d) => Ok(FiniteGraph::hypercube(num(d)?)),
        _ => Err(bad()),
    }
}

fn run(cli: Cli) -> Outcome {
    let b = budget(cli.budget_ms)?;
    match cli.command {
        Command::Group { what: GroupCommand::Info { group } } => {
            print_json(&group_info(&group.build()?));
            Ok(())
        }
        Command::Window { group, radius, format, out } => {
            let g = group.build()?;
            let w = cayley_window(&g, radius)?;
            let text = match format {
                Format::Text => w.to_text(&g),
                Format::Dot => w.to_dot(&g, &Default::default()),
            };
            write_or_print(out.as_deref(), &text)
        }
        Command::Construct(args) => construct::run(args, b),
        Command::Verify { group, object, radii } => {
            if radii.iter().any(|&r| r < 2) {
                return Err(Failure::usage("radii must be at least 2"));
            }
            let text = fs::read_to_string(&object)?;
            let art: construct::Artifact =
                serde_json::from_str(&text).map_err(|e| Failure::usage(format!("bad object file: {e}")))?;
            let base = if group.is_given() { group.build()? } else { art.group.build()? };
            let g = base.with_gens(art.generators)?;
            let mut c = Construction { object: art.object, certificate: art.certificate };
            let reports = certify(&g, &mut c, &radii)?;
            let (value, ok) = summarize(&reports);
            print_json(&value);
            if ok {
                Ok(())
            } else {
                Err(Failure::refuted("refuted"))
            }
        }
        Command::Oracle { kind, graph, named } => {
            let fg = match (graph, named) {
                (Some(p), _) => FiniteGraph::parse(&fs::read_to_string(p)?)?,
                (None, Some(n)) => named_graph(&n)?,
                (None, None) => return Err(Failure::usage("give --graph or --named")),
            };
            let outcome = match kind {
                OracleKind::Cycle => hamilton_cycle(&fg, b)?,
                OracleKind::Path => hamilton_path(&fg, b)?,
            };
            print_json(&outcome);
            match outcome {
                SearchOutcome::Found(_) => Ok(()),
                SearchOutcome::None => Err(Failure::refuted("no Hamilton cycle or path")),
                SearchOutcome::BudgetExceeded => Err(Failure { code: 3, message: "budget exceeded".into() }),
            }
        }
        Command::Genset { kind, group, rank, basis, radius } => {
            let mut gs = match kind {
                GensetKind::Pak => pak_genset(&group.build()?, b)?,
                GensetKind::Free => free_group_genset(rank.ok_or_else(|| Failure::usage("--rank is required"))?)?,
                GensetKind::ContextFree => {
                    let g = group.build()?;
                    let basis = basis.ok_or_else(|| Failure::usage("--basis is required"))?;
                    context_free_genset(&g, &input::elements(&g, &basis)?, b)?
                }
            };
            let mut out = json!({ "report": gs.report });
            let mut ok = true;
            if let (Some(r), Some(c)) = (radius, gs.circle.as_mut()) {
                let reports = certify(&gs.group, c, &[r])?;
                let (value, consistent) = summarize(&reports);
                out["reports"] = value;
                ok = consistent;
            }
            if let Some(c) = &gs.circle {
                out["object"] = serde_json::to_value(&c.object).expect("object serializes");
                out["certificate"] = serde_json::to_value(&c.certificate).expect("certificate serializes");
            }
            print_json(&out);
            if ok {
                Ok(())
            } else {
                Err(Failure::refuted("circle refuted"))
            }
        }
        Command::Schreier { group, subgroup, format } => {
            let g = group.build()?;
            let h = SubgroupSpec::GeneratedBy(input::elements(&g, &subgroup)?);
            let s = schreier_graph(&g, &h)?;
            let text = match format {
                Format::Text => s.graph.to_text(),
                Format::Dot => s.graph.to_dot(&Default::default()),
            };
            write_or_print(None, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
