mod bench;
mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use edsolve_core::kernel::{kernel_stats, kernelize, KernelStatus, KernelizedSolver};
use edsolve_core::oracle::{brute_matrix_domination, brute_min_eds, brute_min_maximal_matching};
use edsolve_core::reductions::{solve_matrix_domination, solve_mmm};
use edsolve_core::{parse_graph, parse_matrix, Graph, GraphFormat, SolveOptions, SolverRegistry};
use serde::Serialize;

use crate::bench::Family;
use crate::report::{Ids, KernelReport, RunReport, SelectionReport, SCHEMA};

#[derive(Parser, Debug)]
#[command(
    name = "edsolve",
    version,
    about = "Exact parameterized edge dominating set solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Auto,
    Dimacs,
    Edgelist,
}

#[derive(Debug, clap::Args)]
struct Input {
    /// Input file; standard input when omitted or "-".
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OracleProblem {
    Eds,
    Mmm,
    Matrix,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the graph has an edge dominating set of at most k edges.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        /// Registered solver name (see `algorithms`).
        #[arg(long, default_value = "auto")]
        alg: String,
        /// Kernelize before running the chosen solver.
        #[arg(long)]
        kernelize_first: bool,
        /// Stop at the first solution of size at most k instead of a minimum.
        #[arg(long)]
        first_hit: bool,
        /// Include every branching node with its budget decreases.
        #[arg(long)]
        trace: bool,
    },
    /// Run the kernelization and print the kernel with its size ledger.
    Kernelize {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        /// Also write the kernel graph here, in the input's format.
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Find a maximal matching of at most k edges.
    Mmm {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
    },
    /// Select at most k 1-entries of a 0/1 matrix dominating all 1-entries.
    Matrix {
        /// Matrix file; standard input when omitted or "-".
        input: Option<PathBuf>,
        #[arg(long)]
        k: usize,
    },
    /// Exhaustive optimum for small instances.
    Oracle {
        #[arg(value_enum)]
        problem: OracleProblem,
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        format: FormatArg,
    },
    /// Leaf counts on no-instances of a graph family (seed from EDSOLVE_SEED).
    Bench {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 6)]
        kmax: usize,
        /// Comma-separated solver names.
        #[arg(long, default_value = "eds,eds1", value_delimiter = ',')]
        alg: Vec<String>,
        /// Random instances per size for the cubic and gnp families.
        #[arg(long, default_value_t = 2)]
        samples: usize,
    },
    /// List the registered solvers.
    Algorithms,
}

/// Exit status of a finished command.
enum Outcome {
    Yes,
    No,
}

fn read_text(path: &Option<PathBuf>) -> Result<(String, String)> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            let text =
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok((text, p.display().to_string()))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .context("reading standard input")?;
            Ok((text, "stdin".to_string()))
        }
    }
}

fn read_graph(path: &Option<PathBuf>, format: FormatArg) -> Result<(Graph, GraphFormat, String)> {
    let (text, name) = read_text(path)?;
    let format = match format {
        FormatArg::Auto => GraphFormat::detect(&text),
        FormatArg::Dimacs => GraphFormat::Dimacs,
        FormatArg::Edgelist => GraphFormat::EdgeList,
    };
    let g = parse_graph(&text, format).with_context(|| format!("parsing {name}"))?;
    Ok((g, format, name))
}

fn ids_for(format: GraphFormat) -> Ids {
    Ids {
        base: match format {
            GraphFormat::Dimacs => 1,
            GraphFormat::EdgeList => 0,
        },
    }
}

fn emit<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn run(cli: Cli) -> Result<Outcome> {
    let registry = SolverRegistry::with_builtins();
    let outcome = |yes: bool| if yes { Outcome::Yes } else { Outcome::No };
    match cli.command {
        Command::Solve {
            input,
            k,
            alg,
            kernelize_first,
            first_hit,
            trace,
        } => {
            let (g, format, name) = read_graph(&input.input, input.format)?;
            let base = registry.get(&alg).ok_or_else(|| {
                anyhow!(
                    "unknown algorithm {alg:?}; available: {}",
                    registry.names().collect::<Vec<_>>().join(", ")
                )
            })?;
            let solver = if kernelize_first && alg != "auto" {
                Arc::new(KernelizedSolver::new("kernelized", base))
            } else {
                base
            };
            let opts = SolveOptions {
                record_nodes: trace,
                first_hit,
            };
            let start = Instant::now();
            let mut report = solver.solve(&g, k, &opts)?;
            let wall = millis(start);
            if kernelize_first && alg != "auto" {
                report.algorithm = format!("{alg}+kernel");
            }
            let yes = report.decision;
            emit(&RunReport::new(&name, ids_for(format), report, wall))?;
            Ok(outcome(yes))
        }
        Command::Kernelize {
            input,
            k,
            graph_out,
        } => {
            let (g, format, name) = read_graph(&input.input, input.format)?;
            let ids = ids_for(format);
            let start = Instant::now();
            let r = kernelize(&g, k);
            let wall = millis(start);
            let ledger = match r.status {
                KernelStatus::Kernel => {
                    let mut led = kernel_stats(&r)?;
                    for v in led
                        .b
                        .iter_mut()
                        .chain(&mut led.vstar1)
                        .chain(&mut led.vstar2)
                    {
                        *v += ids.base;
                    }
                    Some(led)
                }
                _ => None,
            };
            if let Some(path) = graph_out {
                let text = match format {
                    GraphFormat::Dimacs => r.kernel_graph.to_dimacs(),
                    GraphFormat::EdgeList => r.kernel_graph.to_edgelist(),
                };
                std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let rejected = r.status == KernelStatus::RejectedTooManyMatchingEdges;
            emit(&KernelReport::new(&name, ids, &r, ledger, wall))?;
            Ok(outcome(!rejected))
        }
        Command::Mmm { input, k } => {
            let (g, format, name) = read_graph(&input.input, input.format)?;
            let ids = ids_for(format);
            let start = Instant::now();
            let mm = solve_mmm(&g, k)?;
            let yes = mm.is_some();
            emit(&SelectionReport {
                schema: SCHEMA,
                instance: name,
                problem: "minimum_maximal_matching",
                k: Some(k),
                decision: yes,
                size: mm.as_ref().map(|m| m.len()),
                id_base: ids.base,
                witness: mm.map(|m| ids.edges(m.edges())),
                wall_time_ms: millis(start),
            })?;
            Ok(outcome(yes))
        }
        Command::Matrix { input, k } => {
            let (text, name) = read_text(&input)?;
            let mat = parse_matrix(&text).with_context(|| format!("parsing {name}"))?;
            let start = Instant::now();
            let sel = solve_matrix_domination(&mat, k)?;
            let yes = sel.is_some();
            emit(&SelectionReport {
                schema: SCHEMA,
                instance: name,
                problem: "matrix_domination",
                k: Some(k),
                decision: yes,
                size: sel.as_ref().map(|s| s.len()),
                id_base: 0,
                witness: sel.map(|s| s.entries().iter().map(|&(r, c)| [r, c]).collect()),
                wall_time_ms: millis(start),
            })?;
            Ok(outcome(yes))
        }
        Command::Oracle {
            problem,
            input,
            format,
        } => {
            let start = Instant::now();
            let (name, problem, base, size, witness) = match problem {
                OracleProblem::Eds | OracleProblem::Mmm => {
                    let (g, fmt, name) = read_graph(&input, format)?;
                    let ids = ids_for(fmt);
                    if matches!(problem, OracleProblem::Eds) {
                        let (size, sol) = brute_min_eds(&g)?;
                        (
                            name,
                            "edge_dominating_set",
                            ids.base,
                            size,
                            ids.edges(sol.edges()),
                        )
                    } else {
                        let (size, mm) = brute_min_maximal_matching(&g)?;
                        (
                            name,
                            "minimum_maximal_matching",
                            ids.base,
                            size,
                            ids.edges(mm.edges()),
                        )
                    }
                }
                OracleProblem::Matrix => {
                    let (text, name) = read_text(&input)?;
                    let mat = parse_matrix(&text).with_context(|| format!("parsing {name}"))?;
                    let (size, sel) = brute_matrix_domination(&mat)?;
                    let w = sel.entries().iter().map(|&(r, c)| [r, c]).collect();
                    (name, "matrix_domination", 0, size, w)
                }
            };
            emit(&SelectionReport {
                schema: SCHEMA,
                instance: name,
                problem,
                k: None,
                decision: true,
                size: Some(size),
                id_base: base,
                witness: Some(witness),
                wall_time_ms: millis(start),
            })?;
            Ok(Outcome::Yes)
        }
        Command::Bench {
            family,
            kmax,
            alg,
            samples,
        } => {
            let seed = match std::env::var("EDSOLVE_SEED") {
                Ok(s) => s
                    .trim()
                    .parse()
                    .with_context(|| format!("EDSOLVE_SEED={s:?}"))?,
                Err(_) => 1,
            };
            let mut solvers = Vec::new();
            for a in &alg {
                match registry.get(a) {
                    Some(s) => solvers.push(s),
                    None => bail!("unknown algorithm {a:?}"),
                }
            }
            let exact = registry.get("eds1").expect("eds1 is built in");
            emit(&bench::run(
                family,
                kmax,
                samples,
                seed,
                &solvers,
                exact.as_ref(),
            ))?;
            Ok(Outcome::Yes)
        }
        Command::Algorithms => {
            #[derive(Serialize)]
            struct Entry {
                name: &'static str,
                summary: &'static str,
            }
            let list: Vec<Entry> = registry
                .iter()
                .map(|s| Entry {
                    name: s.name(),
                    summary: s.summary(),
                })
                .collect();
            emit(&serde_json::json!({ "schema": SCHEMA, "algorithms": list }))?;
            Ok(Outcome::Yes)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::GraphOut;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn dimacs_ids_are_one_based() {
        let ids = ids_for(GraphFormat::Dimacs);
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(GraphOut::new(&g, ids).edges, vec![[1, 2]]);
    }
}
