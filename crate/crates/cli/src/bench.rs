//! Leaf counts of the solvers on no-instances with a known optimum.

use std::sync::Arc;
use std::time::Instant;

use clap::ValueEnum;
use edsolve_core::instances::{cycle, fit_log_growth, gnp, path, path_optimum, random_cubic};
use edsolve_core::{Graph, SolveOptions, Solver};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::report::SCHEMA;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Paths,
    Cycles,
    Cubic,
    Gnp,
}

#[derive(Debug, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub optimum: usize,
    pub k: usize,
    pub algorithm: String,
    pub decision: bool,
    pub nodes: u64,
    /// Search-tree leaves: solved leaves plus pruned and halted branches.
    pub leaves: u64,
    pub wall_time_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct Fit {
    pub algorithm: String,
    /// `exp(slope)` of the least-squares fit of `ln(leaves)` against `k`.
    pub base: f64,
    pub intercept: f64,
}

#[derive(Debug, Serialize)]
pub struct BenchReport {
    pub schema: u32,
    pub family: Family,
    pub kmax: usize,
    pub seed: u64,
    pub rows: Vec<BenchRow>,
    pub fits: Vec<Fit>,
}

struct Instance {
    name: String,
    graph: Graph,
    optimum: usize,
}

/// Smallest `k` with a yes answer, found by increasing `k`.
fn optimum(g: &Graph, exact: &dyn Solver) -> usize {
    let quick = SolveOptions {
        first_hit: true,
        ..SolveOptions::default()
    };
    (0..=g.m())
        .find(|&k| {
            exact
                .solve(g, k, &quick)
                .expect("solver accepts any graph")
                .decision
        })
        .expect("the edge set dominates itself")
}

fn instances(
    family: Family,
    kmax: usize,
    samples: usize,
    seed: u64,
    exact: &dyn Solver,
) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    match family {
        Family::Paths => {
            for k in 0..=kmax {
                let n = 3 * k + 2;
                out.push(Instance {
                    name: format!("P{n}"),
                    graph: path(n),
                    optimum: path_optimum(n),
                });
            }
        }
        Family::Cycles => {
            for k in 0..=kmax {
                let n = (3 * k + 3).max(3);
                out.push(Instance {
                    name: format!("C{n}"),
                    graph: cycle(n),
                    optimum: n.div_ceil(3),
                });
            }
        }
        Family::Cubic | Family::Gnp => {
            let mut size = 4;
            loop {
                let mut best = usize::MAX;
                for s in 0..samples {
                    let g = match family {
                        Family::Cubic => random_cubic(size, &mut rng),
                        _ => gnp(size, 0.3, &mut rng),
                    };
                    let opt = optimum(&g, exact);
                    best = best.min(opt);
                    if opt >= 1 && opt - 1 <= kmax {
                        out.push(Instance {
                            name: format!("{family:?}{size}#{s}").to_lowercase(),
                            graph: g,
                            optimum: opt,
                        });
                    }
                }
                if best > kmax + 1 {
                    break;
                }
                size += 2;
            }
        }
    }
    out.retain(|i| i.optimum >= 1 && i.optimum - 1 <= kmax);
    out
}

pub fn run(
    family: Family,
    kmax: usize,
    samples: usize,
    seed: u64,
    solvers: &[Arc<dyn Solver>],
    exact: &dyn Solver,
) -> BenchReport {
    let list = instances(family, kmax, samples.max(1), seed, exact);
    let jobs: Vec<(&Instance, &Arc<dyn Solver>)> = list
        .iter()
        .flat_map(|i| solvers.iter().map(move |s| (i, s)))
        .collect();
    let rows: Vec<BenchRow> = jobs
        .par_iter()
        .map(|(inst, solver)| {
            let k = inst.optimum - 1;
            let start = Instant::now();
            let r = solver
                .solve(&inst.graph, k, &SolveOptions::default())
                .expect("solver accepts any graph");
            BenchRow {
                instance: inst.name.clone(),
                n: inst.graph.n(),
                m: inst.graph.m(),
                optimum: inst.optimum,
                k,
                algorithm: solver.name().to_string(),
                decision: r.decision,
                nodes: r.stats.nodes,
                leaves: r.stats.leaves + r.stats.pruned + r.stats.halted,
                wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect();
    let fits = solvers
        .iter()
        .filter_map(|s| {
            let pts: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.algorithm == s.name())
                .map(|r| (r.k as f64, r.leaves as f64))
                .collect();
            let (slope, intercept) = fit_log_growth(&pts)?;
            Some(Fit {
                algorithm: s.name().to_string(),
                base: slope.exp(),
                intercept,
            })
        })
        .collect();
    BenchReport {
        schema: SCHEMA,
        family,
        kmax,
        seed,
        rows,
        fits,
    }
}
