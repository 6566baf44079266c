//! Solvers behind one trait, looked up by name at runtime.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::eds::EdsSolver;
use crate::eds1::Eds1Solver;
use crate::error::EdsError;
use crate::graph::{Graph, Solution};
use crate::kernel::KernelizedSolver;
use crate::oracle::BruteForceSolver;
use crate::stats::BranchStats;

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    /// Keep one record per branching node (needed for the recurrence audit).
    pub record_nodes: bool,
    /// Stop at the first leaf of size at most `k`; the reported size is then
    /// not necessarily minimum.
    pub first_hit: bool,
}

/// Outcome of one solve call.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub algorithm: String,
    pub k: usize,
    pub decision: bool,
    pub witness: Option<Solution>,
    /// Size of the best leaf candidate, present only when it is at most `k`.
    pub best_size: Option<usize>,
    /// Number of 2-paths at the enumeration that produced the witness.
    pub y_used: Option<usize>,
    /// Unsigned-path allowance at that enumeration.
    pub z_used: Option<usize>,
    pub stats: BranchStats,
}

impl Report {
    pub fn no(algorithm: &str, k: usize) -> Self {
        Report {
            algorithm: algorithm.to_string(),
            k,
            decision: false,
            witness: None,
            best_size: None,
            y_used: None,
            z_used: None,
            stats: BranchStats::default(),
        }
    }
}

/// A parameterized edge dominating set algorithm.
pub trait Solver: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    fn solve(&self, g: &Graph, k: usize, opts: &SolveOptions) -> Result<Report, EdsError>;
}

/// Name-indexed collection of solvers.
#[derive(Clone, Default)]
pub struct SolverRegistry {
    solvers: BTreeMap<&'static str, Arc<dyn Solver>>,
}

impl SolverRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// `eds`, `eds1`, `auto` (kernelize, then `eds1`) and `brute`.
    pub fn with_builtins() -> Self {
        let mut reg = Self::new();
        let eds1: Arc<dyn Solver> = Arc::new(Eds1Solver);
        reg.register(Arc::new(EdsSolver));
        reg.register(eds1.clone());
        reg.register(Arc::new(KernelizedSolver::auto(eds1)));
        reg.register(Arc::new(BruteForceSolver));
        reg
    }

    /// Adds a solver, replacing any previous one of the same name.
    pub fn register(&mut self, solver: Arc<dyn Solver>) {
        self.solvers.insert(solver.name(), solver);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn Solver>> {
        self.solvers.get(name).cloned()
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.solvers.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn Solver>> {
        self.solvers.values()
    }
}
