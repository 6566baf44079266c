//! JSON documents emitted by the command line tool.

use std::collections::BTreeMap;

use edsolve_core::kernel::{KernelBoundsLedger, KernelResult, KernelStatus, VertexRole};
use edsolve_core::stats::{BranchStats, NodeRecord, Rule};
use edsolve_core::{Edge, Graph, Report};
use serde::Serialize;

pub const SCHEMA: u32 = 1;

/// Shifts internal 0-based ids to the numbering of the input format.
#[derive(Debug, Clone, Copy)]
pub struct Ids {
    pub base: usize,
}

impl Ids {
    pub fn edge(self, e: &Edge) -> [usize; 2] {
        [e.0 + self.base, e.1 + self.base]
    }

    pub fn edges<'a>(self, es: impl IntoIterator<Item = &'a Edge>) -> Vec<[usize; 2]> {
        es.into_iter().map(|e| self.edge(e)).collect()
    }
}

#[derive(Debug, Serialize)]
pub struct StatsOut {
    pub nodes: u64,
    pub leaves: u64,
    pub pruned: u64,
    pub halted: u64,
    pub subsets: u64,
    pub rule_counts: BTreeMap<Rule, u64>,
    pub p0_histogram: BTreeMap<i64, u64>,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<NodeRecord>>,
}

impl From<BranchStats> for StatsOut {
    fn from(s: BranchStats) -> Self {
        StatsOut {
            nodes: s.nodes,
            leaves: s.leaves,
            pruned: s.pruned,
            halted: s.halted,
            subsets: s.subsets,
            rule_counts: s.rule_counts,
            p0_histogram: s.p0_histogram,
            violations: s.violations.len(),
            trace: s.records,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub instance: String,
    pub algorithm: String,
    pub k: usize,
    pub decision: bool,
    pub size: Option<usize>,
    pub id_base: usize,
    pub witness: Option<Vec<[usize; 2]>>,
    pub y_used: Option<usize>,
    pub z_used: Option<usize>,
    pub stats: StatsOut,
    pub wall_time_ms: f64,
}

impl RunReport {
    pub fn new(instance: &str, ids: Ids, r: Report, wall_time_ms: f64) -> Self {
        RunReport {
            schema: SCHEMA,
            instance: instance.to_string(),
            algorithm: r.algorithm,
            k: r.k,
            decision: r.decision,
            size: r.best_size,
            id_base: ids.base,
            witness: r.witness.map(|w| ids.edges(w.edges())),
            y_used: r.y_used,
            z_used: r.z_used,
            stats: r.stats.into(),
            wall_time_ms,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GraphOut {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphOut {
    pub fn new(g: &Graph, ids: Ids) -> Self {
        GraphOut {
            n: g.n(),
            edges: ids.edges(g.edges()),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Mapping {
    Kept { kernel_id: usize },
    Deleted,
}

#[derive(Debug, Serialize)]
pub struct KernelReport {
    pub schema: u32,
    pub instance: String,
    pub k: usize,
    pub status: &'static str,
    pub m: usize,
    pub id_base: usize,
    pub matching: Vec<[usize; 2]>,
    pub overloaded: Vec<usize>,
    pub labeled: Vec<usize>,
    pub deleted: Vec<usize>,
    pub kernel: GraphOut,
    /// Role of each kernel vertex, indexed by kernel id.
    pub roles: Vec<VertexRole>,
    /// Fate of each input vertex, indexed by input id.
    pub mapping: Vec<Mapping>,
    pub ledger: Option<KernelBoundsLedger>,
    pub wall_time_ms: f64,
}

impl KernelReport {
    pub fn new(
        instance: &str,
        ids: Ids,
        r: &KernelResult,
        ledger: Option<KernelBoundsLedger>,
        wall_time_ms: f64,
    ) -> Self {
        let shift = |vs: &[usize]| vs.iter().map(|v| v + ids.base).collect::<Vec<_>>();
        let roles = r
            .roles
            .iter()
            .map(|role| match *role {
                VertexRole::Original(v) => VertexRole::Original(v + ids.base),
                VertexRole::Pendant(w) => VertexRole::Pendant(w + ids.base),
            })
            .collect();
        KernelReport {
            schema: SCHEMA,
            instance: instance.to_string(),
            k: r.k,
            status: match r.status {
                KernelStatus::SolvedByM0(_) => "solved_by_m0",
                KernelStatus::RejectedTooManyMatchingEdges => "rejected_too_many_matching_edges",
                KernelStatus::Kernel => "kernel",
            },
            m: r.m(),
            id_base: ids.base,
            matching: ids.edges(r.m0.edges()),
            overloaded: shift(&r.overloaded),
            labeled: shift(&r.labeled),
            deleted: shift(&r.deleted),
            kernel: GraphOut::new(&r.kernel_graph, ids),
            roles,
            mapping: r
                .to_kernel
                .iter()
                .map(|t| match t {
                    Some(kid) => Mapping::Kept {
                        kernel_id: kid + ids.base,
                    },
                    None => Mapping::Deleted,
                })
                .collect(),
            ledger,
            wall_time_ms,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SelectionReport {
    pub schema: u32,
    pub instance: String,
    pub problem: &'static str,
    pub k: Option<usize>,
    pub decision: bool,
    pub size: Option<usize>,
    pub id_base: usize,
    /// Edges of a matching or matrix positions, depending on `problem`.
    pub witness: Option<Vec<[usize; 2]>>,
    pub wall_time_ms: f64,
}
