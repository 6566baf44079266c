//! Search-tree instrumentation: node counters, per-rule budget guarantees and
//! the merged-branching audit for the degree-3 phase.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

/// Base of the degree-3 phase branching recurrence.
pub const BRANCH3_BASE: f64 = 1.5214;
/// Slack allowed on the branching number sum.
pub const AUDIT_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    #[serde(rename = "sweep")]
    Sweep,
    #[serde(rename = "tail")]
    Tail,
    #[serde(rename = "four_cycle")]
    FourCycle,
    /// Maximum-degree vertex of a component that is not a 2-path.
    #[serde(rename = "max_degree")]
    MaxDegree,
    /// Vertex of degree at least four.
    #[serde(rename = "high_degree")]
    HighDegree,
    /// Middle vertex of a 2-path component (Branch3 rule 2).
    #[serde(rename = "two_path_mid")]
    TwoPathMid,
    #[serde(rename = "b3.1")]
    B31,
    #[serde(rename = "b3.2")]
    B32,
    #[serde(rename = "b3.3")]
    B33,
    #[serde(rename = "b3.4")]
    B34,
    #[serde(rename = "b3.5")]
    B35,
    #[serde(rename = "b3.6")]
    B36,
    #[serde(rename = "b3.7")]
    B37,
}

impl Rule {
    /// Minimum budget decrease owed by each child. `degree` is the scoped
    /// degree of the branching vertex where that matters.
    pub fn required_deltas(self, degree: usize) -> Vec<i64> {
        let d = degree as i64;
        match self {
            Rule::Sweep => Vec::new(),
            Rule::Tail | Rule::FourCycle | Rule::B32 | Rule::B33 | Rule::B35 => vec![2, 2],
            Rule::TwoPathMid => vec![1, 2],
            Rule::B31 | Rule::B34 | Rule::B36 => vec![1, 3],
            Rule::MaxDegree | Rule::B37 => vec![1, d],
            Rule::HighDegree => vec![1, d.max(4)],
        }
    }

    pub fn is_macro_root(self) -> bool {
        matches!(
            self,
            Rule::B31 | Rule::B32 | Rule::B33 | Rule::B34 | Rule::B35 | Rule::B36
        )
    }
}

/// One branching decision as reported by a solver.
#[derive(Debug, Clone, Serialize)]
pub struct BranchNode {
    pub rule: Rule,
    /// Scoped degree of the branching vertex (0 for structural rules).
    pub degree: usize,
    /// Vertices the rule acted on.
    pub vertices: Vec<usize>,
    /// Component of the acting vertex, recorded for cycle branchings.
    pub component: Vec<usize>,
    /// Budget decrease of each child, including its clique sweep.
    pub deltas: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeRecord {
    #[serde(flatten)]
    pub node: BranchNode,
    pub parent: Option<(usize, usize)>,
    pub children: Vec<Option<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub degree: usize,
    pub deltas: Vec<i64>,
    pub required: Vec<i64>,
}

/// Counters gathered over one search tree.
#[derive(Debug, Clone, Default, Serialize)]
pub struct BranchStats {
    pub nodes: u64,
    pub leaves: u64,
    /// Branches abandoned because the budget went negative.
    pub pruned: u64,
    /// Enumeration phases abandoned because too many 2-paths remained.
    pub halted: u64,
    /// 2-path signings tried across all enumeration phases.
    pub subsets: u64,
    pub rule_counts: BTreeMap<Rule, u64>,
    pub p0_histogram: BTreeMap<i64, u64>,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub records: Option<Vec<NodeRecord>>,
}

impl BranchStats {
    pub fn new(record_nodes: bool) -> Self {
        BranchStats {
            records: record_nodes.then(Vec::new),
            ..Default::default()
        }
    }

    pub fn count_rule(&mut self, rule: Rule) {
        *self.rule_counts.entry(rule).or_default() += 1;
    }

    /// Registers a branching node, checks its budget guarantee and returns its
    /// id.
    pub fn record(&mut self, parent: Option<(usize, usize)>, node: BranchNode) -> usize {
        let id = self.nodes as usize;
        self.nodes += 1;
        self.count_rule(node.rule);
        let required = node.rule.required_deltas(node.degree);
        let ok = node.deltas.len() == required.len()
            && node.deltas.iter().zip(&required).all(|(d, r)| d >= r);
        if !ok {
            self.violations.push(Violation {
                rule: node.rule,
                degree: node.degree,
                deltas: node.deltas.clone(),
                required,
            });
        }
        if let Some(records) = &mut self.records {
            if let Some((pid, slot)) = parent {
                records[pid].children[slot] = Some(id);
            }
            let children = vec![None; node.deltas.len()];
            records.push(NodeRecord {
                node,
                parent,
                children,
            });
        }
        id
    }

    /// Adds another tree's counters (records are not merged).
    pub fn absorb(&mut self, other: &BranchStats) {
        self.nodes += other.nodes;
        self.leaves += other.leaves;
        self.pruned += other.pruned;
        self.halted += other.halted;
        self.subsets += other.subsets;
        for (r, c) in &other.rule_counts {
            *self.rule_counts.entry(*r).or_default() += c;
        }
        for (p, c) in &other.p0_histogram {
            *self.p0_histogram.entry(*p).or_default() += c;
        }
        self.violations.extend(other.violations.iter().cloned());
    }
}

/// One merged branching checked against the degree-3 phase recurrence.
#[derive(Debug, Clone, Serialize)]
pub struct GroupAudit {
    pub root: usize,
    pub rule: Rule,
    pub merged: Vec<i64>,
    pub branching_sum: f64,
    pub ok: bool,
    pub trace: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct AuditReport {
    pub macro_groups: usize,
    pub macro_ok: usize,
    pub cycle_groups: usize,
    pub cycle_ok: usize,
    pub exceptions: Vec<GroupAudit>,
}

impl AuditReport {
    pub fn absorb(&mut self, other: AuditReport) {
        self.macro_groups += other.macro_groups;
        self.macro_ok += other.macro_ok;
        self.cycle_groups += other.cycle_groups;
        self.cycle_ok += other.cycle_ok;
        self.exceptions.extend(other.exceptions);
    }

    pub fn macro_ratio(&self) -> f64 {
        if self.macro_groups == 0 {
            1.0
        } else {
            self.macro_ok as f64 / self.macro_groups as f64
        }
    }
}

pub fn branching_sum(deltas: &[i64]) -> f64 {
    deltas.iter().map(|&d| BRANCH3_BASE.powi(-(d as i32))).sum()
}

/// Merges every rule 3.1-3.6 node with the 2-path branchings that follow it
/// directly, and every rule 3.7 cycle opening with the follow-up branchings
/// inside the same cycle, then checks each merged branching vector.
pub fn audit(records: &[NodeRecord]) -> AuditReport {
    let mut report = AuditReport::default();
    for (id, rec) in records.iter().enumerate() {
        let rule = rec.node.rule;
        let group = if rule.is_macro_root() {
            let merged = merge(records, id, &|r: &NodeRecord| {
                r.node.rule == Rule::TwoPathMid
            });
            Some((merged, false))
        } else if rule == Rule::B37 && rec.node.degree == 2 {
            let cycle = &rec.node.component;
            let inside = |r: &NodeRecord| {
                r.node
                    .vertices
                    .iter()
                    .all(|v| cycle.binary_search(v).is_ok())
            };
            Some((merge(records, id, &inside), true))
        } else {
            None
        };
        let Some((merged, is_cycle)) = group else {
            continue;
        };
        let sum = branching_sum(&merged);
        let ok = sum <= 1.0 + AUDIT_TOLERANCE;
        if is_cycle {
            report.cycle_groups += 1;
            report.cycle_ok += ok as usize;
        } else {
            report.macro_groups += 1;
            report.macro_ok += ok as usize;
        }
        if !ok {
            let mut trace = String::new();
            write_trace(records, id, 0, &mut trace);
            report.exceptions.push(GroupAudit {
                root: id,
                rule,
                merged,
                branching_sum: sum,
                ok,
                trace,
            });
        }
    }
    report
}

fn merge(records: &[NodeRecord], id: usize, joins: &dyn Fn(&NodeRecord) -> bool) -> Vec<i64> {
    let rec = &records[id];
    let mut out = Vec::new();
    for (slot, &d) in rec.node.deltas.iter().enumerate() {
        match rec.children[slot] {
            Some(child) if joins(&records[child]) => {
                out.extend(merge(records, child, joins).into_iter().map(|x| x + d));
            }
            _ => out.push(d),
        }
    }
    out
}

fn write_trace(records: &[NodeRecord], id: usize, depth: usize, out: &mut String) {
    let rec = &records[id];
    let _ = writeln!(
        out,
        "{:indent$}#{id} {:?} deg={} on {:?} deltas={:?}",
        "",
        rec.node.rule,
        rec.node.degree,
        rec.node.vertices,
        rec.node.deltas,
        indent = depth * 2
    );
    if depth >= 6 {
        return;
    }
    for child in rec.children.iter().flatten() {
        write_trace(records, *child, depth + 1, out);
    }
}
