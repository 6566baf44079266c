//! Linear-size kernel built around a greedy maximal matching.
//!
//! With `M0` maximal and `m = |M0|`, the matched vertices `Vm` form a vertex
//! cover and `V*` is independent. A matched vertex with more than `2k - m`
//! neighbours in `V*` must be an endpoint of every small solution; so must a
//! matched vertex with a degree-1 neighbour, once that neighbour is deleted.
//! Such vertices are labelled and receive a pendant, and `V*` vertices seeing
//! only labelled vertices are dropped.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::EdsError;
use crate::graph::{is_eds, Edge, Graph, Solution};
use crate::matching::Matching;
use crate::registry::{Report, SolveOptions, Solver};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum KernelStatus {
    /// `m <= k`: the greedy matching is already a small enough solution.
    SolvedByM0(Solution),
    /// `m > 2k`: no edge dominating set of size `k` exists.
    RejectedTooManyMatchingEdges,
    Kernel,
}

/// What a kernel vertex stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexRole {
    Original(usize),
    /// Pendant attached to the labelled original vertex.
    Pendant(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelResult {
    pub status: KernelStatus,
    pub k: usize,
    /// Kernel graph; the input graph itself unless `status` is `Kernel`.
    #[serde(skip)]
    pub kernel_graph: Graph,
    pub m0: Matching,
    pub vm: Vec<usize>,
    pub vstar: Vec<usize>,
    /// `|N(v) ∩ V*|` for every original vertex.
    pub x: Vec<usize>,
    /// Overloaded vertices `A`.
    pub overloaded: Vec<usize>,
    /// Labelled vertices `A'`, in id order.
    pub labeled: Vec<usize>,
    pub deleted: Vec<usize>,
    /// Role of each kernel vertex.
    pub roles: Vec<VertexRole>,
    /// Kernel id of each original vertex, `None` if deleted.
    pub to_kernel: Vec<Option<usize>>,
    /// Labelled original vertex to the kernel id of its pendant.
    pub pendant_map: BTreeMap<usize, usize>,
}

impl KernelResult {
    pub fn m(&self) -> usize {
        self.m0.len()
    }

    fn passthrough(g: &Graph, k: usize, m0: Matching, status: KernelStatus) -> Self {
        let n = g.n();
        KernelResult {
            status,
            k,
            kernel_graph: g.clone(),
            m0,
            vm: Vec::new(),
            vstar: Vec::new(),
            x: vec![0; n],
            overloaded: Vec::new(),
            labeled: Vec::new(),
            deleted: Vec::new(),
            roles: (0..n).map(VertexRole::Original).collect(),
            to_kernel: (0..n).map(Some).collect(),
            pendant_map: BTreeMap::new(),
        }
    }
}

/// Maximal matching taking each edge, in sorted order, whose endpoints are
/// both still free.
pub fn greedy_maximal_matching(g: &Graph) -> Matching {
    let mut used = vec![false; g.n()];
    let mut picked = Vec::new();
    for &e in g.edges() {
        if !used[e.0] && !used[e.1] {
            used[e.0] = true;
            used[e.1] = true;
            picked.push(e);
        }
    }
    Matching::new(picked).expect("greedy picks are disjoint")
}

pub fn kernelize(g: &Graph, k: usize) -> KernelResult {
    let n = g.n();
    let m0 = greedy_maximal_matching(g);
    let m = m0.len();
    if m <= k {
        let sol = Solution::new(m0.edges().iter().copied());
        return KernelResult::passthrough(g, k, m0, KernelStatus::SolvedByM0(sol));
    }
    if m > 2 * k {
        return KernelResult::passthrough(g, k, m0, KernelStatus::RejectedTooManyMatchingEdges);
    }

    let mut in_vm = vec![false; n];
    for e in m0.edges() {
        in_vm[e.0] = true;
        in_vm[e.1] = true;
    }
    let vm: Vec<usize> = (0..n).filter(|&v| in_vm[v]).collect();
    let vstar: Vec<usize> = (0..n).filter(|&v| !in_vm[v]).collect();
    let x: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().filter(|&&u| !in_vm[u]).count())
        .collect();

    // line 2
    let mut labeled = vec![false; n];
    let overloaded: Vec<usize> = vm.iter().copied().filter(|&v| m + x[v] > 2 * k).collect();
    for &v in &overloaded {
        labeled[v] = true;
    }

    // line 3; a deletion only lowers the degree of the vertex being labelled
    let mut deleted = vec![false; n];
    for &v in &vm {
        if deleted[v] {
            continue;
        }
        let leaves: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| !deleted[u] && !labeled[u] && g.degree(u) == 1)
            .collect();
        if !leaves.is_empty() {
            for u in leaves {
                deleted[u] = true;
            }
            labeled[v] = true;
        }
    }

    // line 4
    for &u in &vstar {
        if !deleted[u] && g.neighbors(u).iter().all(|&w| deleted[w] || labeled[w]) {
            deleted[u] = true;
        }
    }

    // line 5: survivors keep their relative order, pendants follow
    let mut to_kernel = vec![None; n];
    let mut roles = Vec::new();
    for v in 0..n {
        if !deleted[v] {
            to_kernel[v] = Some(roles.len());
            roles.push(VertexRole::Original(v));
        }
    }
    let labeled_list: Vec<usize> = (0..n).filter(|&v| labeled[v]).collect();
    let mut pendant_map = BTreeMap::new();
    for &w in &labeled_list {
        pendant_map.insert(w, roles.len());
        roles.push(VertexRole::Pendant(w));
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter_map(|e| Some((to_kernel[e.0]?, to_kernel[e.1]?)))
        .collect();
    for (&w, &p) in &pendant_map {
        edges.push((to_kernel[w].expect("labelled vertices survive"), p));
    }
    let kernel_graph = Graph::from_edges(roles.len(), edges).expect("kernel edges are simple");

    KernelResult {
        status: KernelStatus::Kernel,
        k,
        kernel_graph,
        m0,
        vm,
        vstar,
        x,
        overloaded,
        labeled: labeled_list,
        deleted: (0..n).filter(|&v| deleted[v]).collect(),
        roles,
        to_kernel,
        pendant_map,
    }
}

/// Maps an edge dominating set of the kernel back to the input graph. A
/// pendant edge `w'w` becomes the edge from `w` to its lowest-id neighbour.
pub fn lift_solution(g: &Graph, r: &KernelResult, sol: &Solution) -> Result<Solution, EdsError> {
    if !is_eds(&r.kernel_graph, sol.edges())? {
        return Err(EdsError::Contract(
            "not an edge dominating set of the kernel".into(),
        ));
    }
    if r.status != KernelStatus::Kernel {
        return Ok(sol.clone());
    }
    let orig = |v: usize| r.roles[v];
    let mut lifted = Vec::with_capacity(sol.size());
    for e in sol.edges() {
        let edge = match (orig(e.0), orig(e.1)) {
            (VertexRole::Original(a), VertexRole::Original(b)) => Edge::new(a, b),
            (VertexRole::Original(w), VertexRole::Pendant(_))
            | (VertexRole::Pendant(_), VertexRole::Original(w)) => {
                let &u = g.neighbors(w).first().ok_or_else(|| {
                    EdsError::Contract(format!("labelled vertex {w} has no neighbour"))
                })?;
                Edge::new(w, u)
            }
            _ => return Err(EdsError::Contract("edge between two pendants".into())),
        };
        lifted.push(edge);
    }
    let lifted = Solution::new(lifted);
    if !is_eds(g, lifted.edges())? {
        return Err(EdsError::Contract(
            "lifted set does not dominate the input graph".into(),
        ));
    }
    Ok(lifted)
}

/// Counting quantities of the kernel size argument, measured on the output.
#[derive(Debug, Clone, Serialize)]
pub struct KernelBoundsLedger {
    pub m: usize,
    pub k: usize,
    pub vertices: usize,
    pub edges: usize,
    /// Surviving matched vertices that are not labelled.
    pub b: Vec<usize>,
    pub q: usize,
    /// Unmatched kernel vertices adjacent to `B`.
    pub vstar1: Vec<usize>,
    /// The remaining unmatched kernel vertices.
    pub vstar2: Vec<usize>,
    pub e1: usize,
    pub e2: usize,
    pub e3: usize,
    pub e1_bound: usize,
    pub e2_bound: usize,
    pub e3_bound: usize,
    /// `2k² + 2k`.
    pub vertex_bound: usize,
    /// Bound for the current regime: `2k² + 2k`, or `max(2k² + 2k, 8k)` when
    /// `m = 2k`.
    pub regime_vertex_bound: usize,
    pub within_vertex_bound: bool,
    pub within_regime_bound: bool,
    pub within_edge_bound: bool,
    /// Ledger invariants that failed, empty on a sound run.
    pub broken_invariants: Vec<String>,
}

pub fn kernel_stats(r: &KernelResult) -> Result<KernelBoundsLedger, EdsError> {
    if r.status != KernelStatus::Kernel {
        return Err(EdsError::Contract("ledger needs a kernel".into()));
    }
    let kg = &r.kernel_graph;
    let (m, k) = (r.m(), r.k);
    let mut in_vm = vec![false; kg.n()];
    let mut in_b = vec![false; kg.n()];
    let mut is_labeled = vec![false; kg.n()];
    for &w in &r.labeled {
        is_labeled[r.to_kernel[w].expect("labelled vertices survive")] = true;
    }
    for &v in &r.vm {
        if let Some(kv) = r.to_kernel[v] {
            in_vm[kv] = true;
            in_b[kv] = !is_labeled[kv];
        }
    }
    let b: Vec<usize> = (0..kg.n()).filter(|&v| in_b[v]).collect();
    let q: usize = b
        .iter()
        .map(|&v| match r.roles[v] {
            VertexRole::Original(o) => r.x[o],
            VertexRole::Pendant(_) => 0,
        })
        .sum();
    let (vstar1, vstar2): (Vec<usize>, Vec<usize>) = (0..kg.n())
        .filter(|&v| !in_vm[v])
        .partition(|&v| kg.neighbors(v).iter().any(|&u| in_b[u]));
    let (mut e1, mut e2, mut e3) = (0, 0, 0);
    for e in kg.edges() {
        match (in_vm[e.0], in_vm[e.1]) {
            (true, true) => e1 += 1,
            (true, false) | (false, true) => {
                let matched = if in_vm[e.0] { e.0 } else { e.1 };
                if is_labeled[matched] {
                    e2 += 1;
                } else {
                    e3 += 1;
                }
            }
            (false, false) => {}
        }
    }
    let nvm = in_vm.iter().filter(|&&x| x).count();
    let e1_bound = nvm * nvm.saturating_sub(1) / 2;
    let e2_bound = r.labeled.len() * vstar1.len() + vstar2.len();
    let e3_bound = q;
    let vertex_bound = 2 * k * k + 2 * k;
    let regime_vertex_bound = if m == 2 * k {
        vertex_bound.max(8 * k)
    } else {
        vertex_bound
    };

    let mut broken = Vec::new();
    if q > b.len() * (2 * k - m) {
        broken.push(format!("q = {q} > |B|(2k - m) = {}", b.len() * (2 * k - m)));
    }
    if vstar1.len() > q {
        broken.push(format!("|V*1| = {} > q = {q}", vstar1.len()));
    }
    if vstar2.len() != r.labeled.len() {
        broken.push(format!(
            "|V*2| = {} != |A'| = {}",
            vstar2.len(),
            r.labeled.len()
        ));
    }
    if e1 + e2 + e3 != kg.m() {
        broken.push(format!(
            "E1 + E2 + E3 = {} != |E| = {}",
            e1 + e2 + e3,
            kg.m()
        ));
    }
    if e3 != q {
        broken.push(format!("|E3| = {e3} != q = {q}"));
    }

    Ok(KernelBoundsLedger {
        m,
        k,
        vertices: kg.n(),
        edges: kg.m(),
        b,
        q,
        vstar1,
        vstar2,
        e1,
        e2,
        e3,
        e1_bound,
        e2_bound,
        e3_bound,
        vertex_bound,
        regime_vertex_bound,
        within_vertex_bound: kg.n() <= vertex_bound,
        within_regime_bound: kg.n() <= regime_vertex_bound,
        within_edge_bound: e1 <= e1_bound && e2 <= e2_bound && e3 <= e3_bound,
        broken_invariants: broken,
    })
}

/// Kernelizes first, then runs the inner solver on whatever is left.
pub struct KernelizedSolver {
    name: &'static str,
    inner: Arc<dyn Solver>,
}

impl KernelizedSolver {
    pub fn new(name: &'static str, inner: Arc<dyn Solver>) -> Self {
        KernelizedSolver { name, inner }
    }

    /// The `auto` pipeline.
    pub fn auto(inner: Arc<dyn Solver>) -> Self {
        Self::new("auto", inner)
    }
}

impl Solver for KernelizedSolver {
    fn name(&self) -> &'static str {
        self.name
    }

    fn summary(&self) -> &'static str {
        "kernelize, then solve the kernel and lift the witness"
    }

    fn solve(&self, g: &Graph, k: usize, opts: &SolveOptions) -> Result<Report, EdsError> {
        let kr = kernelize(g, k);
        let mut report = match &kr.status {
            KernelStatus::RejectedTooManyMatchingEdges => Report::no(self.name, k),
            // the greedy matching bounds the optimum, so this returns a minimum
            KernelStatus::SolvedByM0(_) => self.inner.solve(g, kr.m(), opts)?,
            KernelStatus::Kernel => {
                let mut rep = self.inner.solve(&kr.kernel_graph, k, opts)?;
                if let Some(w) = rep.witness.take() {
                    let lifted = lift_solution(g, &kr, &w)?;
                    rep.best_size = Some(lifted.size());
                    rep.witness = Some(lifted);
                }
                rep
            }
        };
        report.algorithm = self.name.to_string();
        report.k = k;
        Ok(report)
    }
}
