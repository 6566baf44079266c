//! Partition state shared by the branching solvers.
//!
//! Every vertex carries one label: committed to the cover, excluded from it,
//! parked in a deferred clique, or still undecided. The budget `p` counts how
//! many more cover vertices may be committed; a deferred clique of `q`
//! vertices is charged `q - 1` because at most one of its vertices can stay
//! outside the cover.

use serde::Serialize;

use crate::error::EdsError;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VertexLabel {
    /// Committed to the cover.
    InCover,
    /// Committed to stay outside the cover; its neighbours are all covered.
    Excluded,
    /// Member of a deferred clique, identified by index.
    Undecided1(usize),
    /// Not decided yet.
    Undecided2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Phase {
    Branching,
    Branch3Phase,
    Enumeration,
}

/// Which undecided vertices structure detection looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Every `Undecided2` vertex.
    Undecided,
    /// `Undecided2` vertices outside the frozen 2-paths.
    Unfrozen,
}

/// Path `v0 v1 v2` with `v0` of degree one, `v1` of degree two and `v2` of
/// degree at least two in the scoped subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tail {
    pub v0: usize,
    pub v1: usize,
    pub v2: usize,
}

/// Four vertices with edges `ab`, `bc`, `cd` and `da`; chords allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourCycle {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentClass {
    Clique,
    /// Induced path on exactly three vertices.
    TwoPath,
    /// Path with the given number of edges (at least three).
    Path(usize),
    /// Cycle with the given number of vertices (at least four).
    Cycle(usize),
    /// Anything else, with its maximum degree.
    Other(usize),
}

#[derive(Debug, Clone)]
pub struct SearchState<'g> {
    graph: &'g Graph,
    labels: Vec<VertexLabel>,
    p: i64,
    k: usize,
    cliques: Vec<Vec<usize>>,
    phase: Phase,
    p_snapshot: Option<i64>,
    frozen_paths: Vec<[usize; 3]>,
    frozen: Vec<bool>,
}

impl<'g> SearchState<'g> {
    /// Everything undecided, `p = 2k`.
    pub fn new(graph: &'g Graph, k: usize) -> Self {
        SearchState {
            graph,
            labels: vec![VertexLabel::Undecided2; graph.n()],
            p: 2 * k as i64,
            k,
            cliques: Vec::new(),
            phase: Phase::Branching,
            p_snapshot: None,
            frozen_paths: Vec::new(),
            frozen: vec![false; graph.n()],
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        self.labels[v]
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cliques(&self) -> &[Vec<usize>] {
        &self.cliques
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn set_phase(&mut self, phase: Phase) {
        self.phase = phase;
    }

    pub fn p_snapshot(&self) -> Option<i64> {
        self.p_snapshot
    }

    pub fn frozen_paths(&self) -> &[[usize; 3]] {
        &self.frozen_paths
    }

    pub fn is_frozen(&self, v: usize) -> bool {
        self.frozen[v]
    }

    pub fn is_undecided2(&self, v: usize) -> bool {
        self.labels[v] == VertexLabel::Undecided2
    }

    pub fn has_undecided2(&self) -> bool {
        self.labels.contains(&VertexLabel::Undecided2)
    }

    pub fn in_scope(&self, v: usize, scope: Scope) -> bool {
        self.labels[v] == VertexLabel::Undecided2 && (scope == Scope::Undecided || !self.frozen[v])
    }

    pub fn scope_is_empty(&self, scope: Scope) -> bool {
        !(0..self.graph.n()).any(|v| self.in_scope(v, scope))
    }

    pub fn scoped_neighbors(&self, v: usize, scope: Scope) -> impl Iterator<Item = usize> + '_ {
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(move |&u| self.in_scope(u, scope))
    }

    pub fn scoped_degree(&self, v: usize, scope: Scope) -> usize {
        self.scoped_neighbors(v, scope).count()
    }

    fn expect_undecided2(&self, v: usize, action: &str) -> Result<(), EdsError> {
        if self.labels[v] != VertexLabel::Undecided2 {
            return Err(EdsError::Contract(format!(
                "cannot {action} vertex {v} labelled {:?}",
                self.labels[v]
            )));
        }
        Ok(())
    }

    /// Moves `v` into the cover. Costs one unit of budget.
    pub fn include_vertex(&mut self, v: usize) -> Result<i64, EdsError> {
        self.expect_undecided2(v, "include")?;
        self.labels[v] = VertexLabel::InCover;
        self.p -= 1;
        self.debug_check();
        Ok(1)
    }

    /// Moves `v` into the excluded set and every undecided neighbour into the
    /// cover. Returns the number of newly covered vertices.
    pub fn exclude_vertex(&mut self, v: usize) -> Result<i64, EdsError> {
        self.expect_undecided2(v, "exclude")?;
        let mut delta = 0;
        for &u in self.graph.neighbors(v) {
            match self.labels[u] {
                VertexLabel::Undecided2 => {
                    self.labels[u] = VertexLabel::InCover;
                    delta += 1;
                }
                VertexLabel::InCover => {}
                other => {
                    return Err(EdsError::Contract(format!(
                        "excluding {v}: neighbour {u} is {other:?}"
                    )))
                }
            }
        }
        self.labels[v] = VertexLabel::Excluded;
        self.p -= delta;
        self.debug_check();
        Ok(delta)
    }

    /// Parks the undecided clique `members` as a deferred clique, charging
    /// `|members| - 1`.
    pub fn defer_clique(&mut self, members: &[usize]) -> Result<i64, EdsError> {
        for &v in members {
            self.expect_undecided2(v, "defer")?;
        }
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if !self.graph.has_edge(u, v) {
                    return Err(EdsError::Contract(format!(
                        "deferred set is not a clique: {u} and {v} are not adjacent"
                    )));
                }
            }
        }
        let id = self.cliques.len();
        let mut members = members.to_vec();
        members.sort_unstable();
        for &v in &members {
            self.labels[v] = VertexLabel::Undecided1(id);
        }
        let delta = members.len() as i64 - 1;
        self.cliques.push(members);
        self.p -= delta.max(0);
        Ok(delta.max(0))
    }

    /// Defers every clique component of the scoped undecided subgraph.
    /// Returns the total budget charged.
    pub fn sweep_cliques(&mut self, scope: Scope) -> i64 {
        let mut total = 0;
        loop {
            let cliques: Vec<Vec<usize>> = self
                .components(scope)
                .into_iter()
                .filter(|c| self.component_class(c, scope) == ComponentClass::Clique)
                .collect();
            if cliques.is_empty() {
                break;
            }
            for c in cliques {
                total += self
                    .defer_clique(&c)
                    .expect("clique components consist of undecided vertices");
            }
        }
        self.debug_check();
        total
    }

    /// Connected components of the scoped subgraph, ordered by smallest
    /// vertex; each component is sorted.
    pub fn components(&self, scope: Scope) -> Vec<Vec<usize>> {
        let n = self.graph.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || !self.in_scope(s, scope) {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for u in self.scoped_neighbors(v, scope) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Component of `v` in the scoped subgraph.
    pub fn component_of(&self, v: usize, scope: Scope) -> Vec<usize> {
        self.components(scope)
            .into_iter()
            .find(|c| c.binary_search(&v).is_ok())
            .unwrap_or_default()
    }

    pub fn component_class(&self, comp: &[usize], scope: Scope) -> ComponentClass {
        let s = comp.len();
        let degrees: Vec<usize> = comp.iter().map(|&v| self.scoped_degree(v, scope)).collect();
        let edges = degrees.iter().sum::<usize>() / 2;
        let max_deg = degrees.iter().copied().max().unwrap_or(0);
        if edges == s * (s - 1) / 2 {
            ComponentClass::Clique
        } else if s == 3 && edges == 2 {
            ComponentClass::TwoPath
        } else if max_deg <= 2 && edges + 1 == s {
            ComponentClass::Path(edges)
        } else if degrees.iter().all(|&d| d == 2) {
            ComponentClass::Cycle(s)
        } else {
            ComponentClass::Other(max_deg)
        }
    }

    pub fn classify_components(&self, scope: Scope) -> Vec<(Vec<usize>, ComponentClass)> {
        self.components(scope)
            .into_iter()
            .map(|c| {
                let class = self.component_class(&c, scope);
                (c, class)
            })
            .collect()
    }

    /// All tails of the scoped subgraph, ordered by `(v1, v0, v2)`.
    pub fn tails(&self, scope: Scope) -> Vec<Tail> {
        let mut out = Vec::new();
        for v1 in 0..self.graph.n() {
            if !self.in_scope(v1, scope) {
                continue;
            }
            let nb: Vec<usize> = self.scoped_neighbors(v1, scope).collect();
            if nb.len() != 2 {
                continue;
            }
            let (da, db) = (
                self.scoped_degree(nb[0], scope),
                self.scoped_degree(nb[1], scope),
            );
            if da == 1 && db > 1 {
                out.push(Tail {
                    v0: nb[0],
                    v1,
                    v2: nb[1],
                });
            } else if db == 1 && da > 1 {
                out.push(Tail {
                    v0: nb[1],
                    v1,
                    v2: nb[0],
                });
            }
        }
        out
    }

    pub fn find_tail(&self, scope: Scope) -> Option<Tail> {
        self.tails(scope).into_iter().next()
    }

    /// Smallest 4-cycle, comparing sorted vertex sets first and the cycle
    /// order `(a, b, c, d)` second. `a` is always the smallest vertex.
    pub fn find_4cycle(&self, scope: Scope) -> Option<FourCycle> {
        for a in 0..self.graph.n() {
            if !self.in_scope(a, scope) {
                continue;
            }
            let nb: Vec<usize> = self.scoped_neighbors(a, scope).filter(|&x| x > a).collect();
            let mut best: Option<([usize; 4], FourCycle)> = None;
            for (i, &b) in nb.iter().enumerate() {
                for &d in &nb[i + 1..] {
                    for c in self.scoped_neighbors(b, scope) {
                        if c <= a || c == d || !self.graph.has_edge(c, d) {
                            continue;
                        }
                        let mut key = [a, b, c, d];
                        key.sort_unstable();
                        let cyc = FourCycle { a, b, c, d };
                        let better = match &best {
                            None => true,
                            Some((k, f)) => (key, (b, c, d)) < (*k, (f.b, f.c, f.d)),
                        };
                        if better {
                            best = Some((key, cyc));
                        }
                    }
                }
            }
            if let Some((_, cyc)) = best {
                return Some(cyc);
            }
        }
        None
    }

    /// Freezes the current 2-path components of the undecided subgraph,
    /// records the budget snapshot and enters the Branch3 phase. Returns the
    /// number of frozen paths.
    pub fn freeze_two_paths(&mut self) -> usize {
        let mut paths = Vec::new();
        for (comp, class) in self.classify_components(Scope::Undecided) {
            if class == ComponentClass::TwoPath {
                let mid = *comp
                    .iter()
                    .find(|&&v| self.scoped_degree(v, Scope::Undecided) == 2)
                    .expect("a 2-path has a middle vertex");
                let ends: Vec<usize> = comp.iter().copied().filter(|&v| v != mid).collect();
                paths.push([ends[0], mid, ends[1]]);
            }
        }
        for path in &paths {
            for &v in path {
                self.frozen[v] = true;
            }
        }
        self.frozen_paths = paths;
        self.p_snapshot = Some(self.p);
        self.phase = Phase::Branch3Phase;
        self.debug_check();
        self.frozen_paths.len()
    }

    /// Budget consumed since the Branch3 snapshot.
    pub fn p0(&self) -> Option<i64> {
        self.p_snapshot.map(|snap| snap - self.p)
    }

    /// Verifies every structural invariant of the state.
    pub fn check_invariants(&self) -> Result<(), String> {
        let g = self.graph;
        for e in g.edges() {
            let (a, b) = (self.labels[e.0], self.labels[e.1]);
            if a == VertexLabel::Excluded && b == VertexLabel::Excluded {
                return Err(format!(
                    "excluded vertices {} and {} are adjacent",
                    e.0, e.1
                ));
            }
            for (x, y) in [(a, b), (b, a)] {
                let undecided = matches!(x, VertexLabel::Undecided1(_) | VertexLabel::Undecided2);
                if undecided && y == VertexLabel::Excluded {
                    return Err(format!(
                        "undecided vertex adjacent to excluded: {}-{}",
                        e.0, e.1
                    ));
                }
            }
            match (a, b) {
                (VertexLabel::Undecided1(i), VertexLabel::Undecided1(j)) if i != j => {
                    return Err(format!("deferred cliques {i} and {j} touch"));
                }
                (VertexLabel::Undecided1(i), VertexLabel::Undecided2)
                | (VertexLabel::Undecided2, VertexLabel::Undecided1(i)) => {
                    return Err(format!("deferred clique {i} touches an undecided vertex"));
                }
                _ => {}
            }
        }
        let mut charged = 0i64;
        for (id, clique) in self.cliques.iter().enumerate() {
            for (i, &u) in clique.iter().enumerate() {
                if self.labels[u] != VertexLabel::Undecided1(id) {
                    return Err(format!("clique {id} member {u} relabelled"));
                }
                for &v in &clique[i + 1..] {
                    if !g.has_edge(u, v) {
                        return Err(format!("clique {id} misses edge {u}-{v}"));
                    }
                }
            }
            charged += clique.len() as i64 - 1;
        }
        let cover = self
            .labels
            .iter()
            .filter(|&&l| l == VertexLabel::InCover)
            .count() as i64;
        if self.p != 2 * self.k as i64 - cover - charged {
            return Err(format!(
                "budget {} != 2k - |C| - sum(q-1) = {}",
                self.p,
                2 * self.k as i64 - cover - charged
            ));
        }
        let mut used = vec![false; g.n()];
        for &[v0, v1, v2] in &self.frozen_paths {
            for v in [v0, v1, v2] {
                if std::mem::replace(&mut used[v], true) {
                    return Err(format!("frozen paths share vertex {v}"));
                }
            }
            if !g.has_edge(v0, v1) || !g.has_edge(v1, v2) || g.has_edge(v0, v2) {
                return Err(format!(
                    "frozen triple {v0}-{v1}-{v2} is not an induced 2-path"
                ));
            }
        }
        Ok(())
    }

    fn debug_check(&self) {
        debug_assert_eq!(self.check_invariants(), Ok(()));
    }
}
