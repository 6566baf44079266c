//! Maximum matching in general graphs and the minimum constrained edge
//! dominating set solved at every search-tree leaf.

use serde::{Deserialize, Serialize};

use crate::error::EdsError;
use crate::graph::{Edge, Graph, Solution};
use crate::state::{SearchState, VertexLabel};

const NONE: usize = usize::MAX;

/// A set of pairwise vertex-disjoint edges.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    /// Fails if two edges share an endpoint.
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Result<Self, EdsError> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        let mut seen = std::collections::HashSet::new();
        for e in &edges {
            if !seen.insert(e.0) || !seen.insert(e.1) {
                return Err(EdsError::Contract(format!(
                    "edges share an endpoint near {}-{}",
                    e.0, e.1
                )));
            }
        }
        Ok(Matching { edges })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// True iff every edge is in `g` and no edge of `g` could be added.
    pub fn is_maximal_in(&self, g: &Graph) -> bool {
        let mut used = vec![false; g.n()];
        for e in &self.edges {
            if !g.contains(*e) {
                return false;
            }
            used[e.0] = true;
            used[e.1] = true;
        }
        g.edges().iter().all(|e| used[e.0] || used[e.1])
    }
}

/// Edmonds' blossom-shrinking search for augmenting paths; returns the mate
/// of every vertex (`None` if exposed).
pub fn maximum_mates(g: &Graph) -> Vec<Option<usize>> {
    let n = g.n();
    let mut mate = vec![NONE; n];
    // greedy warm start
    for e in g.edges() {
        if mate[e.0] == NONE && mate[e.1] == NONE {
            mate[e.0] = e.1;
            mate[e.1] = e.0;
        }
    }
    let mut search = BlossomSearch::new(n);
    for root in 0..n {
        if mate[root] != NONE {
            continue;
        }
        if let Some(end) = search.find_augmenting_path(g, &mate, root) {
            let mut v = end;
            while v != NONE {
                let pv = search.parent[v];
                let next = mate[pv];
                mate[v] = pv;
                mate[pv] = v;
                v = next;
            }
        }
    }
    mate.into_iter().map(|m| (m != NONE).then_some(m)).collect()
}

pub fn maximum_matching(g: &Graph) -> Matching {
    let mates = maximum_mates(g);
    let edges = mates
        .iter()
        .enumerate()
        .filter_map(|(v, m)| m.filter(|&u| v < u).map(|u| Edge(v, u)));
    Matching::new(edges).expect("mates are symmetric")
}

struct BlossomSearch {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    queue: Vec<usize>,
}

impl BlossomSearch {
    fn new(n: usize) -> Self {
        BlossomSearch {
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
            queue: Vec::with_capacity(n),
        }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut on_path = vec![false; mate.len()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    fn find_augmenting_path(&mut self, g: &Graph, mate: &[usize], root: usize) -> Option<usize> {
        let n = g.n();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &to in g.neighbors(v) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return Some(to);
                    }
                    let next = mate[to];
                    self.used[next] = true;
                    self.queue.push(next);
                }
            }
        }
        None
    }
}

/// Minimum edge set `M` inside `G[C ∪ U1]` with every cover vertex an
/// endpoint and at most one vertex of each deferred clique left uncovered.
///
/// The deferred cliques are handled with one matching computation: every
/// clique gets a ghost vertex adjacent to all its members, a maximum matching
/// of the augmented graph is adjusted so that each ghost is matched, and the
/// ghost partners are the vertices allowed to stay uncovered. The optimum is
/// `|C| + |U1| - μ`, where `μ` is the size of that matching.
///
/// Returns `None` when some cover vertex has no admissible incident edge.
pub fn min_cied(state: &SearchState<'_>) -> Result<Option<Solution>, EdsError> {
    let g = state.graph();
    if state.has_undecided2() {
        return Err(EdsError::Contract(
            "leaf solver called with undecided vertices".into(),
        ));
    }
    let active: Vec<usize> = (0..g.n())
        .filter(|&v| state.label(v) != VertexLabel::Excluded)
        .collect();
    let (host, _) = g.induced(&active);
    let cliques = state.cliques();
    let base = active.len();
    let mut local = vec![NONE; g.n()];
    for (i, &v) in active.iter().enumerate() {
        local[v] = i;
    }
    let mut edges: Vec<(usize, usize)> = host.edges().iter().map(|e| (e.0, e.1)).collect();
    for (i, q) in cliques.iter().enumerate() {
        for &v in q {
            edges.push((base + i, local[v]));
        }
    }
    let augmented = Graph::from_edges(base + cliques.len(), edges)?;
    let mut mate: Vec<usize> = maximum_mates(&augmented)
        .into_iter()
        .map(|m| m.unwrap_or(NONE))
        .collect();
    let mu = mate.iter().filter(|&&m| m != NONE).count() / 2;

    for (i, q) in cliques.iter().enumerate() {
        let ghost = base + i;
        if mate[ghost] != NONE {
            continue;
        }
        let v = q
            .iter()
            .map(|&v| local[v])
            .find(|&v| mate[v] != NONE)
            .ok_or_else(|| {
                EdsError::Contract("matching not maximum: free ghost next to free vertex".into())
            })?;
        let u = mate[v];
        mate[u] = NONE;
        mate[v] = ghost;
        mate[ghost] = v;
    }

    // required = active vertices not matched to a ghost
    let mut covered: Vec<bool> = (0..base).map(|i| mate[i] < base).collect();
    let required: Vec<bool> = (0..base)
        .map(|i| mate[i] == NONE || mate[i] < base)
        .collect();
    let mut chosen: Vec<Edge> = (0..base)
        .filter(|&i| mate[i] != NONE && mate[i] < base && i < mate[i])
        .map(|i| Edge::new(active[i], active[mate[i]]))
        .collect();
    for i in 0..base {
        if !required[i] || covered[i] {
            continue;
        }
        let nb = host.neighbors(i);
        let pick = nb
            .iter()
            .copied()
            .find(|&j| required[j] && !covered[j])
            .or_else(|| nb.iter().copied().find(|&j| required[j]))
            .or_else(|| nb.first().copied());
        let Some(j) = pick else { return Ok(None) };
        covered[i] = true;
        covered[j] = true;
        chosen.push(Edge::new(active[i], active[j]));
    }
    let solution = Solution::new(chosen);
    let u1 = cliques.iter().map(Vec::len).sum::<usize>();
    let c = base - u1;
    debug_assert_eq!(solution.size(), c + u1 - mu, "ghost formula");
    Ok(Some(solution))
}
