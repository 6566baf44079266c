//! Exhaustive ground truth. Everything here enumerates subsets in order of
//! size and stops at the first valid one; guards keep the worst case small.

use crate::error::EdsError;
use crate::graph::{Edge, Graph, MatrixInstance, Solution};
use crate::matching::Matching;
use crate::reductions::EntrySelection;
use crate::registry::{Report, SolveOptions, Solver};
use crate::state::{SearchState, VertexLabel};

pub const MAX_EDS_EDGES: usize = 26;
pub const MAX_CIED_EDGES: usize = 24;
pub const MAX_MATRIX_ONES: usize = 20;

fn guard(size: usize, limit: usize) -> Result<(), EdsError> {
    if size > limit {
        Err(EdsError::TooLarge { size, limit })
    } else {
        Ok(())
    }
}

/// Calls `f` on every `r`-subset of `0..m` in lexicographic order until it
/// returns true. Returns whether it did.
pub fn for_each_combination(m: usize, r: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if r > m {
        return false;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let mut i = r;
        while i > 0 && idx[i - 1] == m - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        idx[i - 1] += 1;
        for j in i..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Endpoint bitmasks of the edges after compacting non-isolated vertices.
fn edge_masks(edges: &[Edge]) -> Vec<u64> {
    let mut ids = std::collections::BTreeMap::new();
    for e in edges {
        let next = ids.len();
        ids.entry(e.0).or_insert(next);
        let next = ids.len();
        ids.entry(e.1).or_insert(next);
    }
    edges
        .iter()
        .map(|e| (1u64 << ids[&e.0]) | (1u64 << ids[&e.1]))
        .collect()
}

/// Minimum edge dominating set by exhaustive search.
pub fn brute_min_eds(g: &Graph) -> Result<(usize, Solution), EdsError> {
    guard(g.m(), MAX_EDS_EDGES)?;
    let masks = edge_masks(g.edges());
    let m = masks.len();
    for r in 0..=m {
        let mut found = None;
        for_each_combination(m, r, |pick| {
            let cover = pick.iter().fold(0u64, |acc, &i| acc | masks[i]);
            if masks.iter().all(|&e| e & cover != 0) {
                found = Some(pick.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(pick) = found {
            let sol = Solution::new(pick.into_iter().map(|i| g.edges()[i]));
            return Ok((r, sol));
        }
    }
    unreachable!("the full edge set dominates")
}

/// Minimum constrained edge dominating set of a state without undecided
/// vertices: edges avoid the excluded set, cover every cover vertex and
/// leave at most one vertex per deferred clique uncovered.
pub fn brute_min_cied(state: &SearchState<'_>) -> Result<Option<(usize, Solution)>, EdsError> {
    if state.has_undecided2() {
        return Err(EdsError::Contract("undecided vertices remain".into()));
    }
    let g = state.graph();
    let allowed = |v: usize| state.label(v) != VertexLabel::Excluded;
    let cand: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|e| allowed(e.0) && allowed(e.1))
        .collect();
    guard(cand.len(), MAX_CIED_EDGES)?;
    let cover: Vec<usize> = (0..g.n())
        .filter(|&v| state.label(v) == VertexLabel::InCover)
        .collect();
    let valid = |pick: &[usize]| {
        let mut hit = vec![false; g.n()];
        for &i in pick {
            hit[cand[i].0] = true;
            hit[cand[i].1] = true;
        }
        cover.iter().all(|&v| hit[v])
            && state
                .cliques()
                .iter()
                .all(|q| q.iter().filter(|&&v| !hit[v]).count() <= 1)
    };
    for r in 0..=cand.len() {
        let mut found = None;
        for_each_combination(cand.len(), r, |pick| {
            if valid(pick) {
                found = Some(pick.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(pick) = found {
            return Ok(Some((r, Solution::new(pick.into_iter().map(|i| cand[i])))));
        }
    }
    Ok(None)
}

/// Smallest maximal matching by exhaustive search.
pub fn brute_min_maximal_matching(g: &Graph) -> Result<(usize, Matching), EdsError> {
    guard(g.m(), MAX_EDS_EDGES)?;
    let masks = edge_masks(g.edges());
    let m = masks.len();
    for r in 0..=m {
        let mut found = None;
        for_each_combination(m, r, |pick| {
            let mut used = 0u64;
            for &i in pick {
                if used & masks[i] != 0 {
                    return false;
                }
                used |= masks[i];
            }
            if masks.iter().all(|&e| e & used != 0) {
                found = Some(pick.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(pick) = found {
            let mm = Matching::new(pick.into_iter().map(|i| g.edges()[i]))?;
            return Ok((r, mm));
        }
    }
    unreachable!("a greedy matching is maximal")
}

/// Size of a maximum matching by exhaustive branching over edges.
pub fn brute_maximum_matching(g: &Graph) -> Result<usize, EdsError> {
    guard(g.m(), MAX_EDS_EDGES)?;
    fn best(masks: &[u64], used: u64) -> usize {
        match masks.split_first() {
            None => 0,
            Some((&e, rest)) => {
                let skip = best(rest, used);
                if e & used == 0 {
                    skip.max(1 + best(rest, used | e))
                } else {
                    skip
                }
            }
        }
    }
    Ok(best(&edge_masks(g.edges()), 0))
}

/// Smallest set of 1-entries sharing a row or column with every 1-entry.
pub fn brute_matrix_domination(mat: &MatrixInstance) -> Result<(usize, EntrySelection), EdsError> {
    guard(mat.ones.len(), MAX_MATRIX_ONES)?;
    let ones: Vec<(usize, usize)> = mat.ones.iter().copied().collect();
    for r in 0..=ones.len() {
        let mut found = None;
        for_each_combination(ones.len(), r, |pick| {
            let mut rows = vec![false; mat.rows];
            let mut cols = vec![false; mat.cols];
            for &i in pick {
                rows[ones[i].0] = true;
                cols[ones[i].1] = true;
            }
            if ones.iter().all(|&(a, b)| rows[a] || cols[b]) {
                found = Some(pick.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(pick) = found {
            let sel = EntrySelection::new(pick.into_iter().map(|i| ones[i]));
            return Ok((r, sel));
        }
    }
    unreachable!("all 1-entries dominate themselves")
}

/// Registry wrapper around [`brute_min_eds`].
#[derive(Debug, Default, Clone, Copy)]
pub struct BruteForceSolver;

impl Solver for BruteForceSolver {
    fn name(&self) -> &'static str {
        "brute"
    }

    fn summary(&self) -> &'static str {
        "exhaustive search over edge subsets (at most 26 edges)"
    }

    fn solve(&self, g: &Graph, k: usize, _: &SolveOptions) -> Result<Report, EdsError> {
        let (size, sol) = brute_min_eds(g)?;
        let mut report = Report::no(self.name(), k);
        if size <= k {
            report.decision = true;
            report.best_size = Some(size);
            report.witness = Some(sol);
        }
        Ok(report)
    }
}
