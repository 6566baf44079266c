//! Minimum maximal matching and matrix domination via edge domination.

use serde::{Deserialize, Serialize};

use crate::eds1::solve_eds1;
use crate::error::EdsError;
use crate::graph::{is_eds, Edge, Graph, MatrixInstance, Solution};
use crate::matching::Matching;
use crate::registry::SolveOptions;

/// A set of matrix positions, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntrySelection {
    entries: Vec<(usize, usize)>,
}

impl EntrySelection {
    pub fn new(entries: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut entries: Vec<_> = entries.into_iter().collect();
        entries.sort_unstable();
        entries.dedup();
        EntrySelection { entries }
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every selected position is a 1-entry and every 1-entry shares a row or
    /// column with a selected one.
    pub fn dominates(&self, mat: &MatrixInstance) -> bool {
        let mut rows = vec![false; mat.rows];
        let mut cols = vec![false; mat.cols];
        for &(r, c) in &self.entries {
            if !mat.ones.contains(&(r, c)) {
                return false;
            }
            rows[r] = true;
            cols[c] = true;
        }
        mat.ones.iter().all(|&(r, c)| rows[r] || cols[c])
    }
}

/// Turns an edge dominating set into a maximal matching that is no larger.
///
/// While some vertex `u` carries two edges, take its edge `uw` with the
/// lowest `w`: drop it if everything at `w` stays dominated, otherwise swap
/// it for the lowest undominated edge `wz`.
pub fn eds_to_maximal_matching(g: &Graph, f: &Solution) -> Result<Matching, EdsError> {
    if !is_eds(g, f.edges())? {
        return Err(EdsError::Contract(
            "input is not an edge dominating set".into(),
        ));
    }
    let n = g.n();
    let mut cur: Vec<Edge> = f.edges().to_vec();
    let mut load = vec![0usize; n];
    for e in &cur {
        load[e.0] += 1;
        load[e.1] += 1;
    }
    while let Some(u) = (0..n).find(|&v| load[v] >= 2) {
        let (pos, e) = cur
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, e)| e.touches(u))
            .min_by_key(|(_, e)| e.other(u))
            .expect("u carries edges");
        let w = e.other(u);
        cur.swap_remove(pos);
        load[u] -= 1;
        load[w] -= 1;
        if load[w] == 0 {
            if let Some(&z) = g.neighbors(w).iter().find(|&&z| load[z] == 0) {
                cur.push(Edge::new(w, z));
                load[w] += 1;
                load[z] += 1;
            }
        }
    }
    let out = Matching::new(cur)?;
    assert!(out.len() <= f.size(), "conversion grew the set");
    assert!(out.is_maximal_in(g), "conversion output is not maximal");
    Ok(out)
}

/// Smallest maximal matching of size at most `k`, if any.
pub fn solve_mmm(g: &Graph, k: usize) -> Result<Option<Matching>, EdsError> {
    let report = solve_eds1(g, k, &SolveOptions::default())?;
    report
        .witness
        .map(|w| eds_to_maximal_matching(g, &w))
        .transpose()
}

/// Rows become vertices `0..rows`, columns `rows..rows + cols`, 1-entries
/// edges.
pub fn matrix_to_bipartite(mat: &MatrixInstance) -> Graph {
    Graph::from_edges(
        mat.rows + mat.cols,
        mat.ones.iter().map(|&(r, c)| (r, mat.rows + c)),
    )
    .expect("positions are in range")
}

fn edge_to_entry(mat: &MatrixInstance, e: Edge) -> (usize, usize) {
    debug_assert!(e.0 < mat.rows && e.1 >= mat.rows);
    (e.0, e.1 - mat.rows)
}

/// Smallest set of at most `k` 1-entries dominating all 1-entries, if any.
pub fn solve_matrix_domination(
    mat: &MatrixInstance,
    k: usize,
) -> Result<Option<EntrySelection>, EdsError> {
    let g = matrix_to_bipartite(mat);
    let report = solve_eds1(&g, k, &SolveOptions::default())?;
    Ok(report
        .witness
        .map(|w| EntrySelection::new(w.edges().iter().map(|&e| edge_to_entry(mat, e)))))
}
