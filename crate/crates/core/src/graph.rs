//! Simple undirected graphs, 0/1 matrices, text formats and the edge
//! domination predicate.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::EdsError;

/// An undirected edge stored with its smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(&self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// Immutable once built: the edge list is sorted and deduplicated, and every
/// adjacency list is sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge iterator. Parallel edges are merged;
    /// loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, EdsError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(EdsError::SelfLoop { line: 0, vertex: u });
            }
            if u >= n || v >= n {
                return Err(EdsError::VertexOutOfRange {
                    line: 0,
                    vertex: u.max(v),
                    n,
                });
            }
            set.insert(Edge::new(u, v));
        }
        Ok(Self::from_sorted_set(n, set))
    }

    fn from_sorted_set(n: usize, set: BTreeSet<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for e in &set {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges: set.into_iter().collect(),
            adj,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.has_edge(e.0, e.1)
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in the order
    /// given. Returns the graph and the new-to-old id map.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut set = BTreeSet::new();
        for e in &self.edges {
            let (a, b) = (index[e.0], index[e.1]);
            if a != usize::MAX && b != usize::MAX {
                set.insert(Edge::new(a, b));
            }
        }
        (Self::from_sorted_set(keep.len(), set), keep.to_vec())
    }

    /// DIMACS text, 1-based ids.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.m());
        for e in &self.edges {
            let _ = writeln!(out, "e {} {}", e.0 + 1, e.1 + 1);
        }
        out
    }

    /// Edge-list text, 0-based ids.
    pub fn to_edgelist(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(out, "{} {}", e.0, e.1);
        }
        out
    }
}

/// Input format for [`parse_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dimacs,
    EdgeList,
}

impl GraphFormat {
    /// DIMACS if any line starts with a `p` header, edge list otherwise.
    pub fn detect(text: &str) -> Self {
        let dimacs = text
            .lines()
            .map(str::trim_start)
            .any(|l| l.starts_with("p ") || l.starts_with("e ") || l.starts_with("c ") || l == "c");
        if dimacs {
            GraphFormat::Dimacs
        } else {
            GraphFormat::EdgeList
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, EdsError> {
    match format {
        GraphFormat::Dimacs => parse_dimacs(text),
        GraphFormat::EdgeList => parse_edgelist(text),
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> EdsError {
    EdsError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_id(tok: Option<&str>, line: usize) -> Result<usize, EdsError> {
    let tok = tok.ok_or_else(|| parse_error(line, "missing vertex id"))?;
    tok.parse::<usize>()
        .map_err(|_| parse_error(line, format!("invalid vertex id `{tok}`")))
}

fn parse_dimacs(text: &str) -> Result<Graph, EdsError> {
    let mut n: Option<usize> = None;
    let mut set = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if n.is_some() {
                    return Err(parse_error(line, "duplicate problem line"));
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    other => {
                        return Err(parse_error(
                            line,
                            format!("expected `p edge`, found `p {}`", other.unwrap_or("")),
                        ))
                    }
                }
                let nv = parse_id(toks.next(), line)?;
                // declared edge count is informational only
                parse_id(toks.next(), line)?;
                if toks.next().is_some() {
                    return Err(parse_error(line, "trailing tokens in problem line"));
                }
                n = Some(nv);
            }
            Some("e") => {
                let u = parse_id(toks.next(), line)?;
                let v = parse_id(toks.next(), line)?;
                if toks.next().is_some() {
                    return Err(parse_error(line, "trailing tokens in edge line"));
                }
                if u == v {
                    return Err(EdsError::SelfLoop { line, vertex: u });
                }
                let nv = n.ok_or_else(|| parse_error(line, "edge line before problem line"))?;
                for x in [u, v] {
                    if x == 0 || x > nv {
                        return Err(EdsError::VertexOutOfRange {
                            line,
                            vertex: x,
                            n: nv,
                        });
                    }
                }
                set.insert(Edge::new(u - 1, v - 1));
            }
            Some(tok) => return Err(parse_error(line, format!("unknown line type `{tok}`"))),
        }
    }
    let n = n.ok_or_else(|| parse_error(0, "missing `p edge` problem line"))?;
    Ok(Graph::from_sorted_set(n, set))
}

fn parse_edgelist(text: &str) -> Result<Graph, EdsError> {
    let mut set = BTreeSet::new();
    let mut n = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = content.split_whitespace();
        let Some(first) = toks.next() else { continue };
        let u = parse_id(Some(first), line)?;
        let v = parse_id(toks.next(), line)?;
        if toks.next().is_some() {
            return Err(parse_error(line, "expected exactly two ids"));
        }
        if u == v {
            return Err(EdsError::SelfLoop { line, vertex: u });
        }
        n = n.max(u + 1).max(v + 1);
        set.insert(Edge::new(u, v));
    }
    Ok(Graph::from_sorted_set(n, set))
}

/// An edge set claimed to dominate a host graph. Edges are kept sorted and
/// unique.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    edges: Vec<Edge>,
}

impl Solution {
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        Solution { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Endpoint indicator vector over `n` vertices.
    pub fn endpoint_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for e in &self.edges {
            mask[e.0] = true;
            mask[e.1] = true;
        }
        mask
    }
}

/// True iff every edge of `g` shares an endpoint with some edge of `m`.
///
/// Fails if `m` contains an edge absent from `g`.
pub fn is_eds(g: &Graph, m: &[Edge]) -> Result<bool, EdsError> {
    let mut covered = vec![false; g.n()];
    for e in m {
        if !g.contains(*e) {
            return Err(EdsError::EdgeNotInGraph(e.0, e.1));
        }
        covered[e.0] = true;
        covered[e.1] = true;
    }
    Ok(g.edges().iter().all(|e| covered[e.0] || covered[e.1]))
}

/// A 0/1 matrix given by the positions of its 1-entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixInstance {
    pub rows: usize,
    pub cols: usize,
    pub ones: BTreeSet<(usize, usize)>,
}

impl MatrixInstance {
    pub fn new(
        rows: usize,
        cols: usize,
        ones: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, EdsError> {
        let ones: BTreeSet<_> = ones.into_iter().collect();
        if let Some(&(r, c)) = ones.iter().find(|&&(r, c)| r >= rows || c >= cols) {
            return Err(EdsError::Parse {
                line: 0,
                message: format!("entry ({r}, {c}) outside a {rows}x{cols} matrix"),
            });
        }
        Ok(MatrixInstance { rows, cols, ones })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(if self.ones.contains(&(r, c)) {
                    '1'
                } else {
                    '0'
                });
            }
            out.push('\n');
        }
        out
    }
}

/// Parses `"<rows> <cols>"` followed by `rows` lines of `cols` binary digits.
pub fn parse_matrix(text: &str) -> Result<MatrixInstance, EdsError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing matrix header"))?;
    let mut toks = header.split_whitespace();
    let rows = parse_id(toks.next(), hline)?;
    let cols = parse_id(toks.next(), hline)?;
    if toks.next().is_some() {
        return Err(parse_error(hline, "matrix header must be `<rows> <cols>`"));
    }
    let mut ones = BTreeSet::new();
    for r in 0..rows {
        let (line, row) = lines
            .next()
            .ok_or_else(|| parse_error(hline + r + 1, format!("missing row {}", r + 1)))?;
        if row.chars().count() != cols {
            return Err(parse_error(
                line,
                format!("row has {} entries, expected {cols}", row.chars().count()),
            ));
        }
        for (c, ch) in row.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => {
                    ones.insert((r, c));
                }
                other => {
                    return Err(parse_error(line, format!("non-binary entry `{other}`")));
                }
            }
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_error(line, "more rows than declared"));
    }
    Ok(MatrixInstance { rows, cols, ones })
}
