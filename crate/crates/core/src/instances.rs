//! Instance families for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, MatrixInstance};

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs three vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        .expect("valid clique")
}

/// Star with centre 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
}

/// Outer 5-cycle 0..5, inner pentagram 5..10, spokes `i - (i + 5)`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::from_edges(10, outer.chain(inner).chain(spokes)).expect("valid Petersen graph")
}

/// Minimum edge dominating set size of the path on `n` vertices.
pub fn path_optimum(n: usize) -> usize {
    n.saturating_sub(1).div_ceil(3)
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid random graph")
}

/// Uniform simple 3-regular graph on an even number of vertices, drawn from
/// the configuration model with rejection.
pub fn random_cubic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!(
        n >= 4 && n.is_multiple_of(2),
        "cubic graphs need an even n >= 4"
    );
    let mut points: Vec<usize> = (0..3 * n).map(|i| i / 3).collect();
    loop {
        points.shuffle(rng);
        let pairs: Vec<(usize, usize)> = points.chunks(2).map(|c| (c[0], c[1])).collect();
        let simple = pairs.iter().all(|&(a, b)| a != b);
        if !simple {
            continue;
        }
        if let Ok(g) = Graph::from_edges(n, pairs) {
            if g.m() == 3 * n / 2 {
                return g;
            }
        }
    }
}

/// Binary matrix with each entry set independently with probability `p`.
pub fn random_matrix<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    p: f64,
    rng: &mut R,
) -> MatrixInstance {
    let mut ones = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(p) {
                ones.push((r, c));
            }
        }
    }
    MatrixInstance::new(rows, cols, ones).expect("positions are in range")
}

/// Least-squares line through `(x, ln y)`; returns `(slope, intercept)`.
/// `exp(slope)` is the fitted growth base.
pub fn fit_log_growth(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(_, y)| y > 0.0)
        .map(|&(x, y)| (x, y.ln()))
        .collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return None;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}
