//! The basic branch-and-reduce solver.
//!
//! Each node sweeps clique components, abandons the branch when the budget
//! is negative, and branches on a tail, then a 4-cycle, then a maximum-degree
//! vertex of a component that is not a 2-path. Once only 2-path components
//! remain, every admissible choice of unsigned 2-paths is tried and each leaf
//! is solved by [`min_cied`].

use crate::error::EdsError;
use crate::graph::{Graph, Solution};
use crate::matching::min_cied;
use crate::registry::{Report, SolveOptions, Solver};
use crate::state::{ComponentClass, Scope, SearchState};
use crate::stats::{BranchNode, BranchStats, Rule};

/// A child move applied to a clone of the parent state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// Put all listed vertices into the cover.
    Include(Vec<usize>),
    /// Exclude the vertex and cover its undecided neighbours.
    Exclude(usize),
}

impl Move {
    pub fn apply(&self, state: &mut SearchState<'_>) -> Result<(), EdsError> {
        match self {
            Move::Include(vs) => {
                for &v in vs {
                    state.include_vertex(v)?;
                }
            }
            Move::Exclude(v) => {
                state.exclude_vertex(*v)?;
            }
        }
        Ok(())
    }
}

/// A branching decision before its children are built.
#[derive(Debug, Clone)]
pub struct Branching {
    pub rule: Rule,
    pub degree: usize,
    pub vertices: Vec<usize>,
    pub component: Vec<usize>,
    pub moves: Vec<Move>,
}

impl Branching {
    /// Include/exclude branching on one vertex.
    pub fn on_vertex(rule: Rule, v: usize, degree: usize) -> Self {
        Branching {
            rule,
            degree,
            vertices: vec![v],
            component: Vec::new(),
            moves: vec![Move::Include(vec![v]), Move::Exclude(v)],
        }
    }
}

type Explore =
    fn(&mut SearchContext, SearchState<'_>, Option<(usize, usize)>) -> Result<(), EdsError>;

/// Accumulates the best leaf candidate and search statistics of one solve.
#[derive(Debug)]
pub struct SearchContext {
    pub stats: BranchStats,
    best: Option<Candidate>,
    k: usize,
    first_hit: bool,
}

#[derive(Debug, Clone)]
struct Candidate {
    solution: Solution,
    y: usize,
    z: usize,
}

impl SearchContext {
    pub fn new(k: usize, opts: &SolveOptions) -> Self {
        SearchContext {
            stats: BranchStats::new(opts.record_nodes),
            best: None,
            k,
            first_hit: opts.first_hit,
        }
    }

    pub fn best_size(&self) -> Option<usize> {
        self.best.as_ref().map(|c| c.solution.size())
    }

    fn finished(&self) -> bool {
        self.first_hit && self.best_size().is_some_and(|s| s <= self.k)
    }

    /// Sweeps clique components, counting each deferred clique.
    pub fn sweep(&mut self, state: &mut SearchState<'_>) -> i64 {
        let before = state.cliques().len();
        let delta = state.sweep_cliques(Scope::Undecided);
        for _ in before..state.cliques().len() {
            self.stats.count_rule(Rule::Sweep);
        }
        delta
    }

    /// Builds every child of `branching`, records the node with the
    /// children's budget decreases and recurses into each child.
    pub(crate) fn branch(
        &mut self,
        state: SearchState<'_>,
        parent: Option<(usize, usize)>,
        branching: Branching,
        explore: Explore,
    ) -> Result<(), EdsError> {
        let mut children = Vec::with_capacity(branching.moves.len());
        let mut deltas = Vec::with_capacity(branching.moves.len());
        for mv in &branching.moves {
            let mut child = state.clone();
            mv.apply(&mut child)?;
            self.sweep(&mut child);
            deltas.push(state.p() - child.p());
            children.push(child);
        }
        let id = self.stats.record(
            parent,
            BranchNode {
                rule: branching.rule,
                degree: branching.degree,
                vertices: branching.vertices,
                component: branching.component,
                deltas,
            },
        );
        for (slot, child) in children.into_iter().enumerate() {
            if self.finished() {
                break;
            }
            explore(self, child, Some((id, slot)))?;
        }
        Ok(())
    }

    fn leaf(&mut self, state: &SearchState<'_>, y: usize, z: usize) -> Result<(), EdsError> {
        self.stats.leaves += 1;
        if let Some(solution) = min_cied(state)? {
            if self.best_size().is_none_or(|b| solution.size() < b) {
                self.best = Some(Candidate { solution, y, z });
            }
        }
        Ok(())
    }

    pub fn into_report(self, algorithm: &str) -> Report {
        let k = self.k;
        let hit = self.best.filter(|c| c.solution.size() <= k);
        Report {
            algorithm: algorithm.to_string(),
            k,
            decision: hit.is_some(),
            best_size: hit.as_ref().map(|c| c.solution.size()),
            y_used: hit.as_ref().map(|c| c.y),
            z_used: hit.as_ref().map(|c| c.z),
            witness: hit.map(|c| c.solution),
            stats: self.stats,
        }
    }
}

/// Tries every signing of the 2-paths `paths` with at most `z` unsigned
/// paths and solves each resulting leaf. `k_bound` is the number of solution
/// edges still available to the paths.
///
/// Every undecided vertex must lie on one of `paths`.
pub fn enumerate_signings(
    ctx: &mut SearchContext,
    state: &SearchState<'_>,
    paths: &[[usize; 3]],
    k_bound: i64,
) -> Result<(), EdsError> {
    let on_paths: usize = paths.len() * 3;
    let undecided = (0..state.graph().n())
        .filter(|&v| state.is_undecided2(v))
        .count();
    if undecided != on_paths {
        return Err(EdsError::Contract(format!(
            "{undecided} undecided vertices but {} on 2-paths",
            on_paths
        )));
    }
    let y = paths.len() as i64;
    let p = state.p();
    if y > p || y > k_bound {
        ctx.stats.halted += 1;
        return Ok(());
    }
    let z = (p - y).min(k_bound - y).min(y) as usize;
    for size in 0..=z {
        let mut result = Ok(());
        crate::oracle::for_each_combination(paths.len(), size, |pick| {
            ctx.stats.subsets += 1;
            let mut leaf = state.clone();
            let mut unsigned = vec![false; paths.len()];
            for &i in pick {
                unsigned[i] = true;
            }
            let applied = (|| {
                for (&[v0, v1, v2], &u) in paths.iter().zip(&unsigned) {
                    if u {
                        leaf.include_vertex(v0)?;
                        leaf.include_vertex(v2)?;
                        leaf.defer_clique(&[v1])?;
                    } else {
                        leaf.include_vertex(v1)?;
                        leaf.defer_clique(&[v0])?;
                        leaf.defer_clique(&[v2])?;
                    }
                }
                leaf.set_phase(crate::state::Phase::Enumeration);
                debug_assert_eq!(leaf.check_invariants(), Ok(()));
                ctx.leaf(&leaf, paths.len(), z)
            })();
            if let Err(e) = applied {
                result = Err(e);
                return true;
            }
            ctx.finished()
        });
        result?;
        if ctx.finished() {
            break;
        }
    }
    Ok(())
}

/// Orders a 2-path component as `[end, middle, end]`.
pub fn two_path_triple(state: &SearchState<'_>, comp: &[usize], scope: Scope) -> [usize; 3] {
    let mid = comp
        .iter()
        .copied()
        .find(|&v| state.scoped_degree(v, scope) == 2)
        .expect("2-path has a middle vertex");
    let ends: Vec<usize> = comp.iter().copied().filter(|&v| v != mid).collect();
    [ends[0], mid, ends[1]]
}

/// Picks the branching the basic solver applies to a swept state, or `None`
/// when only 2-path components remain.
pub fn select_branching(state: &SearchState<'_>) -> Option<Branching> {
    let scope = Scope::Undecided;
    if let Some(t) = state.find_tail(scope) {
        return Some(Branching {
            rule: Rule::Tail,
            degree: state.scoped_degree(t.v2, scope),
            vertices: vec![t.v0, t.v1, t.v2],
            component: Vec::new(),
            moves: vec![Move::Include(vec![t.v2]), Move::Exclude(t.v2)],
        });
    }
    if let Some(c) = state.find_4cycle(scope) {
        return Some(Branching {
            rule: Rule::FourCycle,
            degree: 0,
            vertices: vec![c.a, c.b, c.c, c.d],
            component: Vec::new(),
            moves: vec![Move::Include(vec![c.a, c.c]), Move::Include(vec![c.b, c.d])],
        });
    }
    let (comp, _) = state
        .classify_components(scope)
        .into_iter()
        .find(|(_, class)| *class != ComponentClass::TwoPath)?;
    let v = *comp
        .iter()
        .max_by_key(|&&v| (state.scoped_degree(v, scope), std::cmp::Reverse(v)))
        .expect("components are nonempty");
    let mut b = Branching::on_vertex(Rule::MaxDegree, v, state.scoped_degree(v, scope));
    b.component = comp;
    Some(b)
}

fn explore(
    ctx: &mut SearchContext,
    state: SearchState<'_>,
    parent: Option<(usize, usize)>,
) -> Result<(), EdsError> {
    if state.p() < 0 {
        ctx.stats.pruned += 1;
        return Ok(());
    }
    match select_branching(&state) {
        Some(b) => ctx.branch(state, parent, b, explore),
        None => {
            let paths: Vec<[usize; 3]> = state
                .components(Scope::Undecided)
                .iter()
                .map(|c| two_path_triple(&state, c, Scope::Undecided))
                .collect();
            let k = state.k() as i64;
            enumerate_signings(ctx, &state, &paths, k)
        }
    }
}

/// Decides whether `g` has an edge dominating set of at most `k` edges and,
/// if so, returns a minimum one.
pub fn solve_eds(g: &Graph, k: usize, opts: &SolveOptions) -> Result<Report, EdsError> {
    let mut ctx = SearchContext::new(k, opts);
    let mut state = SearchState::new(g, k);
    ctx.sweep(&mut state);
    explore(&mut ctx, state, None)?;
    Ok(ctx.into_report(EdsSolver.name()))
}

/// Registry entry for [`solve_eds`].
#[derive(Debug, Default, Clone, Copy)]
pub struct EdsSolver;

impl Solver for EdsSolver {
    fn name(&self) -> &'static str {
        "eds"
    }

    fn summary(&self) -> &'static str {
        "branch on tails, 4-cycles and maximum-degree vertices, then enumerate 2-path signings"
    }

    fn solve(&self, g: &Graph, k: usize, opts: &SolveOptions) -> Result<Report, EdsError> {
        solve_eds(g, k, opts)
    }
}
