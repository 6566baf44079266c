//! The refined solver with a dedicated degree-3 phase.
//!
//! Vertices of degree at least four are branched on first. The 2-path
//! components present at that point are frozen, and the remaining undecided
//! vertices are cleared by prioritized degree-3 rules. The budget spent in
//! that phase (`p0`) pays for at least `p0 / 2` solution edges away from the
//! frozen paths, which tightens the final enumeration to `k - p0 / 2` edges.

use crate::eds::{enumerate_signings, two_path_triple, Branching, Move, SearchContext};
use crate::error::EdsError;
use crate::graph::Graph;
use crate::registry::{Report, SolveOptions, Solver};
use crate::state::{ComponentClass, Phase, Scope, SearchState};
use crate::stats::Rule;

const SCOPE: Scope = Scope::Unfrozen;

/// Lowest-id vertex of maximum degree in `G[U2]` if that degree is at
/// least four.
fn high_degree_vertex(state: &SearchState<'_>) -> Option<(usize, usize)> {
    (0..state.graph().n())
        .filter(|&v| state.is_undecided2(v))
        .map(|v| (v, state.scoped_degree(v, Scope::Undecided)))
        .filter(|&(_, d)| d >= 4)
        .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
}

/// Picks the first applicable degree-3 phase rule for a swept state whose
/// unfrozen undecided part is nonempty.
pub fn select_branch3_action(state: &SearchState<'_>) -> Result<Branching, EdsError> {
    let n = state.graph().n();
    let scoped: Vec<usize> = (0..n).filter(|&v| state.in_scope(v, SCOPE)).collect();
    if scoped.is_empty() {
        return Err(EdsError::Contract(
            "degree-3 phase with nothing undecided".into(),
        ));
    }
    let mut deg = vec![0usize; n];
    for &v in &scoped {
        deg[v] = state.scoped_degree(v, SCOPE);
        if deg[v] >= 4 {
            return Err(EdsError::Contract(format!(
                "vertex {v} has degree {} in the degree-3 phase",
                deg[v]
            )));
        }
    }
    let classes = state.classify_components(SCOPE);
    if let Some((comp, _)) = classes.iter().find(|(_, c)| *c == ComponentClass::Clique) {
        return Err(EdsError::Contract(format!(
            "unswept clique component {comp:?}"
        )));
    }

    // rule 2, which also realizes the follow-up on freshly created 2-paths
    if let Some((comp, _)) = classes.iter().find(|(_, c)| *c == ComponentClass::TwoPath) {
        let [v0, v1, v2] = two_path_triple(state, comp, SCOPE);
        let mut b = Branching::on_vertex(Rule::TwoPathMid, v1, 2);
        b.vertices = vec![v0, v1, v2];
        return Ok(b);
    }

    let leaves_of = |v: usize| {
        state
            .scoped_neighbors(v, SCOPE)
            .filter(|&u| deg[u] == 1)
            .count()
    };
    let vertex_rule = |rule: Rule, v: usize| Branching::on_vertex(rule, v, deg[v]);

    if let Some(&v) = scoped.iter().find(|&&v| deg[v] == 3 && leaves_of(v) >= 2) {
        return Ok(vertex_rule(Rule::B31, v));
    }
    let tails = state.tails(SCOPE);
    for (rule, want) in [(Rule::B32, 2), (Rule::B33, 3)] {
        if let Some(t) = tails.iter().find(|t| deg[t.v2] == want) {
            return Ok(Branching {
                rule,
                degree: deg[t.v2],
                vertices: vec![t.v0, t.v1, t.v2],
                component: Vec::new(),
                moves: vec![Move::Include(vec![t.v2]), Move::Exclude(t.v2)],
            });
        }
    }
    if let Some(&v) = scoped.iter().find(|&&v| deg[v] == 3 && leaves_of(v) == 1) {
        return Ok(vertex_rule(Rule::B34, v));
    }
    if let Some(c) = state.find_4cycle(SCOPE) {
        return Ok(Branching {
            rule: Rule::B35,
            degree: 0,
            vertices: vec![c.a, c.b, c.c, c.d],
            component: Vec::new(),
            moves: vec![Move::Include(vec![c.a, c.c]), Move::Include(vec![c.b, c.d])],
        });
    }
    if let Some(&v) = scoped
        .iter()
        .find(|&&v| deg[v] == 3 && state.scoped_neighbors(v, SCOPE).any(|u| deg[u] == 2))
    {
        return Ok(vertex_rule(Rule::B36, v));
    }
    let &v = scoped
        .iter()
        .max_by_key(|&&v| (deg[v], std::cmp::Reverse(v)))
        .expect("scope is nonempty");
    let mut b = vertex_rule(Rule::B37, v);
    b.component = state.component_of(v, SCOPE);
    Ok(b)
}

fn explore(
    ctx: &mut SearchContext,
    mut state: SearchState<'_>,
    parent: Option<(usize, usize)>,
) -> Result<(), EdsError> {
    if state.p() < 0 {
        ctx.stats.pruned += 1;
        return Ok(());
    }
    if state.phase() == Phase::Branching {
        if let Some((v, d)) = high_degree_vertex(&state) {
            let b = Branching::on_vertex(Rule::HighDegree, v, d);
            return ctx.branch(state, parent, b, explore);
        }
        state.freeze_two_paths();
    }
    if !state.scope_is_empty(SCOPE) {
        let b = select_branch3_action(&state)?;
        return ctx.branch(state, parent, b, explore);
    }

    // frozen 2-paths never touch the rest of the undecided graph
    for &[v0, v1, v2] in state.frozen_paths() {
        for v in [v0, v1, v2] {
            if !state.is_undecided2(v) {
                return Err(EdsError::Contract(format!(
                    "frozen vertex {v} was relabelled"
                )));
            }
        }
    }
    let p0 = state.p0().expect("snapshot taken when freezing");
    *ctx.stats.p0_histogram.entry(p0).or_default() += 1;
    let k_bound = (2 * state.k() as i64 - p0).div_euclid(2);
    let paths = state.frozen_paths().to_vec();
    enumerate_signings(ctx, &state, &paths, k_bound)
}

pub fn solve_eds1(g: &Graph, k: usize, opts: &SolveOptions) -> Result<Report, EdsError> {
    let mut ctx = SearchContext::new(k, opts);
    let mut state = SearchState::new(g, k);
    ctx.sweep(&mut state);
    explore(&mut ctx, state, None)?;
    Ok(ctx.into_report(Eds1Solver.name()))
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Eds1Solver;

impl Solver for Eds1Solver {
    fn name(&self) -> &'static str {
        "eds1"
    }

    fn summary(&self) -> &'static str {
        "branch on degree >= 4, clear the degree-3 remainder with prioritized rules, \
         then enumerate frozen 2-path signings with the tightened bound"
    }

    fn solve(&self, g: &Graph, k: usize, opts: &SolveOptions) -> Result<Report, EdsError> {
        solve_eds1(g, k, opts)
    }
}
