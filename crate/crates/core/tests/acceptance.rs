//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if a hard criterion fails. Criteria 6 and 7 are soft: a failure
//! is reported but does not fail the run.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use edsolve_core::eds::solve_eds;
use edsolve_core::eds1::solve_eds1;
use edsolve_core::instances::{
    fit_log_growth, gnp, path, path_optimum, petersen, random_cubic, random_matrix,
};
use edsolve_core::kernel::{kernel_stats, kernelize, lift_solution, KernelStatus};
use edsolve_core::matching::{maximum_matching, min_cied};
use edsolve_core::oracle::{
    brute_matrix_domination, brute_maximum_matching, brute_min_cied, brute_min_eds,
    brute_min_maximal_matching, MAX_CIED_EDGES, MAX_MATRIX_ONES,
};
use edsolve_core::reductions::{eds_to_maximal_matching, solve_matrix_domination, solve_mmm};
use edsolve_core::state::{Scope, SearchState, VertexLabel};
use edsolve_core::stats::{audit, AuditReport, BranchStats, AUDIT_TOLERANCE, BRANCH3_BASE};
use edsolve_core::{is_eds, Graph, Report, SolveOptions, Solver, SolverRegistry};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const SEED: u64 = 0x5eed_2024;
const ORACLE_EDGES: usize = 24;
const KMAX_EXHAUSTIVE: usize = 3;
const RANDOM_INSTANCES: usize = 500;
const LEAF_STATES: usize = 400;
const MATRICES: usize = 200;
const MACRO_RATIO: f64 = 0.99;
const GROWTH_SLACK: f64 = 1e4;
const EDS_BASE: f64 = 2.3715;
const EDS1_BASE: f64 = 2.3147;
const GROWTH_KMAX: usize = 8;
const MAX_NOTES: usize = 8;

struct Pipelines {
    eds: Arc<dyn Solver>,
    eds1: Arc<dyn Solver>,
    auto: Arc<dyn Solver>,
}

impl Pipelines {
    fn new() -> Self {
        let reg = SolverRegistry::with_builtins();
        Pipelines {
            eds: reg.get("eds").unwrap(),
            eds1: reg.get("eds1").unwrap(),
            auto: reg.get("auto").unwrap(),
        }
    }
}

/// Counters shared by the exhaustive and random passes.
#[derive(Default)]
struct Tally {
    runs: usize,
    disagreements: usize,
    oracle_checked: usize,
    notes: Vec<String>,
    nodes: u64,
    violations: usize,
    audit: AuditReport,
    kernels: usize,
    kernel_answer_bad: usize,
    kernel_oracle: usize,
    kernel_regime_bad: usize,
    kernel_ledger_bad: usize,
    kernel_boundary_over: usize,
    lifts: usize,
    lift_bad: usize,
    mmm_runs: usize,
    mmm_bad: usize,
    conversions: usize,
    conversion_bad: usize,
}

impl Tally {
    fn note(&mut self, msg: String) {
        if self.notes.len() < MAX_NOTES {
            self.notes.push(msg);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.runs += other.runs;
        self.disagreements += other.disagreements;
        self.oracle_checked += other.oracle_checked;
        for n in other.notes {
            self.note(n);
        }
        self.nodes += other.nodes;
        self.violations += other.violations;
        self.audit.absorb(other.audit);
        self.kernels += other.kernels;
        self.kernel_answer_bad += other.kernel_answer_bad;
        self.kernel_oracle += other.kernel_oracle;
        self.kernel_regime_bad += other.kernel_regime_bad;
        self.kernel_ledger_bad += other.kernel_ledger_bad;
        self.kernel_boundary_over += other.kernel_boundary_over;
        self.lifts += other.lifts;
        self.lift_bad += other.lift_bad;
        self.mmm_runs += other.mmm_runs;
        self.mmm_bad += other.mmm_bad;
        self.conversions += other.conversions;
        self.conversion_bad += other.conversion_bad;
        self
    }

    fn absorb_stats(&mut self, stats: &BranchStats) {
        self.nodes += stats.nodes;
        self.violations += stats.violations.len();
        if let Some(records) = &stats.records {
            self.audit.absorb(audit(records));
        }
    }
}

/// Consistency of one report against an optional known optimum.
fn report_problem(g: &Graph, k: usize, r: &Report, opt: Option<usize>) -> Option<String> {
    let witness_ok = match &r.witness {
        Some(w) => is_eds(g, w.edges()).unwrap_or(false) && Some(w.size()) == r.best_size,
        None => r.best_size.is_none(),
    };
    if r.decision != r.witness.is_some() || !witness_ok {
        return Some(format!("{}: inconsistent report at k={k}", r.algorithm));
    }
    if r.best_size.is_some_and(|s| s > k) {
        return Some(format!("{}: best size above k={k}", r.algorithm));
    }
    if let Some(opt) = opt {
        if r.decision != (opt <= k) || (r.decision && r.best_size != Some(opt)) {
            return Some(format!(
                "{}: decision {} size {:?} vs optimum {opt} at k={k}",
                r.algorithm, r.decision, r.best_size
            ));
        }
    }
    None
}

/// Runs the three pipelines plus the kernel and reduction checks on one
/// instance. `opt` and `mmm_opt` are oracle values when available.
fn check_instance(
    p: &Pipelines,
    g: &Graph,
    k: usize,
    opt: Option<usize>,
    mmm_opt: Option<usize>,
    tally: &mut Tally,
) {
    let plain = SolveOptions::default();
    let recorded = SolveOptions {
        record_nodes: true,
        ..plain
    };
    let reports = [
        p.eds.solve(g, k, &plain).unwrap(),
        p.eds1.solve(g, k, &recorded).unwrap(),
        p.auto.solve(g, k, &plain).unwrap(),
    ];
    tally.runs += 1;
    if opt.is_some() {
        tally.oracle_checked += 1;
    }
    let mut bad = reports
        .iter()
        .filter_map(|r| report_problem(g, k, r, opt))
        .collect::<Vec<_>>();
    let first = (reports[0].decision, reports[0].best_size);
    if reports.iter().any(|r| (r.decision, r.best_size) != first) {
        bad.push(format!(
            "pipelines disagree at k={k}: {:?}",
            reports
                .iter()
                .map(|r| (r.decision, r.best_size))
                .collect::<Vec<_>>()
        ));
    }
    if !bad.is_empty() {
        tally.disagreements += 1;
        tally.note(format!(
            "{}: {}",
            g.to_edgelist().replace('\n', ";"),
            bad.join(", ")
        ));
    }
    for r in &reports {
        tally.absorb_stats(&r.stats);
    }
    let yes = reports[1].decision;

    // kernel
    let kr = kernelize(g, k);
    if kr.status == KernelStatus::Kernel {
        tally.kernels += 1;
        let kg = &kr.kernel_graph;
        let kernel_yes = if kg.m() <= ORACLE_EDGES {
            tally.kernel_oracle += 1;
            let (kopt, ksol) = brute_min_eds(kg).unwrap();
            if kopt <= k {
                tally.lifts += 1;
                match lift_solution(g, &kr, &ksol) {
                    Ok(l) if l.size() <= k && is_eds(g, l.edges()).unwrap() => {}
                    _ => tally.lift_bad += 1,
                }
            }
            kopt <= k
        } else {
            let r = solve_eds(kg, k, &plain).unwrap();
            if let Some(w) = &r.witness {
                tally.lifts += 1;
                match lift_solution(g, &kr, w) {
                    Ok(l) if l.size() <= k => {}
                    _ => tally.lift_bad += 1,
                }
            }
            r.decision
        };
        if kernel_yes != opt.map_or(yes, |o| o <= k) {
            tally.kernel_answer_bad += 1;
            tally.note(format!("kernel changes the answer at k={k}"));
        }
        let led = kernel_stats(&kr).unwrap();
        if !led.broken_invariants.is_empty() {
            tally.kernel_ledger_bad += 1;
            tally.note(format!("ledger: {:?}", led.broken_invariants));
        }
        if !led.within_regime_bound {
            tally.kernel_regime_bad += 1;
        }
        if led.m == 2 * k && !led.within_vertex_bound {
            tally.kernel_boundary_over += 1;
        }
    }
    if let Some(w) = &reports[2].witness {
        tally.lifts += 1;
        if w.size() > k || !is_eds(g, w.edges()).unwrap() {
            tally.lift_bad += 1;
        }
    }

    // reductions
    tally.mmm_runs += 1;
    let mmm = solve_mmm(g, k).unwrap();
    let mmm_ok = match (&mmm, mmm_opt) {
        (Some(mm), Some(o)) => o <= k && mm.len() == o && mm.is_maximal_in(g),
        (None, Some(o)) => o > k,
        (Some(mm), None) => mm.len() <= k && mm.is_maximal_in(g) && yes,
        (None, None) => !yes,
    };
    if !mmm_ok {
        tally.mmm_bad += 1;
        tally.note(format!("maximal matching mismatch at k={k}"));
    }
    for r in &reports {
        if let Some(w) = &r.witness {
            tally.conversions += 1;
            match eds_to_maximal_matching(g, w) {
                Ok(mm) if mm.len() <= w.size() && mm.is_maximal_in(g) => {}
                _ => tally.conversion_bad += 1,
            }
        }
    }
}

fn six_vertex_graph(mask: u32) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..6)
        .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(
        6,
        pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e),
    )
    .unwrap()
}

fn exhaustive_pass(p: &Pipelines) -> Tally {
    (0u32..1 << 15)
        .into_par_iter()
        .map(|mask| {
            let g = six_vertex_graph(mask);
            let (opt, sol) = brute_min_eds(&g).unwrap();
            let mmm_opt = brute_min_maximal_matching(&g).unwrap().0;
            let mut t = Tally::default();
            if mmm_opt != opt {
                t.note(format!("oracles disagree on mask {mask}"));
                t.disagreements += 1;
            }
            t.conversions += 1;
            match eds_to_maximal_matching(&g, &sol) {
                Ok(mm) if mm.len() <= sol.size() && mm.is_maximal_in(&g) => {}
                _ => t.conversion_bad += 1,
            }
            for k in 0..=KMAX_EXHAUSTIVE {
                check_instance(p, &g, k, Some(opt), Some(mmm_opt), &mut t);
            }
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn random_pass(p: &Pipelines) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let instances: Vec<(Graph, usize)> = (0..RANDOM_INSTANCES)
        .map(|_| {
            let n: usize = rng.gen_range(8..=16);
            let prob = *[0.15, 0.3, 0.5].choose(&mut rng).unwrap();
            let k = rng.gen_range(0..=n.div_ceil(2));
            (gnp(n, prob, &mut rng), k)
        })
        .collect();
    instances
        .par_iter()
        .map(|(g, k)| {
            let mut t = Tally::default();
            let (opt, mmm_opt) = if g.m() <= ORACLE_EDGES {
                (
                    Some(brute_min_eds(g).unwrap().0),
                    Some(brute_min_maximal_matching(g).unwrap().0),
                )
            } else {
                (None, None)
            };
            check_instance(p, g, *k, opt, mmm_opt, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

/// Random valid leaf state: random include/exclude moves interleaved with
/// clique sweeps until nothing is undecided.
fn random_leaf_state<'g>(g: &'g Graph, exclude_bias: f64, rng: &mut ChaCha8Rng) -> SearchState<'g> {
    let mut s = SearchState::new(g, g.n());
    loop {
        s.sweep_cliques(Scope::Undecided);
        let undecided: Vec<usize> = (0..g.n()).filter(|&v| s.is_undecided2(v)).collect();
        let Some(&v) = undecided.choose(rng) else {
            return s;
        };
        if rng.gen_bool(exclude_bias) {
            s.exclude_vertex(v).unwrap();
        } else {
            s.include_vertex(v).unwrap();
        }
    }
}

fn leaf_solution_ok(s: &SearchState<'_>, sol: &edsolve_core::Solution) -> bool {
    let g = s.graph();
    let covered = sol.endpoint_mask(g.n());
    sol.edges().iter().all(|&e| g.contains(e))
        && (0..g.n()).all(|v| match s.label(v) {
            VertexLabel::InCover => covered[v],
            VertexLabel::Excluded => !covered[v],
            _ => true,
        })
        && s.cliques()
            .iter()
            .all(|q| q.iter().filter(|&&v| !covered[v]).count() <= 1)
}

struct Line {
    soft: bool,
    pass: bool,
}

fn main() {
    let start = Instant::now();
    let p = Pipelines::new();
    let mut lines: Vec<Line> = Vec::new();
    let mut push = |id: usize, soft: bool, pass: bool, text: String| {
        println!(
            "{} [{id}]{} {text}",
            if pass { "PASS" } else { "FAIL" },
            if soft { " (soft)" } else { "" }
        );
        lines.push(Line { soft, pass });
    };

    let t = Instant::now();
    let ex = exhaustive_pass(&p);
    let ex_secs = t.elapsed().as_secs_f64();
    for n in &ex.notes {
        println!("  note: {n}");
    }
    push(
        1,
        false,
        ex.disagreements == 0 && ex.runs == (1 << 15) * (KMAX_EXHAUSTIVE + 1),
        format!(
            "exhaustive 6-vertex suite: {} graph/k runs x 3 pipelines vs oracle, {} disagreements, {ex_secs:.1}s",
            ex.runs, ex.disagreements
        ),
    );

    let t = Instant::now();
    let rnd = random_pass(&p);
    for n in &rnd.notes {
        println!("  note: {n}");
    }
    push(
        2,
        false,
        rnd.disagreements == 0 && rnd.runs == RANDOM_INSTANCES,
        format!(
            "random G(n,p) suite: {} instances, {} oracle-checked, {} disagreements, {:.1}s",
            rnd.runs,
            rnd.oracle_checked,
            rnd.disagreements,
            t.elapsed().as_secs_f64()
        ),
    );

    // 3: leaf solver
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let (mut states, mut infeasible, mut leaf_bad) = (0, 0, 0);
    while states < LEAF_STATES {
        let n = rng.gen_range(3..=9);
        let g = gnp(n, rng.gen_range(0.2..0.7), &mut rng);
        let bias = rng.gen_range(0.1..0.9);
        let s = random_leaf_state(&g, bias, &mut rng);
        let Ok(expect) = brute_min_cied(&s) else {
            continue;
        };
        states += 1;
        let got = min_cied(&s).unwrap();
        if expect.is_none() {
            infeasible += 1;
        }
        let ok = match (&got, &expect) {
            (Some(sol), Some((size, _))) => sol.size() == *size && leaf_solution_ok(&s, sol),
            (None, None) => true,
            _ => false,
        };
        if !ok {
            leaf_bad += 1;
            println!(
                "  note: leaf mismatch on {}",
                g.to_edgelist().replace('\n', ";")
            );
        }
    }
    push(
        3,
        false,
        leaf_bad == 0 && states >= 300,
        format!(
            "leaf solver: {states} random states (<= {MAX_CIED_EDGES} candidate edges, {infeasible} infeasible), {leaf_bad} mismatches"
        ),
    );

    // 4: maximum matching
    let mut mm_checked = 0usize;
    let mut mm_bad = 0usize;
    for n in 0..=6usize {
        let pairs = n * n.saturating_sub(1) / 2;
        for mask in 0u32..1 << pairs {
            if mask.count_ones() > 12 {
                continue;
            }
            let all: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let g = Graph::from_edges(
                n,
                all.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e),
            )
            .unwrap();
            mm_checked += 1;
            if maximum_matching(&g).len() != brute_maximum_matching(&g).unwrap() {
                mm_bad += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let mut random_mm = 0;
    while random_mm < 3000 {
        let n = rng.gen_range(7..=16);
        let g = gnp(n, rng.gen_range(0.05..0.4), &mut rng);
        if g.m() > 12 {
            continue;
        }
        random_mm += 1;
        let mm = maximum_matching(&g);
        let valid = mm.edges().iter().all(|&e| g.contains(e));
        if !valid || mm.len() != brute_maximum_matching(&g).unwrap() {
            mm_bad += 1;
        }
    }
    let pet = maximum_matching(&petersen()).len();
    push(
        4,
        false,
        mm_bad == 0 && pet == 5,
        format!(
            "maximum matching: {mm_checked} graphs on <= 6 vertices and {random_mm} random graphs on 7-16 vertices, all <= 12 edges, {mm_bad} mismatches; Petersen = {pet}"
        ),
    );

    let violations = ex.violations + rnd.violations;
    push(
        5,
        false,
        violations == 0,
        format!(
            "branch guarantees: {} branching nodes from criteria 1-2, {violations} violations",
            ex.nodes + rnd.nodes
        ),
    );

    // 6: recurrence audit
    let mut au = AuditReport::default();
    au.absorb(ex.audit);
    au.absorb(rnd.audit);
    let ratio = au.macro_ratio();
    let macro_exceptions: Vec<_> = au
        .exceptions
        .iter()
        .filter(|e| e.rule.is_macro_root())
        .collect();
    let mut dump = String::new();
    for e in &au.exceptions {
        let _ = writeln!(
            dump,
            "{:?} merged={:?} sum={:.5}\n{}",
            e.rule, e.merged, e.branching_sum, e.trace
        );
    }
    let dump_path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("audit_exceptions.txt");
    let _ = std::fs::write(&dump_path, &dump);
    for e in macro_exceptions.iter().take(3) {
        println!(
            "  exception {:?} merged={:?} sum={:.5}",
            e.rule, e.merged, e.branching_sum
        );
        for l in e.trace.lines() {
            println!("    {l}");
        }
    }
    push(
        6,
        true,
        au.macro_groups > 0 && ratio >= MACRO_RATIO,
        format!(
            "recurrence audit: {}/{} rule 3.1-3.6 groups ({:.2}%) within sum {BRANCH3_BASE}^-dp <= 1 + {AUDIT_TOLERANCE}; cycle groups {}/{}; {} exceptions listed in {}",
            au.macro_ok,
            au.macro_groups,
            100.0 * ratio,
            au.cycle_ok,
            au.cycle_groups,
            au.exceptions.len(),
            dump_path.display()
        ),
    );

    // 7: growth on no-instances
    let t = Instant::now();
    let mut growth: Vec<(String, Graph, usize)> = Vec::new();
    for k in 0..=GROWTH_KMAX {
        for n in 3 * k + 2..=3 * k + 4 {
            debug_assert_eq!(path_optimum(n), k + 1);
            growth.push((format!("P{n}"), path(n), k));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let cubic: Vec<Graph> = (6..=22)
        .step_by(2)
        .flat_map(|n| (0..2).map(move |_| n))
        .map(|n| random_cubic(n, &mut rng))
        .collect();
    let cubic_entries: Vec<(String, Graph, usize)> = cubic
        .into_par_iter()
        .enumerate()
        .filter_map(|(i, g)| {
            let upper = g.m();
            let opt = solve_eds1(&g, upper, &SolveOptions::default())
                .unwrap()
                .best_size
                .unwrap();
            if g.m() <= 26 {
                assert_eq!(brute_min_eds(&g).unwrap().0, opt, "cubic optimum");
            }
            (opt >= 1 && opt - 1 <= GROWTH_KMAX)
                .then(|| (format!("cubic{}#{i}", g.n()), g, opt - 1))
        })
        .collect();
    growth.extend(cubic_entries);
    let tree_leaves = |s: &BranchStats| (s.leaves + s.pruned + s.halted) as f64;
    let measured: Vec<(String, usize, f64, f64, bool)> = growth
        .par_iter()
        .map(|(name, g, k)| {
            let a = solve_eds(g, *k, &SolveOptions::default()).unwrap();
            let b = solve_eds1(g, *k, &SolveOptions::default()).unwrap();
            let clean = !a.decision
                && !b.decision
                && a.stats.violations.is_empty()
                && b.stats.violations.is_empty();
            (
                name.clone(),
                *k,
                tree_leaves(&a.stats),
                tree_leaves(&b.stats),
                clean,
            )
        })
        .collect();
    let mut growth_ok = true;
    for (name, k, la, lb, clean) in &measured {
        let ba = GROWTH_SLACK * EDS_BASE.powi(*k as i32);
        let bb = GROWTH_SLACK * EDS1_BASE.powi(*k as i32);
        if !clean || *la > ba || *lb > bb {
            growth_ok = false;
            println!("  note: {name} k={k} leaves eds={la} eds1={lb} clean={clean}");
        }
    }
    let mut fits = Vec::new();
    for family in ["P", "cubic"] {
        for (alg, pick) in [("eds", 0usize), ("eds1", 1)] {
            let pts: Vec<(f64, f64)> = measured
                .iter()
                .filter(|m| m.0.starts_with(family) && m.1 >= 1)
                .map(|m| (m.1 as f64, if pick == 0 { m.2 } else { m.3 }))
                .collect();
            if let Some((slope, _)) = fit_log_growth(&pts) {
                fits.push(format!("{family}/{alg} {:.3}^k", slope.exp()));
            }
        }
    }
    let kmax_seen = measured.iter().map(|m| m.1).max().unwrap_or(0);
    push(
        7,
        true,
        growth_ok,
        format!(
            "growth: {} no-instances (k <= {kmax_seen}) within 1e4*{EDS_BASE}^k / 1e4*{EDS1_BASE}^k leaves; fitted {}; {:.1}s",
            measured.len(),
            fits.join(", "),
            t.elapsed().as_secs_f64()
        ),
    );

    // 8: kernel
    let kernels = ex.kernels + rnd.kernels;
    let kernel_bad = ex.kernel_answer_bad + rnd.kernel_answer_bad;
    let regime_bad = ex.kernel_regime_bad + rnd.kernel_regime_bad;
    let ledger_bad = ex.kernel_ledger_bad + rnd.kernel_ledger_bad;
    let lift_bad = ex.lift_bad + rnd.lift_bad;
    push(
        8,
        false,
        kernels > 0 && kernel_bad == 0 && regime_bad == 0 && ledger_bad == 0 && lift_bad == 0,
        format!(
            "kernel: {kernels} kernels ({} oracle-checked), {kernel_bad} answer changes, {regime_bad} size-bound breaches, {ledger_bad} ledger breaches, {}/{} lifts failed; {} boundary m = 2k kernels above 2k^2+2k",
            ex.kernel_oracle + rnd.kernel_oracle,
            lift_bad,
            ex.lifts + rnd.lifts,
            ex.kernel_boundary_over + rnd.kernel_boundary_over
        ),
    );

    // 9: reductions
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let (mut mats, mut mat_bad) = (0, 0);
    while mats < MATRICES {
        let m = random_matrix(
            rng.gen_range(1..=5),
            rng.gen_range(1..=5),
            rng.gen_range(0.1..0.8),
            &mut rng,
        );
        if m.ones.len() > MAX_MATRIX_ONES {
            continue;
        }
        mats += 1;
        let (opt, _) = brute_matrix_domination(&m).unwrap();
        let hit = solve_matrix_domination(&m, opt).unwrap();
        let ok_hit = hit.is_some_and(|s| s.len() == opt && s.dominates(&m));
        let ok_miss = opt == 0 || solve_matrix_domination(&m, opt - 1).unwrap().is_none();
        if !ok_hit || !ok_miss {
            mat_bad += 1;
            println!("  note: matrix mismatch on\n{}", m.to_text());
        }
    }
    let mmm_bad = ex.mmm_bad;
    let conv = ex.conversions + rnd.conversions;
    let conv_bad = ex.conversion_bad + rnd.conversion_bad + rnd.mmm_bad;
    push(
        9,
        false,
        mmm_bad == 0 && conv_bad == 0 && mat_bad == 0,
        format!(
            "reductions: {} exhaustive maximal-matching runs with {mmm_bad} mismatches; {conv} conversions with {conv_bad} failures; {mats} random matrices up to 5x5 with {mat_bad} mismatches"
        , ex.mmm_runs),
    );

    let hard_fail = lines.iter().filter(|l| !l.pass && !l.soft).count();
    let soft_fail = lines.iter().filter(|l| !l.pass && l.soft).count();
    let passed = lines.iter().filter(|l| l.pass).count();
    println!(
        "acceptance: {passed}/{} criteria passed ({hard_fail} hard failures, {soft_fail} soft failures) in {:.1}s",
        lines.len(),
        start.elapsed().as_secs_f64()
    );
    if hard_fail > 0 {
        std::process::exit(1);
    }
}
