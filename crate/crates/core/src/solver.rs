//! Exact hydra numbers by iterative deepening over head assignments.
//!
//! Every hyperarc of a representing hypergraph has an edge of `G` as its body
//! (a non-edge body would fire and break the non-edge condition), so a
//! candidate is an assignment of a non-empty head set to every edge. The search
//! fixes a total size `t`, walks the edges in sorted order and enumerates head
//! sets in lexicographic order of their sorted vertex lists. The first
//! hypergraph found at the smallest feasible `t` is therefore the
//! lexicographically least optimum under that order.
//!
//! Pruning rules, all sound for any completion of a partial assignment:
//!
//! * firing: a body whose heads, together with the body itself, contain no
//!   other body and are not all of `V` stops forward chaining immediately. For a
//!   single head this is the "head must neighbour the body" rule.
//! * stuck closure: the closure of an assigned edge, where an unassigned body
//!   is assumed to produce any head it could still receive, must reach `V`.
//! * head coverage: every vertex outside some edge has to be a head somewhere,
//!   and the remaining budget must pay for the ones not yet used.
//! * budget: a body with no admissible single head needs at least two heads.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds;
use crate::error::{HydraError, Result};
use crate::graph::{Edge, Graph};
use crate::hypergraph::{normalize, DirectedHypergraph};
use crate::mask;

/// Search configuration.
#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Give up (inexactly) once `t` would exceed `|E| + max_excess`.
    pub max_excess: Option<usize>,
    /// Vertex -> maximum number of arcs with that head.
    pub head_caps: BTreeMap<usize, usize>,
    /// Collect every optimal certificate, not just the first.
    pub enumerate_all: bool,
    pub node_limit: u64,
    pub time_limit: Option<Duration>,
    /// Split the first edge's branches across the rayon pool.
    pub parallel: bool,
    /// Start deepening at the bounds-module lower bound and stop at its upper bound.
    pub use_bounds: bool,
    /// Largest `|E|` accepted by [`enumerate_optima`].
    pub enumerate_edge_cap: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_excess: None,
            head_caps: BTreeMap::new(),
            enumerate_all: false,
            node_limit: 10_000_000,
            time_limit: Some(Duration::from_secs(60)),
            parallel: false,
            use_bounds: true,
            enumerate_edge_cap: 10,
        }
    }
}

impl SolverOptions {
    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = limit;
        self
    }

    pub fn without_bounds(mut self) -> Self {
        self.use_bounds = false;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prune_single_head_neighbor: u64,
    pub prune_no_firing: u64,
    pub prune_stuck_closure: u64,
    pub prune_head_coverage: u64,
    /// Sizes `t` that were searched exhaustively without success.
    pub levels_exhausted: Vec<usize>,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.prune_single_head_neighbor += other.prune_single_head_neighbor;
        self.prune_no_firing += other.prune_no_firing;
        self.prune_stuck_closure += other.prune_stuck_closure;
        self.prune_head_coverage += other.prune_head_coverage;
    }
}

/// Outcome of an exact search. When the search finished, `lower == upper`
/// and `certificate` is the lexicographically least optimum; otherwise the pair
/// is a proven interval and `certificate` (if any) achieves `upper`.
#[derive(Clone, Debug)]
pub struct HydraResult {
    pub edges: usize,
    pub lower: usize,
    pub upper: Option<usize>,
    pub certificate: Option<DirectedHypergraph>,
    pub all_optima: Option<Vec<DirectedHypergraph>>,
    pub stats: SearchStats,
}

impl HydraResult {
    pub fn is_exact(&self) -> bool {
        self.upper == Some(self.lower)
    }

    pub fn value(&self) -> Option<usize> {
        self.is_exact().then_some(self.lower)
    }

    pub fn excess(&self) -> Option<usize> {
        self.value().map(|v| v - self.edges)
    }
}

enum Flow {
    Continue,
    Found,
    Abort,
}

/// Shared state between (possibly parallel) search workers.
struct Budget {
    nodes: AtomicU64,
    limit: u64,
    deadline: Option<Instant>,
    aborted: AtomicBool,
    /// Smallest root-branch index that found a solution (first-solution mode).
    best_branch: AtomicUsize,
}

impl Budget {
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.limit {
            self.aborted.store(true, Ordering::Relaxed);
        }
        if n % 4096 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.aborted.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.aborted.load(Ordering::Relaxed)
    }
}

/// Per-graph tables shared by all workers.
struct Problem {
    n: usize,
    full: u64,
    bodies: Vec<u64>,
    edges: Vec<Edge>,
    /// Heads that let a single-headed body fire.
    single_options: Vec<u64>,
    /// `suffix_min[i]`: fewest heads the edges `i..` can take.
    suffix_min: Vec<usize>,
    caps: Vec<usize>,
    /// Vertices outside at least one edge; each must be some arc's head.
    must_head: u64,
}

impl Problem {
    fn new(g: &Graph, caps: &BTreeMap<usize, usize>) -> Self {
        let n = g.n();
        let full = mask::full(n);
        let adj = g.adjacency_masks();
        let edges = g.edges().to_vec();
        let bodies: Vec<u64> = edges.iter().map(|&(u, v)| mask::bit(u) | mask::bit(v)).collect();
        let single_options: Vec<u64> = edges
            .iter()
            .zip(&bodies)
            .map(|(&(u, v), &b)| if n == 3 { full & !b } else { (adj[u] | adj[v]) & !b })
            .collect();
        let min_heads: Vec<usize> = single_options.iter().map(|&s| if s == 0 { 2 } else { 1 }).collect();
        let mut suffix_min = vec![0; edges.len() + 1];
        for i in (0..edges.len()).rev() {
            suffix_min[i] = suffix_min[i + 1] + min_heads[i];
        }
        let mut cap_vec = vec![usize::MAX; n];
        for (&v, &c) in caps {
            if v < n {
                cap_vec[v] = c;
            }
        }
        let must_head = (0..n)
            .filter(|&v| bodies.iter().any(|&b| b & mask::bit(v) == 0))
            .fold(0, |m, v| m | mask::bit(v));
        Problem {
            n,
            full,
            bodies,
            edges,
            single_options,
            suffix_min,
            caps: cap_vec,
            must_head,
        }
    }

    fn m(&self) -> usize {
        self.edges.len()
    }

    /// Does `body ∪ heads` let forward chaining continue past the first step?
    fn fires(&self, i: usize, heads: u64) -> bool {
        let reach = self.bodies[i] | heads;
        reach == self.full
            || self
                .bodies
                .iter()
                .enumerate()
                .any(|(j, &b)| j != i && b & !reach == 0)
    }

    fn to_hypergraph(&self, heads: &[u64]) -> DirectedHypergraph {
        let mut h = DirectedHypergraph::new(self.n);
        for (&(u, v), &hs) in self.edges.iter().zip(heads) {
            for w in mask::iter(hs) {
                h.insert(u, v, w).expect("heads avoid the body");
            }
        }
        h
    }
}

struct Worker<'a> {
    p: &'a Problem,
    budget: &'a Budget,
    heads: Vec<u64>,
    head_count: Vec<usize>,
    enumerate_all: bool,
    branch: usize,
    found: Vec<Vec<u64>>,
    stats: SearchStats,
}

impl<'a> Worker<'a> {
    fn new(p: &'a Problem, budget: &'a Budget, enumerate_all: bool) -> Self {
        Worker {
            p,
            budget,
            heads: vec![0; p.m()],
            head_count: vec![0; p.n],
            enumerate_all,
            branch: 0,
            found: Vec::new(),
            stats: SearchStats::default(),
        }
    }

    fn available(&self) -> u64 {
        (0..self.p.n)
            .filter(|&v| self.head_count[v] < self.p.caps[v])
            .fold(0, |m, v| m | mask::bit(v))
    }

    /// Closure of `start` when edges `..=last` are fixed and the rest may still
    /// receive heads. `extra` is the budget beyond one head per open edge.
    fn optimistic_closure(&self, start: u64, last: usize, extra: usize) -> u64 {
        let p = self.p;
        let mut reach = start;
        loop {
            let before = reach;
            for (j, &b) in p.bodies.iter().enumerate() {
                if b & !reach != 0 {
                    continue;
                }
                if j <= last {
                    reach |= self.heads[j];
                } else if extra > 0 {
                    return p.full;
                } else {
                    reach |= p.single_options[j];
                }
            }
            if reach == p.full || reach == before {
                return reach;
            }
        }
    }

    /// Prunes that apply once edges `..=last` are assigned with `left` heads to spare.
    fn consistent(&mut self, last: usize, left: usize) -> bool {
        let p = self.p;
        let open = p.m() - last - 1;
        let covered = self.heads[..=last].iter().fold(0, |m, &h| m | h);
        if mask::count(p.must_head & !covered) > left {
            self.stats.prune_head_coverage += 1;
            return false;
        }
        let extra = left - open;
        for j in 0..=last {
            if self.optimistic_closure(p.bodies[j], last, extra) != p.full {
                self.stats.prune_stuck_closure += 1;
                return false;
            }
        }
        true
    }

    fn search_edge(&mut self, i: usize, left: usize) -> Flow {
        let p = self.p;
        if i == p.m() {
            self.found.push(self.heads.clone());
            if !self.enumerate_all {
                self.budget.best_branch.fetch_min(self.branch, Ordering::Relaxed);
            }
            return Flow::Found;
        }
        if left < p.suffix_min[i] {
            return Flow::Continue;
        }
        let max_size = left - p.suffix_min[i + 1];
        let candidates = p.full & !p.bodies[i] & self.available();
        self.extend_heads(i, 0, candidates, max_size, left)
    }

    /// Tries every head set that extends `set` with vertices of `candidates`
    /// above its current maximum, in lexicographic order.
    fn extend_heads(&mut self, i: usize, set: u64, candidates: u64, max_size: usize, left: usize) -> Flow {
        let size = mask::count(set) + 1;
        for h in mask::iter(candidates) {
            if !self.budget.tick() {
                return Flow::Abort;
            }
            if !self.enumerate_all && self.budget.best_branch.load(Ordering::Relaxed) < self.branch {
                return Flow::Abort;
            }
            let next = set | mask::bit(h);
            if self.p.fires(i, next) {
                match self.place(i, next, left - size) {
                    Flow::Continue => {}
                    Flow::Found if self.enumerate_all => {}
                    other => return other,
                }
            } else if size == 1 {
                self.stats.prune_single_head_neighbor += 1;
            } else {
                self.stats.prune_no_firing += 1;
            }
            if size < max_size {
                let higher = candidates & !mask::below(h + 1);
                match self.extend_heads(i, next, higher, max_size, left) {
                    Flow::Continue => {}
                    Flow::Found if self.enumerate_all => {}
                    other => return other,
                }
            }
        }
        Flow::Continue
    }

    fn place(&mut self, i: usize, set: u64, left: usize) -> Flow {
        self.heads[i] = set;
        for w in mask::iter(set) {
            self.head_count[w] += 1;
        }
        let flow = if self.consistent(i, left) {
            self.search_edge(i + 1, left)
        } else {
            Flow::Continue
        };
        for w in mask::iter(set) {
            self.head_count[w] -= 1;
        }
        self.heads[i] = 0;
        flow
    }

    /// Admissible head sets of edge 0 in search order (for parallel splitting).
    fn root_choices(&mut self, t: usize) -> Vec<u64> {
        let p = self.p;
        let mut out = Vec::new();
        if t < p.suffix_min[0] {
            return out;
        }
        let max_size = t - p.suffix_min[1];
        let candidates = p.full & !p.bodies[0] & self.available();
        fn rec(w: &Worker, set: u64, cands: u64, max: usize, out: &mut Vec<u64>) {
            for h in mask::iter(cands) {
                let next = set | mask::bit(h);
                if w.p.fires(0, next) {
                    out.push(next);
                }
                if mask::count(next) < max {
                    rec(w, next, cands & !mask::below(h + 1), max, out);
                }
            }
        }
        rec(self, 0, candidates, max_size, &mut out);
        out
    }
}

struct LevelOutcome {
    solutions: Vec<Vec<u64>>,
    aborted: bool,
    stats: SearchStats,
}

fn search_level(p: &Problem, budget: &Budget, t: usize, enumerate_all: bool, parallel: bool) -> LevelOutcome {
    budget.best_branch.store(usize::MAX, Ordering::Relaxed);
    if !parallel {
        let mut w = Worker::new(p, budget, enumerate_all);
        let flow = w.search_edge(0, t);
        let aborted = matches!(flow, Flow::Abort) && budget.aborted.load(Ordering::Relaxed);
        return LevelOutcome {
            solutions: w.found,
            aborted,
            stats: w.stats,
        };
    }

    let roots = Worker::new(p, budget, enumerate_all).root_choices(t);
    let results: Vec<(usize, Vec<Vec<u64>>, SearchStats)> = roots
        .par_iter()
        .enumerate()
        .map(|(idx, &set)| {
            let mut w = Worker::new(p, budget, enumerate_all);
            w.branch = idx;
            if !enumerate_all && budget.best_branch.load(Ordering::Relaxed) < idx {
                return (idx, Vec::new(), w.stats);
            }
            if budget.tick() {
                let _ = w.place(0, set, t - mask::count(set));
            }
            (idx, w.found, w.stats)
        })
        .collect();
    let mut stats = SearchStats::default();
    let mut solutions = Vec::new();
    for (_, found, s) in results {
        stats.absorb(&s);
        solutions.extend(found);
        if !enumerate_all && !solutions.is_empty() {
            break;
        }
    }
    LevelOutcome {
        aborted: budget.aborted.load(Ordering::Relaxed) && solutions.is_empty(),
        solutions,
        stats,
    }
}

fn check_instance(g: &Graph) -> Result<()> {
    if g.n() < 3 {
        return Err(HydraError::TooFewVertices(g.n()));
    }
    let isolated = g.isolated_vertices().len();
    if isolated > 0 {
        return Err(HydraError::IsolatedVertices(isolated));
    }
    if g.n() > 64 {
        return Err(HydraError::TooLarge {
            what: "exact solver vertex count",
            limit: 64,
            actual: g.n(),
        });
    }
    Ok(())
}

fn respects_caps(h: &DirectedHypergraph, caps: &BTreeMap<usize, usize>) -> bool {
    caps.iter().all(|(&v, &c)| h.in_degree(v) <= c)
}

fn run(g: &Graph, opts: &SolverOptions) -> Result<HydraResult> {
    check_instance(g)?;
    let m = g.m();
    let p = Problem::new(g, &opts.head_caps);

    let mut start = m.max(p.suffix_min[0]);
    let mut last = 2 * m;
    let mut fallback: Option<DirectedHypergraph> = None;
    if opts.use_bounds {
        let lower = bounds::lower_bound(g)?;
        start = start.max(lower.value);
        let upper = bounds::upper_bound(g)?;
        if respects_caps(&upper.certificate, &opts.head_caps) {
            if opts.head_caps.is_empty() {
                last = last.min(upper.value);
            }
            fallback = Some(upper.certificate);
        }
    }
    if let Some(x) = opts.max_excess {
        last = last.min(m + x);
    }

    let budget = Budget {
        nodes: AtomicU64::new(0),
        limit: opts.node_limit.max(1),
        deadline: opts.time_limit.map(|d| Instant::now() + d),
        aborted: AtomicBool::new(false),
        best_branch: AtomicUsize::new(usize::MAX),
    };
    let mut stats = SearchStats::default();

    let interval = |lower: usize, stats: SearchStats, fallback: Option<DirectedHypergraph>| HydraResult {
        edges: m,
        lower,
        upper: fallback.as_ref().map(|h| h.size()),
        certificate: fallback,
        all_optima: None,
        stats,
    };

    for t in start..=last {
        let outcome = search_level(&p, &budget, t, opts.enumerate_all, opts.parallel);
        stats.absorb(&outcome.stats);
        stats.nodes = budget.nodes.load(Ordering::Relaxed);
        if let Some(first) = outcome.solutions.first() {
            let certificate = p.to_hypergraph(first);
            let all_optima = opts
                .enumerate_all
                .then(|| outcome.solutions.iter().map(|s| p.to_hypergraph(s)).collect());
            let value = certificate.size();
            return Ok(HydraResult {
                edges: m,
                lower: value,
                upper: Some(value),
                certificate: Some(certificate),
                all_optima,
                stats,
            });
        }
        if outcome.aborted {
            return Ok(interval(t, stats, fallback));
        }
        stats.levels_exhausted.push(t);
    }

    if !opts.head_caps.is_empty() && opts.max_excess.is_none_or(|x| m + x >= 2 * m) {
        return Err(HydraError::Infeasible { max_arcs: 2 * m });
    }
    Ok(interval(last + 1, stats, fallback))
}

/// Exact hydra number of a graph with no isolated vertices and `n >= 3`.
pub fn hydra_number(g: &Graph, opts: &SolverOptions) -> Result<HydraResult> {
    let mut opts = opts.clone();
    opts.head_caps.clear();
    run(g, &opts)
}

/// Hydra number where vertex `v` may head at most `head_caps[v]` arcs.
pub fn hydra_number_restricted(
    g: &Graph,
    head_caps: &BTreeMap<usize, usize>,
    opts: &SolverOptions,
) -> Result<HydraResult> {
    let mut opts = opts.clone();
    opts.head_caps = head_caps.clone();
    run(g, &opts)
}

/// Excess-0 search: a certificate with exactly one head per edge, if any.
pub fn is_single_headed(g: &Graph, opts: &SolverOptions) -> Result<(bool, Option<DirectedHypergraph>)> {
    check_instance(g)?;
    if opts.use_bounds && bounds::lower_bound(g)?.value > g.m() {
        return Ok((false, None));
    }
    let mut opts = opts.clone();
    opts.head_caps.clear();
    opts.use_bounds = false;
    opts.max_excess = Some(0);
    let r = run(g, &opts)?;
    match r.value() {
        Some(_) => Ok((true, r.certificate)),
        None if r.lower > g.m() => Ok((false, None)),
        None => Err(HydraError::SearchLimit { nodes: r.stats.nodes }),
    }
}

/// Every optimal certificate, in search order. Limited to small instances.
pub fn enumerate_optima(g: &Graph, opts: &SolverOptions) -> Result<Vec<DirectedHypergraph>> {
    if g.m() > opts.enumerate_edge_cap {
        return Err(HydraError::TooLarge {
            what: "edges for optimum enumeration",
            limit: opts.enumerate_edge_cap,
            actual: g.m(),
        });
    }
    let mut opts = opts.clone();
    opts.enumerate_all = true;
    let r = run(g, &opts)?;
    match r.all_optima {
        Some(all) => Ok(all),
        None => Err(HydraError::SearchLimit { nodes: r.stats.nodes }),
    }
}

/// Solves a graph that may contain isolated vertices: the isolated ones are
/// stripped, the rest is solved exactly, and each stripped vertex is added back
/// as the head of one arc on the first edge. Returns the lifted result and the
/// number of stripped vertices.
pub fn hydra_number_with_isolated(g: &Graph, opts: &SolverOptions) -> Result<(HydraResult, usize)> {
    let (core, isolated) = normalize(g);
    if isolated == 0 {
        return Ok((hydra_number(g, opts)?, 0));
    }
    let mut r = if core.n() == 2 {
        // A single edge closes to its own two vertices with no arcs at all.
        HydraResult {
            edges: 1,
            lower: 0,
            upper: Some(0),
            certificate: Some(DirectedHypergraph::new(2)),
            all_optima: None,
            stats: SearchStats::default(),
        }
    } else {
        hydra_number(&core, opts)?
    };
    let kept: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
    let lift = |h: &DirectedHypergraph| -> DirectedHypergraph {
        let mut out = DirectedHypergraph::new(g.n());
        for a in h.arcs() {
            let (u, v) = a.body();
            out.insert(kept[u], kept[v], kept[a.head()]).expect("relabelled arc");
        }
        let (u, v) = g.edges()[0];
        for w in g.isolated_vertices() {
            out.insert(u, v, w).expect("isolated vertex outside the body");
        }
        out
    };
    r.edges = g.m();
    r.lower += isolated;
    r.upper = r.upper.map(|u| u + isolated);
    r.certificate = r.certificate.as_ref().map(lift);
    r.all_optima = None;
    Ok((r, isolated))
}
