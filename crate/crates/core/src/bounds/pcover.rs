//! The spanning-subgraph path cover parameter: the fewest paths of a line
//! graph `L(G')` over all spanning subgraphs `G'` without isolated vertices.
//!
//! Equivalently, the fewest vertex-disjoint paths in `L(G)` whose edges (as
//! edges of `G`) touch every vertex; unused line-graph vertices are the edges
//! dropped from `G'`.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::cover::{forest_line_cover, PathCover};
use super::line::line_graph;
use crate::error::{HydraError, Result};
use crate::graph::Graph;
use crate::mask;

/// Default edge cap for the exhaustive strategy.
pub const DEFAULT_P_EDGE_CAP: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PStrategy {
    /// Search all spanning subgraphs (exact).
    Exhaustive { edge_cap: usize },
    /// Exhaustive up to the cap, then the exact cover of `L(T)` for the whole tree.
    Tree { edge_cap: usize },
    /// Complete binary trees: delete one residue class of edge levels mod 4 and
    /// cover the remaining forest's line graph.
    BinaryFourLevel,
}

impl PStrategy {
    pub fn exhaustive() -> Self {
        PStrategy::Exhaustive {
            edge_cap: DEFAULT_P_EDGE_CAP,
        }
    }

    pub fn tree() -> Self {
        PStrategy::Tree {
            edge_cap: DEFAULT_P_EDGE_CAP,
        }
    }
}

/// A spanning subgraph together with a path cover of its line graph.
#[derive(Clone, Debug, Serialize)]
pub struct PValue {
    pub value: usize,
    #[serde(skip)]
    pub subgraph: Graph,
    /// Cover of `line_graph(subgraph)`; indices refer to `subgraph.edges()`.
    pub cover: PathCover,
    /// True when `value` is the exact minimum, false for an upper bound.
    pub exact: bool,
}

pub fn p_of(g: &Graph, strategy: PStrategy) -> Result<PValue> {
    if !g.isolated_vertices().is_empty() {
        return Err(HydraError::IsolatedVertices(g.isolated_vertices().len()));
    }
    match strategy {
        PStrategy::Exhaustive { edge_cap } => exhaustive(g, edge_cap),
        PStrategy::Tree { edge_cap } => {
            if !g.is_tree() {
                return Err(HydraError::NotATree);
            }
            if g.m() <= edge_cap {
                exhaustive(g, edge_cap)
            } else {
                let cover = forest_line_cover(g)?;
                Ok(PValue {
                    value: cover.len(),
                    subgraph: g.clone(),
                    cover,
                    exact: false,
                })
            }
        }
        PStrategy::BinaryFourLevel => binary_four_level(g),
    }
}

fn exhaustive(g: &Graph, edge_cap: usize) -> Result<PValue> {
    if g.m() > edge_cap.min(64) {
        return Err(HydraError::TooLarge {
            what: "edges for exhaustive spanning-subgraph search",
            limit: edge_cap.min(64),
            actual: g.m(),
        });
    }
    if g.n() > 64 {
        return Err(HydraError::TooLarge {
            what: "vertices for exhaustive spanning-subgraph search",
            limit: 64,
            actual: g.n(),
        });
    }
    let mut search = SystemSearch::new(g);
    for k in 1..=g.m() {
        let mut paths = Vec::new();
        if search.cover_rest(0, 0, k, &mut paths) {
            let (subgraph, cover) = restrict(g, &paths, true)?;
            return Ok(PValue {
                value: cover.len(),
                subgraph,
                cover,
                exact: true,
            });
        }
    }
    unreachable!("the full edge set covers with at most |E| paths")
}

/// Turns paths over `g`'s edge indices into a spanning subgraph and a cover
/// of its line graph.
fn restrict(g: &Graph, paths: &[Vec<usize>], optimal: bool) -> Result<(Graph, PathCover)> {
    let mut keep = vec![false; g.m()];
    for &e in paths.iter().flatten() {
        keep[e] = true;
    }
    let mut index = vec![usize::MAX; g.m()];
    let mut next = 0;
    for (i, &k) in keep.iter().enumerate() {
        if k {
            index[i] = next;
            next += 1;
        }
    }
    let sub = g.spanning_subgraph(|i| keep[i]);
    let relabelled = paths
        .iter()
        .map(|p| p.iter().map(|&e| index[e]).collect())
        .collect();
    let cover = PathCover::new(line_graph(&sub), relabelled, optimal)?;
    Ok((sub, cover))
}

struct SystemSearch {
    n: usize,
    line_adj: Vec<u64>,
    /// Edges incident to each vertex.
    incident: Vec<u64>,
    ends: Vec<u64>,
    full: u64,
    failed: HashSet<(u64, usize)>,
}

impl SystemSearch {
    fn new(g: &Graph) -> Self {
        let lg = line_graph(g);
        let mut incident = vec![0u64; g.n()];
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            incident[u] |= mask::bit(i);
            incident[v] |= mask::bit(i);
        }
        SystemSearch {
            n: g.n(),
            line_adj: lg.adjacency_masks(),
            incident,
            ends: g.edges().iter().map(|&(u, v)| mask::bit(u) | mask::bit(v)).collect(),
            full: mask::full(g.n()),
            failed: HashSet::new(),
        }
    }

    /// Unused-edge component containing `seed`.
    fn component(&self, seed: u64, free: u64) -> u64 {
        let mut comp = seed;
        let mut frontier = seed;
        while frontier != 0 {
            let grow = mask::iter(frontier).fold(0, |m, e| m | self.line_adj[e]) & free & !comp;
            comp |= grow;
            frontier = grow;
        }
        comp
    }

    /// Lower bound on the paths still needed: uncovered vertices whose
    /// remaining edges lie in distinct components of the unused line graph.
    fn forced_paths(&self, used: u64, covered: u64) -> Option<usize> {
        let free = !used & mask::full(self.line_adj.len());
        let mut seen = 0u64;
        let mut count = 0;
        for x in mask::iter(self.full & !covered) {
            let edges = self.incident[x] & free;
            if edges == 0 {
                return None;
            }
            if edges & seen == 0 {
                seen |= self.component(edges, free);
                count += 1;
            }
        }
        Some(count)
    }

    fn cover_rest(&mut self, used: u64, covered: u64, remaining: usize, paths: &mut Vec<Vec<usize>>) -> bool {
        if covered == self.full {
            return true;
        }
        if remaining == 0 || self.failed.contains(&(used, remaining)) {
            return false;
        }
        let ok = match self.forced_paths(used, covered) {
            Some(needed) if needed <= remaining => {
                let x = (covered ^ self.full).trailing_zeros() as usize;
                debug_assert!(x < self.n);
                let starts = self.incident[x] & !used;
                mask::iter(starts).any(|e| {
                    let mut path = VecDeque::from([e]);
                    self.grow(&mut path, false, used | mask::bit(e), covered | self.ends[e], remaining, paths)
                })
            }
            _ => false,
        };
        if !ok {
            self.failed.insert((used, remaining));
        }
        ok
    }

    /// Extends `path` at its tail, then (once `at_head`) at its head, trying
    /// longer paths before stopping.
    fn grow(
        &mut self,
        path: &mut VecDeque<usize>,
        at_head: bool,
        used: u64,
        covered: u64,
        remaining: usize,
        paths: &mut Vec<Vec<usize>>,
    ) -> bool {
        if !at_head {
            let tail = *path.back().expect("non-empty");
            for e in mask::iter(self.line_adj[tail] & !used) {
                path.push_back(e);
                if self.grow(path, false, used | mask::bit(e), covered | self.ends[e], remaining, paths) {
                    return true;
                }
                path.pop_back();
            }
        }
        let head = path[0];
        for e in mask::iter(self.line_adj[head] & !used) {
            path.push_front(e);
            if self.grow(path, true, used | mask::bit(e), covered | self.ends[e], remaining, paths) {
                return true;
            }
            path.pop_front();
        }
        paths.push(path.iter().copied().collect());
        if self.cover_rest(used, covered, remaining - 1, paths) {
            return true;
        }
        paths.pop();
        false
    }
}

/// Depth `d` if `g` is the complete binary tree in heap labelling.
pub(crate) fn binary_depth(g: &Graph) -> Option<usize> {
    let d = (g.n() + 1).trailing_zeros() as usize;
    if d == 0 || g.n() + 1 != 1 << d || g.m() + 1 != g.n() {
        return None;
    }
    (1..g.n())
        .all(|c| g.has_edge((c - 1) / 2, c))
        .then_some(d - 1)
}

/// Depth of the child endpoint of each edge (root has depth 0).
fn edge_levels(g: &Graph) -> Vec<usize> {
    g.edges()
        .iter()
        .map(|&(_, c)| (usize::BITS - (c + 1).leading_zeros() - 1) as usize)
        .collect()
}

fn binary_four_level(g: &Graph) -> Result<PValue> {
    if binary_depth(g).is_none() {
        return Err(HydraError::Precondition(
            "the four-level strategy needs a complete binary tree in heap order".into(),
        ));
    }
    let levels = edge_levels(g);
    let mut best: Option<PValue> = None;
    for residue in [Some(1), Some(2), Some(3), Some(0), None] {
        let sub = g.spanning_subgraph(|i| residue.is_none_or(|r| levels[i] % 4 != r));
        if !sub.isolated_vertices().is_empty() {
            continue;
        }
        let cover = forest_line_cover(&sub)?;
        if best.as_ref().is_none_or(|b| cover.len() < b.value) {
            best = Some(PValue {
                value: cover.len(),
                subgraph: sub,
                cover,
                exact: false,
            });
        }
    }
    Ok(best.expect("deleting nothing is always admissible"))
}
