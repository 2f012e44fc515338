//! Vertex-disjoint path covers.

use serde::Serialize;

use crate::error::{HydraError, Result};
use crate::graph::Graph;

/// Host size up to which [`min_path_cover`] is exact.
pub const DEFAULT_EXACT_COVER_CAP: usize = 16;

/// The subset DP allocates `2^n * n` cells, so larger caps are clamped.
const EXACT_COVER_HARD_CAP: usize = 20;

/// A set of vertex-disjoint paths covering every vertex of `host`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathCover {
    #[serde(skip)]
    pub host: Graph,
    pub paths: Vec<Vec<usize>>,
    /// True when the cover is known to be minimum.
    pub optimal: bool,
}

impl PathCover {
    /// Checks the paths against `host` and wraps them.
    pub fn new(host: Graph, paths: Vec<Vec<usize>>, optimal: bool) -> Result<Self> {
        let mut seen = vec![false; host.n()];
        for path in &paths {
            if path.is_empty() {
                return Err(HydraError::InvalidCover("empty path".into()));
            }
            for &v in path {
                if v >= host.n() {
                    return Err(HydraError::InvalidCover(format!("vertex {v} not in host")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(HydraError::InvalidCover(format!("vertex {v} covered twice")));
                }
            }
            if let Some(w) = path.windows(2).find(|w| !host.has_edge(w[0], w[1])) {
                return Err(HydraError::InvalidCover(format!("{} and {} are not adjacent", w[0], w[1])));
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(HydraError::InvalidCover(format!("vertex {v} uncovered")));
        }
        Ok(PathCover { host, paths, optimal })
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// How [`min_path_cover_with`] treats large hosts.
#[derive(Clone, Copy, Debug)]
pub struct CoverOptions {
    pub exact_cap: usize,
    /// Fail instead of falling back to the greedy cover above the cap.
    pub require_exact: bool,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions {
            exact_cap: DEFAULT_EXACT_COVER_CAP,
            require_exact: false,
        }
    }
}

/// Minimum path cover (exact up to the default cap, greedy above it).
pub fn min_path_cover(g: &Graph) -> Result<PathCover> {
    min_path_cover_with(g, CoverOptions::default())
}

pub fn min_path_cover_with(g: &Graph, opts: CoverOptions) -> Result<PathCover> {
    if g.n() <= opts.exact_cap.min(EXACT_COVER_HARD_CAP) {
        let paths = exact_cover(g);
        return PathCover::new(g.clone(), paths, true);
    }
    if opts.require_exact {
        return Err(HydraError::TooLarge {
            what: "vertices for exact path cover",
            limit: opts.exact_cap,
            actual: g.n(),
        });
    }
    PathCover::new(g.clone(), greedy_cover(g), false)
}

/// DP over (covered set, end of the current path): fewest paths so far.
fn exact_cover(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let adj = g.adjacency_masks();
    let states = 1usize << n;
    const UNSET: u8 = u8::MAX;
    let mut best = vec![UNSET; states * n];
    let mut parent = vec![u8::MAX; states * n];
    for v in 0..n {
        best[(1 << v) * n + v] = 1;
    }
    for set in 1..states {
        for end in 0..n {
            let here = best[set * n + end];
            if here == UNSET {
                continue;
            }
            for next in 0..n {
                if set & (1 << next) != 0 {
                    continue;
                }
                let cost = here + u8::from(adj[end] & (1 << next) == 0);
                let slot = (set | 1 << next) * n + next;
                if cost < best[slot] {
                    best[slot] = cost;
                    parent[slot] = end as u8;
                }
            }
        }
    }
    let all = states - 1;
    let mut end = (0..n).min_by_key(|&v| best[all * n + v]).expect("n > 0");
    let mut set = all;
    let mut order = Vec::with_capacity(n);
    loop {
        order.push(end);
        let prev = parent[set * n + end];
        set &= !(1 << end);
        if set == 0 {
            break;
        }
        end = prev as usize;
    }
    order.reverse();
    let mut paths: Vec<Vec<usize>> = Vec::new();
    for v in order {
        match paths.last_mut() {
            Some(p) if g.has_edge(*p.last().expect("non-empty"), v) => p.push(v),
            _ => paths.push(vec![v]),
        }
    }
    paths
}

/// Greedy stripping: start at a vertex of least remaining degree and extend
/// both ends towards the least-degree unused neighbour.
fn greedy_cover(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut used = vec![false; n];
    let free_degree = |v: usize, used: &[bool]| g.neighbors(v).iter().filter(|&&w| !used[w]).count();
    let mut paths = Vec::new();
    while let Some(start) = (0..n).filter(|&v| !used[v]).min_by_key(|&v| free_degree(v, &used)) {
        used[start] = true;
        let mut path = std::collections::VecDeque::from([start]);
        for front in [false, true] {
            loop {
                let end = if front { path[0] } else { *path.back().expect("non-empty") };
                let next = g
                    .neighbors(end)
                    .iter()
                    .copied()
                    .filter(|&w| !used[w])
                    .min_by_key(|&w| free_degree(w, &used));
                let Some(next) = next else { break };
                used[next] = true;
                if front {
                    path.push_front(next);
                } else {
                    path.push_back(next);
                }
            }
        }
        paths.push(path.into_iter().collect());
    }
    paths
}

/// Exact minimum path cover of the line graph of a forest, in linear time.
///
/// The line graph of a tree is a union of cliques (one per vertex) glued at
/// single vertices with no other cycles, so a path cover is a choice, in every
/// clique, of a linear forest on its members. Per clique this is determined by
/// how many chosen neighbours (0, 1 or 2) each member gets, and an edge's two
/// cliques may give it at most 2 together. A rooted DP over these degrees
/// maximizes the number of chosen line-graph edges; the vertex indices of the
/// returned cover are edge indices of `forest`.
pub fn forest_line_cover(forest: &Graph) -> Result<PathCover> {
    if forest.m() + forest.components().len() != forest.n() {
        return Err(HydraError::NotATree);
    }
    let links = ForestDp::new(forest).links();
    let host = super::line::line_graph(forest);
    let paths = paths_from_links(forest.m(), &links);
    PathCover::new(host, paths, true)
}

const NEG: i64 = i64::MIN / 4;

/// Knapsack state over a vertex's incident edges: count of degree-1 members
/// capped as 0, 1, 2 (even, ≥2) or 3 (odd, ≥3), and whether any member has degree 2.
fn state(ones: usize, twos: bool) -> usize {
    ones * 2 + usize::from(twos)
}

fn add_member(ones: usize, twos: bool, degree: usize) -> (usize, bool) {
    match degree {
        0 => (ones, twos),
        1 => (
            match ones {
                0 => 1,
                1 | 3 => 2,
                _ => 3,
            },
            twos,
        ),
        _ => (ones, true),
    }
}

fn valid_end(ones: usize, twos: bool) -> bool {
    (ones == 0 || ones == 2) && (!twos || ones == 2)
}

struct ForestDp<'a> {
    g: &'a Graph,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    order: Vec<usize>,
    /// `dp[v][a]`: most chosen links in the subtree of `v` when the parent edge
    /// has degree `a` inside `v`'s clique (index 0 only for roots).
    dp: Vec<[i64; 3]>,
    /// For each child `c`: best `(value, degree at c)` when the parent's clique gives it `b`.
    child_best: Vec<[(i64, usize); 3]>,
}

impl<'a> ForestDp<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let start = order.len();
            order.push(root);
            let mut i = start;
            while i < order.len() {
                let v = order[i];
                for &w in g.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some(v);
                        children[v].push(w);
                        order.push(w);
                    }
                }
                i += 1;
            }
        }
        ForestDp {
            g,
            parent,
            children,
            order,
            dp: vec![[NEG; 3]; n],
            child_best: vec![[(NEG, 0); 3]; n],
        }
    }

    /// Knapsack over `v`'s children with the parent edge fixed at `a`.
    /// Returns the tables (value, back-pointer) for reconstruction.
    fn knapsack(&self, v: usize, a: Option<usize>) -> Vec<[(i64, usize, usize); 8]> {
        let (o0, t0) = a.map_or((0, false), |d| add_member(0, false, d));
        let mut table = vec![[(NEG, usize::MAX, 0usize); 8]; self.children[v].len() + 1];
        table[0][state(o0, t0)] = (i64::from(a.unwrap_or(0) as u8), usize::MAX, 0);
        for (i, &c) in self.children[v].iter().enumerate() {
            for s in 0..8 {
                let (val, _, _) = table[i][s];
                if val == NEG {
                    continue;
                }
                let (ones, twos) = (s / 2, s % 2 == 1);
                for b in 0..3 {
                    let (sub, _) = self.child_best[c][b];
                    if sub == NEG {
                        continue;
                    }
                    let (o, t) = add_member(ones, twos, b);
                    let total = val + 2 * sub + b as i64;
                    let slot = &mut table[i + 1][state(o, t)];
                    if total > slot.0 {
                        *slot = (total, s, b);
                    }
                }
            }
        }
        table
    }

    /// Returns, per vertex, the degree of each incident edge inside its clique.
    fn solve(mut self) -> Vec<Vec<(usize, usize)>> {
        for &v in self.order.iter().rev() {
            let options: &[Option<usize>] = if self.parent[v].is_some() {
                &[Some(0), Some(1), Some(2)]
            } else {
                &[None]
            };
            for &a in options {
                let table = self.knapsack(v, a);
                let last = table.last().expect("non-empty");
                let best = (0..8)
                    .filter(|&s| valid_end(s / 2, s % 2 == 1))
                    .map(|s| last[s].0)
                    .max()
                    .unwrap_or(NEG);
                self.dp[v][a.unwrap_or(0)] = if best == NEG { NEG } else { best / 2 };
            }
            if self.parent[v].is_some() {
                for b in 0..3 {
                    self.child_best[v][b] = (0..=2 - b)
                        .map(|a| (self.dp[v][a], a))
                        .filter(|&(x, _)| x != NEG)
                        .max_by_key(|&(x, a)| (x, std::cmp::Reverse(a)))
                        .unwrap_or((NEG, 0));
                }
            }
        }

        // Top-down reconstruction of the degree choices.
        let n = self.g.n();
        let mut degree_at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut parent_degree: Vec<Option<usize>> = vec![None; n];
        for &v in &self.order {
            let a = parent_degree[v];
            let table = self.knapsack(v, a);
            let last = table.len() - 1;
            let mut s = (0..8)
                .filter(|&s| valid_end(s / 2, s % 2 == 1))
                .max_by_key(|&s| table[last][s].0)
                .expect("some valid state");
            if let (Some(p), Some(d)) = (self.parent[v], a) {
                degree_at[v].push((p, d));
            }
            for i in (0..self.children[v].len()).rev() {
                let (_, prev, b) = table[i + 1][s];
                let c = self.children[v][i];
                degree_at[v].push((c, b));
                parent_degree[c] = Some(self.child_best[c][b].1);
                s = prev;
            }
        }
        degree_at
    }
}

/// Builds the per-clique linear forests and joins them into paths over edge indices.
fn paths_from_links_of(g: &Graph, degree_at: &[Vec<(usize, usize)>]) -> Vec<(usize, usize)> {
    let mut links = Vec::new();
    for (v, members) in degree_at.iter().enumerate() {
        let idx = |w: usize| g.edge_index(v, w).expect("incident edge");
        let ones: Vec<usize> = members.iter().filter(|m| m.1 == 1).map(|m| idx(m.0)).collect();
        let twos: Vec<usize> = members.iter().filter(|m| m.1 == 2).map(|m| idx(m.0)).collect();
        if ones.is_empty() {
            continue;
        }
        let mut chain = vec![ones[0]];
        chain.extend(&twos);
        chain.push(ones[1]);
        links.extend(chain.windows(2).map(|w| (w[0], w[1])));
        links.extend(ones[2..].chunks(2).map(|p| (p[0], p[1])));
    }
    links
}

fn paths_from_links(m: usize, links: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); m];
    for &(a, b) in links {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; m];
    let mut paths = Vec::new();
    for s in 0..m {
        if seen[s] || adj[s].len() > 1 {
            continue;
        }
        let mut path = vec![s];
        seen[s] = true;
        let mut cur = s;
        while let Some(&next) = adj[cur].iter().find(|&&x| !seen[x]) {
            seen[next] = true;
            path.push(next);
            cur = next;
        }
        paths.push(path);
    }
    debug_assert!(seen.iter().all(|&s| s), "links formed a cycle");
    paths
}

impl ForestDp<'_> {
    fn links(self) -> Vec<(usize, usize)> {
        let g = self.g;
        let degrees = self.solve();
        paths_from_links_of(g, &degrees)
    }
}

/// Number of line-graph links a per-clique degree choice yields; exposed for tests.
#[cfg(test)]
fn clique_links(degrees: &[usize]) -> Option<usize> {
    let ones = degrees.iter().filter(|&&d| d == 1).count();
    let twos = degrees.iter().filter(|&&d| d == 2).count();
    (ones % 2 == 0 && (twos == 0 || ones >= 2)).then_some((ones + 2 * twos) / 2)
}
