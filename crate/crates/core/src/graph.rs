//! Undirected simple graphs over dense vertex indices `0..n`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{HydraError, Result};

/// An undirected edge stored with `.0 < .1`.
pub type Edge = (usize, usize);

/// Canonical (min, max) form of an unordered pair.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// An undirected simple graph. Immutable after construction.
///
/// Edges are kept sorted, so the position of an edge in [`Graph::edges`] is a
/// stable index (the line graph uses it as its vertex numbering).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(HydraError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(HydraError::SelfLoop(u));
            }
            let e = edge(u, v);
            if !set.insert(e) {
                return Err(HydraError::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    /// Like [`Graph::new`] but silently merges duplicate edges.
    pub fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let set: BTreeSet<Edge> = edges.into_iter().map(|(u, v)| edge(u, v)).collect();
        Self::new(n, set)
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in sorted order.
    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&edge(u, v)).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Sorted neighbour list.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adj[v].is_empty()).collect()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m() + 1 == self.n && self.is_connected()
    }

    /// Vertices reachable from `start` without traversing the edge `skip`.
    fn reach_without(&self, start: usize, skip: Edge) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if edge(x, y) == skip || seen[y] {
                    continue;
                }
                seen[y] = true;
                stack.push(y);
            }
        }
        seen
    }

    /// Cut edges, each paired with the vertex counts of the two sides it separates
    /// within its component (`.0` is the side containing the smaller endpoint).
    pub fn cut_edges(&self) -> Vec<(Edge, usize, usize)> {
        let mut out = Vec::new();
        for &(u, v) in &self.edges {
            let side_u = self.reach_without(u, (u, v));
            if side_u[v] {
                continue;
            }
            let side_v = self.reach_without(v, (u, v));
            let a = side_u.iter().filter(|&&b| b).count();
            let b = side_v.iter().filter(|&&b| b).count();
            out.push(((u, v), a, b));
        }
        out
    }

    /// Spanning subgraph keeping the edges whose indices are set in `keep`.
    pub fn spanning_subgraph(&self, keep: impl Fn(usize) -> bool) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .map(|(_, &e)| e)
            .collect();
        Self::from_sorted(self.n, edges)
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges: BTreeSet<Edge> = self
            .edges
            .iter()
            .filter(|(u, v)| index[*u] != usize::MAX && index[*v] != usize::MAX)
            .map(|&(u, v)| edge(index[u], index[v]))
            .collect();
        Self::from_sorted(vertices.len(), edges.into_iter().collect())
    }

    /// The graph with one more edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().copied().chain([(u, v)]))
    }

    /// The graph with `extra` fresh isolated vertices appended.
    pub fn with_vertices(&self, extra: usize) -> Graph {
        Self::from_sorted(self.n + extra, self.edges.clone())
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Self::from_sorted(self.n, edges)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
            .collect();
        Self::from_sorted(self.n + other.n, edges)
    }

    /// True if every vertex has degree exactly one.
    pub fn is_perfect_matching(&self) -> bool {
        self.n > 0 && self.adj.iter().all(|a| a.len() == 1)
    }

    /// Adjacency bitmasks; only meaningful for `n <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        debug_assert!(self.n <= 64);
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}
