//! Certificate constructions from path covers, Hamiltonian line-graph cycles,
//! spanning subgraphs and single-vertex extensions.

use super::cover::PathCover;
use super::line::{line_graph, line_hamiltonian_cycle, DEFAULT_HAMILTONIAN_EDGE_CAP};
use crate::error::{HydraError, Result};
use crate::graph::{Edge, Graph};
use crate::hypergraph::{represents, DirectedHypergraph};

fn precondition(msg: impl Into<String>) -> HydraError {
    HydraError::Precondition(msg.into())
}

/// Endpoint of `next` not shared with `prev`. The two edges must share exactly one endpoint.
fn step_head(prev: Edge, next: Edge) -> usize {
    if next.0 == prev.0 || next.0 == prev.1 {
        next.1
    } else {
        next.0
    }
}

#[derive(Clone, Debug)]
pub struct PathCoverConstruction {
    pub hypergraph: DirectedHypergraph,
    /// Linking arcs whose head already lies in their body, left out.
    pub dropped_redundant: usize,
}

impl PathCoverConstruction {
    /// Size the construction would have without dropping redundant links.
    pub fn nominal_size(&self) -> usize {
        self.hypergraph.size() + self.dropped_redundant
    }
}

/// Chains each path of a cover of `L(sub)`, then links the last edge of every
/// path to both endpoints of the first edge of the next one (cyclically).
pub fn build_from_path_cover(sub: &Graph, cover: &PathCover) -> Result<PathCoverConstruction> {
    if sub.n() < 3 {
        return Err(HydraError::TooFewVertices(sub.n()));
    }
    if !sub.isolated_vertices().is_empty() {
        return Err(precondition("the spanning subgraph has isolated vertices"));
    }
    let host = line_graph(sub);
    if cover.host != host {
        return Err(HydraError::InvalidCover("host is not the line graph of the subgraph".into()));
    }
    PathCover::new(host, cover.paths.clone(), cover.optimal)?;

    let edges = sub.edges();
    let mut h = DirectedHypergraph::new(sub.n());
    for path in &cover.paths {
        for w in path.windows(2) {
            let (prev, next) = (edges[w[0]], edges[w[1]]);
            h.insert(prev.0, prev.1, step_head(prev, next))?;
        }
    }
    let k = cover.paths.len();
    let mut dropped = 0;
    for (i, path) in cover.paths.iter().enumerate() {
        let (u, v) = edges[*path.last().expect("non-empty path")];
        let (x, y) = edges[cover.paths[(i + 1) % k][0]];
        for head in [x, y] {
            if head == u || head == v {
                dropped += 1;
            } else {
                h.insert(u, v, head)?;
            }
        }
    }
    Ok(PathCoverConstruction {
        hypergraph: h,
        dropped_redundant: dropped,
    })
}

/// One arc per step of a directed Hamiltonian cycle of `L(g)` given as edge indices.
pub fn build_from_line_cycle(g: &Graph, cycle: &[usize]) -> Result<DirectedHypergraph> {
    let host = line_graph(g);
    if cycle.len() != g.m() || cycle.len() < 3 {
        return Err(precondition("the cycle must visit every edge once, and at least three"));
    }
    PathCover::new(host.clone(), vec![cycle.to_vec()], false)?;
    if !host.has_edge(cycle[cycle.len() - 1], cycle[0]) {
        return Err(precondition("the cycle does not close"));
    }
    let edges = g.edges();
    let mut h = DirectedHypergraph::new(g.n());
    for (i, &e) in cycle.iter().enumerate() {
        let (prev, next) = (edges[e], edges[cycle[(i + 1) % cycle.len()]]);
        h.insert(prev.0, prev.1, step_head(prev, next))?;
    }
    Ok(h)
}

/// Single-headed certificate from a Hamiltonian cycle of `L(g)`, or `None` if
/// the line graph has none. Fails above the search cap.
pub fn build_from_line_ham_cycle(g: &Graph) -> Result<Option<DirectedHypergraph>> {
    build_from_line_ham_cycle_with_cap(g, DEFAULT_HAMILTONIAN_EDGE_CAP)
}

pub fn build_from_line_ham_cycle_with_cap(g: &Graph, edge_cap: usize) -> Result<Option<DirectedHypergraph>> {
    match line_hamiltonian_cycle(g, edge_cap)? {
        Some(cycle) => build_from_line_cycle(g, &cycle).map(Some),
        None => Ok(None),
    }
}

/// Extends a certificate of a spanning subgraph to the whole graph: every
/// extra edge `(a, b)` with `a < b` gets the arc `a,b -> w` for the smallest
/// neighbour `w` of `a` in the subgraph.
pub fn extend_spanning(h_sub: &DirectedHypergraph, sub: &Graph, g: &Graph) -> Result<DirectedHypergraph> {
    if sub.n() != g.n() || h_sub.n() != g.n() {
        return Err(precondition("subgraph, certificate and graph must share the vertex set"));
    }
    if let Some(&(u, v)) = sub.edges().iter().find(|&&(u, v)| !g.has_edge(u, v)) {
        return Err(precondition(format!("edge ({u}, {v}) of the subgraph is not in the graph")));
    }
    if !sub.isolated_vertices().is_empty() {
        return Err(precondition("the spanning subgraph has isolated vertices"));
    }
    if !represents(h_sub, sub)?.ok {
        return Err(precondition("the certificate does not represent the subgraph"));
    }
    let mut h = h_sub.clone();
    for &(a, b) in g.edges() {
        if !sub.has_edge(a, b) {
            let w = sub.neighbors(a)[0];
            h.insert(a, b, w)?;
        }
    }
    Ok(h)
}

/// Adds a vertex `w = g.n()`, the edges `(u, v)` and `(v, w)`, and the arcs
/// `u,v -> w` and `v,w -> z` for the smallest neighbour `z` of `v`.
pub fn extend_with_new_vertex(
    h: &DirectedHypergraph,
    g: &Graph,
    u: usize,
    v: usize,
) -> Result<(DirectedHypergraph, Graph)> {
    let n = g.n();
    if u >= n || v >= n {
        return Err(HydraError::VertexOutOfRange { vertex: u.max(v), n });
    }
    if u == v || g.has_edge(u, v) {
        return Err(precondition(format!("({u}, {v}) must be a non-edge")));
    }
    if !g.is_connected() {
        return Err(precondition("the graph must be connected"));
    }
    if h.size() != g.m() || !represents(h, g)?.ok {
        return Err(precondition("the certificate must be single-headed and represent the graph"));
    }
    let w = n;
    let z = g.neighbors(v)[0];
    let grown = Graph::new(n + 1, g.edges().iter().copied().chain([(u, v), (v, w)]))?;
    let mut out = h.with_vertex_count(n + 1)?;
    out.insert(u, v, w)?;
    out.insert(v, w, z)?;
    Ok((out, grown))
}
