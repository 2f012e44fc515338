//! Lower and upper bounds on hydra numbers, and the constructions behind them.

mod construct;
mod cover;
mod line;
mod pcover;

pub use construct::{
    build_from_line_cycle, build_from_line_ham_cycle, build_from_line_ham_cycle_with_cap, build_from_path_cover,
    extend_spanning, extend_with_new_vertex, PathCoverConstruction,
};
pub use cover::{forest_line_cover, min_path_cover, min_path_cover_with, CoverOptions, PathCover, DEFAULT_EXACT_COVER_CAP};
pub use line::{hamiltonian_cycle, line_graph, line_hamiltonian_cycle, DEFAULT_HAMILTONIAN_EDGE_CAP};
pub use pcover::{p_of, PStrategy, PValue, DEFAULT_P_EDGE_CAP};

use serde::Serialize;

use crate::error::{HydraError, Result};
use crate::graph::{Edge, Graph};
use crate::hypergraph::{represents, DirectedHypergraph};

fn check_instance(g: &Graph) -> Result<()> {
    if g.n() < 3 {
        return Err(HydraError::TooFewVertices(g.n()));
    }
    let isolated = g.isolated_vertices().len();
    if isolated > 0 {
        return Err(HydraError::IsolatedVertices(isolated));
    }
    Ok(())
}

/// The edge-count bounds: `|E|` below, and `2|E|` (perfect matchings) or
/// `2|E| - 1` above, with the certificate realizing the upper value.
#[derive(Clone, Debug)]
pub struct TrivialBounds {
    pub lower: usize,
    pub upper: usize,
    pub certificate: DirectedHypergraph,
}

/// Orders the edges so that the first two share a vertex (when any pair does),
/// and lets each edge point at the endpoints of the next one, cyclically,
/// skipping endpoints it already contains.
pub fn trivial_bounds(g: &Graph) -> Result<TrivialBounds> {
    check_instance(g)?;
    let mut order: Vec<Edge> = g.edges().to_vec();
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) >= 2) {
        let a = crate::graph::edge(v, g.neighbors(v)[0]);
        let b = crate::graph::edge(v, g.neighbors(v)[1]);
        order.retain(|&e| e != a && e != b);
        order.splice(0..0, [a, b]);
    }
    let mut h = DirectedHypergraph::new(g.n());
    for (i, &(u, v)) in order.iter().enumerate() {
        let (x, y) = order[(i + 1) % order.len()];
        for w in [x, y] {
            if w != u && w != v {
                h.insert(u, v, w)?;
            }
        }
    }
    let upper = if g.is_perfect_matching() { 2 * g.m() } else { 2 * g.m() - 1 };
    debug_assert!(h.size() <= upper);
    Ok(TrivialBounds {
        lower: g.m(),
        upper,
        certificate: h,
    })
}

/// A lower-bound rule that fired, with what makes it fire.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum LowerWitness {
    /// Every edge needs at least one arc.
    Trivial { edges: usize },
    /// A cut edge with at least two vertices on either side.
    Bridge { edge: Edge, sides: (usize, usize) },
    /// Several components, each with at least two vertices.
    Components { components: Vec<Vec<usize>> },
    /// Degree-one vertices left after deleting the degree-one vertices of the graph.
    PendantEll { leaves: Vec<usize> },
}

impl LowerWitness {
    pub fn rule(&self) -> &'static str {
        match self {
            LowerWitness::Trivial { .. } => "trivial",
            LowerWitness::Bridge { .. } => "bridge",
            LowerWitness::Components { .. } => "components",
            LowerWitness::PendantEll { .. } => "pendant-ell",
        }
    }

    /// The bound this rule alone gives for a graph with `edges` edges.
    pub fn bound(&self, edges: usize) -> usize {
        match self {
            LowerWitness::Trivial { .. } => edges,
            LowerWitness::Bridge { .. } => edges + 1,
            LowerWitness::Components { components } => edges + components.len(),
            LowerWitness::PendantEll { leaves } => edges + leaves.len().div_ceil(2),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerBound {
    pub value: usize,
    pub witnesses: Vec<LowerWitness>,
}

/// Degree-one vertices of the graph left after removing all degree-one vertices.
pub fn pendant_ell_leaves(g: &Graph) -> Vec<usize> {
    let keep: Vec<bool> = (0..g.n()).map(|v| g.degree(v) != 1).collect();
    (0..g.n())
        .filter(|&v| keep[v] && g.neighbors(v).iter().filter(|&&w| keep[w]).count() == 1)
        .collect()
}

/// Maximum of the trivial, bridge, components and pendant-ell bounds.
pub fn lower_bound(g: &Graph) -> Result<LowerBound> {
    check_instance(g)?;
    let m = g.m();
    let mut witnesses = vec![LowerWitness::Trivial { edges: m }];
    if let Some(&(e, a, b)) = g.cut_edges().iter().find(|&&(_, a, b)| a >= 2 && b >= 2) {
        witnesses.push(LowerWitness::Bridge { edge: e, sides: (a, b) });
    }
    let comps = g.components();
    if comps.len() >= 2 && comps.iter().all(|c| c.len() >= 2) {
        witnesses.push(LowerWitness::Components { components: comps });
    }
    let leaves = pendant_ell_leaves(g);
    if leaves.len() > 1 {
        witnesses.push(LowerWitness::PendantEll { leaves });
    }
    let value = witnesses.iter().map(|w| w.bound(m)).max().expect("trivial rule");
    Ok(LowerBound { value, witnesses })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum UpperMethod {
    Trivial,
    /// Path-cover construction on a spanning subgraph, extended to the graph.
    PathCover { paths: usize, p_exact: bool, dropped_redundant: usize },
    LineHamiltonian,
}

#[derive(Clone, Debug, Serialize)]
pub struct UpperBound {
    pub value: usize,
    pub method: UpperMethod,
    #[serde(skip)]
    pub certificate: DirectedHypergraph,
}

/// Picks the path-cover strategy for `g`: exhaustive while small, otherwise
/// the tree or binary-tree covers, otherwise a cover of `L(g)` itself.
pub fn auto_p(g: &Graph) -> Result<PValue> {
    if g.m() <= DEFAULT_P_EDGE_CAP && g.n() <= 64 {
        return p_of(g, PStrategy::exhaustive());
    }
    if pcover::binary_depth(g).is_some() {
        let four = p_of(g, PStrategy::BinaryFourLevel)?;
        let whole = p_of(g, PStrategy::tree())?;
        return Ok(if whole.value < four.value { whole } else { four });
    }
    if g.is_tree() {
        return p_of(g, PStrategy::tree());
    }
    let cover = min_path_cover(&line_graph(g))?;
    Ok(PValue {
        value: cover.len(),
        subgraph: g.clone(),
        exact: false,
        cover,
    })
}

/// Smallest of the trivial certificate, the path-cover construction and (when
/// `L(G)` has a Hamiltonian cycle within the cap) the single-headed one.
/// The returned certificate is verified.
pub fn upper_bound(g: &Graph) -> Result<UpperBound> {
    check_instance(g)?;
    let trivial = trivial_bounds(g)?;
    let mut best = UpperBound {
        value: trivial.certificate.size(),
        method: UpperMethod::Trivial,
        certificate: trivial.certificate,
    };

    if g.m() >= 3 && g.m() <= DEFAULT_HAMILTONIAN_EDGE_CAP {
        if let Some(h) = build_from_line_ham_cycle(g)? {
            best = UpperBound {
                value: h.size(),
                method: UpperMethod::LineHamiltonian,
                certificate: h,
            };
        }
    }

    if best.value > g.m() {
        let p = auto_p(g)?;
        let built = build_from_path_cover(&p.subgraph, &p.cover)?;
        let h = extend_spanning(&built.hypergraph, &p.subgraph, g)?;
        if h.size() < best.value {
            best = UpperBound {
                value: h.size(),
                method: UpperMethod::PathCover {
                    paths: p.value,
                    p_exact: p.exact,
                    dropped_redundant: built.dropped_redundant,
                },
                certificate: h,
            };
        }
    }

    if !represents(&best.certificate, g)?.ok {
        unreachable!("constructed certificate failed verification: {:?}", best.method);
    }
    Ok(best)
}

/// Both bounds with their justifications.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub lower: usize,
    pub lower_witnesses: Vec<LowerWitness>,
    pub upper: usize,
    pub upper_method: UpperMethod,
    #[serde(skip)]
    pub upper_certificate: DirectedHypergraph,
}

pub fn bound_report(g: &Graph) -> Result<BoundReport> {
    let lower = lower_bound(g)?;
    let upper = upper_bound(g)?;
    Ok(BoundReport {
        lower: lower.value,
        lower_witnesses: lower.witnesses,
        upper: upper.value,
        upper_method: upper.method,
        upper_certificate: upper.certificate,
    })
}
