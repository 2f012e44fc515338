//! Directed 3-hypergraphs, forward chaining, and the representation check.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{HydraError, Result};
use crate::graph::{edge, Edge, Graph};

/// A hyperarc `u,v -> w`. The body is stored as `u < v`; the head is never in the body.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Hyperarc {
    u: usize,
    v: usize,
    w: usize,
}

impl Hyperarc {
    pub fn new(u: usize, v: usize, w: usize) -> Result<Self> {
        if u == v {
            return Err(HydraError::SelfLoop(u));
        }
        if w == u || w == v {
            return Err(HydraError::RedundantArc { u, v, w });
        }
        let (u, v) = edge(u, v);
        Ok(Hyperarc { u, v, w })
    }

    #[inline]
    pub fn body(&self) -> Edge {
        (self.u, self.v)
    }

    #[inline]
    pub fn head(&self) -> usize {
        self.w
    }
}

impl fmt::Debug for Hyperarc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}->{}", self.u, self.v, self.w)
    }
}

/// A directed hypergraph on `0..n` with size-3 hyperarcs.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DirectedHypergraph {
    n: usize,
    arcs: BTreeSet<Hyperarc>,
}

impl DirectedHypergraph {
    pub fn new(n: usize) -> Self {
        DirectedHypergraph {
            n,
            arcs: BTreeSet::new(),
        }
    }

    /// Builds from `(u, v, w)` triples; duplicates collapse.
    pub fn from_triples(n: usize, triples: impl IntoIterator<Item = (usize, usize, usize)>) -> Result<Self> {
        let mut h = Self::new(n);
        for (u, v, w) in triples {
            h.insert(u, v, w)?;
        }
        Ok(h)
    }

    /// Adds `u,v -> w`; returns whether it was new.
    pub fn insert(&mut self, u: usize, v: usize, w: usize) -> Result<bool> {
        for x in [u, v, w] {
            if x >= self.n {
                return Err(HydraError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        Ok(self.arcs.insert(Hyperarc::new(u, v, w)?))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = &Hyperarc> + '_ {
        self.arcs.iter()
    }

    pub fn contains(&self, u: usize, v: usize, w: usize) -> bool {
        Hyperarc::new(u, v, w).is_ok_and(|a| self.arcs.contains(&a))
    }

    /// Heads grouped by body, both sorted.
    pub fn heads_by_body(&self) -> BTreeMap<Edge, Vec<usize>> {
        let mut map: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        for a in &self.arcs {
            map.entry(a.body()).or_default().push(a.head());
        }
        map
    }

    /// Number of arcs whose head is `v`.
    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.head() == v).count()
    }

    /// Same arcs over a larger vertex range.
    pub fn with_vertex_count(&self, n: usize) -> Result<Self> {
        if n < self.n {
            return Err(HydraError::InvalidParameter(format!(
                "cannot shrink a hypergraph from {} to {n} vertices",
                self.n
            )));
        }
        Ok(DirectedHypergraph {
            n,
            arcs: self.arcs.clone(),
        })
    }

    /// Least fixpoint of forward chaining started from `start`.
    ///
    /// Each arc keeps a counter of body vertices not yet marked; marking a vertex
    /// decrements the counters of the arcs it occurs in, and an arc fires when its
    /// counter reaches zero. Runs in `O(n + |arcs|)`.
    pub fn closure(&self, start: &[usize]) -> Result<BTreeSet<usize>> {
        for &x in start {
            if x >= self.n {
                return Err(HydraError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        let marked = self.closure_marks(start.iter().copied());
        Ok((0..self.n).filter(|&v| marked[v]).collect())
    }

    pub(crate) fn closure_marks(&self, start: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let arcs: Vec<&Hyperarc> = self.arcs.iter().collect();
        let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, a) in arcs.iter().enumerate() {
            occurs[a.u].push(i);
            occurs[a.v].push(i);
        }
        let mut pending = vec![2u8; arcs.len()];
        let mut marked = vec![false; self.n];
        let mut queue = Vec::new();
        for s in start {
            if !marked[s] {
                marked[s] = true;
                queue.push(s);
            }
        }
        while let Some(x) = queue.pop() {
            for &i in &occurs[x] {
                pending[i] -= 1;
                if pending[i] == 0 {
                    let w = arcs[i].w;
                    if !marked[w] {
                        marked[w] = true;
                        queue.push(w);
                    }
                }
            }
        }
        marked
    }

    /// Graph formed by the bodies.
    pub fn body_graph(&self) -> Graph {
        Graph::from_edges_dedup(self.n, self.arcs.iter().map(|a| a.body()))
            .expect("bodies are valid pairs")
    }
}

impl fmt::Debug for DirectedHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H(n={}, {:?})", self.n, self.arcs)
    }
}

/// Which condition of the representation a pair violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// An edge whose closure is not the whole vertex set.
    EdgeClosureIncomplete,
    /// A non-adjacent pair whose closure grows beyond the pair.
    NonedgeClosureLeaks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub pair: Edge,
    pub kind: ViolationKind,
    /// The actual closure of the pair.
    pub closure: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepresentationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Checks whether `h` represents `g`: every edge closes to all vertices and
/// every non-adjacent pair closes to itself. Lists every violating pair.
pub fn represents(h: &DirectedHypergraph, g: &Graph) -> Result<RepresentationReport> {
    if h.n() != g.n() {
        return Err(HydraError::DimensionMismatch {
            hypergraph: h.n(),
            graph: g.n(),
        });
    }
    let n = g.n();
    let mut violations = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let marks = h.closure_marks([u, v]);
            let size = marks.iter().filter(|&&b| b).count();
            let kind = if g.has_edge(u, v) {
                (size != n).then_some(ViolationKind::EdgeClosureIncomplete)
            } else {
                (size != 2).then_some(ViolationKind::NonedgeClosureLeaks)
            };
            if let Some(kind) = kind {
                violations.push(Violation {
                    pair: (u, v),
                    kind,
                    closure: (0..n).filter(|&x| marks[x]).collect(),
                });
            }
        }
    }
    Ok(RepresentationReport {
        ok: violations.is_empty(),
        violations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeHeadClass {
    Uncovered,
    SingleHeaded,
    MultiHeaded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateProfile {
    pub bodies_are_edges: bool,
    /// Bodies of `h` that are not edges of `g`.
    pub foreign_bodies: Vec<Edge>,
    pub per_edge_head_count: BTreeMap<Edge, usize>,
    pub excess: i64,
}

impl CertificateProfile {
    pub fn class(&self, e: Edge) -> Option<EdgeHeadClass> {
        self.per_edge_head_count.get(&e).map(|&c| match c {
            0 => EdgeHeadClass::Uncovered,
            1 => EdgeHeadClass::SingleHeaded,
            _ => EdgeHeadClass::MultiHeaded,
        })
    }

    pub fn edges_of_class(&self, class: EdgeHeadClass) -> Vec<Edge> {
        self.per_edge_head_count
            .keys()
            .copied()
            .filter(|&e| self.class(e) == Some(class))
            .collect()
    }
}

/// Head counts per edge of `g` in `h`, plus the excess `|arcs| - |E|`.
pub fn certificate_profile(h: &DirectedHypergraph, g: &Graph) -> CertificateProfile {
    let mut per_edge: BTreeMap<Edge, usize> = g.edges().iter().map(|&e| (e, 0)).collect();
    let mut foreign = BTreeSet::new();
    for a in h.arcs() {
        match per_edge.get_mut(&a.body()) {
            Some(c) => *c += 1,
            None => {
                foreign.insert(a.body());
            }
        }
    }
    CertificateProfile {
        bodies_are_edges: foreign.is_empty(),
        foreign_bodies: foreign.into_iter().collect(),
        per_edge_head_count: per_edge,
        excess: h.size() as i64 - g.m() as i64,
    }
}

/// Strips isolated vertices, relabelling the rest in increasing order.
/// Returns the stripped graph and how many vertices were removed; each removed
/// vertex accounts for exactly one arc of the hydra number.
pub fn normalize(g: &Graph) -> (Graph, usize) {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
    let removed = g.n() - keep.len();
    if removed == 0 {
        return (g.clone(), 0);
    }
    (g.induced(&keep), removed)
}
