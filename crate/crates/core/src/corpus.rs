//! Small-instance corpora: non-isomorphic trees, connected graphs, and
//! seeded random graphs and hypergraphs.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{HydraError, Result};
use crate::graph::{edge, Graph};
use crate::hypergraph::DirectedHypergraph;

/// Default seed for generated corpora.
pub const DEFAULT_SEED: u64 = 0x5eed_1234;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Canonical string of the tree rooted at `v` (children sorted).
fn rooted_code(g: &Graph, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = g
        .neighbors(v)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(g, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Centres of a tree (one or two vertices), by repeatedly stripping leaves.
fn centres(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            degree[v] = 0;
            for &w in g.neighbors(v) {
                if degree[w] > 0 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    layer
}

/// Isomorphism-invariant code of a tree.
pub fn tree_code(g: &Graph) -> String {
    centres(g)
        .into_iter()
        .map(|c| rooted_code(g, c, usize::MAX))
        .min()
        .unwrap_or_default()
}

/// All trees on `n` vertices up to isomorphism, in a fixed order.
pub fn trees(n: usize) -> Vec<Graph> {
    match n {
        0 => return Vec::new(),
        1 => return vec![Graph::empty(1)],
        _ => {}
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in trees(n - 1) {
        for v in 0..n - 1 {
            let grown = Graph::new(n, t.edges().iter().copied().chain([(v, n - 1)])).expect("new leaf");
            if seen.insert(tree_code(&grown)) {
                out.push(grown);
            }
        }
    }
    out
}

/// Trees on `min..=max` vertices.
pub fn trees_up_to(min: usize, max: usize) -> Vec<Graph> {
    (min..=max).flat_map(trees).collect()
}

/// Smallest edge bitmask over all relabellings.
fn canonical_mask(n: usize, edges: &[(usize, usize)]) -> u64 {
    let index = |u: usize, v: usize| {
        let (a, b) = edge(u, v);
        a * n + b
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        let m = edges.iter().fold(0u64, |acc, &(u, v)| acc | 1 << index(perm[u], perm[v]));
        best = best.min(m);
        // Next permutation in lexicographic order.
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("successor exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    best
}

/// All connected graphs on `n <= 7` vertices up to isomorphism.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > 7 {
        return Err(HydraError::TooLarge {
            what: "vertices for connected-graph enumeration",
            limit: 7,
            actual: n,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for bits in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| bits >> i & 1 == 1).map(|i| pairs[i]).collect();
        if edges.len() + 1 < n {
            continue;
        }
        let g = Graph::new(n, edges.iter().copied()).expect("distinct pairs");
        if !g.is_connected() {
            continue;
        }
        if seen.insert(canonical_mask(n, &edges)) {
            out.push(g);
        }
    }
    Ok(out)
}

/// Connected graphs on `min..=max` vertices.
pub fn connected_graphs_up_to(min: usize, max: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in min..=max {
        out.extend(connected_graphs(n)?);
    }
    Ok(out)
}

/// Each pair becomes an edge with probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect::<Vec<_>>();
    Graph::new(n, edges).expect("distinct pairs")
}

/// Random graph without isolated vertices: a random spanning tree plus extra edges.
pub fn random_connected_graph(n: usize, extra: usize, rng: &mut impl Rng) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges: BTreeSet<(usize, usize)> = (1..n)
        .map(|i| edge(order[i], order[rng.gen_range(0..i)]))
        .collect();
    let mut missing: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|e| !edges.contains(e))
        .collect();
    missing.shuffle(rng);
    edges.extend(missing.into_iter().take(extra));
    Graph::new(n, edges).expect("distinct pairs")
}

/// `arcs` distinct random hyperarcs on `n >= 3` vertices (fewer if the space runs out).
pub fn random_hypergraph(n: usize, arcs: usize, rng: &mut impl Rng) -> DirectedHypergraph {
    let mut h = DirectedHypergraph::new(n);
    let space = n * (n - 1) / 2 * (n.saturating_sub(2));
    let target = arcs.min(space);
    while h.size() < target {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let w = rng.gen_range(0..n);
        if u != v && w != u && w != v {
            h.insert(u, v, w).expect("valid arc");
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
        assert!(trees(8).iter().all(Graph::is_tree));
    }

    #[test]
    fn connected_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_connected_graph(8, 4, &mut rng(7));
        let b = random_connected_graph(8, 4, &mut rng(7));
        assert_eq!(a, b);
        assert!(a.is_connected());
        assert_eq!(a.m(), 11);
        assert_eq!(random_hypergraph(6, 8, &mut rng(1)).size(), 8);
    }
}
