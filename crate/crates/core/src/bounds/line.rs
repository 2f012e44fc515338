//! Line graphs and Hamiltonian cycles in them.

use crate::error::{HydraError, Result};
use crate::graph::Graph;

/// Largest edge count for which Hamiltonian cycles of the line graph are searched.
pub const DEFAULT_HAMILTONIAN_EDGE_CAP: usize = 16;

/// Line graph whose vertex `i` is `g.edges()[i]`.
pub fn line_graph(g: &Graph) -> Graph {
    let mut pairs = Vec::new();
    for v in 0..g.n() {
        let incident: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|&w| g.edge_index(v, w).expect("neighbour edge"))
            .collect();
        for (a, &i) in incident.iter().enumerate() {
            for &j in &incident[a + 1..] {
                pairs.push((i, j));
            }
        }
    }
    // In a simple graph two edges share at most one endpoint, so no duplicates arise.
    Graph::new(g.m(), pairs).expect("line graph pairs are distinct")
}

/// A Hamiltonian cycle of `g` as a vertex sequence starting at 0, or `None`.
/// Exponential backtracking; the caller bounds the size.
pub fn hamiltonian_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 3 || (0..n).any(|v| g.degree(v) < 2) {
        return None;
    }
    let mut path = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    extend_cycle(g, &mut path, &mut used).then_some(path)
}

fn extend_cycle(g: &Graph, path: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let n = g.n();
    let last = *path.last().expect("non-empty");
    if path.len() == n {
        return g.has_edge(last, path[0]);
    }
    for &next in g.neighbors(last) {
        if used[next] {
            continue;
        }
        used[next] = true;
        path.push(next);
        // Every unused vertex still needs two usable neighbours (unused, the
        // new end, or the start).
        let viable = (0..n).all(|v| {
            used[v]
                || g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| !used[w] || w == next || w == path[0])
                    .count()
                    >= 2
        });
        if viable && extend_cycle(g, path, used) {
            return true;
        }
        path.pop();
        used[next] = false;
    }
    false
}

/// Hamiltonian cycle of `L(g)` if `g` has at most `edge_cap` edges.
pub fn line_hamiltonian_cycle(g: &Graph, edge_cap: usize) -> Result<Option<Vec<usize>>> {
    if g.m() > edge_cap {
        return Err(HydraError::TooLarge {
            what: "edges for Hamiltonian line-graph search",
            limit: edge_cap,
            actual: g.m(),
        });
    }
    Ok(hamiltonian_cycle(&line_graph(g)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_line_graphs() {
        let p4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(line_graph(&p4).edges(), &[(0, 1), (1, 2)]);
        let k13 = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(line_graph(&k13).m(), 3);
    }

    #[test]
    fn triangle_with_pendant() {
        let g = Graph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert!(hamiltonian_cycle(&g).is_none());
        let cycle = line_hamiltonian_cycle(&g, 16).unwrap().unwrap();
        assert_eq!(cycle.len(), 4);
        let p4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(line_hamiltonian_cycle(&p4, 16).unwrap().is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let c20 = Graph::new(20, (0..20).map(|i| (i, (i + 1) % 20))).unwrap();
        assert!(matches!(line_hamiltonian_cycle(&c20, 16), Err(HydraError::TooLarge { .. })));
    }
}
