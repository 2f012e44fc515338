//! Reference implementations used as oracles. They share no code with the
//! library beyond the `Graph` container.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use hydralab::Graph;

pub type Arc3 = (usize, usize, usize);

/// Repeat-until-no-change forward chaining.
pub fn naive_closure(n: usize, arcs: &[Arc3], start: &[usize]) -> Vec<bool> {
    let mut marked = vec![false; n];
    for &s in start {
        marked[s] = true;
    }
    loop {
        let mut changed = false;
        for &(u, v, w) in arcs {
            if marked[u] && marked[v] && !marked[w] {
                marked[w] = true;
                changed = true;
            }
        }
        if !changed {
            return marked;
        }
    }
}

pub fn naive_represents(n: usize, arcs: &[Arc3], g: &Graph) -> bool {
    for u in 0..n {
        for v in u + 1..n {
            let cl = naive_closure(n, arcs, &[u, v]);
            let size = cl.iter().filter(|&&m| m).count();
            let ok = if g.has_edge(u, v) { size == n } else { size == 2 };
            if !ok {
                return false;
            }
        }
    }
    true
}

pub fn arcs_of(h: &hydralab::DirectedHypergraph) -> Vec<Arc3> {
    h.arcs()
        .map(|a| {
            let (u, v) = a.body();
            (u, v, a.head())
        })
        .collect()
}

/// Exhaustive search over head sets per edge, edges in reverse order and
/// heads tried from the largest vertex down. The only pruning is local: a
/// body whose heads cannot start any further step, and an assigned body whose
/// closure is stuck even if every unassigned body fired everything.
pub struct Oracle<'a> {
    g: &'a Graph,
    edges: Vec<(usize, usize)>,
    heads: Vec<Vec<usize>>,
    caps: Option<&'a BTreeMap<usize, usize>>,
    collect_all: bool,
    found: Vec<BTreeSet<Arc3>>,
}

impl<'a> Oracle<'a> {
    fn new(g: &'a Graph, caps: Option<&'a BTreeMap<usize, usize>>, collect_all: bool) -> Self {
        let mut edges = g.edges().to_vec();
        edges.reverse();
        Oracle {
            g,
            heads: vec![Vec::new(); edges.len()],
            edges,
            caps,
            collect_all,
            found: Vec::new(),
        }
    }

    fn arcs(&self, upto: usize) -> Vec<Arc3> {
        self.edges[..upto]
            .iter()
            .zip(&self.heads)
            .flat_map(|(&(u, v), hs)| hs.iter().map(move |&w| (u, v, w)))
            .collect()
    }

    fn fires(&self, i: usize, hs: &[usize]) -> bool {
        let n = self.g.n();
        let (u, v) = self.edges[i];
        let mut set = vec![false; n];
        set[u] = true;
        set[v] = true;
        for &w in hs {
            set[w] = true;
        }
        set.iter().all(|&s| s) || self.edges.iter().enumerate().any(|(j, &(a, b))| j != i && set[a] && set[b])
    }

    fn prefix_alive(&self, assigned: usize) -> bool {
        let n = self.g.n();
        let arcs = self.arcs(assigned);
        for &(u, v) in &self.edges[..assigned] {
            let mut cl = naive_closure(n, &arcs, &[u, v]);
            // Any unassigned body that gets reached may still produce every vertex.
            if self.edges[assigned..].iter().any(|&(a, b)| cl[a] && cl[b]) {
                cl = vec![true; n];
            }
            if !cl.iter().all(|&m| m) {
                return false;
            }
        }
        true
    }

    fn caps_ok(&self, arcs: &[Arc3]) -> bool {
        let Some(caps) = self.caps else { return true };
        caps.iter().all(|(&v, &c)| arcs.iter().filter(|a| a.2 == v).count() <= c)
    }

    fn dfs(&mut self, i: usize, left: usize) -> bool {
        let m = self.edges.len();
        if i == m {
            let arcs = self.arcs(m);
            if self.caps_ok(&arcs) && naive_represents(self.g.n(), &arcs, self.g) {
                self.found.push(arcs.into_iter().collect());
                return !self.collect_all;
            }
            return false;
        }
        let rest = m - i - 1;
        if left < rest + 1 {
            return false;
        }
        let (u, v) = self.edges[i];
        let candidates: Vec<usize> = (0..self.g.n()).rev().filter(|&w| w != u && w != v).collect();
        let max = (left - rest).min(candidates.len());
        for size in 1..=max {
            for subset in subsets_desc(&candidates, size) {
                if !self.fires(i, &subset) {
                    continue;
                }
                self.heads[i] = subset;
                let arcs = self.arcs(i + 1);
                if self.caps_ok(&arcs) && self.prefix_alive(i + 1) && self.dfs(i + 1, left - size) {
                    return true;
                }
            }
        }
        self.heads[i].clear();
        false
    }
}

fn subsets_desc(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in subsets_desc(&items[i + 1..], size - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Minimum size and one optimum; `None` if nothing fits within `2|E|`.
pub fn oracle_hydra(g: &Graph, caps: Option<&BTreeMap<usize, usize>>) -> Option<(usize, BTreeSet<Arc3>)> {
    for t in g.m()..=2 * g.m() {
        let mut o = Oracle::new(g, caps, false);
        if o.dfs(0, t) {
            let cert = o.found.pop().expect("found");
            return Some((cert.len(), cert));
        }
    }
    None
}

/// Every optimum, as arc sets.
pub fn oracle_all_optima(g: &Graph) -> (usize, BTreeSet<BTreeSet<Arc3>>) {
    for t in g.m()..=2 * g.m() {
        let mut o = Oracle::new(g, None, true);
        o.dfs(0, t);
        if !o.found.is_empty() {
            let min = o.found.iter().map(BTreeSet::len).min().expect("non-empty");
            let all = o.found.into_iter().filter(|c| c.len() == min).collect();
            return (min, all);
        }
    }
    unreachable!("2|E| arcs always suffice")
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges.iter().copied()).unwrap()
}

/// Minimum number of vertex-disjoint paths covering `host`: the smallest
/// uncovered vertex goes on some simple path, tried in every way.
pub fn oracle_pcn(host: &Graph) -> usize {
    fn extend(host: &Graph, used: &mut Vec<bool>, path: &mut Vec<usize>, best: &mut usize, count: usize) {
        // Close the path here.
        rest(host, used, best, count + 1);
        if *best <= count + 1 {
            return;
        }
        let ends = if path.len() == 1 { vec![0] } else { vec![0, path.len() - 1] };
        for end in ends {
            let tip = path[end];
            for &w in host.neighbors(tip) {
                if used[w] {
                    continue;
                }
                used[w] = true;
                if end == 0 {
                    path.insert(0, w);
                } else {
                    path.push(w);
                }
                extend(host, used, path, best, count);
                if end == 0 {
                    path.remove(0);
                } else {
                    path.pop();
                }
                used[w] = false;
            }
        }
    }
    fn rest(host: &Graph, used: &mut Vec<bool>, best: &mut usize, count: usize) {
        if count >= *best {
            return;
        }
        let Some(v) = used.iter().position(|&u| !u) else {
            *best = count;
            return;
        };
        used[v] = true;
        extend(host, used, &mut vec![v], best, count);
        used[v] = false;
    }
    let mut best = host.n();
    rest(host, &mut vec![false; host.n()], &mut best, 0);
    best
}

/// Minimum over spanning subgraphs without isolated vertices of the path
/// cover number of their line graphs.
pub fn oracle_p(g: &Graph) -> usize {
    let edges = g.edges();
    let mut best = usize::MAX;
    for bits in 1u64..1 << edges.len() {
        let kept: Vec<(usize, usize)> = (0..edges.len()).filter(|&i| bits >> i & 1 == 1).map(|i| edges[i]).collect();
        let sub = Graph::new(g.n(), kept.iter().copied()).unwrap();
        if !sub.isolated_vertices().is_empty() {
            continue;
        }
        best = best.min(oracle_pcn(&hydralab::bounds::line_graph(&sub)));
    }
    best
}

/// Path cover number of the line graph of a tree. The line graph's cycles all
/// live inside the cliques at tree vertices, so a linear forest is a choice of
/// linear forest per clique with every line vertex of degree at most two.
/// Every such choice is enumerated; the cover number is `|E|` minus the most
/// forest edges. Meant for trees of maximum degree at most six.
pub fn oracle_tree_line_pcn(t: &Graph) -> usize {
    assert!(t.is_tree());
    if t.m() == 0 {
        return 0;
    }
    // Most forest edges below `v`, given that the line vertex (parent, v)
    // already has `used` forest edges from the parent's clique.
    fn below(t: &Graph, v: usize, parent: Option<usize>, used: usize) -> Option<usize> {
        let children: Vec<usize> = t.neighbors(v).iter().copied().filter(|&w| Some(w) != parent).collect();
        // Clique members: children first, then the parent edge if any.
        let size = children.len() + usize::from(parent.is_some());
        let pairs: Vec<(usize, usize)> = (0..size).flat_map(|a| (a + 1..size).map(move |b| (a, b))).collect();
        assert!(pairs.len() <= 21, "clique of {size} line vertices is too large to enumerate");
        let mut best = None;
        for bits in 0u32..1 << pairs.len() {
            let chosen: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| bits >> i & 1 == 1).map(|i| pairs[i]).collect();
            let mut degree = vec![0usize; size];
            for &(a, b) in &chosen {
                degree[a] += 1;
                degree[b] += 1;
            }
            if degree.iter().any(|&d| d > 2) || has_cycle(size, &chosen) {
                continue;
            }
            if parent.is_some() && degree[size - 1] + used > 2 {
                continue;
            }
            let mut total = chosen.len();
            let mut ok = true;
            for (i, &c) in children.iter().enumerate() {
                match below(t, c, Some(v), degree[i]) {
                    Some(x) => total += x,
                    None => ok = false,
                }
            }
            if ok && best.is_none_or(|b| total > b) {
                best = Some(total);
            }
        }
        best
    }
    fn has_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
        let mut root: Vec<usize> = (0..n).collect();
        fn find(root: &mut Vec<usize>, x: usize) -> usize {
            if root[x] != x {
                let r = find(root, root[x]);
                root[x] = r;
            }
            root[x]
        }
        edges.iter().any(|&(a, b)| {
            let (ra, rb) = (find(&mut root, a), find(&mut root, b));
            root[ra] = rb;
            ra == rb
        })
    }
    let root = (0..t.n()).find(|&v| t.degree(v) > 0).unwrap();
    t.m() - below(t, root, None, 0).unwrap()
}
