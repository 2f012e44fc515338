//! Graph families with fixed labellings, tree recognizers and closed forms.

use serde::Serialize;

use crate::bounds::{
    build_from_line_cycle, build_from_path_cover, extend_spanning, extend_with_new_vertex, forest_line_cover,
    lower_bound, p_of, PStrategy,
};
use crate::error::{HydraError, Result};
use crate::graph::Graph;
use crate::hypergraph::{represents, DirectedHypergraph};

fn invalid(msg: impl Into<String>) -> HydraError {
    HydraError::InvalidParameter(msg.into())
}

/// A family member with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// `K_{1,leaves}`, centre 0.
    Star { leaves: usize },
    /// `P_n` as `0 - 1 - ... - (n-1)`.
    Path { n: usize },
    /// `C_n` as `0 - 1 - ... - (n-1) - 0`.
    Cycle { n: usize },
    /// Edges `(2i, 2i+1)`.
    Matching { edges: usize },
    /// Spine `0..s` followed by the leaves of each spine vertex in turn.
    Caterpillar { leaves: Vec<usize> },
    /// Centre 0 with legs of the given lengths, labelled level by level.
    Spider { legs: Vec<usize> },
    /// Spider with `k` legs of length two.
    Tk { k: usize },
    /// Complete binary tree of depth `d`; the children of `i` are `2i+1` and `2i+2`.
    BinaryTree { d: usize },
    /// Single-headed family on an `8k`-cycle.
    Gk { k: usize },
    /// Complete `r`-partite graph on `n` vertices with near-equal parts.
    Turan { n: usize, r: usize },
    /// The smallest tree that is not a caterpillar.
    ForbiddenCaterpillar,
}

pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    match spec {
        FamilySpec::Star { leaves } => star(*leaves),
        FamilySpec::Path { n } => path(*n),
        FamilySpec::Cycle { n } => cycle(*n),
        FamilySpec::Matching { edges } => matching(*edges),
        FamilySpec::Caterpillar { leaves } => caterpillar(leaves),
        FamilySpec::Spider { legs } => spider(legs),
        FamilySpec::Tk { k } => spider_tk(*k),
        FamilySpec::BinaryTree { d } => binary_tree(*d),
        FamilySpec::Gk { k } => gk(*k),
        FamilySpec::Turan { n, r } => turan_graph(*n, *r),
        FamilySpec::ForbiddenCaterpillar => Ok(forbidden_caterpillar()),
    }
}

pub fn star(leaves: usize) -> Result<Graph> {
    if leaves == 0 {
        return Err(invalid("a star needs at least one leaf"));
    }
    Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i)))
}

pub fn path(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(invalid("a path needs at least two vertices"));
    }
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("a cycle needs at least three vertices"));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn matching(edges: usize) -> Result<Graph> {
    if edges == 0 {
        return Err(invalid("a matching needs at least one edge"));
    }
    Graph::new(2 * edges, (0..edges).map(|i| (2 * i, 2 * i + 1)))
}

/// `leaves[i]` pendant vertices hang off spine vertex `i`.
pub fn caterpillar(leaves: &[usize]) -> Result<Graph> {
    if leaves.is_empty() {
        return Err(invalid("a caterpillar needs a spine"));
    }
    let spine = leaves.len();
    let n = spine + leaves.iter().sum::<usize>();
    if n < 2 {
        return Err(invalid("a caterpillar needs at least one edge"));
    }
    let mut edges: Vec<(usize, usize)> = (1..spine).map(|i| (i - 1, i)).collect();
    let mut next = spine;
    for (i, &count) in leaves.iter().enumerate() {
        for _ in 0..count {
            edges.push((i, next));
            next += 1;
        }
    }
    Graph::new(n, edges)
}

/// Centre 0; vertices at distance `t` from the centre get consecutive labels
/// in leg order, before any vertex at distance `t + 1`.
pub fn spider(legs: &[usize]) -> Result<Graph> {
    if legs.len() < 3 || legs.contains(&0) {
        return Err(invalid("a spider needs at least three legs of positive length"));
    }
    let depth = *legs.iter().max().expect("non-empty");
    let mut tip: Vec<usize> = vec![0; legs.len()];
    let mut edges = Vec::new();
    let mut next = 1;
    for t in 1..=depth {
        for (leg, &len) in legs.iter().enumerate() {
            if len >= t {
                edges.push((tip[leg], next));
                tip[leg] = next;
                next += 1;
            }
        }
    }
    Graph::new(next, edges)
}

pub fn spider_tk(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(invalid("T_k needs k >= 1"));
    }
    let n = 2 * k + 1;
    Graph::new(n, (1..=k).flat_map(|i| [(0, i), (i, i + k)]))
}

pub fn binary_tree(d: usize) -> Result<Graph> {
    if d == 0 || d > 20 {
        return Err(invalid("binary tree depth must be in 1..=20"));
    }
    let (n, _) = binary_tree_counts(d);
    Graph::new(n, (1..n).map(|c| ((c - 1) / 2, c)))
}

/// `(vertices, edges)` of the complete binary tree of depth `d`.
pub fn binary_tree_counts(d: usize) -> (usize, usize) {
    let n = (1usize << (d + 1)) - 1;
    (n, n - 1)
}

/// `v_i = i` for `i < 8k`, then `x_i = 8k + i`, `y_i = 9k + i`, `z_i = 10k + i`.
#[derive(Clone, Copy, Debug)]
pub struct GkLabels {
    pub k: usize,
}

impl GkLabels {
    pub fn v(&self, i: usize) -> usize {
        i % (8 * self.k)
    }
    pub fn x(&self, i: usize) -> usize {
        8 * self.k + i
    }
    pub fn y(&self, i: usize) -> usize {
        9 * self.k + i
    }
    pub fn z(&self, i: usize) -> usize {
        10 * self.k + i
    }
}

fn check_gk(k: usize) -> Result<GkLabels> {
    if !(2..=64).contains(&k) {
        return Err(invalid("G_k needs 2 <= k <= 64"));
    }
    Ok(GkLabels { k })
}

/// The `8k`-cycle with pendants `x_i` at `v_{4i}` and `y_i` at `v_{4k+4i}`.
pub fn gk_base(k: usize) -> Result<Graph> {
    let l = check_gk(k)?;
    let cycle = (0..8 * k).map(|i| (l.v(i), l.v(i + 1)));
    let pendants = (0..k).flat_map(|i| [(l.x(i), l.v(4 * i)), (l.y(i), l.v(4 * k + 4 * i))]);
    Graph::new(10 * k, cycle.chain(pendants))
}

/// The base plus `z_i` with edges `(x_i, y_i)` and `(y_i, z_i)`.
pub fn gk(k: usize) -> Result<Graph> {
    let l = check_gk(k)?;
    let base = gk_base(k)?;
    let extra = (0..k).flat_map(|i| [(l.x(i), l.y(i)), (l.y(i), l.z(i))]);
    Graph::new(11 * k, base.edges().iter().copied().chain(extra))
}

/// `(vertices, edges)` of `G_k`.
pub fn gk_counts(k: usize) -> (usize, usize) {
    (11 * k, 12 * k)
}

/// Hamiltonian cycle of the base's line graph: the cycle edges in order, each
/// pendant inserted between the two cycle edges at its attachment vertex.
pub fn gk_base_line_cycle(k: usize) -> Result<Vec<usize>> {
    let l = check_gk(k)?;
    let base = gk_base(k)?;
    let mut pendant_at = vec![None; 8 * k];
    for i in 0..k {
        pendant_at[4 * i] = Some(l.x(i));
        pendant_at[4 * k + 4 * i] = Some(l.y(i));
    }
    let mut order = Vec::with_capacity(base.m());
    for (j, pendant) in pendant_at.iter().enumerate() {
        if let Some(p) = *pendant {
            order.push(base.edge_index(p, l.v(j)).expect("pendant edge"));
        }
        order.push(base.edge_index(l.v(j), l.v(j + 1)).expect("cycle edge"));
    }
    Ok(order)
}

/// Single-headed certificate of `G_k`: the base from its line-graph cycle,
/// then one new-vertex step per pair `(x_i, y_i)`.
pub fn gk_certificate(k: usize) -> Result<(Graph, DirectedHypergraph)> {
    let l = check_gk(k)?;
    let mut g = gk_base(k)?;
    let mut h = build_from_line_cycle(&g, &gk_base_line_cycle(k)?)?;
    for i in 0..k {
        (h, g) = extend_with_new_vertex(&h, &g, l.x(i), l.y(i))?;
    }
    debug_assert_eq!(g, gk(k)?);
    if h.size() != g.m() || !represents(&h, &g)?.ok {
        unreachable!("G_k construction failed verification");
    }
    Ok((g, h))
}

/// Turán graph: parts are consecutive blocks, the first `n mod r` one larger.
pub fn turan_graph(n: usize, r: usize) -> Result<Graph> {
    let parts = turan_parts(n, r)?;
    let mut part_of = Vec::with_capacity(n);
    for (p, &size) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(p, size));
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges.filter(|&(u, v)| part_of[u] != part_of[v]))
}

/// Part sizes of the balanced `r`-partition of `n`, larger parts first.
pub fn turan_parts(n: usize, r: usize) -> Result<Vec<usize>> {
    if r == 0 || r > n {
        return Err(invalid(format!("need 1 <= r <= n, got n={n}, r={r}")));
    }
    Ok((0..r).map(|i| n / r + usize::from(i < n % r)).collect())
}

/// Labelled `v0 ... v6` with edges `v0v1, v1v2, v2v3, v3v5, v2v4, v4v6`.
pub fn forbidden_caterpillar() -> Graph {
    Graph::new(7, [(0, 1), (1, 2), (2, 3), (3, 5), (2, 4), (4, 6)]).expect("fixed graph")
}

/// Structural facts about a tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeShape {
    pub is_star: bool,
    /// Deleting the leaves leaves a path (or nothing).
    pub is_caterpillar: bool,
    /// No vertex has three neighbours of degree at least two.
    pub is_caterpillar_by_forbidden: bool,
    pub is_spider: bool,
    /// Legs of length at least two, when the tree is a spider.
    pub spider_long_legs: Option<usize>,
}

pub fn recognize(g: &Graph) -> Result<TreeShape> {
    if !g.is_tree() {
        return Err(HydraError::NotATree);
    }
    let n = g.n();
    let inner: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 2).collect();
    let is_star = inner.len() <= 1;

    let spine = g.induced(&inner);
    let is_caterpillar = spine.n() == 0 || (spine.is_connected() && (0..spine.n()).all(|v| spine.degree(v) <= 2));
    let is_caterpillar_by_forbidden =
        (0..n).all(|v| g.neighbors(v).iter().filter(|&&w| g.degree(w) >= 2).count() < 3);

    let branching: Vec<usize> = (0..n).filter(|&v| g.degree(v) > 2).collect();
    let is_spider = branching.len() <= 1;
    let spider_long_legs = is_spider.then(|| {
        let centre = match branching.first() {
            Some(&c) => c,
            None => path_middle(g),
        };
        g.neighbors(centre).iter().filter(|&&w| leg_length(g, centre, w) >= 2).count()
    });
    Ok(TreeShape {
        is_star,
        is_caterpillar,
        is_caterpillar_by_forbidden,
        is_spider,
        spider_long_legs,
    })
}

/// Middle vertex of a tree with maximum degree at most two.
fn path_middle(g: &Graph) -> usize {
    let Some(start) = (0..g.n()).find(|&v| g.degree(v) <= 1) else {
        return 0;
    };
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = g.neighbors(cur).iter().find(|&&w| w != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    order[(order.len() - 1) / 2]
}

/// Number of edges on the leg that leaves `centre` through `first`.
fn leg_length(g: &Graph, centre: usize, first: usize) -> usize {
    let (mut prev, mut cur, mut len) = (centre, first, 1);
    while let Some(&next) = g.neighbors(cur).iter().find(|&&w| w != prev) {
        prev = cur;
        cur = next;
        len += 1;
    }
    len
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosedFormRule {
    Star,
    Caterpillar,
    Spider,
}

/// Hydra number of stars, caterpillars and spiders; `None` for other trees.
pub fn closed_form_hydra(g: &Graph) -> Result<Option<(usize, ClosedFormRule)>> {
    let shape = recognize(g)?;
    let m = g.m();
    Ok(if shape.is_star {
        Some((m, ClosedFormRule::Star))
    } else if shape.is_caterpillar {
        Some((m + 1, ClosedFormRule::Caterpillar))
    } else {
        shape
            .spider_long_legs
            .map(|legs| (m + legs.div_ceil(2), ClosedFormRule::Spider))
    })
}

/// Largest hydra number of a tree on `n` vertices: `floor((5n - 3) / 4)`.
pub fn max_tree_hydra(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(HydraError::TooFewVertices(n));
    }
    Ok((5 * n - 3) / 4)
}

#[derive(Clone, Debug, Serialize)]
pub struct BinaryTreeReport {
    pub d: usize,
    pub edges: usize,
    /// `|E| + 2^(d-2)`; present for `d >= 3`.
    pub lower: Option<usize>,
    /// `ceil(9|E| / 8)`.
    pub nine_eighths: Option<usize>,
    /// Size of the verified four-level construction; present for `d >= 3`.
    pub upper: Option<usize>,
    /// `floor(17|E| / 15) + 1`.
    pub upper_target: Option<usize>,
    /// Paths in the four-level cover.
    pub four_level_paths: Option<usize>,
    /// Exact path cover number of the line graph.
    pub g: usize,
    /// `ceil(|E| / 7)`.
    pub g_formula: usize,
    #[serde(skip)]
    pub certificate: Option<DirectedHypergraph>,
}

pub fn binary_tree_report(d: usize) -> Result<BinaryTreeReport> {
    let tree = binary_tree(d)?;
    let m = tree.m();
    let g = forest_line_cover(&tree)?.len();
    let mut report = BinaryTreeReport {
        d,
        edges: m,
        lower: None,
        nine_eighths: None,
        upper: None,
        upper_target: None,
        four_level_paths: None,
        g,
        g_formula: m.div_ceil(7),
        certificate: None,
    };
    if d >= 3 {
        let lower = m + (1 << (d - 2));
        debug_assert!(lower_bound(&tree)?.value >= lower);
        let p = p_of(&tree, PStrategy::BinaryFourLevel)?;
        let built = build_from_path_cover(&p.subgraph, &p.cover)?;
        let h = extend_spanning(&built.hypergraph, &p.subgraph, &tree)?;
        if !represents(&h, &tree)?.ok {
            unreachable!("four-level construction failed verification");
        }
        report.lower = Some(lower);
        report.nine_eighths = Some((9 * m).div_ceil(8));
        report.upper = Some(h.size());
        report.upper_target = Some(17 * m / 15 + 1);
        report.four_level_paths = Some(p.value);
        report.certificate = Some(h);
    }
    Ok(report)
}
