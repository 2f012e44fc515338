//! Hypergraphs in which every `k`-subset of vertices closes to everything.
//!
//! The bodies of such a hypergraph must meet every `k`-subset, so their graph
//! has no independent `k`-set and, by Turán, at least `C(n,2) - t(n, k-1)`
//! edges. The matching construction takes `k - 1` near-equal cliques, chains
//! each clique like a cycle certificate and links the cliques in a ring.

use serde::Serialize;

use crate::error::{HydraError, Result};
use crate::families::turan_parts;
use crate::hypergraph::DirectedHypergraph;
use crate::mask;

/// Largest number of `k`-subsets [`verify_k_closure`] will enumerate.
pub const DEFAULT_SUBSET_CAP: u64 = 1_000_000;
/// Largest `n` accepted by [`f_exact`].
pub const EXACT_VERTEX_CAP: usize = 6;

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k as u64).fold(1u64, |acc, i| acc * (n as u64 - i) / (i + 1))
}

/// Edge count of the balanced complete `r`-partite graph on `n` vertices.
pub fn turan_count(n: usize, r: usize) -> Result<usize> {
    let parts = turan_parts(n, r)?;
    Ok((n * n - parts.iter().map(|s| s * s).sum::<usize>()) / 2)
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n < 3 || k < 2 || 2 * (k - 1) > n {
        return Err(HydraError::Precondition(format!(
            "need n >= 3 and 2 <= k <= n/2 + 1, got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// `(lower, upper)` from the Turán count: `C(n,2) - t(n,k-1)` and that plus `k - 1`.
pub fn f_interval(n: usize, k: usize) -> Result<(usize, usize)> {
    let lower = n * (n - 1) / 2 - turan_count(n, k - 1)?;
    Ok((lower, lower + k - 1))
}

/// Clique-ring construction. Cliques are consecutive blocks of vertices; inside
/// each clique the path runs in ascending order.
pub fn f_construct(n: usize, k: usize) -> Result<DirectedHypergraph> {
    check_nk(n, k)?;
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    for size in turan_parts(n, k - 1)? {
        cliques.push((next..next + size).collect());
        next += size;
    }
    let mut h = DirectedHypergraph::new(n);
    for (ci, c) in cliques.iter().enumerate() {
        let s = c.len();
        if s >= 3 {
            for i in 0..s - 2 {
                h.insert(c[i], c[i + 1], c[i + 2])?;
            }
            h.insert(c[s - 2], c[s - 1], c[0])?;
            for i in 0..s {
                for j in i + 2..s {
                    if !(i == 0 && j == s - 1) {
                        h.insert(c[i], c[j], c[i + 1])?;
                    }
                }
            }
        }
        // The closing edge (a two-clique's only edge) points at the first path
        // edge of the next clique.
        let (a, b) = (c[0], c[s - 1]);
        let target = &cliques[(ci + 1) % cliques.len()];
        for w in [target[0], target[1]] {
            if w != a && w != b {
                h.insert(a, b, w)?;
            }
        }
    }
    Ok(h)
}

/// Outcome of an exhaustive `k`-subset check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KClosureCheck {
    pub ok: bool,
    /// Lexicographically least failing subset.
    pub witness: Option<Vec<usize>>,
}

/// `k`-subsets of `0..n` as masks, in lexicographic order.
fn subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = mask::from_iter(idx.iter().copied());
        match (0..k).rev().find(|&i| idx[i] < n - k + i) {
            Some(i) => {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
            }
            None => done = true,
        }
        Some(out)
    })
}

fn check_cap(n: usize, k: usize, cap: u64) -> Result<()> {
    if n > 64 {
        return Err(HydraError::TooLarge {
            what: "vertices for subset enumeration",
            limit: 64,
            actual: n,
        });
    }
    let count = binomial(n, k);
    if count > cap {
        return Err(HydraError::TooLarge {
            what: "k-subsets to enumerate",
            limit: cap as usize,
            actual: count as usize,
        });
    }
    Ok(())
}

fn closure_mask(h: &DirectedHypergraph, start: u64) -> u64 {
    let marks = h.closure_marks(mask::iter(start));
    mask::from_iter(marks.iter().enumerate().filter(|(_, &m)| m).map(|(v, _)| v))
}

/// Checks that every `k`-subset closes to the whole vertex set.
pub fn verify_k_closure(h: &DirectedHypergraph, k: usize) -> Result<KClosureCheck> {
    verify_k_closure_with_cap(h, k, DEFAULT_SUBSET_CAP)
}

pub fn verify_k_closure_with_cap(h: &DirectedHypergraph, k: usize, cap: u64) -> Result<KClosureCheck> {
    let n = h.n();
    check_cap(n, k, cap)?;
    let full = mask::full(n);
    let witness = subsets(n, k)
        .find(|&s| closure_mask(h, s) != full)
        .map(|s| mask::iter(s).collect());
    Ok(KClosureCheck {
        ok: witness.is_none(),
        witness,
    })
}

/// True if every `k`-subset contains a body of `h`.
pub fn f_lower_check(h: &DirectedHypergraph, k: usize) -> Result<bool> {
    let n = h.n();
    check_cap(n, k, DEFAULT_SUBSET_CAP)?;
    let bodies: Vec<u64> = h.body_graph().edges().iter().map(|&(u, v)| mask::bit(u) | mask::bit(v)).collect();
    Ok(subsets(n, k).all(|s| bodies.iter().any(|&b| b & !s == 0)))
}

#[derive(Clone, Debug, Serialize)]
pub struct FExact {
    pub value: usize,
    #[serde(skip)]
    pub witness: DirectedHypergraph,
}

/// Smallest hypergraph on `n <= 6` vertices in which every `k`-subset closes.
pub fn f_exact(n: usize, k: usize) -> Result<FExact> {
    if n > EXACT_VERTEX_CAP {
        return Err(HydraError::TooLarge {
            what: "vertices for exact k-closure search",
            limit: EXACT_VERTEX_CAP,
            actual: n,
        });
    }
    if n < 3 || k < 2 || k >= n {
        return Err(HydraError::Precondition(format!("need n >= 3 and 2 <= k < n, got n={n}, k={k}")));
    }
    let search = ExactSearch::new(n, k);
    let (lower, _) = f_interval(n, k).unwrap_or((1, 0));
    for t in lower.max(1)..=n * (n - 1) / 2 * (n - 2) {
        let mut heads = vec![0u64; search.pairs.len()];
        if search.dfs(0, t, &mut heads) {
            let mut h = DirectedHypergraph::new(n);
            for (p, &hs) in search.pairs.iter().zip(&heads) {
                for w in mask::iter(hs) {
                    h.insert(p.0, p.1, w)?;
                }
            }
            return Ok(FExact { value: h.size(), witness: h });
        }
    }
    unreachable!("the complete hydra closes every pair")
}

struct ExactSearch {
    n: usize,
    full: u64,
    pairs: Vec<(usize, usize)>,
    pair_masks: Vec<u64>,
    all_subsets: Vec<u64>,
    /// Subsets whose pairs are all decided once pair `i` is decided.
    completed_at: Vec<Vec<u64>>,
}

impl ExactSearch {
    fn new(n: usize, k: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let pair_masks: Vec<u64> = pairs.iter().map(|&(u, v)| mask::bit(u) | mask::bit(v)).collect();
        let all_subsets: Vec<u64> = subsets(n, k).collect();
        let mut completed_at = vec![Vec::new(); pairs.len()];
        for &s in &all_subsets {
            let last = (0..pairs.len()).rev().find(|&i| pair_masks[i] & !s == 0).expect("k >= 2");
            completed_at[last].push(s);
        }
        ExactSearch {
            n,
            full: mask::full(n),
            pairs,
            pair_masks,
            all_subsets,
            completed_at,
        }
    }

    /// Closure where every undecided pair (index `>= decided`) may produce anything.
    fn optimistic(&self, start: u64, decided: usize, heads: &[u64]) -> u64 {
        let mut reach = start;
        loop {
            let before = reach;
            for (i, &b) in self.pair_masks.iter().enumerate() {
                if b & !reach == 0 {
                    if i >= decided {
                        return self.full;
                    }
                    reach |= heads[i];
                }
            }
            if reach == before || reach == self.full {
                return reach;
            }
        }
    }

    fn feasible(&self, decided: usize, heads: &[u64]) -> bool {
        let last = decided - 1;
        let has_body = |s: u64| (0..decided).any(|i| heads[i] != 0 && self.pair_masks[i] & !s == 0);
        self.completed_at[last].iter().all(|&s| has_body(s))
            && self
                .all_subsets
                .iter()
                .all(|&s| self.optimistic(s, decided, heads) == self.full)
    }

    fn dfs(&self, i: usize, left: usize, heads: &mut Vec<u64>) -> bool {
        if i == self.pairs.len() {
            return true;
        }
        let (u, v) = self.pairs[i];
        let free = self.full & !(mask::bit(u) | mask::bit(v));
        // Some pair is a body; relabelling makes it (0, 1) with head 2.
        let forced = if i == 0 { mask::bit(2) } else { 0 };
        let mut sub = free;
        let mut options: Vec<u64> = Vec::new();
        loop {
            if sub & forced == forced && mask::count(sub) <= left {
                options.push(sub);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        options.sort_by_key(|&s| (mask::count(s), s));
        for hs in options {
            heads[i] = hs;
            if self.feasible(i + 1, heads) && self.dfs(i + 1, left - mask::count(hs), heads) {
                return true;
            }
        }
        heads[i] = 0;
        debug_assert!(self.n >= 3);
        false
    }
}

/// Interval, construction and (for small `n`) the exact value.
#[derive(Clone, Debug, Serialize)]
pub struct FknReport {
    pub n: usize,
    pub k: usize,
    pub lower: usize,
    pub upper: usize,
    pub construction_size: usize,
    pub construction_verified: bool,
    pub exact: Option<usize>,
    #[serde(skip)]
    pub construction: DirectedHypergraph,
}

pub fn fkn_report(n: usize, k: usize, with_exact: bool) -> Result<FknReport> {
    check_nk(n, k)?;
    let (lower, upper) = f_interval(n, k)?;
    let construction = f_construct(n, k)?;
    let verified = verify_k_closure(&construction, k)?.ok;
    let exact = if with_exact && n <= EXACT_VERTEX_CAP {
        Some(f_exact(n, k)?.value)
    } else {
        None
    };
    Ok(FknReport {
        n,
        k,
        lower,
        upper,
        construction_size: construction.size(),
        construction_verified: verified,
        exact,
        construction,
    })
}
