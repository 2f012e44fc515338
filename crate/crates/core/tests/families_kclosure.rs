mod common;

use common::{arcs_of, naive_closure, naive_represents, Arc3};
use hydralab::corpus;
use hydralab::families::{self, closed_form_hydra, recognize};
use hydralab::kclosure::{f_construct, f_exact, f_interval, turan_count, verify_k_closure};
use hydralab::solver::{hydra_number, SolverOptions};
use hydralab::Graph;

fn exact(g: &Graph) -> usize {
    hydra_number(g, &SolverOptions::default()).unwrap().value().unwrap()
}

#[test]
fn closed_forms_match_solver() {
    let mut trees: Vec<Graph> = (2..=6).map(|m| families::star(m).unwrap()).collect();
    trees.extend(corpus::trees_up_to(3, 8).into_iter().filter(|t| recognize(t).unwrap().is_caterpillar));
    trees.extend((1..=4).map(|k| families::spider_tk(k).unwrap()));
    trees.push(families::spider(&[2, 2, 1, 1]).unwrap());
    for t in trees {
        let (value, _) = closed_form_hydra(&t).unwrap().expect("closed form applies");
        assert_eq!(value, exact(&t), "{:?}", t.edges());
    }
}

#[test]
fn caterpillar_recognizers_agree() {
    for t in corpus::trees_up_to(1, 10) {
        let shape = recognize(&t).unwrap();
        assert_eq!(shape.is_caterpillar, shape.is_caterpillar_by_forbidden, "{:?}", t.edges());
    }
    assert!(!recognize(&families::forbidden_caterpillar()).unwrap().is_caterpillar);
}

#[test]
fn gk_certificates_are_single_headed() {
    for k in 2..=4 {
        let (g, h) = families::gk_certificate(k).unwrap();
        assert_eq!((g.n(), g.m()), families::gk_counts(k));
        assert_eq!(g, families::gk(k).unwrap());
        assert_eq!(h.size(), g.m());
        let heads = h.heads_by_body();
        assert!(g.edges().iter().all(|e| heads.get(e).map(Vec::len) == Some(1)));
        assert!(naive_represents(g.n(), &arcs_of(&h), &g));
    }
}

#[test]
fn tree_maximum_formula() {
    for k in 2..=30 {
        assert_eq!(families::max_tree_hydra(2 * k + 1).unwrap(), 2 * k + k.div_ceil(2));
    }
    for n in 3..=9 {
        let best = corpus::trees(n).iter().map(exact).max().unwrap();
        assert!(best <= families::max_tree_hydra(n).unwrap());
        if n % 2 == 1 && n >= 5 {
            assert_eq!(best, families::max_tree_hydra(n).unwrap());
        }
    }
}

#[test]
fn binary_tree_sizes() {
    for d in 1..=10 {
        let g = families::binary_tree(d).unwrap();
        assert_eq!((g.n(), g.m()), (2usize.pow(d as u32 + 1) - 1, 2usize.pow(d as u32 + 1) - 2));
        assert!(g.is_tree());
    }
}

#[test]
fn turan_counts_and_construction_bodies() {
    assert_eq!(families::turan_graph(6, 2).unwrap().m(), 9);
    for n in 3..=12 {
        for k in 2..=n / 2 + 1 {
            let turan = families::turan_graph(n, k - 1).unwrap();
            assert_eq!(turan.m(), turan_count(n, k - 1).unwrap());
            let h = f_construct(n, k).unwrap();
            let (lower, upper) = f_interval(n, k).unwrap();
            assert_eq!(lower, n * (n - 1) / 2 - turan.m());
            assert!(h.size() <= upper, "n={n} k={k}");
            assert_eq!(h.body_graph(), turan.complement());
        }
    }
}

#[test]
fn constructions_close_every_k_subset() {
    for n in 3..=10 {
        for k in 2..=(n / 2 + 1).min(4) {
            assert!(verify_k_closure(&f_construct(n, k).unwrap(), k).unwrap().ok, "n={n} k={k}");
        }
    }
}

fn closes_all(n: usize, k: usize, arcs: &[Arc3]) -> bool {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .all(|s| {
            let start: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
            naive_closure(n, arcs, &start).iter().all(|&m| m)
        })
}

/// Smallest arc set closing every `k`-subset, by trying sizes in order.
fn oracle_f(n: usize, k: usize) -> usize {
    let space: Vec<Arc3> = (0..n)
        .flat_map(|u| (u + 1..n).flat_map(move |v| (0..n).filter(move |&w| w != u && w != v).map(move |w| (u, v, w))))
        .collect();
    fn pick(space: &[Arc3], from: usize, left: usize, chosen: &mut Vec<Arc3>, test: &dyn Fn(&[Arc3]) -> bool) -> bool {
        if left == 0 {
            return test(chosen);
        }
        for i in from..space.len() {
            chosen.push(space[i]);
            if pick(space, i + 1, left - 1, chosen, test) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    (1..)
        .find(|&s| pick(&space, 0, s, &mut Vec::new(), &|a| closes_all(n, k, a)))
        .unwrap()
}

#[test]
fn exact_k_closure_matches_oracle() {
    for (n, k) in [(4, 2), (4, 3), (5, 3)] {
        let f = f_exact(n, k).unwrap();
        assert!(closes_all(n, k, &arcs_of(&f.witness)));
        assert_eq!(f.value, oracle_f(n, k), "n={n} k={k}");
    }
}

#[test]
fn adding_arcs_keeps_k_closure() {
    let h = f_construct(7, 3).unwrap();
    let mut bigger = h.clone();
    bigger.insert(0, 1, 5).unwrap();
    assert!(verify_k_closure(&bigger, 3).unwrap().ok);
    // Closing every k-subset implies closing every (k+1)-subset.
    assert!(verify_k_closure(&h, 4).unwrap().ok);
}
