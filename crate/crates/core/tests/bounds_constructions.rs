mod common;

use common::{arcs_of, graph, naive_represents, oracle_p, oracle_pcn, oracle_tree_line_pcn};
use hydralab::bounds::{
    build_from_line_ham_cycle, build_from_path_cover, extend_spanning, extend_with_new_vertex, forest_line_cover,
    hamiltonian_cycle, line_graph, lower_bound, min_path_cover, p_of, trivial_bounds, upper_bound, PStrategy,
    PathCover,
};
use hydralab::corpus;
use hydralab::families;
use hydralab::solver::{hydra_number, SolverOptions};
use hydralab::Graph;
use rand::Rng;

fn verified(h: &hydralab::DirectedHypergraph, g: &Graph) -> bool {
    naive_represents(g.n(), &arcs_of(h), g)
}

fn triangle_free(g: &Graph) -> bool {
    g.edges()
        .iter()
        .all(|&(u, v)| !g.neighbors(u).iter().any(|w| g.neighbors(v).contains(w)))
}

#[test]
fn min_path_cover_matches_oracle() {
    for g in corpus::connected_graphs_up_to(2, 6).unwrap() {
        let cover = min_path_cover(&g).unwrap();
        assert!(cover.optimal);
        assert_eq!(cover.len(), oracle_pcn(&g), "{:?}", g.edges());
        let host = line_graph(&g);
        if host.n() > 10 {
            continue;
        }
        assert_eq!(min_path_cover(&host).unwrap().len(), oracle_pcn(&host));
    }
}

#[test]
fn forest_cover_matches_oracle() {
    for t in corpus::trees_up_to(2, 10) {
        let cover = forest_line_cover(&t).unwrap();
        assert_eq!(cover.len(), oracle_pcn(&line_graph(&t)), "{:?}", t.edges());
        if (0..t.n()).all(|v| t.degree(v) <= 5) {
            assert_eq!(cover.len(), oracle_tree_line_pcn(&t));
        }
    }
}

#[test]
fn exhaustive_p_matches_oracle() {
    let mut graphs = corpus::connected_graphs_up_to(3, 5).unwrap();
    graphs.extend(corpus::trees_up_to(3, 8));
    for g in graphs {
        let p = p_of(&g, PStrategy::exhaustive()).unwrap();
        assert!(p.exact);
        assert_eq!(p.value, oracle_p(&g), "{:?}", g.edges());
        assert!(p.value <= min_path_cover(&line_graph(&g)).unwrap().len());
    }
}

#[test]
fn path_cover_constructions_have_stated_sizes() {
    let mut graphs = corpus::connected_graphs_up_to(3, 6).unwrap();
    graphs.extend(corpus::trees_up_to(3, 10));
    for g in graphs {
        let p = p_of(&g, PStrategy::Exhaustive { edge_cap: 15 }).unwrap();
        let built = build_from_path_cover(&p.subgraph, &p.cover).unwrap();
        assert!(verified(&built.hypergraph, &p.subgraph));
        assert_eq!(built.nominal_size(), p.subgraph.m() + p.value);

        let whole = build_from_path_cover(&p.subgraph, &p.cover).unwrap();
        let h = extend_spanning(&whole.hypergraph, &p.subgraph, &g).unwrap();
        assert!(verified(&h, &g));
        assert_eq!(h.size(), whole.hypergraph.size() + g.m() - p.subgraph.m());

        if let Some(h) = build_from_line_ham_cycle(&g).unwrap() {
            assert_eq!(h.size(), g.m());
            assert!(verified(&h, &g));
        }
    }
}

#[test]
fn small_cover_examples() {
    // C_5 through a Hamiltonian cycle of its line graph, read as a single path.
    let c5 = families::cycle(5).unwrap();
    let line = line_graph(&c5);
    let order = hamiltonian_cycle(&line).unwrap();
    let path = PathCover::new(line.clone(), vec![order], false).unwrap();
    let built = build_from_path_cover(&c5, &path).unwrap();
    assert_eq!(built.hypergraph.size() + built.dropped_redundant, 6);
    assert!(verified(&built.hypergraph, &c5));

    let legs = families::spider(&[2, 2, 2, 2]).unwrap();
    assert_eq!(p_of(&legs, PStrategy::exhaustive()).unwrap().value, 2);
    let cat = families::caterpillar(&[1, 0, 2]).unwrap();
    assert_eq!(p_of(&cat, PStrategy::exhaustive()).unwrap().value, 1);
}

#[test]
fn trivial_certificate_within_stated_range() {
    for g in corpus::connected_graphs_up_to(3, 6).unwrap() {
        let t = trivial_bounds(&g).unwrap();
        assert!(verified(&t.certificate, &g));
        assert!(t.certificate.size() <= t.upper);
    }
    for m in 2..5 {
        let g = families::matching(m).unwrap();
        let t = trivial_bounds(&g).unwrap();
        assert_eq!((t.lower, t.upper), (m, 2 * m));
        assert!(verified(&t.certificate, &g));
    }
}

#[test]
fn upper_bound_within_line_cover_total_on_triangle_free_graphs() {
    for g in corpus::connected_graphs_up_to(3, 6).unwrap().into_iter().filter(triangle_free) {
        let ub = upper_bound(&g).unwrap();
        assert!(ub.value <= g.m() + min_path_cover(&line_graph(&g)).unwrap().len());
        assert!(verified(&ub.certificate, &g));
    }
}

#[test]
fn sandwich_on_random_graphs() {
    let mut rng = corpus::rng(corpus::DEFAULT_SEED + 3);
    for _ in 0..40 {
        let n = rng.gen_range(5..9);
        let g = corpus::random_connected_graph(n, rng.gen_range(0..3), &mut rng);
        let r = hydra_number(&g, &SolverOptions::default()).unwrap();
        let v = r.value().unwrap();
        assert!(lower_bound(&g).unwrap().value <= v);
        assert!(v <= upper_bound(&g).unwrap().value);
    }
}

#[test]
fn new_vertex_extension_stays_single_headed() {
    for g in corpus::connected_graphs_up_to(4, 6).unwrap() {
        let Some(h) = build_from_line_ham_cycle(&g).unwrap() else { continue };
        let Some((u, v)) = (0..g.n())
            .flat_map(|u| (u + 1..g.n()).map(move |v| (u, v)))
            .find(|&(u, v)| !g.has_edge(u, v))
        else {
            continue;
        };
        let (h2, g2) = extend_with_new_vertex(&h, &g, u, v).unwrap();
        assert_eq!(h2.size(), g2.m());
        assert_eq!(g2.m(), g.m() + 2);
        assert!(verified(&h2, &g2));
    }
}

#[test]
fn lower_bound_examples() {
    let bridge = graph(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]);
    assert_eq!(lower_bound(&bridge).unwrap().value, 8);
    let two = graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
    assert_eq!(lower_bound(&two).unwrap().value, 8);
    let b3 = families::binary_tree(3).unwrap();
    assert_eq!(lower_bound(&b3).unwrap().value, 16);
}
