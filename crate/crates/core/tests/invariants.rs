use std::sync::OnceLock;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use posetforge::catalog::enumerate_catalog;
use posetforge::named;
use posetforge::reconstruct::CatalogIndex;
use posetforge::{
    build_omega, build_p, build_q, cert, format_graph6, is_isomorphic, legitimate_labelings, parse_graph6,
    poset_isomorphic, Graph, WeightedPoset,
};

fn graph_strategy(max_n: usize, max_edges: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::sample::subsequence(pairs.clone(), 0..=max_edges.min(pairs.len()))
            .prop_map(move |edges| Graph::from_edges(n, &edges))
    })
}

fn relabelled(max_n: usize, max_edges: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph_strategy(max_n, max_edges).prop_flat_map(|g| {
        let perm: Vec<usize> = (0..g.n()).collect();
        (Just(g), Just(perm).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph_cert_ignores_labels((g, perm) in relabelled(9, 14)) {
        let h = g.relabel(&perm);
        prop_assert_eq!(cert(&g), cert(&h));
        prop_assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn graph6_round_trip(g in graph_strategy(12, 30)) {
        prop_assert_eq!(parse_graph6(&format_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn adding_an_edge_changes_the_cert(g in graph_strategy(8, 10)) {
        if let Some((u, v)) = (0..g.n()).flat_map(|u| (u + 1..g.n()).map(move |v| (u, v))).find(|&(u, v)| !g.has_edge(u, v)) {
            let mut h = g.clone();
            h.add_edge(u, v);
            prop_assert_ne!(cert(&g), cert(&h));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poset_cert_ignores_element_order((g, seed) in (graph_strategy(6, 6), any::<u64>())) {
        prop_assume!(g.edge_count() > 0);
        for p in [build_q(&g).unwrap(), build_omega(&g).unwrap(), build_p(&g).unwrap()] {
            let mut perm: Vec<usize> = (0..p.len()).collect();
            perm.shuffle(&mut StdRng::seed_from_u64(seed));
            let shuffled = p.permuted(&perm);
            prop_assert_eq!(p.abstract_cert(), shuffled.abstract_cert());
            prop_assert_eq!(p.to_file_text(), shuffled.to_file_text());
        }
    }

    #[test]
    fn poset_file_round_trip((g, perm) in relabelled(6, 6)) {
        prop_assume!(g.edge_count() > 0);
        for p in [build_q(&g).unwrap(), build_omega(&g).unwrap(), build_p(&g).unwrap()] {
            let text = p.to_file_text();
            let back = WeightedPoset::from_file_text(&text).unwrap();
            prop_assert_eq!(back.to_file_text(), text.clone());
            prop_assert!(poset_isomorphic(&back, &p));
            let abs = p.to_abstract().to_file_text();
            prop_assert_eq!(WeightedPoset::from_file_text(&abs).unwrap().to_file_text(), abs);
        }
        prop_assert_eq!(build_q(&g).unwrap().to_file_text(), build_q(&g.relabel(&perm)).unwrap().to_file_text());
    }

    #[test]
    fn weights_are_positive_exactly_on_the_order(g in graph_strategy(6, 6)) {
        prop_assume!(g.edge_count() > 0);
        for p in [build_q(&g).unwrap(), build_omega(&g).unwrap(), build_p(&g).unwrap()] {
            for i in 0..p.len() {
                prop_assert_eq!(p.weight(i, i), 1);
                for j in 0..p.len() {
                    prop_assert_eq!(p.weight(i, j) > 0, p.leq(i, j));
                    if p.less(i, j) {
                        prop_assert!(p.rank(i) < p.rank(j));
                    }
                }
            }
        }
    }
}

fn index7() -> &'static CatalogIndex {
    static INDEX: OnceLock<CatalogIndex> = OnceLock::new();
    INDEX.get_or_init(|| CatalogIndex::new(enumerate_catalog(7).unwrap()))
}

/// Elements whose label is the same under every legitimate labeling onto
/// every Q-reconstruction.
fn distinguished(g: &Graph) -> Vec<bool> {
    let q = build_q(g).unwrap().to_abstract();
    let candidates = index7().q_reconstructions(&q).unwrap();
    let mut seen: Vec<Option<posetforge::CanonicalCert>> = vec![None; q.len()];
    let mut same = vec![true; q.len()];
    for h in &candidates {
        let labelings = legitimate_labelings(&q, h).unwrap();
        for which in 0..labelings.maps.len() {
            for (x, slot) in seen.iter_mut().enumerate() {
                let c = cert(labelings.image(which, x));
                match slot {
                    None => *slot = Some(c),
                    Some(prev) if *prev != c => same[x] = false,
                    _ => {}
                }
            }
        }
    }
    same
}

#[test]
fn star_plus_matching_distinguishes_every_element() {
    let g = named::p3_plus_2k2();
    assert_eq!(index7().q_reconstructions(&build_q(&g).unwrap().to_abstract()).unwrap().len(), 1);
    assert!(distinguished(&g).iter().all(|&d| d));
}

#[test]
fn path_on_five_vertices_is_q_reconstructible() {
    let q = build_q(&Graph::path(5)).unwrap().to_abstract();
    let found = index7().q_reconstructions(&q).unwrap();
    assert_eq!(found.len(), 1);
    assert!(is_isomorphic(&found[0], &Graph::path(5)));
}

#[test]
fn cycle_of_five_has_one_candidate_but_swappable_labels() {
    let q = build_q(&Graph::cycle(5)).unwrap().to_abstract();
    assert_eq!(index7().q_reconstructions(&q).unwrap().len(), 1);
    let d = distinguished(&Graph::cycle(5));
    assert_eq!(d.iter().filter(|&&x| !x).count(), 4);
}

#[test]
fn triangle_star_and_matching_share_q() {
    let q = build_q(&Graph::complete(3)).unwrap().to_abstract();
    let found = index7().q_reconstructions(&q).unwrap();
    let mut names: Vec<String> = found.iter().map(format_graph6).collect();
    names.sort();
    let mut expected: Vec<String> =
        [Graph::complete(3), Graph::star(3), Graph::matching(3)].iter().map(|g| format_graph6(&cert(g).to_graph())).collect();
    expected.sort();
    assert_eq!(names, expected);
}
