mod common;

use proptest::prelude::*;
use rcover_core::hypergraph::{binom, colex_index, colex_inverse, tight_adjacent};
use rcover_core::{Hypergraph3, Triple};

#[test]
fn colex_is_a_bijection_up_to_fifty() {
    let mut expected = 0u64;
    for c in 2..50 {
        for b in 1..c {
            for a in 0..b {
                let t = Triple::of(a, b, c);
                assert_eq!(colex_index(&t), expected);
                assert_eq!(colex_inverse(expected), t);
                expected += 1;
            }
        }
    }
    assert_eq!(expected, binom(50, 3));
}

#[test]
fn colex_index_of_123_by_enumeration() {
    let mut all: Vec<Triple> = Hypergraph3::complete(4).edges().to_vec();
    all.sort_by_key(|t| {
        let [a, b, c] = t.vertices();
        (c, b, a)
    });
    assert_eq!(all.iter().position(|t| *t == Triple::of(1, 2, 3)), Some(3));
    assert_eq!(colex_index(&Triple::of(1, 2, 3)), 3);
}

#[test]
fn shadow_of_complete_k5() {
    let h = Hypergraph3::complete(5);
    assert_eq!(h.shadow().len(), 10);
    assert_eq!(h.connected_components().sizes(), vec![10]);
}

#[test]
fn active_pairs_equal_shadow_on_random_hypergraphs() {
    for seed in 0..100 {
        let h = common::random_hypergraph(&mut common::rng(seed), 12, 0.1);
        let mut brute = Vec::new();
        for y in 1..12 {
            for x in 0..y {
                if h.edges().iter().any(|t| t.contains(x) && t.contains(y)) {
                    brute.push((x, y));
                }
            }
        }
        brute.sort_by_key(|&(x, y)| (y, x));
        let mut shadow = h.shadow();
        shadow.sort_by_key(|&(x, y)| (y, x));
        assert_eq!(shadow, brute);
        assert_eq!(h.active_pairs(), h.shadow());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn links_are_symmetric(n in 3usize..=15, p in 0.0f64..0.6, seed in any::<u64>()) {
        let h = common::random_hypergraph(&mut common::rng(seed), n, p);
        for x in 0..n {
            let nx = h.neighbourhood(x);
            for y in 0..n {
                if x == y {
                    continue;
                }
                let ny = h.neighbourhood(y);
                let link = h.link(x, y).unwrap();
                prop_assert_eq!(nx.contains(y), ny.contains(x));
                prop_assert_eq!(nx.contains(y), !link.is_empty());
                for z in link {
                    prop_assert!(h.contains(&Triple::of(x, y, z)));
                }
            }
        }
    }

    #[test]
    fn components_match_matrix_closure(n in 3usize..=8, p in 0.0f64..0.5, seed in any::<u64>()) {
        let h = common::random_hypergraph(&mut common::rng(seed), n, p);
        let cc = h.connected_components();
        let closure = common::closure_matrix(h.edges());
        let total: usize = cc.sizes().iter().sum();
        prop_assert_eq!(total, h.edge_count());
        for i in 0..h.edge_count() {
            for j in 0..h.edge_count() {
                prop_assert_eq!(cc.class_of_index(i) == cc.class_of_index(j), closure[i][j]);
            }
        }
    }

    #[test]
    fn connecting_paths_are_pseudo_paths(n in 4usize..=9, p in 0.1f64..0.6, seed in any::<u64>()) {
        let h = common::random_hypergraph(&mut common::rng(seed), n, p);
        let closure = common::closure_matrix(h.edges());
        for (i, e) in h.edges().iter().enumerate() {
            for (j, f) in h.edges().iter().enumerate() {
                match h.connecting_path(e, f).unwrap() {
                    Some(path) => {
                        prop_assert!(closure[i][j]);
                        prop_assert!(path.is_valid());
                        prop_assert_eq!(path.edges()[0], *e);
                        prop_assert_eq!(*path.edges().last().unwrap(), *f);
                        for w in path.edges().windows(2) {
                            prop_assert!(tight_adjacent(&w[0], &w[1]));
                        }
                    }
                    None => prop_assert!(!closure[i][j]),
                }
            }
        }
    }
}
