#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rcover_core::{Color, Coloring, Hypergraph3, Triple};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Each triple of `[n]` kept with probability `p`.
pub fn random_hypergraph(rng: &mut StdRng, n: usize, p: f64) -> Hypergraph3 {
    let mut edges = Vec::new();
    for c in 2..n {
        for b in 1..c {
            for a in 0..b {
                if rng.gen_bool(p) {
                    edges.push(Triple::of(a, b, c));
                }
            }
        }
    }
    Hypergraph3::new(n, edges).unwrap()
}

pub fn random_coloring(rng: &mut StdRng, h: Hypergraph3, p_red: f64) -> Coloring {
    Coloring::from_fn(h, |_| if rng.gen_bool(p_red) { Color::Red } else { Color::Blue })
}

/// Reflexive-transitive closure of tight adjacency as a boolean matrix.
pub fn closure_matrix(edges: &[Triple]) -> Vec<Vec<bool>> {
    let m = edges.len();
    let mut r: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| i == j || edges[i].intersection_len(&edges[j]) == 2).collect())
        .collect();
    for k in 0..m {
        for i in 0..m {
            if r[i][k] {
                for j in 0..m {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}
