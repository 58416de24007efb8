use serde::{Deserialize, Serialize};

use super::params::{ceil_count, Params};
use super::MatcherError;
use crate::bits::BitSet;
use crate::hypergraph::{pair_index, Hypergraph3, Triple, Vertex};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CleanReport {
    /// `t_H`.
    pub vertices_before: usize,
    /// `t_K`.
    pub vertices_after: usize,
    pub deleted_vertices: Vec<Vertex>,
    pub deactivated_pairs: usize,
    pub removed_edges: usize,
    /// Rounds that removed something.
    pub rounds: usize,
    /// Whether `t_K >= (1 - delta) t_H`. Reported, not enforced.
    pub size_guarantee_met: bool,
}

/// Iterative cleanup to a fixpoint: repeatedly remove every edge through an
/// active pair whose link is below `⌈(1 - delta) t⌉`, then drop vertices in no
/// active pair, with `t` recomputed each round.
///
/// At the fixpoint every remaining vertex lies in an active pair and every
/// active pair `xy` has `|N(x, y)| >= (1 - delta) t`.
pub fn clean(h: &Hypergraph3, params: &Params) -> Result<(Hypergraph3, CleanReport), MatcherError> {
    if h.vertex_count() == 0 {
        return Err(MatcherError::EmptyInput);
    }
    let n = h.n();
    let mut k = h.clone();
    let mut deleted = Vec::new();
    let mut deactivated = 0;
    let mut rounds = 0;
    loop {
        let t = k.vertex_count();
        let floor = ceil_count(params.thresholds(t).link_floor);
        let mut bad = BitSet::new(pair_capacity(n));
        for (x, y) in k.active_pairs() {
            if k.link_of(x, y).len() < floor {
                bad.insert(pair_index(x, y));
            }
        }
        let bad_count = bad.len();
        deactivated += bad_count;
        let keep_edge = |e: &Triple| e.pairs().iter().all(|&(x, y)| !bad.contains(pair_index(x, y)));
        let pruned = if bad_count > 0 { k.filter_edges(keep_edge) } else { k.clone() };
        let in_edge = pruned.covered_vertices();
        let mut vertices = pruned.vertices().clone();
        let mut dropped = 0;
        for v in pruned.vertices().iter() {
            if !in_edge.contains(v) {
                vertices.remove(v);
                deleted.push(v);
                dropped += 1;
            }
        }
        k = if dropped > 0 {
            pruned.with_vertex_set(vertices).expect("edges avoid dropped vertices")
        } else {
            pruned
        };
        if bad_count == 0 && dropped == 0 {
            break;
        }
        rounds += 1;
    }
    deleted.sort_unstable();
    let report = CleanReport {
        vertices_before: h.vertex_count(),
        vertices_after: k.vertex_count(),
        deleted_vertices: deleted,
        deactivated_pairs: deactivated,
        removed_edges: h.edge_count() - k.edge_count(),
        rounds,
        size_guarantee_met: k.vertex_count() as f64
            >= (1.0 - params.delta) * h.vertex_count() as f64 - 1e-9,
    };
    if k.vertex_count() == 0 {
        return Err(MatcherError::CleanupExhausted(report));
    }
    Ok((k, report))
}

fn pair_capacity(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Lists violations of the two cleanup properties in `k`.
pub fn clean_violations(k: &Hypergraph3, params: &Params) -> Vec<String> {
    let t = k.vertex_count();
    let floor = params.thresholds(t).link_floor;
    let mut out = Vec::new();
    for v in k.vertices().iter() {
        if k.neighbourhood(v).is_empty() {
            out.push(format!("vertex {v} is in no active pair"));
        }
    }
    for (x, y) in k.active_pairs() {
        let len = k.link_of(x, y).len();
        if (len as f64) < floor - 1e-9 {
            out.push(format!("pair {x}{y} has link {len} < (1-delta)t = {floor:.3}"));
        }
    }
    out
}
