//! Exhaustive ground truth for small instances. Nothing here calls the
//! matcher's or the cycle search's own routines for the optimum itself.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::{CyclePair, Parity, TightCycle};
use crate::hypergraph::{Color, Coloring, Hypergraph3, Triple, Vertex};
use crate::matcher::{ConnectedMatching, CoverResult, MatcherError};

pub const MATCHING_CAP: usize = 10;
pub const CYCLE_CAP: usize = 8;
pub const PERFECT_MATCHING_CAP: usize = 15;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("instance has {n} vertices, above the oracle cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Matcher(#[from] MatcherError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport<W> {
    pub optimum: usize,
    pub witness: W,
    /// Search states evaluated.
    pub instances_searched: u64,
}

/// Tight components by pairwise comparison of edges, as lists of edge
/// indices into `edges`.
fn components_by_closure(edges: &[Triple]) -> Vec<Vec<usize>> {
    let m = edges.len();
    let mut comp = vec![usize::MAX; m];
    let mut out = Vec::new();
    for s in 0..m {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut i = 0;
        while i < members.len() {
            let e = edges[members[i]];
            for j in 0..m {
                if comp[j] == usize::MAX && e.intersection_len(&edges[j]) == 2 {
                    comp[j] = id;
                    members.push(j);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Maximum matching in `edges` by a table over all vertex subsets.
struct SubsetMatching {
    best: Vec<u8>,
    via: Vec<Option<Triple>>,
}

impl SubsetMatching {
    fn new(local_edges: &[(u32, Triple)], m: usize) -> Self {
        let masks = 1usize << m;
        let mut best = vec![0u8; masks];
        let mut via = vec![None; masks];
        for mask in 1..masks {
            let low = mask.trailing_zeros();
            let without = mask & (mask - 1);
            best[mask] = best[without];
            for &(em, t) in local_edges {
                if em & (1 << low) != 0 && (mask as u32) & em == em {
                    let cand = best[mask ^ em as usize] + 1;
                    if cand > best[mask] {
                        best[mask] = cand;
                        via[mask] = Some(t);
                    }
                }
            }
        }
        Self { best, via }
    }

    fn witness(&self, mut mask: usize, index: &[usize]) -> Vec<Triple> {
        let mut out = Vec::new();
        while mask != 0 {
            let low = mask.trailing_zeros() as usize;
            match self.via[mask] {
                Some(t) if self.best[mask] > self.best[mask & (mask - 1)] => {
                    out.push(t);
                    for v in t.vertices() {
                        mask &= !(1 << index[v]);
                    }
                }
                _ => mask &= !(1 << low),
            }
        }
        out.sort_unstable();
        out
    }
}

/// Largest number of vertices covered by a red matching inside one red
/// component and a disjoint blue matching inside one blue component.
pub fn oracle_matching_cover(col: &Coloring, gamma: f64) -> Result<OracleReport<CoverResult>, OracleError> {
    let h = col.host();
    if h.n() > MATCHING_CAP {
        return Err(OracleError::TooLarge { n: h.n(), cap: MATCHING_CAP });
    }
    let verts: Vec<Vertex> = h.vertices().iter().collect();
    let mut index = vec![usize::MAX; h.n()];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let local = |t: &Triple| t.vertices().iter().fold(0u32, |acc, &v| acc | 1 << index[v]);
    let mut by_color: [Vec<Vec<Triple>>; 2] = [Vec::new(), Vec::new()];
    for color in Color::BOTH {
        let edges: Vec<Triple> = h
            .edges()
            .iter()
            .zip(col.colors())
            .filter(|(_, &c)| c == color)
            .map(|(t, _)| *t)
            .collect();
        by_color[color as usize] = components_by_closure(&edges)
            .into_iter()
            .map(|ids| ids.into_iter().map(|i| edges[i]).collect())
            .collect();
    }
    let empty: Vec<Triple> = Vec::new();
    let options = |c: Color| std::iter::once(&empty).chain(by_color[c as usize].iter()).collect::<Vec<_>>();
    let full = (1usize << verts.len()) - 1;
    let mut searched = 0u64;
    let mut best: Option<(usize, Vec<Triple>, &Vec<Triple>, &Vec<Triple>)> = None;
    for red in options(Color::Red) {
        for blue in options(Color::Blue) {
            let edges: Vec<(u32, Triple)> = red.iter().chain(blue.iter()).map(|t| (local(t), *t)).collect();
            let table = SubsetMatching::new(&edges, verts.len());
            searched += 1u64 << verts.len();
            let size = table.best[full] as usize;
            if best.as_ref().map_or(true, |b| size > b.0) {
                best = Some((size, table.witness(full, &index), red, blue));
            }
        }
    }
    let (size, matching, red_comp, blue_comp) = best.expect("at least the empty pair");
    let certify = |color: Color, comp: &Vec<Triple>| -> Result<ConnectedMatching, OracleError> {
        let mine: Vec<Triple> = matching.iter().filter(|t| col.color_of(t) == Some(color)).copied().collect();
        if mine.is_empty() {
            return Ok(ConnectedMatching::empty(color));
        }
        let g = Hypergraph3::with_vertices(h.n(), h.vertices().clone(), comp.iter().copied())
            .map_err(MatcherError::from)?;
        Ok(ConnectedMatching::certify(color, mine, None, &g)?)
    };
    let red = certify(Color::Red, red_comp)?;
    let blue = certify(Color::Blue, blue_comp)?;
    let mut used = red.vertices(h.n());
    used.union_with(&blue.vertices(h.n()));
    let witness = CoverResult {
        n: h.n(),
        gamma,
        covered: 3 * size,
        uncovered: h.vertices().difference(&used).iter().collect(),
        red_matching: red,
        blue_matching: blue,
        trace: Vec::new(),
    };
    Ok(OracleReport {
        optimum: 3 * size,
        witness,
        instances_searched: searched,
    })
}

/// Calls `f` on every permutation of `items[k..]` in place.
fn permute(items: &mut Vec<Vertex>, k: usize, f: &mut dyn FnMut(&[Vertex]) -> bool) -> bool {
    if k == items.len() {
        return f(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        if permute(items, k + 1, f) {
            items.swap(k, i);
            return true;
        }
        items.swap(k, i);
    }
    false
}

/// First cyclic order of `set` (smallest vertex first, second vertex below
/// the last) whose consecutive triples all have colour `color`.
fn cycle_on(set: &[Vertex], col: &Coloring, color: Color, searched: &mut u64) -> Option<Vec<Vertex>> {
    if set.is_empty() {
        return Some(Vec::new());
    }
    if set.len() < 4 {
        return None;
    }
    let mut rest = set[1..].to_vec();
    let mut found = None;
    permute(&mut rest, 0, &mut |perm| {
        if perm[0] > perm[perm.len() - 1] {
            return false;
        }
        *searched += 1;
        let mut order = Vec::with_capacity(set.len());
        order.push(set[0]);
        order.extend_from_slice(perm);
        let l = order.len();
        let ok = (0..l).all(|i| {
            let t = Triple::new(order[i], order[(i + 1) % l], order[(i + 2) % l]).expect("distinct");
            col.color_of(&t) == Some(color)
        });
        if ok {
            found = Some(order);
        }
        ok
    });
    found
}

/// Fewest uncovered vertices over all disjoint red/blue tight cycle pairs
/// with the given parities, or `None` when no pair is admissible.
pub fn oracle_cycle_pair(
    col: &Coloring,
    parity_red: Parity,
    parity_blue: Parity,
) -> Result<Option<OracleReport<CyclePair>>, OracleError> {
    let h = col.host();
    if h.n() > CYCLE_CAP {
        return Err(OracleError::TooLarge { n: h.n(), cap: CYCLE_CAP });
    }
    let verts: Vec<Vertex> = h.vertices().iter().collect();
    let m = verts.len();
    let mut searched = 0u64;
    let subset = |mask: usize| -> Vec<Vertex> { (0..m).filter(|i| mask >> i & 1 == 1).map(|i| verts[i]).collect() };
    let mut cycles: [Vec<Option<Vec<Vertex>>>; 2] = [Vec::new(), Vec::new()];
    for (color, parity) in [(Color::Red, parity_red), (Color::Blue, parity_blue)] {
        cycles[color as usize] = (0..1usize << m)
            .map(|mask| {
                let set = subset(mask);
                if parity.admits(set.len()) {
                    cycle_on(&set, col, color, &mut searched)
                } else {
                    None
                }
            })
            .collect();
    }
    let mut best: Option<(usize, usize, usize)> = None;
    for r in 0..1usize << m {
        if cycles[0][r].is_none() {
            continue;
        }
        for b in 0..1usize << m {
            if r & b != 0 || cycles[1][b].is_none() {
                continue;
            }
            let unc = m - (r | b).count_ones() as usize;
            if best.map_or(true, |(u, _, _)| unc < u) {
                best = Some((unc, r, b));
            }
        }
    }
    Ok(best.map(|(unc, r, b)| OracleReport {
        optimum: unc,
        witness: CyclePair {
            red: TightCycle::new(cycles[0][r].clone().unwrap()),
            blue: TightCycle::new(cycles[1][b].clone().unwrap()),
            uncovered: subset(((1 << m) - 1) ^ (r | b)),
        },
        instances_searched: searched,
    }))
}

/// Whether `h` has a perfect matching on its vertex set, by a table over all
/// vertex subsets.
pub fn oracle_perfect_matching(h: &Hypergraph3) -> Result<bool, OracleError> {
    let verts: Vec<Vertex> = h.vertices().iter().collect();
    let m = verts.len();
    if m % 3 != 0 {
        return Err(OracleError::Precondition(format!("{m} vertices is not a multiple of three")));
    }
    if m > PERFECT_MATCHING_CAP {
        return Err(OracleError::TooLarge { n: m, cap: PERFECT_MATCHING_CAP });
    }
    let mut index = vec![usize::MAX; h.n()];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let edge_masks: Vec<usize> = h
        .edges()
        .iter()
        .map(|t| t.vertices().iter().fold(0usize, |acc, &v| acc | 1 << index[v]))
        .collect();
    let mut ok = vec![false; 1 << m];
    ok[0] = true;
    for mask in 1..1usize << m {
        if mask.count_ones() % 3 != 0 {
            continue;
        }
        ok[mask] = edge_masks.iter().any(|&e| mask & e == e && ok[mask ^ e]);
    }
    Ok(ok[(1 << m) - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitSet;
    use crate::matcher::verify_cover;

    fn mono(n: usize) -> Coloring {
        Coloring::monochromatic(Hypergraph3::complete(n), Color::Red)
    }

    #[test]
    fn matching_cover_on_complete() {
        for (n, want) in [(6, 6), (7, 6), (9, 9)] {
            let col = mono(n);
            let r = oracle_matching_cover(&col, 1e-3).unwrap();
            assert_eq!(r.optimum, want);
            assert!(verify_cover(&r.witness, col.host(), &col).valid);
        }
        assert!(matches!(
            oracle_matching_cover(&mono(11), 1e-3),
            Err(OracleError::TooLarge { n: 11, cap: 10 })
        ));
    }

    #[test]
    fn matching_cover_respects_components() {
        // Two disjoint red edges in different components: only one counts.
        let h = Hypergraph3::new(6, [Triple::of(0, 1, 2), Triple::of(3, 4, 5)]).unwrap();
        let col = Coloring::monochromatic(h.clone(), Color::Red);
        assert_eq!(oracle_matching_cover(&col, 1e-3).unwrap().optimum, 3);
        let mixed = Coloring::from_fn(h, |t| if t.min_vertex() == 0 { Color::Red } else { Color::Blue });
        assert_eq!(oracle_matching_cover(&mixed, 1e-3).unwrap().optimum, 6);
    }

    #[test]
    fn cycle_pair_examples() {
        let r = oracle_cycle_pair(&mono(6), Parity::Any, Parity::Any).unwrap().unwrap();
        assert_eq!(r.optimum, 0);
        let r = oracle_cycle_pair(&mono(7), Parity::Even, Parity::Any).unwrap().unwrap();
        assert_eq!(r.optimum, 1);
        assert_eq!(r.witness.red.len(), 6);
        assert!(oracle_cycle_pair(&mono(6), Parity::Any, Parity::Odd).unwrap().is_none());
        assert!(oracle_cycle_pair(&mono(9), Parity::Any, Parity::Any).is_err());
    }

    #[test]
    fn perfect_matching_examples() {
        assert!(oracle_perfect_matching(&Hypergraph3::complete(6)).unwrap());
        let no5 = Hypergraph3::complete(6).filter_edges(|t| !t.contains(5));
        assert!(!oracle_perfect_matching(&no5).unwrap());
        assert!(oracle_perfect_matching(&Hypergraph3::complete(7)).is_err());
        let none = Hypergraph3::with_vertices(3, BitSet::new(3), []).unwrap();
        assert!(oracle_perfect_matching(&none).unwrap());
    }

    #[test]
    fn closure_components_match_examples() {
        let edges = [Triple::of(0, 1, 2), Triple::of(1, 2, 3), Triple::of(5, 6, 7)];
        assert_eq!(components_by_closure(&edges), vec![vec![0, 1], vec![2]]);
    }
}
