use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::partition::PartitionRB;
use super::MatcherError;
use crate::bits::BitSet;
use crate::hypergraph::{binom, pair_index, Color, Coloring, Hypergraph3, Triple, Vertex};

/// True iff one pair of `e` lies in the shadow of the dominant red component
/// and a different pair lies in the shadow of the dominant blue component.
pub fn good_edge(k: &Coloring, part: &PartitionRB, e: &Triple) -> Result<bool, MatcherError> {
    if !k.host().contains(e) {
        return Err(MatcherError::NotAnEdge(*e));
    }
    let red = part.major_graph(Color::Red).ok_or(MatcherError::GoodUndefined)?;
    let blue = part.major_graph(Color::Blue).ok_or(MatcherError::GoodUndefined)?;
    let pairs = e.pairs();
    for (i, &(x, y)) in pairs.iter().enumerate() {
        if !red.is_active(x, y) {
            continue;
        }
        for (j, &(u, v)) in pairs.iter().enumerate() {
            if i != j && blue.is_active(u, v) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// The other-colour component inside the uncovered dominant vertices of
/// `side`, trimmed to a multiple of three vertices.
#[derive(Debug, Clone)]
pub struct Residual {
    /// Colour of the residual's edges (`side.other()`).
    pub color: Color,
    pub anchor: Triple,
    /// `V'`: uncovered vertices of the dominant set of `side`.
    pub residual: BitSet,
    /// `V''`: `V'` minus vertices `w` with `w x` outside the shadow of the
    /// dominant `side` component, `x` the anchor's smallest vertex.
    pub pruned: BitSet,
    /// `B''`, the component of the anchor inside `K[V'']`.
    pub component: Hypergraph3,
    /// `B'`: `B''` minus `trimmed` and incident edges.
    pub trimmed_graph: Hypergraph3,
    /// Largest vertex ids of `B''` removed to reach a multiple of three.
    pub trimmed: Vec<Vertex>,
}

/// Builds `B'` for the branch where the uncovered part of the dominant
/// `side` vertices is large. With `side = Red` this is the blue residual.
pub fn blue_residual_component(
    k: &Coloring,
    part: &PartitionRB,
    covered: &BitSet,
    side: Color,
) -> Result<Residual, MatcherError> {
    let other = side.other();
    let host = k.host();
    let major = part
        .major_graph(side)
        .ok_or_else(|| MatcherError::BranchInapplicable(format!("no dominant {side} component")))?;
    let residual = part.dominant_vertices(side).difference(covered);
    let anchor = host
        .edges()
        .iter()
        .zip(k.colors())
        .find(|(t, &c)| c == other && t.vertices().iter().all(|&v| residual.contains(v)))
        .map(|(t, _)| *t)
        .ok_or_else(|| {
            MatcherError::BranchInapplicable(format!("no {other} edge inside the {side} residual"))
        })?;
    let x = anchor.vertices()[0];
    let mut pruned = residual.clone();
    for w in residual.iter() {
        if w != x && !major.is_active(w, x) {
            pruned.remove(w);
        }
    }
    if !anchor.vertices().iter().all(|&v| pruned.contains(v)) {
        return Err(MatcherError::BranchInapplicable(format!(
            "anchor {anchor} loses a vertex outside the {side} shadow"
        )));
    }
    let inside = k.subgraph(other).induced(&pruned);
    let cc = inside.connected_components();
    let cid = cc.class_of(&inside, &anchor).expect("anchor inside pruned set");
    let class = cc.classes()[cid].clone();
    let component = Hypergraph3::from_sorted_unchecked(host.n(), pruned.clone(), class);
    let span = component.covered_vertices();
    let excess = span.len() % 3;
    let mut trimmed: Vec<Vertex> = span.iter().collect::<Vec<_>>().into_iter().rev().take(excess).collect();
    trimmed.sort_unstable();
    let mut keep = span.clone();
    for &v in &trimmed {
        keep.remove(v);
    }
    let trimmed_graph = component.induced(&keep);
    Ok(Residual {
        color: other,
        anchor,
        residual,
        pruned,
        component,
        trimmed_graph,
        trimmed,
    })
}

/// Minimum vertex degree of `b` against `(5/9 + eta) binom(m, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeCondition {
    pub vertices: usize,
    pub min_degree: usize,
    pub required: f64,
    pub holds: bool,
}

pub fn degree_condition(b: &Hypergraph3, eta: f64) -> DegreeCondition {
    let m = b.vertex_count();
    let mut deg = vec![0usize; b.n()];
    for t in b.edges() {
        for v in t.vertices() {
            deg[v] += 1;
        }
    }
    let min_degree = b.vertices().iter().map(|v| deg[v]).min().unwrap_or(0);
    let required = (5.0 / 9.0 + eta) * binom(m as u64, 2) as f64;
    DegreeCondition {
        vertices: m,
        min_degree,
        required,
        holds: min_degree as f64 >= required,
    }
}

/// Exact perfect matching search: branch on the smallest uncovered vertex,
/// trying its edges in colex order, memoising dead vertex sets.
pub fn perfect_matching_dense(b: &Hypergraph3) -> Result<Option<Vec<Triple>>, MatcherError> {
    match perfect_matching_budgeted(b, u64::MAX)? {
        PmOutcome::Found(m) => Ok(Some(m)),
        PmOutcome::Absent => Ok(None),
        PmOutcome::OutOfBudget => unreachable!("unbounded search"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PmOutcome {
    Found(Vec<Triple>),
    Absent,
    OutOfBudget,
}

/// [`perfect_matching_dense`] stopping after `node_budget` search nodes.
pub fn perfect_matching_budgeted(b: &Hypergraph3, node_budget: u64) -> Result<PmOutcome, MatcherError> {
    let m = b.vertex_count();
    if m % 3 != 0 {
        return Err(MatcherError::NotDivisibleByThree(m));
    }
    let mut search = PmSearch {
        incident: incidence(b),
        dead: HashSet::new(),
        chosen: Vec::with_capacity(m / 3),
        nodes: 0,
        budget: node_budget,
    };
    let mut free = b.vertices().clone();
    Ok(match search.go(&mut free) {
        Some(true) => {
            let mut found = search.chosen;
            found.sort_unstable();
            PmOutcome::Found(found)
        }
        Some(false) => PmOutcome::Absent,
        None => PmOutcome::OutOfBudget,
    })
}

struct PmSearch {
    incident: Vec<Vec<Triple>>,
    dead: HashSet<Vec<u64>>,
    chosen: Vec<Triple>,
    nodes: u64,
    budget: u64,
}

impl PmSearch {
    /// `None` when the budget runs out.
    fn go(&mut self, free: &mut BitSet) -> Option<bool> {
        let Some(v) = free.first() else {
            return Some(true);
        };
        if self.dead.contains(free.as_words()) {
            return Some(false);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        for i in 0..self.incident[v].len() {
            let e = self.incident[v][i];
            if e.vertices().iter().all(|&u| free.contains(u)) {
                for u in e.vertices() {
                    free.remove(u);
                }
                self.chosen.push(e);
                let found = self.go(free);
                if found != Some(false) {
                    return found;
                }
                self.chosen.pop();
                for u in e.vertices() {
                    free.insert(u);
                }
            }
        }
        self.dead.insert(free.as_words().to_vec());
        Some(false)
    }
}

fn incidence(b: &Hypergraph3) -> Vec<Vec<Triple>> {
    let mut inc = vec![Vec::new(); b.n()];
    for t in b.edges() {
        for v in t.vertices() {
            inc[v].push(*t);
        }
    }
    inc
}

/// Maximum matching by memoised search over remaining vertex sets. Gives up
/// after `node_budget` states; the second value is false when the returned
/// matching may not be maximum.
pub fn maximum_matching(b: &Hypergraph3, node_budget: u64) -> (Vec<Triple>, bool) {
    struct Mm {
        incident: Vec<Vec<Triple>>,
        memo: HashMap<Vec<u64>, usize>,
        budget: u64,
        exact: bool,
    }

    impl Mm {
        fn value(&mut self, rest: &mut BitSet) -> usize {
            let Some(v) = rest.first() else {
                return 0;
            };
            if let Some(&known) = self.memo.get(rest.as_words()) {
                return known;
            }
            if self.memo.len() as u64 >= self.budget {
                self.exact = false;
                return 0;
            }
            let cap = rest.len() / 3;
            rest.remove(v);
            let mut best = self.value(rest);
            for i in 0..self.incident[v].len() {
                if best == cap {
                    break;
                }
                let e = self.incident[v][i];
                let [_, y, z] = sorted_others(e, v);
                if rest.contains(y) && rest.contains(z) {
                    rest.remove(y);
                    rest.remove(z);
                    best = best.max(1 + self.value(rest));
                    rest.insert(y);
                    rest.insert(z);
                }
            }
            rest.insert(v);
            self.memo.insert(rest.as_words().to_vec(), best);
            best
        }
    }

    fn sorted_others(e: Triple, v: Vertex) -> [Vertex; 3] {
        let mut o = [v, 0, 0];
        let mut k = 1;
        for u in e.vertices() {
            if u != v {
                o[k] = u;
                k += 1;
            }
        }
        o
    }

    let mut mm = Mm {
        incident: incidence(b),
        memo: HashMap::new(),
        budget: node_budget,
        exact: true,
    };
    let mut rest = b.vertices().clone();
    mm.value(&mut rest);
    let mut out = Vec::new();
    while let Some(v) = rest.first() {
        let here = mm.memo.get(rest.as_words()).copied().unwrap_or(0);
        let mut pick = None;
        if here > 0 {
            for e in &mm.incident[v] {
                let [_, y, z] = sorted_others(*e, v);
                if rest.contains(y) && rest.contains(z) {
                    let mut next = rest.clone();
                    for u in e.vertices() {
                        next.remove(u);
                    }
                    let after = if next.is_empty() { 0 } else { mm.memo.get(next.as_words()).copied().unwrap_or(0) };
                    if after + 1 == here {
                        pick = Some(*e);
                        break;
                    }
                }
            }
        }
        match pick {
            Some(e) => {
                for u in e.vertices() {
                    rest.remove(u);
                }
                out.push(e);
            }
            None => {
                rest.remove(v);
            }
        }
    }
    out.sort_unstable();
    (out, mm.exact)
}

/// Rematching of a dissolved other-colour matching into `side` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dissolution {
    /// New `side`-coloured edges, each containing a pair `u w'` in the
    /// shadow of the dominant `side` component.
    pub rematched: Vec<Triple>,
    pub leftovers: Vec<Vertex>,
}

/// Splits each edge of `dissolve` into the pair of its two smallest ids and
/// its largest id, then greedily (pairs in colex order) matches each pair
/// `uv` to the smallest unused single `w'` such that `uvw'` is a `side`
/// edge of `K` and `uw'` lies in the shadow of the dominant `side` component.
pub fn dissolve_blue(
    k: &Coloring,
    part: &PartitionRB,
    dissolve: &[Triple],
    side: Color,
) -> Result<Dissolution, MatcherError> {
    let major = part
        .major_graph(side)
        .ok_or_else(|| MatcherError::BranchInapplicable(format!("no dominant {side} component")))?;
    let dominant = part.dominant_vertices(side);
    if let Some(bad) = dissolve
        .iter()
        .find(|e| !e.vertices().iter().all(|&v| dominant.contains(v)))
    {
        return Err(MatcherError::BranchInapplicable(format!(
            "edge {bad} is not inside the dominant {side} vertices"
        )));
    }
    let mut pairs: Vec<(Vertex, Vertex)> = Vec::new();
    let mut singles: Vec<Vertex> = Vec::new();
    for e in dissolve {
        let [a, b, c] = e.vertices();
        pairs.push((a, b));
        singles.push(c);
    }
    pairs.sort_unstable_by_key(|&(u, v)| pair_index(u, v));
    singles.sort_unstable();
    let mut used = vec![false; singles.len()];
    let mut rematched = Vec::new();
    let mut leftovers = Vec::new();
    for (u, v) in pairs {
        let pick = singles.iter().enumerate().find(|(i, &w)| {
            !used[*i]
                && k.color_of(&Triple::of(u, v, w)) == Some(side)
                && major.is_active(u, w)
        });
        match pick {
            Some((i, &w)) => {
                used[i] = true;
                rematched.push(Triple::of(u, v, w));
            }
            None => {
                leftovers.push(u);
                leftovers.push(v);
            }
        }
    }
    leftovers.extend(singles.iter().zip(&used).filter(|(_, &u)| !u).map(|(&w, _)| w));
    leftovers.sort_unstable();
    rematched.sort_unstable();
    Ok(Dissolution { rematched, leftovers })
}
