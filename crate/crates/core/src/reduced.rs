//! Triads, triangle densities and the majority-coloured reduced hypergraph.
//!
//! All densities are exact [`Ratio`]s of triangle counts.

use std::collections::{BTreeMap, BTreeSet};

pub use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{Color, Coloring, Hypergraph3, HypergraphError, Pair, Triple, Vertex};

/// Largest class size [`is_regular_pair`] enumerates.
pub const REGULARITY_CHECK_CAP: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReducedError {
    #[error("classes {0} and {1} share vertex {2}")]
    ClassesOverlap(usize, usize, Vertex),
    #[error("pair ({0}, {1}) does not join classes {2} and {3}")]
    PairOutsideClasses(Vertex, Vertex, usize, usize),
    #[error("density undefined: no triangles")]
    UndefinedDensity,
    #[error("triads in a tuple must share their classes")]
    ClassMismatch,
    #[error("class index {0} out of range for {1} classes")]
    ClassIndex(usize, usize),
    #[error("regularity check limited to classes of at most {REGULARITY_CHECK_CAP} vertices")]
    TooLarge,
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// Tripartite graph on classes `V_i, V_j, V_k` with bipartite parts
/// `P^{ij}, P^{ik}, P^{jk}`. Each stored pair is `(x, y)` with `x` in the
/// first class of its part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triad {
    classes: [Vec<Vertex>; 3],
    bip: [BTreeSet<Pair>; 3],
}

const PARTS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

impl Triad {
    /// `bip` lists `P^{ij}`, `P^{ik}`, `P^{jk}`; pairs may come in either
    /// orientation.
    pub fn new(classes: [Vec<Vertex>; 3], bip: [Vec<Pair>; 3]) -> Result<Self, ReducedError> {
        let mut classes = classes;
        for c in &mut classes {
            c.sort_unstable();
            c.dedup();
        }
        for (a, b) in PARTS {
            if let Some(v) = classes[a].iter().find(|v| classes[b].binary_search(v).is_ok()) {
                return Err(ReducedError::ClassesOverlap(a, b, *v));
            }
        }
        let mut parts: [BTreeSet<Pair>; 3] = Default::default();
        for (slot, ((a, b), pairs)) in PARTS.iter().zip(bip).enumerate() {
            for (x, y) in pairs {
                let inside = |v: Vertex, c: usize| classes[c].binary_search(&v).is_ok();
                let pair = if inside(x, *a) && inside(y, *b) {
                    (x, y)
                } else if inside(y, *a) && inside(x, *b) {
                    (y, x)
                } else {
                    return Err(ReducedError::PairOutsideClasses(x, y, *a, *b));
                };
                parts[slot].insert(pair);
            }
        }
        Ok(Self { classes, bip: parts })
    }

    /// Triad whose three bipartite graphs are complete.
    pub fn complete(classes: [Vec<Vertex>; 3]) -> Result<Self, ReducedError> {
        let bip = PARTS.map(|(a, b)| {
            let mut out = Vec::new();
            for &x in &classes[a] {
                for &y in &classes[b] {
                    out.push((x, y));
                }
            }
            out
        });
        Self::new(classes, bip)
    }

    pub fn classes(&self) -> &[Vec<Vertex>; 3] {
        &self.classes
    }

    pub fn part(&self, i: usize) -> &BTreeSet<Pair> {
        &self.bip[i]
    }

    fn has(&self, part: usize, x: Vertex, y: Vertex) -> bool {
        self.bip[part].contains(&(x, y))
    }
}

/// `T(P)`: triples `xyz` with `x in V_i, y in V_j, z in V_k` whose three
/// pairs lie in `P`. Colex order.
pub fn triangles(p: &Triad) -> Vec<Triple> {
    let mut out = Vec::new();
    for &(x, y) in p.part(0) {
        for &z in &p.classes[2] {
            if p.has(1, x, z) && p.has(2, y, z) {
                out.push(Triple::of(x, y, z));
            }
        }
    }
    out.sort_unstable();
    out
}

fn ratio_of(h: &Hypergraph3, tris: &[Triple]) -> Result<Ratio<u64>, ReducedError> {
    if tris.is_empty() {
        return Err(ReducedError::UndefinedDensity);
    }
    let hits = tris.iter().filter(|t| h.contains(t)).count() as u64;
    Ok(Ratio::new(hits, tris.len() as u64))
}

/// `|H ∩ T(P)| / |T(P)|`.
pub fn density(h: &Hypergraph3, p: &Triad) -> Result<Ratio<u64>, ReducedError> {
    ratio_of(h, &triangles(p))
}

/// Density over the union of the triangle sets of triads on common classes.
pub fn density_tuple(h: &Hypergraph3, qs: &[Triad]) -> Result<Ratio<u64>, ReducedError> {
    let Some(first) = qs.first() else {
        return Err(ReducedError::UndefinedDensity);
    };
    if qs.iter().any(|q| q.classes != first.classes) {
        return Err(ReducedError::ClassMismatch);
    }
    let union: BTreeSet<Triple> = qs.iter().flat_map(triangles).collect();
    ratio_of(h, &union.into_iter().collect::<Vec<_>>())
}

/// Majority rule: red iff the red density is at least one half.
pub fn majority_color(red_density: Ratio<u64>) -> Color {
    if red_density * 2 >= Ratio::from_integer(1) {
        Color::Red
    } else {
        Color::Blue
    }
}

/// Hypergraph on class indices `[t]`, each edge coloured by majority red
/// density of its triad.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedHypergraph {
    pub coloring: Coloring,
    /// Red density of each edge, aligned with `coloring.host().edges()`.
    pub densities: Vec<Ratio<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityEntry {
    pub edge: Triple,
    pub numerator: u64,
    pub denominator: u64,
}

impl ReducedHypergraph {
    pub fn t(&self) -> usize {
        self.coloring.host().n()
    }

    pub fn density_of(&self, e: &Triple) -> Option<Ratio<u64>> {
        self.coloring.host().edge_index(e).map(|i| self.densities[i])
    }

    pub fn density_entries(&self) -> Vec<DensityEntry> {
        self.coloring
            .host()
            .edges()
            .iter()
            .zip(&self.densities)
            .map(|(e, d)| DensityEntry {
                edge: *e,
                numerator: *d.numer(),
                denominator: *d.denom(),
            })
            .collect()
    }
}

/// Bipartite graphs keyed by class index pairs `(i, j)` with `i < j`.
pub type BipartiteFamily = BTreeMap<(usize, usize), Vec<Pair>>;

/// The triad `P^{ijk}` of classes `i < j < k`; missing pairs are empty.
pub fn triad_of(classes: &[Vec<Vertex>], bip: &BipartiteFamily, i: usize, j: usize, k: usize) -> Result<Triad, ReducedError> {
    let t = classes.len();
    for c in [i, j, k] {
        if c >= t {
            return Err(ReducedError::ClassIndex(c, t));
        }
    }
    let get = |a: usize, b: usize| bip.get(&(a, b)).cloned().unwrap_or_default();
    Triad::new(
        [classes[i].clone(), classes[j].clone(), classes[k].clone()],
        [get(i, j), get(i, k), get(j, k)],
    )
}

/// Edges are `regular` when given, otherwise every class triple whose triad
/// has a triangle. A flagged triple without triangles is an error.
pub fn build_reduced(
    classes: &[Vec<Vertex>],
    bip: &BipartiteFamily,
    h_red: &Hypergraph3,
    regular: Option<&[Triple]>,
) -> Result<ReducedHypergraph, ReducedError> {
    let t = classes.len();
    for (&(i, j), _) in bip.iter() {
        if i >= j || j >= t {
            return Err(ReducedError::ClassIndex(j.max(i), t));
        }
    }
    let candidates: Vec<Triple> = match regular {
        Some(r) => {
            let mut r = r.to_vec();
            r.sort_unstable();
            r.dedup();
            r
        }
        None => (0..crate::hypergraph::binom(t as u64, 3)).map(Triple::from_colex).collect(),
    };
    let mut edges = Vec::new();
    let mut densities = Vec::new();
    for e in candidates {
        let [i, j, k] = e.vertices();
        let triad = triad_of(classes, bip, i, j, k)?;
        match density(h_red, &triad) {
            Ok(d) => {
                edges.push(e);
                densities.push(d);
            }
            Err(ReducedError::UndefinedDensity) if regular.is_none() => {}
            Err(err) => return Err(err),
        }
    }
    let host = Hypergraph3::new(t, edges)?;
    let colors = densities.iter().map(|d| majority_color(*d)).collect();
    Ok(ReducedHypergraph {
        coloring: Coloring::new(host, colors)?,
        densities,
    })
}

/// `(d, eps)`-regularity of the bipartite graph `edges` between `x` and
/// `y`, by enumerating every `X' ⊆ X`, `Y' ⊆ Y` with `|X'| > eps|X|` and
/// `|Y'| > eps|Y|`. With `d = None` the pair's own density is used.
pub fn is_regular_pair(
    x: &[Vertex],
    y: &[Vertex],
    edges: &[Pair],
    d: Option<Ratio<u64>>,
    eps: Ratio<u64>,
) -> Result<bool, ReducedError> {
    if x.len() > REGULARITY_CHECK_CAP || y.len() > REGULARITY_CHECK_CAP {
        return Err(ReducedError::TooLarge);
    }
    if x.is_empty() || y.is_empty() {
        return Ok(true);
    }
    let ix = |v: Vertex| x.iter().position(|&u| u == v);
    let iy = |v: Vertex| y.iter().position(|&u| u == v);
    let mut adj = vec![0u32; x.len()];
    for &(a, b) in edges {
        match (ix(a), iy(b), ix(b), iy(a)) {
            (Some(i), Some(j), _, _) | (_, _, Some(i), Some(j)) => adj[i] |= 1 << j,
            _ => return Err(ReducedError::PairOutsideClasses(a, b, 0, 1)),
        }
    }
    let total: u64 = adj.iter().map(|r| r.count_ones() as u64).sum();
    let d = d.unwrap_or_else(|| Ratio::new(total, (x.len() * y.len()) as u64));
    let big = |size: usize, of: usize| Ratio::from_integer(size as u64) > eps * of as u64;
    for xs in 1u32..1 << x.len() {
        if !big(xs.count_ones() as usize, x.len()) {
            continue;
        }
        for ys in 1u32..1 << y.len() {
            if !big(ys.count_ones() as usize, y.len()) {
                continue;
            }
            let e: u64 = (0..x.len())
                .filter(|i| xs >> i & 1 == 1)
                .map(|i| (adj[i] & ys).count_ones() as u64)
                .sum();
            let dd = Ratio::new(e, (xs.count_ones() * ys.count_ones()) as u64);
            let diff = if dd > d { dd - d } else { d - dd };
            if diff >= eps {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
