//! 3-uniform hypergraphs, 2-colourings and tight connectivity.
//!
//! Edges are [`Triple`]s kept in colex order. Every hypergraph carries the
//! link `N(x, y)` of each unordered pair as a bitset, so shadow, activity and
//! neighbourhood queries are word operations.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitSet;

pub type Vertex = usize;

/// Unordered pair stored as `(min, max)`.
pub type Pair = (Vertex, Vertex);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("triple has repeated vertex: ({0}, {1}, {2})")]
    DegenerateTriple(Vertex, Vertex, Vertex),
    #[error("triple ({0}, {1}, {2}) is not in ascending order")]
    UnsortedTriple(Vertex, Vertex, Vertex),
    #[error("vertex {vertex} out of range for hypergraph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("edge {0} uses a vertex outside the vertex set")]
    EdgeOutsideVertexSet(Triple),
    #[error("invalid pair: x = y = {0}")]
    InvalidPair(Vertex),
    #[error("{0} is not an edge of the hypergraph")]
    NotAnEdge(Triple),
    #[error("colouring has {colors} entries for {edges} edges")]
    ColoringLength { colors: usize, edges: usize },
}

/// `binom(n, k)` for the small `k` used here.
pub fn binom(n: u64, k: u64) -> u64 {
    match k {
        0 => 1,
        1 => n,
        2 => {
            if n < 2 {
                0
            } else {
                n * (n - 1) / 2
            }
        }
        3 => {
            if n < 3 {
                0
            } else {
                n * (n - 1) * (n - 2) / 6
            }
        }
        _ => {
            if k > n {
                return 0;
            }
            let mut r: u64 = 1;
            for i in 0..k {
                r = r * (n - i) / (i + 1);
            }
            r
        }
    }
}

/// Index of the unordered pair `{x, y}` in colex order.
#[inline]
pub fn pair_index(x: Vertex, y: Vertex) -> usize {
    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
    hi * (hi - 1) / 2 + lo
}

#[inline]
pub fn ordered_pair(x: Vertex, y: Vertex) -> Pair {
    if x < y {
        (x, y)
    } else {
        (y, x)
    }
}

/// A 3-element vertex set in canonical form `a < b < c`.
///
/// `Ord` follows colex order: compare `c`, then `b`, then `a`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "[Vertex; 3]", try_from = "[Vertex; 3]")]
pub struct Triple {
    a: Vertex,
    b: Vertex,
    c: Vertex,
}

impl Triple {
    /// Builds the triple `{x, y, z}` in any order.
    pub fn new(x: Vertex, y: Vertex, z: Vertex) -> Result<Self, HypergraphError> {
        let mut v = [x, y, z];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(HypergraphError::DegenerateTriple(x, y, z));
        }
        Ok(Self {
            a: v[0],
            b: v[1],
            c: v[2],
        })
    }

    /// Builds a triple from already strictly increasing coordinates.
    pub fn from_sorted(a: Vertex, b: Vertex, c: Vertex) -> Result<Self, HypergraphError> {
        if a < b && b < c {
            Ok(Self { a, b, c })
        } else if a == b || b == c || a == c {
            Err(HypergraphError::DegenerateTriple(a, b, c))
        } else {
            Err(HypergraphError::UnsortedTriple(a, b, c))
        }
    }

    /// Panicking constructor for literals in code and tests.
    pub fn of(x: Vertex, y: Vertex, z: Vertex) -> Self {
        Self::new(x, y, z).expect("distinct vertices")
    }

    #[inline]
    pub fn vertices(&self) -> [Vertex; 3] {
        [self.a, self.b, self.c]
    }

    #[inline]
    pub fn min_vertex(&self) -> Vertex {
        self.a
    }

    #[inline]
    pub fn max_vertex(&self) -> Vertex {
        self.c
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.a == v || self.b == v || self.c == v
    }

    /// The three pairs of the triple together with the vertex left out:
    /// `(ab, c)`, `(ac, b)`, `(bc, a)`.
    #[inline]
    pub fn pairs_with_rest(&self) -> [(Pair, Vertex); 3] {
        [
            ((self.a, self.b), self.c),
            ((self.a, self.c), self.b),
            ((self.b, self.c), self.a),
        ]
    }

    #[inline]
    pub fn pairs(&self) -> [Pair; 3] {
        [(self.a, self.b), (self.a, self.c), (self.b, self.c)]
    }

    #[inline]
    pub fn intersection_len(&self, other: &Triple) -> usize {
        other.vertices().iter().filter(|&&v| self.contains(v)).count()
    }

    #[inline]
    pub fn is_disjoint(&self, other: &Triple) -> bool {
        self.intersection_len(other) == 0
    }

    /// Position of the triple in the colex enumeration of all triples.
    #[inline]
    pub fn colex_index(&self) -> u64 {
        binom(self.c as u64, 3) + binom(self.b as u64, 2) + self.a as u64
    }

    /// Inverse of [`Triple::colex_index`].
    pub fn from_colex(index: u64) -> Self {
        let c = largest_below(index, 3);
        let rest = index - binom(c, 3);
        let b = largest_below(rest, 2);
        let a = rest - binom(b, 2);
        Self {
            a: a as Vertex,
            b: b as Vertex,
            c: c as Vertex,
        }
    }

    pub fn max_coordinate_below(&self, n: usize) -> bool {
        self.c < n
    }
}

/// Largest `m` with `binom(m, k) <= value`.
fn largest_below(value: u64, k: u64) -> u64 {
    // Float estimate, then fix up exactly.
    let est = match k {
        3 => ((6.0 * value as f64).cbrt()) as u64 + 2,
        _ => ((2.0 * value as f64).sqrt()) as u64 + 2,
    };
    let mut m = est.max(k - 1);
    while binom(m, k) > value {
        m -= 1;
    }
    while binom(m + 1, k) <= value {
        m += 1;
    }
    m
}

pub fn colex_index(t: &Triple) -> u64 {
    t.colex_index()
}

pub fn colex_inverse(index: u64) -> Triple {
    Triple::from_colex(index)
}

impl Ord for Triple {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.c, self.b, self.a).cmp(&(other.c, other.b, other.a))
    }
}

impl PartialOrd for Triple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Triple> for [Vertex; 3] {
    fn from(t: Triple) -> Self {
        t.vertices()
    }
}

impl TryFrom<[Vertex; 3]> for Triple {
    type Error = HypergraphError;

    fn try_from(v: [Vertex; 3]) -> Result<Self, Self::Error> {
        Triple::from_sorted(v[0], v[1], v[2])
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.a, self.b, self.c)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.a, self.b, self.c)
    }
}

/// True iff `e` and `f` share exactly two vertices.
#[inline]
pub fn tight_adjacent(e: &Triple, f: &Triple) -> bool {
    e.intersection_len(f) == 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub const BOTH: [Color; 2] = [Color::Red, Color::Blue];

    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

/// Edge sequence in which consecutive edges share exactly two vertices.
/// Repeated edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PseudoPath(pub Vec<Triple>);

impl PseudoPath {
    pub fn edges(&self) -> &[Triple] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Non-empty and every consecutive pair is tightly adjacent.
    pub fn is_valid(&self) -> bool {
        !self.0.is_empty() && self.0.windows(2).all(|w| tight_adjacent(&w[0], &w[1]))
    }
}

/// Edge membership storage: a bitmap over colex indices for near-complete
/// hypergraphs, otherwise binary search in the sorted edge list.
#[derive(Clone)]
enum EdgeStore {
    Dense(BitSet),
    Sparse,
}

/// Fraction of all triples above which membership uses the dense bitmap.
const DENSE_THRESHOLD: f64 = 0.25;

/// A 3-uniform hypergraph on a vertex set `V ⊆ {0, .., n-1}`.
#[derive(Clone)]
pub struct Hypergraph3 {
    n: usize,
    vertices: BitSet,
    edges: Vec<Triple>,
    store: EdgeStore,
    links: Vec<BitSet>,
}

impl fmt::Debug for Hypergraph3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph3")
            .field("n", &self.n)
            .field("vertices", &self.vertices)
            .field("edges", &self.edges)
            .finish()
    }
}

impl PartialEq for Hypergraph3 {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Hypergraph3 {}

impl Hypergraph3 {
    /// Hypergraph on all of `{0, .., n-1}`.
    pub fn new<I: IntoIterator<Item = Triple>>(n: usize, edges: I) -> Result<Self, HypergraphError> {
        Self::with_vertices(n, BitSet::full(n), edges)
    }

    /// Hypergraph on an explicit vertex set; every edge must lie inside it.
    pub fn with_vertices<I: IntoIterator<Item = Triple>>(
        n: usize,
        vertices: BitSet,
        edges: I,
    ) -> Result<Self, HypergraphError> {
        assert_eq!(vertices.capacity(), n, "vertex set capacity must equal n");
        let mut list: Vec<Triple> = edges.into_iter().collect();
        for t in &list {
            if t.max_vertex() >= n {
                return Err(HypergraphError::VertexOutOfRange {
                    vertex: t.max_vertex(),
                    n,
                });
            }
            if !t.vertices().iter().all(|&v| vertices.contains(v)) {
                return Err(HypergraphError::EdgeOutsideVertexSet(*t));
            }
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted_unchecked(n, vertices, list))
    }

    /// `edges` must be sorted, deduplicated and inside `vertices`.
    pub(crate) fn from_sorted_unchecked(n: usize, vertices: BitSet, edges: Vec<Triple>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let total = binom(n as u64, 3);
        let store = if total > 0 && edges.len() as f64 >= DENSE_THRESHOLD * total as f64 {
            let mut bits = BitSet::new(total as usize);
            for t in &edges {
                bits.insert(t.colex_index() as usize);
            }
            EdgeStore::Dense(bits)
        } else {
            EdgeStore::Sparse
        };
        let mut links = vec![BitSet::new(n); binom(n as u64, 2) as usize];
        for t in &edges {
            for ((x, y), z) in t.pairs_with_rest() {
                links[pair_index(x, y)].insert(z);
            }
        }
        Self {
            n,
            vertices,
            edges,
            store,
            links,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unchecked(n, BitSet::full(n), Vec::new())
    }

    /// The complete hypergraph `K_n^(3)`.
    pub fn complete(n: usize) -> Self {
        let total = binom(n as u64, 3);
        let edges = (0..total).map(Triple::from_colex).collect();
        Self::from_sorted_unchecked(n, BitSet::full(n), edges)
    }

    /// Size of the id universe `{0, .., n-1}`.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> &BitSet {
        &self.vertices
    }

    /// `|V(H)|`.
    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Edges in colex order.
    #[inline]
    pub fn edges(&self) -> &[Triple] {
        &self.edges
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.store, EdgeStore::Dense(_))
    }

    #[inline]
    pub fn contains(&self, t: &Triple) -> bool {
        if t.max_vertex() >= self.n {
            return false;
        }
        match &self.store {
            EdgeStore::Dense(bits) => bits.contains(t.colex_index() as usize),
            EdgeStore::Sparse => self.edges.binary_search(t).is_ok(),
        }
    }

    /// Position of `t` in [`Hypergraph3::edges`].
    #[inline]
    pub fn edge_index(&self, t: &Triple) -> Option<usize> {
        self.edges.binary_search(t).ok()
    }

    /// `N(x, y) = { z : xyz ∈ H }`.
    pub fn link(&self, x: Vertex, y: Vertex) -> Result<&BitSet, HypergraphError> {
        if x == y {
            return Err(HypergraphError::InvalidPair(x));
        }
        for v in [x, y] {
            if v >= self.n {
                return Err(HypergraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        Ok(&self.links[pair_index(x, y)])
    }

    /// Link lookup for callers that already know `x != y`, both in range.
    #[inline]
    pub fn link_of(&self, x: Vertex, y: Vertex) -> &BitSet {
        &self.links[pair_index(x, y)]
    }

    #[inline]
    pub fn is_active(&self, x: Vertex, y: Vertex) -> bool {
        x != y && x < self.n && y < self.n && !self.links[pair_index(x, y)].is_empty()
    }

    /// The shadow `∂H`: every pair contained in some edge, in colex order.
    pub fn shadow(&self) -> Vec<Pair> {
        let mut out = Vec::new();
        for y in 1..self.n {
            for x in 0..y {
                if !self.links[pair_index(x, y)].is_empty() {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Pairs with non-empty link. Coincides with the shadow.
    pub fn active_pairs(&self) -> Vec<Pair> {
        self.shadow()
    }

    /// `N(x) = { y : xy ∈ ∂H }`.
    pub fn neighbourhood(&self, x: Vertex) -> BitSet {
        let mut out = BitSet::new(self.n);
        for y in 0..self.n {
            if y != x && !self.links[pair_index(x, y)].is_empty() {
                out.insert(y);
            }
        }
        out
    }

    pub fn degree(&self, x: Vertex) -> usize {
        self.edges.iter().filter(|t| t.contains(x)).count()
    }

    /// Vertices lying in at least one edge.
    pub fn covered_vertices(&self) -> BitSet {
        let mut out = BitSet::new(self.n);
        for t in &self.edges {
            for v in t.vertices() {
                out.insert(v);
            }
        }
        out
    }

    /// Sub-hypergraph induced on `keep ∩ V(H)`.
    pub fn induced(&self, keep: &BitSet) -> Hypergraph3 {
        let vertices = self.vertices.intersection(keep);
        let edges = self
            .edges
            .iter()
            .filter(|t| t.vertices().iter().all(|&v| vertices.contains(v)))
            .copied()
            .collect();
        Self::from_sorted_unchecked(self.n, vertices, edges)
    }

    /// Same vertex set, edges filtered by `keep`.
    pub fn filter_edges<F: FnMut(&Triple) -> bool>(&self, mut keep: F) -> Hypergraph3 {
        let edges = self.edges.iter().filter(|t| keep(t)).copied().collect();
        Self::from_sorted_unchecked(self.n, self.vertices.clone(), edges)
    }

    /// Same edges on a smaller vertex set (vertices outside every edge may go).
    pub fn with_vertex_set(&self, vertices: BitSet) -> Result<Hypergraph3, HypergraphError> {
        Hypergraph3::with_vertices(self.n, vertices, self.edges.iter().copied())
    }

    /// Edges tightly adjacent to `t`, ascending in colex order.
    pub fn tight_neighbours(&self, t: &Triple) -> Vec<Triple> {
        let mut out = Vec::new();
        for ((x, y), rest) in t.pairs_with_rest() {
            for z in self.link_of(x, y) {
                if z != rest {
                    out.push(Triple::of(x, y, z));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Tight components of the edge set.
    ///
    /// Classes are numbered by their colex-smallest edge and each class is
    /// listed in colex order.
    pub fn connected_components(&self) -> Components {
        let m = self.edges.len();
        let mut dsu = DisjointSets::new(m);
        for y in 1..self.n {
            for x in 0..y {
                let link = &self.links[pair_index(x, y)];
                let mut first: Option<usize> = None;
                for z in link {
                    let idx = self
                        .edge_index(&Triple::of(x, y, z))
                        .expect("link consistent with edges");
                    match first {
                        None => first = Some(idx),
                        Some(f) => dsu.union(f, idx),
                    }
                }
            }
        }
        let mut class_of = vec![usize::MAX; m];
        let mut root_class = vec![usize::MAX; m];
        let mut classes: Vec<Vec<Triple>> = Vec::new();
        for (i, t) in self.edges.iter().enumerate() {
            let r = dsu.find(i);
            if root_class[r] == usize::MAX {
                root_class[r] = classes.len();
                classes.push(Vec::new());
            }
            class_of[i] = root_class[r];
            classes[root_class[r]].push(*t);
        }
        Components { class_of, classes }
    }

    /// Shortest pseudo-path from `e` to `f`, or `None` if they lie in
    /// different components. Neighbours are expanded in colex order.
    pub fn connecting_path(&self, e: &Triple, f: &Triple) -> Result<Option<PseudoPath>, HypergraphError> {
        let start = self.edge_index(e).ok_or(HypergraphError::NotAnEdge(*e))?;
        let goal = self.edge_index(f).ok_or(HypergraphError::NotAnEdge(*f))?;
        if start == goal {
            return Ok(Some(PseudoPath(vec![*e])));
        }
        let m = self.edges.len();
        let mut parent = vec![u32::MAX; m];
        let mut seen = BitSet::new(m);
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            for nb in self.tight_neighbours(&self.edges[cur]) {
                let idx = self.edge_index(&nb).expect("neighbour is an edge");
                if !seen.insert(idx) {
                    continue;
                }
                parent[idx] = cur as u32;
                if idx == goal {
                    let mut path = vec![self.edges[goal]];
                    let mut at = goal;
                    while at != start {
                        at = parent[at] as usize;
                        path.push(self.edges[at]);
                    }
                    path.reverse();
                    return Ok(Some(PseudoPath(path)));
                }
                queue.push_back(idx);
            }
        }
        Ok(None)
    }
}

/// Partition of an edge set into tight components.
#[derive(Debug, Clone)]
pub struct Components {
    class_of: Vec<usize>,
    classes: Vec<Vec<Triple>>,
}

impl Components {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<Triple>] {
        &self.classes
    }

    /// Class of the `i`-th edge of the hypergraph the components came from.
    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_of(&self, h: &Hypergraph3, t: &Triple) -> Option<usize> {
        h.edge_index(t).map(|i| self.class_of[i])
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            Ordering::Less => self.parent[ra] = rb,
            Ordering::Greater => self.parent[rb] = ra,
            Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// A red/blue assignment on exactly the edges of a host hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    host: Hypergraph3,
    colors: Vec<Color>,
}

impl Coloring {
    /// `colors[i]` is the colour of `host.edges()[i]`.
    pub fn new(host: Hypergraph3, colors: Vec<Color>) -> Result<Self, HypergraphError> {
        if colors.len() != host.edge_count() {
            return Err(HypergraphError::ColoringLength {
                colors: colors.len(),
                edges: host.edge_count(),
            });
        }
        Ok(Self { host, colors })
    }

    pub fn from_fn<F: FnMut(&Triple) -> Color>(host: Hypergraph3, mut f: F) -> Self {
        let colors = host.edges().iter().map(&mut f).collect();
        Self { host, colors }
    }

    pub fn monochromatic(host: Hypergraph3, color: Color) -> Self {
        let colors = vec![color; host.edge_count()];
        Self { host, colors }
    }

    pub fn host(&self) -> &Hypergraph3 {
        &self.host
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color_of(&self, t: &Triple) -> Option<Color> {
        self.host.edge_index(t).map(|i| self.colors[i])
    }

    /// True when the host is `K_n^(3)` on all `n` ids.
    pub fn is_complete(&self) -> bool {
        self.host.vertex_count() == self.host.n()
            && self.host.edge_count() as u64 == binom(self.host.n() as u64, 3)
    }

    /// `H_red` or `H_blue`, on the host's vertex set.
    pub fn subgraph(&self, color: Color) -> Hypergraph3 {
        let edges = self
            .host
            .edges()
            .iter()
            .zip(&self.colors)
            .filter(|(_, &c)| c == color)
            .map(|(t, _)| *t)
            .collect();
        Hypergraph3::from_sorted_unchecked(self.host.n(), self.host.vertices().clone(), edges)
    }

    /// Colouring inherited by a sub-hypergraph of the host.
    pub fn restrict(&self, sub: Hypergraph3) -> Result<Coloring, HypergraphError> {
        let mut colors = Vec::with_capacity(sub.edge_count());
        for t in sub.edges() {
            colors.push(self.color_of(t).ok_or(HypergraphError::NotAnEdge(*t))?);
        }
        Ok(Coloring { host: sub, colors })
    }

    pub fn with_color_of(&self, t: &Triple, color: Color) -> Result<Coloring, HypergraphError> {
        let i = self.host.edge_index(t).ok_or(HypergraphError::NotAnEdge(*t))?;
        let mut out = self.clone();
        out.colors[i] = color;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize, edges: &[[usize; 3]]) -> Hypergraph3 {
        Hypergraph3::new(n, edges.iter().map(|e| Triple::of(e[0], e[1], e[2]))).unwrap()
    }

    #[test]
    fn colex_small_values() {
        assert_eq!(Triple::of(0, 1, 2).colex_index(), 0);
        // colex order on 4 vertices: 012, 013, 023, 123
        let order: Vec<u64> = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
            .iter()
            .map(|v| Triple::of(v[0], v[1], v[2]).colex_index())
            .collect();
        assert_eq!(order, vec![0, 1, 2, 3]);
        assert_eq!(Triple::from_colex(3), Triple::of(1, 2, 3));
    }

    #[test]
    fn colex_roundtrip_n10() {
        for i in 0..binom(10, 3) {
            assert_eq!(Triple::from_colex(i).colex_index(), i);
        }
    }

    #[test]
    fn triple_rejects_repeats_and_unsorted() {
        assert_eq!(
            Triple::new(1, 1, 2),
            Err(HypergraphError::DegenerateTriple(1, 1, 2))
        );
        assert!(matches!(
            Triple::from_sorted(2, 1, 3),
            Err(HypergraphError::UnsortedTriple(..))
        ));
        let parsed: Result<Triple, _> = serde_json::from_str("[3,1,2]");
        assert!(parsed.is_err());
    }

    #[test]
    fn shadow_examples() {
        assert_eq!(h(3, &[[0, 1, 2]]).shadow(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(Hypergraph3::empty(5).shadow().is_empty());
        assert_eq!(Hypergraph3::complete(5).shadow().len(), 10);
    }

    #[test]
    fn link_examples() {
        let g = h(4, &[[0, 1, 2], [0, 1, 3]]);
        assert_eq!(g.link(0, 1).unwrap().iter().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(g.link(1, 0).unwrap().iter().collect::<Vec<_>>(), vec![2, 3]);
        assert!(g.link(2, 3).unwrap().is_empty());
        assert_eq!(g.link(1, 1), Err(HypergraphError::InvalidPair(1)));
        let k6 = Hypergraph3::complete(6);
        assert_eq!(k6.link(2, 4).unwrap().iter().collect::<Vec<_>>(), vec![0, 1, 3, 5]);
    }

    #[test]
    fn active_pairs_examples() {
        assert_eq!(h(3, &[[0, 1, 2]]).active_pairs().len(), 3);
        assert!(Hypergraph3::empty(4).active_pairs().is_empty());
    }

    #[test]
    fn tight_adjacency_examples() {
        assert!(tight_adjacent(&Triple::of(0, 1, 2), &Triple::of(1, 2, 3)));
        assert!(!tight_adjacent(&Triple::of(0, 1, 2), &Triple::of(0, 1, 2)));
        assert!(!tight_adjacent(&Triple::of(0, 1, 2), &Triple::of(2, 3, 4)));
    }

    #[test]
    fn components_examples() {
        let k5 = Hypergraph3::complete(5);
        assert_eq!(k5.connected_components().sizes(), vec![10]);
        let two = h(6, &[[0, 1, 2], [3, 4, 5]]);
        assert_eq!(two.connected_components().sizes(), vec![1, 1]);
        let mixed = h(8, &[[0, 1, 2], [1, 2, 3], [5, 6, 7]]);
        assert_eq!(mixed.connected_components().sizes(), vec![2, 1]);
    }

    #[test]
    fn connecting_path_examples() {
        let g = h(8, &[[0, 1, 2], [1, 2, 3], [5, 6, 7]]);
        let e = Triple::of(0, 1, 2);
        assert_eq!(g.connecting_path(&e, &e).unwrap().unwrap().len(), 1);
        let p = g.connecting_path(&e, &Triple::of(1, 2, 3)).unwrap().unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.is_valid());
        assert_eq!(g.connecting_path(&e, &Triple::of(5, 6, 7)).unwrap(), None);
        assert_eq!(
            g.connecting_path(&e, &Triple::of(0, 1, 3)),
            Err(HypergraphError::NotAnEdge(Triple::of(0, 1, 3)))
        );
    }

    #[test]
    fn connecting_path_is_shortest_in_k6() {
        let k6 = Hypergraph3::complete(6);
        let p = k6
            .connecting_path(&Triple::of(0, 1, 2), &Triple::of(3, 4, 5))
            .unwrap()
            .unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.is_valid());
    }

    #[test]
    fn dense_and_sparse_storage_agree() {
        let k7 = Hypergraph3::complete(7);
        assert!(k7.is_dense());
        let sparse = h(7, &[[0, 1, 2], [2, 5, 6]]);
        assert!(!sparse.is_dense());
        assert!(sparse.contains(&Triple::of(2, 5, 6)));
        assert!(!sparse.contains(&Triple::of(2, 4, 6)));
        assert!(k7.contains(&Triple::of(2, 4, 6)));
    }

    #[test]
    fn out_of_range_edge_rejected() {
        let err = Hypergraph3::new(3, [Triple::of(0, 1, 3)]).unwrap_err();
        assert_eq!(err, HypergraphError::VertexOutOfRange { vertex: 3, n: 3 });
    }

    #[test]
    fn coloring_subgraphs_partition_host() {
        let k5 = Hypergraph3::complete(5);
        let col = Coloring::from_fn(k5.clone(), |t| {
            if t.contains(0) {
                Color::Red
            } else {
                Color::Blue
            }
        });
        let red = col.subgraph(Color::Red);
        let blue = col.subgraph(Color::Blue);
        assert_eq!(red.edge_count() + blue.edge_count(), k5.edge_count());
        assert_eq!(red.edge_count(), 6);
        assert!(red.edges().iter().all(|t| !blue.contains(t)));
        assert_eq!(col.color_of(&Triple::of(1, 2, 3)), Some(Color::Blue));
    }
}
