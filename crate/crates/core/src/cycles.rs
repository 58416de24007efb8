//! Tight and loose cycles: verification, exact search for a disjoint
//! red/blue tight cycle pair on small vertex sets, and loose cycles taken
//! from even tight cycles.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitSet;
use crate::hypergraph::{Color, Coloring, Triple, Vertex};

/// Largest vertex count [`search_cycle_pair`] accepts.
pub const SEARCH_CAP: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycleError {
    #[error("instance has {n} vertices, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("tight cycle of length {0} has no loose cycle (need even length >= 6)")]
    NoLooseCycle(usize),
    #[error("invalid parity {0:?} (expected even, odd or any)")]
    BadParity(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Any,
}

impl Parity {
    /// Whether a cycle of length `len` (0 for the empty cycle) is allowed.
    pub fn admits(self, len: usize) -> bool {
        match self {
            Parity::Any => true,
            Parity::Even => len >= 4 && len % 2 == 0,
            Parity::Odd => len >= 5 && len % 2 == 1,
        }
    }
}

impl FromStr for Parity {
    type Err = CycleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            "any" => Ok(Parity::Any),
            _ => Err(CycleError::BadParity(s.to_string())),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Any => "any",
        })
    }
}

/// Cyclic vertex order; edge `i` is `{v_i, v_{i+1}, v_{i+2}}` (indices mod
/// the length). The empty order is the empty cycle.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TightCycle {
    pub order: Vec<Vertex>,
}

impl TightCycle {
    pub fn new(order: Vec<Vertex>) -> Self {
        Self { order }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Implied edges in cycle order. Only meaningful for length at least 3.
    pub fn edges(&self) -> Vec<Triple> {
        let l = self.order.len();
        if l < 3 {
            return Vec::new();
        }
        (0..l)
            .map(|i| Triple::of(self.order[i], self.order[(i + 1) % l], self.order[(i + 2) % l]))
            .collect()
    }
}

/// Cyclic edge sequence.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LooseCycle {
    pub edges: Vec<Triple>,
}

impl LooseCycle {
    pub fn vertices(&self, n: usize) -> BitSet {
        BitSet::from_iter_with_capacity(n, self.edges.iter().flat_map(|e| e.vertices()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclePair {
    pub red: TightCycle,
    pub blue: TightCycle,
    pub uncovered: Vec<Vertex>,
}

impl CyclePair {
    pub fn cycle(&self, color: Color) -> &TightCycle {
        match color {
            Color::Red => &self.red,
            Color::Blue => &self.blue,
        }
    }
}

/// True iff `c` is empty, or has length at least 4, distinct vertices of
/// the host, and every implied edge is present with colour `color`.
pub fn verify_tight_cycle(c: &TightCycle, col: &Coloring, color: Color) -> bool {
    tight_cycle_violations(c, col, color).is_empty()
}

pub fn tight_cycle_violations(c: &TightCycle, col: &Coloring, color: Color) -> Vec<String> {
    let mut out = Vec::new();
    let l = c.len();
    if l == 0 {
        return out;
    }
    if l < 4 {
        out.push(format!("length {l} is below 4"));
        return out;
    }
    let h = col.host();
    let mut seen = BitSet::new(h.n());
    for &v in &c.order {
        if v >= h.n() || !h.vertices().contains(v) {
            out.push(format!("vertex {v} is not in the host"));
            return out;
        }
        if !seen.insert(v) {
            out.push(format!("vertex {v} repeats"));
        }
    }
    if !out.is_empty() {
        return out;
    }
    for e in c.edges() {
        match col.color_of(&e) {
            None => out.push(format!("{e} is not an edge")),
            Some(x) if x != color => out.push(format!("{e} is {x}, not {color}")),
            _ => {}
        }
    }
    out
}

/// Checks a cycle pair: both cycles valid in their colours, vertex-disjoint,
/// and `uncovered` equal to the rest of the host's vertex set.
pub fn verify_cycle_pair(p: &CyclePair, col: &Coloring) -> Vec<String> {
    let mut out = Vec::new();
    for color in Color::BOTH {
        for v in tight_cycle_violations(p.cycle(color), col, color) {
            out.push(format!("{color} cycle: {v}"));
        }
    }
    let n = col.host().n();
    let set = |c: &TightCycle| BitSet::from_iter_with_capacity(n, c.order.iter().copied().filter(|&v| v < n));
    let (r, b) = (set(&p.red), set(&p.blue));
    if !r.is_disjoint(&b) {
        out.push("cycles share vertices".into());
    }
    let mut used = r;
    used.union_with(&b);
    let rest: Vec<Vertex> = col.host().vertices().difference(&used).iter().collect();
    if rest != p.uncovered {
        out.push("uncovered list does not match the host".into());
    }
    out
}

/// Every other implied edge `e_0, e_2, ...` of an even tight cycle.
pub fn loose_from_tight(c: &TightCycle) -> Result<LooseCycle, CycleError> {
    let l = c.len();
    if l < 6 || l % 2 == 1 {
        return Err(CycleError::NoLooseCycle(l));
    }
    let edges = c.edges().into_iter().step_by(2).collect();
    Ok(LooseCycle { edges })
}

/// Structure (at least three edges, consecutive edges meeting in one vertex,
/// distinct meeting vertices, other pairs disjoint), edge presence and
/// colour.
pub fn verify_loose_cycle(c: &LooseCycle, col: &Coloring, color: Color) -> bool {
    loose_cycle_violations(c, col, color).is_empty()
}

pub fn loose_cycle_violations(c: &LooseCycle, col: &Coloring, color: Color) -> Vec<String> {
    let mut out = Vec::new();
    let m = c.edges.len();
    if m < 3 {
        out.push(format!("{m} edges, need at least 3"));
        return out;
    }
    for e in &c.edges {
        match col.color_of(e) {
            None => out.push(format!("{e} is not an edge")),
            Some(x) if x != color => out.push(format!("{e} is {x}, not {color}")),
            _ => {}
        }
    }
    let mut joints = Vec::with_capacity(m);
    for i in 0..m {
        let (e, f) = (&c.edges[i], &c.edges[(i + 1) % m]);
        let common: Vec<Vertex> = e.vertices().into_iter().filter(|&v| f.contains(v)).collect();
        if common.len() != 1 {
            out.push(format!("consecutive edges {e} and {f} share {} vertices", common.len()));
        } else {
            joints.push(common[0]);
        }
        for j in i + 2..m {
            if i == 0 && j == m - 1 {
                continue;
            }
            if !e.is_disjoint(&c.edges[j]) {
                out.push(format!("non-consecutive edges {e} and {} meet", c.edges[j]));
            }
        }
    }
    let mut sorted = joints.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != joints.len() {
        out.push("two joints coincide".into());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CycleSearch {
    Found(CyclePair),
    /// Search completed; no pair meets the bound. `best_uncovered` is the
    /// least number of uncovered vertices any admissible pair achieves.
    Absent { best_uncovered: Option<usize> },
    Timeout,
}

/// Exact search for a red and a blue tight cycle, vertex-disjoint, with
/// lengths of the requested parities and at most `max_uncovered` host
/// vertices outside both.
///
/// Among admissible pairs the one covering most vertices is returned; ties
/// prefer the larger red cycle, then the colex-smallest red vertex set.
/// Cycle existence on every vertex subset comes from a reachability table
/// over tight paths `(vertex set, second vertex, last two vertices)` that
/// start at the subset's smallest vertex, filled in increasing subset order.
pub fn search_cycle_pair(
    col: &Coloring,
    max_uncovered: usize,
    parity_red: Parity,
    parity_blue: Parity,
    budget: Option<Duration>,
) -> Result<CycleSearch, CycleError> {
    let h = col.host();
    let verts: Vec<Vertex> = h.vertices().iter().collect();
    let m = verts.len();
    if h.n() > SEARCH_CAP {
        return Err(CycleError::TooLarge { n: h.n(), cap: SEARCH_CAP });
    }
    let deadline = budget.map(|b| Instant::now() + b);
    let table = ColorTable::new(col, &verts);
    let Some(red) = HamiltonTable::build(&table, Color::Red, deadline) else {
        return Ok(CycleSearch::Timeout);
    };
    let Some(blue) = HamiltonTable::build(&table, Color::Blue, deadline) else {
        return Ok(CycleSearch::Timeout);
    };
    let full: u32 = if m == 0 { 0 } else { (1u32 << m) - 1 };
    let admissible = |ham: &HamiltonTable, parity: Parity, mask: u32| {
        let len = mask.count_ones() as usize;
        parity.admits(len) && (len == 0 || ham.cycle[mask as usize])
    };
    // best_blue[mask]: largest admissible blue set inside mask, smallest
    // mask on ties.
    const NONE: u32 = u32::MAX;
    let mut best_blue: Vec<u32> = (0..=full)
        .map(|mask| if admissible(&blue, parity_blue, mask) { mask } else { NONE })
        .collect();
    let better = |a: u32, b: u32| -> u32 {
        match (a, b) {
            (NONE, x) | (x, NONE) => x,
            _ => {
                let (ca, cb) = (a.count_ones(), b.count_ones());
                if ca > cb || (ca == cb && a < b) {
                    a
                } else {
                    b
                }
            }
        }
    };
    for bit in 0..m {
        for mask in 0..=full {
            if mask & (1 << bit) != 0 {
                best_blue[mask as usize] = better(best_blue[mask as usize], best_blue[(mask ^ (1 << bit)) as usize]);
            }
        }
    }
    let mut best: Option<(u32, u32)> = None;
    for r in 0..=full {
        if !admissible(&red, parity_red, r) {
            continue;
        }
        let b = best_blue[(full ^ r) as usize];
        if b == NONE {
            continue;
        }
        let total = r.count_ones() + b.count_ones();
        let take = match best {
            None => true,
            Some((br, bb)) => {
                let bt = br.count_ones() + bb.count_ones();
                total > bt || (total == bt && r.count_ones() > br.count_ones())
            }
        };
        if take {
            best = Some((r, b));
        }
    }
    let Some((r, b)) = best else {
        return Ok(CycleSearch::Absent { best_uncovered: None });
    };
    let uncovered = m - (r.count_ones() + b.count_ones()) as usize;
    if uncovered > max_uncovered {
        return Ok(CycleSearch::Absent {
            best_uncovered: Some(uncovered),
        });
    }
    let to_cycle = |ham: &HamiltonTable, mask: u32| {
        TightCycle::new(ham.reconstruct(&table, mask).into_iter().map(|i| verts[i]).collect())
    };
    let rest: Vec<Vertex> = (0..m).filter(|&i| (r | b) & (1 << i) == 0).map(|i| verts[i]).collect();
    Ok(CycleSearch::Found(CyclePair {
        red: to_cycle(&red, r),
        blue: to_cycle(&blue, b),
        uncovered: rest,
    }))
}

/// Colour of each local triple, indexed `a * m * m + b * m + c` in every
/// order.
struct ColorTable {
    m: usize,
    cells: Vec<Option<Color>>,
}

impl ColorTable {
    fn new(col: &Coloring, verts: &[Vertex]) -> Self {
        let m = verts.len();
        let mut cells = vec![None; m * m * m];
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    let color = col.color_of(&Triple::of(verts[a], verts[b], verts[c]));
                    for [x, y, z] in [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
                        cells[(x * m + y) * m + z] = color;
                    }
                }
            }
        }
        Self { m, cells }
    }

    fn is(&self, a: usize, b: usize, c: usize, color: Color) -> bool {
        self.cells[(a * self.m + b) * self.m + c] == Some(color)
    }
}

/// Tight path reachability for one colour.
struct HamiltonTable {
    m: usize,
    color: Color,
    words: usize,
    /// Bit `(a * m + p) * m + q` of mask `S`: a tight path through exactly
    /// `S` starts at `min S`, then `a`, and ends `p, q`.
    reach: Vec<u64>,
    cycle: Vec<bool>,
}

impl HamiltonTable {
    fn state(&self, a: usize, p: usize, q: usize) -> usize {
        (a * self.m + p) * self.m + q
    }

    fn get(&self, mask: u32, s: usize) -> bool {
        self.reach[mask as usize * self.words + s / 64] >> (s % 64) & 1 == 1
    }

    fn build(t: &ColorTable, color: Color, deadline: Option<Instant>) -> Option<Self> {
        let m = t.m;
        let words = (m * m * m).div_ceil(64).max(1);
        let masks = 1usize << m;
        let mut ham = HamiltonTable {
            m,
            color,
            words,
            reach: vec![0; masks * words],
            cycle: vec![false; masks],
        };
        for v1 in 0..m {
            for a in v1 + 1..m {
                let s = ham.state(a, v1, a);
                ham.reach[((1 << v1) | (1 << a)) * words + s / 64] |= 1 << (s % 64);
            }
        }
        for mask in 0..masks {
            if mask % 1024 == 0 && deadline.is_some_and(|d| Instant::now() > d) {
                return None;
            }
            if (mask as u32).count_ones() < 2 {
                continue;
            }
            let v1 = mask.trailing_zeros() as usize;
            let base = mask * words;
            let mut closes = false;
            for w in 0..words {
                let mut bits = ham.reach[base + w];
                while bits != 0 {
                    let s = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let (a, p, q) = (s / (m * m), s / m % m, s % m);
                    if (mask as u32).count_ones() >= 4 && t.is(p, q, v1, color) && t.is(q, v1, a, color) {
                        closes = true;
                    }
                    for x in v1 + 1..m {
                        if mask & (1 << x) == 0 && t.is(p, q, x, color) {
                            let ns = ham.state(a, q, x);
                            ham.reach[(mask | (1 << x)) * words + ns / 64] |= 1 << (ns % 64);
                        }
                    }
                }
            }
            ham.cycle[mask] = closes;
        }
        Some(ham)
    }

    /// Vertex order (local indices) of a tight cycle on `mask`, starting at
    /// its smallest vertex; the closing state and each predecessor are the
    /// smallest available.
    fn reconstruct(&self, t: &ColorTable, mask: u32) -> Vec<usize> {
        if mask == 0 {
            return Vec::new();
        }
        let m = self.m;
        let v1 = mask.trailing_zeros() as usize;
        let (mut a, mut p, mut q) = (0, 0, 0);
        'find: for aa in 0..m {
            for pp in 0..m {
                for qq in 0..m {
                    let s = self.state(aa, pp, qq);
                    if self.get(mask, s) && t.is(pp, qq, v1, self.color) && t.is(qq, v1, aa, self.color) {
                        (a, p, q) = (aa, pp, qq);
                        break 'find;
                    }
                }
            }
        }
        let mut tail = Vec::new();
        let mut cur = mask;
        while cur.count_ones() > 2 {
            tail.push(q);
            let prev = cur ^ (1 << q);
            let pp = (0..m)
                .find(|&x| self.get(prev, self.state(a, x, p)) && t.is(x, p, q, self.color))
                .expect("reachable state has a predecessor");
            q = p;
            p = pp;
            cur = prev;
        }
        debug_assert_eq!((p, q), (v1, a));
        let mut order = vec![v1, a];
        order.extend(tail.into_iter().rev());
        order
    }
}
