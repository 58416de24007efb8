use super::partition::PartitionRB;
use super::{ConnectedMatching, Params, TraceEvent};
use crate::bits::BitSet;
use crate::hypergraph::{Color, Coloring, Hypergraph3, Triple, Vertex};

/// Matchings left when no exchange move applies.
#[derive(Debug, Clone)]
pub struct LocalSearchOutcome {
    pub red: ConnectedMatching,
    pub blue: ConnectedMatching,
    pub trace: Vec<TraceEvent>,
    pub moves: usize,
}

impl LocalSearchOutcome {
    pub fn covered(&self) -> usize {
        self.red.covered() + self.blue.covered()
    }

    pub fn matching(&self, color: Color) -> &ConnectedMatching {
        match color {
            Color::Red => &self.red,
            Color::Blue => &self.blue,
        }
    }
}

/// The three ways of splitting six slots into pairs, expanded over all 15
/// perfect matchings of `{0..6}`.
const PAIRINGS: [[(usize, usize); 3]; 15] = [
    [(0, 1), (2, 3), (4, 5)],
    [(0, 1), (2, 4), (3, 5)],
    [(0, 1), (2, 5), (3, 4)],
    [(0, 2), (1, 3), (4, 5)],
    [(0, 2), (1, 4), (3, 5)],
    [(0, 2), (1, 5), (3, 4)],
    [(0, 3), (1, 2), (4, 5)],
    [(0, 3), (1, 4), (2, 5)],
    [(0, 3), (1, 5), (2, 4)],
    [(0, 4), (1, 2), (3, 5)],
    [(0, 4), (1, 3), (2, 5)],
    [(0, 4), (1, 5), (2, 3)],
    [(0, 5), (1, 2), (3, 4)],
    [(0, 5), (1, 3), (2, 4)],
    [(0, 5), (1, 4), (2, 3)],
];

struct Search<'a> {
    k: &'a Coloring,
    /// Edges of the red and blue host components.
    pool: Hypergraph3,
    covered: BitSet,
    matching: Vec<Triple>,
    trace: Vec<TraceEvent>,
    moves: usize,
}

impl Search<'_> {
    fn free(&self) -> BitSet {
        self.k.host().vertices().difference(&self.covered)
    }

    fn covered_count(&self) -> usize {
        self.matching.len() * 3
    }

    fn add(&mut self, e: Triple) {
        for v in e.vertices() {
            let fresh = self.covered.insert(v);
            debug_assert!(fresh);
        }
        self.matching.push(e);
    }

    fn remove(&mut self, e: &Triple) {
        let pos = self.matching.iter().position(|m| m == e).expect("edge in matching");
        self.matching.swap_remove(pos);
        for v in e.vertices() {
            self.covered.remove(v);
        }
    }

    fn log(&mut self, stage: &str, detail: String) {
        self.moves += 1;
        let covered = Some(self.covered_count());
        self.trace.push(TraceEvent {
            stage: stage.into(),
            detail,
            covered,
        });
    }

    /// Adds every pool edge on free vertices, in colex order.
    fn greedy_add(&mut self) -> bool {
        let mut any = false;
        for i in 0..self.pool.edge_count() {
            let e = self.pool.edges()[i];
            if e.vertices().iter().all(|&v| !self.covered.contains(v)) {
                self.add(e);
                let color = self.k.color_of(&e).expect("pool edge in K");
                self.log("greedy-add", format!("{color} {e}"));
                any = true;
            }
        }
        any
    }

    /// Pool edges inside `inside` that contain at least one vertex of `hit`,
    /// in colex order.
    fn edges_meeting(&self, hit: &[Vertex], inside: &BitSet) -> Vec<Triple> {
        let mut out = Vec::new();
        for &u in hit {
            for p in inside.iter() {
                if p == u {
                    continue;
                }
                for z in self.pool.link_of(u, p).iter() {
                    if z != u && inside.contains(z) {
                        out.push(Triple::of(u, p, z));
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Replace one matching edge by two disjoint pool edges.
    fn one_for_two(&mut self) -> bool {
        let free = self.free();
        let mut order = self.matching.clone();
        order.sort_unstable();
        for m in order {
            let mut region = free.clone();
            for v in m.vertices() {
                region.insert(v);
            }
            let cands = self.edges_meeting(&m.vertices(), &region);
            for (i, e1) in cands.iter().enumerate() {
                if let Some(e2) = cands[i + 1..].iter().find(|e2| e1.is_disjoint(e2)) {
                    let (e1, e2) = (*e1, *e2);
                    self.remove(&m);
                    self.add(e1);
                    self.add(e2);
                    self.log("one-for-two", format!("{m} -> {e1} + {e2}"));
                    return true;
                }
            }
        }
        false
    }

    /// Replace two matching edges by three pool edges, each made of two of
    /// the six freed vertices plus one free vertex.
    fn two_for_three(&mut self) -> bool {
        let free = self.free();
        if free.is_empty() {
            return false;
        }
        let mut order = self.matching.clone();
        order.sort_unstable();
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                let (m1, m2) = (order[i], order[j]);
                let slots: Vec<Vertex> = m1.vertices().into_iter().chain(m2.vertices()).collect();
                for pairing in &PAIRINGS {
                    let sets: Vec<BitSet> = pairing
                        .iter()
                        .map(|&(a, b)| self.pool.link_of(slots[a], slots[b]).intersection(&free))
                        .collect();
                    if let Some(reps) = distinct_representatives(&sets) {
                        let new: Vec<Triple> = pairing
                            .iter()
                            .zip(&reps)
                            .map(|(&(a, b), &c)| Triple::of(slots[a], slots[b], c))
                            .collect();
                        self.remove(&m1);
                        self.remove(&m2);
                        for e in &new {
                            self.add(*e);
                        }
                        self.log(
                            "two-for-three",
                            format!("{m1} + {m2} -> {} + {} + {}", new[0], new[1], new[2]),
                        );
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// First system of distinct representatives in lexicographic order.
fn distinct_representatives(sets: &[BitSet]) -> Option<Vec<Vertex>> {
    fn go(sets: &[BitSet], used: &mut Vec<Vertex>) -> bool {
        let depth = used.len();
        if depth == sets.len() {
            return true;
        }
        for c in sets[depth].iter() {
            if used.contains(&c) {
                continue;
            }
            used.push(c);
            if go(sets, used) {
                return true;
            }
            used.pop();
        }
        false
    }
    if sets.iter().any(BitSet::is_empty) {
        return None;
    }
    let mut used = Vec::with_capacity(sets.len());
    go(sets, &mut used).then_some(used)
}

/// Local search for a large connected matching inside the red and blue host
/// components.
///
/// Moves, each adding three covered vertices, are tried in this order until
/// none applies: add a pool edge on free vertices; swap one matching edge for
/// two disjoint pool edges; swap two matching edges for three pool edges
/// built from pairs of the freed vertices and distinct free vertices.
pub fn local_search_matching(k: &Coloring, part: &PartitionRB, _params: &Params) -> LocalSearchOutcome {
    let host = k.host();
    let mut pool_edges: Vec<Triple> = Vec::new();
    for color in Color::BOTH {
        if let Some(g) = part.host_graph(color) {
            pool_edges.extend_from_slice(g.edges());
        }
    }
    pool_edges.sort_unstable();
    let pool = Hypergraph3::from_sorted_unchecked(host.n(), host.vertices().clone(), pool_edges);
    let mut search = Search {
        k,
        pool,
        covered: BitSet::new(host.n()),
        matching: Vec::new(),
        trace: Vec::new(),
        moves: 0,
    };
    loop {
        if search.greedy_add() {
            continue;
        }
        if search.one_for_two() || search.two_for_three() {
            continue;
        }
        break;
    }
    let moves = search.moves;
    let mut trace = search.trace;
    let split = |color: Color| -> ConnectedMatching {
        let mut edges: Vec<Triple> = search
            .matching
            .iter()
            .filter(|e| k.color_of(e) == Some(color))
            .copied()
            .collect();
        edges.sort_unstable();
        match (part.host(color), part.host_graph(color)) {
            (Some(id), Some(g)) => ConnectedMatching::certify(color, edges, Some(id), g)
                .expect("host component edges are connected"),
            _ => {
                debug_assert!(edges.is_empty());
                ConnectedMatching::empty(color)
            }
        }
    };
    let red = split(Color::Red);
    let blue = split(Color::Blue);
    trace.push(TraceEvent {
        stage: "local-search".into(),
        detail: format!("done: {} red + {} blue edges after {moves} moves", red.edges.len(), blue.edges.len()),
        covered: Some(red.covered() + blue.covered()),
    });
    LocalSearchOutcome { red, blue, trace, moves }
}
