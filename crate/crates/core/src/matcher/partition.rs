use super::params::{ceil_count, Params};
use crate::bits::BitSet;
use crate::hypergraph::{Color, Coloring, Hypergraph3, Triple, Vertex};

/// A tight component of `K_red` or `K_blue`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoComponent {
    pub id: usize,
    pub color: Color,
    /// Colex order.
    pub edges: Vec<Triple>,
}

/// All monochromatic components of a coloured hypergraph. Red components
/// are numbered first, each colour by its colex-smallest edge.
#[derive(Debug, Clone)]
pub struct MonoComponents {
    comps: Vec<MonoComponent>,
    /// Component of each host edge, aligned with `host.edges()`.
    edge_comp: Vec<usize>,
}

impl MonoComponents {
    pub fn compute(col: &Coloring) -> Self {
        let host = col.host();
        let mut comps = Vec::new();
        let mut edge_comp = vec![usize::MAX; host.edge_count()];
        for color in Color::BOTH {
            let sub = col.subgraph(color);
            let cc = sub.connected_components();
            let base = comps.len();
            for (i, class) in cc.classes().iter().enumerate() {
                for t in class {
                    let idx = host.edge_index(t).expect("subgraph edge in host");
                    edge_comp[idx] = base + i;
                }
                comps.push(MonoComponent {
                    id: base + i,
                    color,
                    edges: class.clone(),
                });
            }
        }
        Self { comps, edge_comp }
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn get(&self, id: usize) -> &MonoComponent {
        &self.comps[id]
    }

    pub fn iter(&self) -> impl Iterator<Item = &MonoComponent> {
        self.comps.iter()
    }

    pub fn of_edge(&self, host: &Hypergraph3, t: &Triple) -> Option<usize> {
        host.edge_index(t).map(|i| self.edge_comp[i])
    }

    /// The component as a hypergraph on the host's vertex set.
    pub fn graph(&self, id: usize, host: &Hypergraph3) -> Hypergraph3 {
        Hypergraph3::from_sorted_unchecked(host.n(), host.vertices().clone(), self.comps[id].edges.clone())
    }
}

/// Vertex classification by dominant monochromatic component.
#[derive(Debug, Clone)]
pub struct PartitionRB {
    /// `R`: vertices whose chosen component is red.
    pub red: BitSet,
    /// `B`: vertices whose chosen component is blue.
    pub blue: BitSet,
    /// `C_x` for each vertex id (`None` outside `V(K)`).
    pub chosen_component: Vec<Option<usize>>,
    /// `|N_{C_x}(x)|`.
    pub chosen_degree: Vec<usize>,
    pub v_red: BitSet,
    pub v_blue: BitSet,
    /// Dominant red component, defined only when `|R| >= 6 delta t`.
    pub major_red: Option<usize>,
    pub major_blue: Option<usize>,
    /// Component the local search draws red edges from: `major_red` when
    /// defined, else the most frequent red `C_x`, else the red component
    /// with most edges.
    pub host_red: Option<usize>,
    pub host_blue: Option<usize>,
    pub components: MonoComponents,
    host_graphs: [Option<Hypergraph3>; 2],
}

impl PartitionRB {
    pub fn side(&self, color: Color) -> &BitSet {
        match color {
            Color::Red => &self.red,
            Color::Blue => &self.blue,
        }
    }

    pub fn dominant_vertices(&self, color: Color) -> &BitSet {
        match color {
            Color::Red => &self.v_red,
            Color::Blue => &self.v_blue,
        }
    }

    pub fn major(&self, color: Color) -> Option<usize> {
        match color {
            Color::Red => self.major_red,
            Color::Blue => self.major_blue,
        }
    }

    pub fn host(&self, color: Color) -> Option<usize> {
        match color {
            Color::Red => self.host_red,
            Color::Blue => self.host_blue,
        }
    }

    /// Hypergraph of the host component of `color`.
    pub fn host_graph(&self, color: Color) -> Option<&Hypergraph3> {
        self.host_graphs[color as usize].as_ref()
    }

    /// Hypergraph of the dominant component of `color`, if defined.
    pub fn major_graph(&self, color: Color) -> Option<&Hypergraph3> {
        self.major(color).and_then(|_| self.host_graph(color))
    }
}

/// Chooses `C_x` for every vertex, splits `V(K)` into `R` and `B`, and picks
/// the dominant component of each colour.
pub fn partition_rb(k: &Coloring, params: &Params) -> PartitionRB {
    let host = k.host();
    let n = host.n();
    let comps = MonoComponents::compute(k);
    let mut chosen: Vec<Option<usize>> = vec![None; n];
    let mut degree = vec![0usize; n];
    let mut nbrs: Vec<BitSet> = vec![BitSet::new(n); n];
    for comp in comps.iter() {
        nbrs.iter_mut().for_each(BitSet::clear);
        let mut touched = BitSet::new(n);
        for t in &comp.edges {
            for (x, y) in t.pairs() {
                nbrs[x].insert(y);
                nbrs[y].insert(x);
                touched.insert(x);
                touched.insert(y);
            }
        }
        // Components arrive in id order (red before blue), so strict `>`
        // keeps the red / smaller-id preference on ties.
        for x in touched.iter() {
            let d = nbrs[x].len();
            if chosen[x].is_none() || d > degree[x] {
                chosen[x] = Some(comp.id);
                degree[x] = d;
            }
        }
    }
    let mut red = BitSet::new(n);
    let mut blue = BitSet::new(n);
    for x in host.vertices().iter() {
        if let Some(c) = chosen[x] {
            match comps.get(c).color {
                Color::Red => red.insert(x),
                Color::Blue => blue.insert(x),
            };
        }
    }
    let t = host.vertex_count();
    let need = ceil_count(params.thresholds(t).six_delta_t);
    let majority = |side: &BitSet| -> Option<usize> {
        let mut count: Vec<(usize, usize)> = Vec::new();
        for x in side.iter() {
            let c = chosen[x].expect("side vertex has a component");
            match count.iter_mut().find(|(id, _)| *id == c) {
                Some((_, k)) => *k += 1,
                None => count.push((c, 1)),
            }
        }
        count
            .into_iter()
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .map(|(id, _)| id)
    };
    let major_red = if red.len() >= need { majority(&red) } else { None };
    let major_blue = if blue.len() >= need { majority(&blue) } else { None };
    let dominant = |side: &BitSet, major: Option<usize>| -> BitSet {
        let mut out = BitSet::new(n);
        if let Some(m) = major {
            for x in side.iter() {
                if chosen[x] == Some(m) {
                    out.insert(x);
                }
            }
        }
        out
    };
    let v_red = dominant(&red, major_red);
    let v_blue = dominant(&blue, major_blue);
    let largest = |color: Color| -> Option<usize> {
        comps
            .iter()
            .filter(|c| c.color == color)
            .max_by(|a, b| a.edges.len().cmp(&b.edges.len()).then(b.id.cmp(&a.id)))
            .map(|c| c.id)
    };
    let host_red = major_red.or_else(|| majority(&red)).or_else(|| largest(Color::Red));
    let host_blue = major_blue.or_else(|| majority(&blue)).or_else(|| largest(Color::Blue));
    let host_graphs = [
        host_red.map(|id| comps.graph(id, host)),
        host_blue.map(|id| comps.graph(id, host)),
    ];
    PartitionRB {
        red,
        blue,
        chosen_component: chosen,
        chosen_degree: degree,
        v_red,
        v_blue,
        major_red,
        major_blue,
        host_red,
        host_blue,
        components: comps,
        host_graphs,
    }
}

/// `|N_C(x)|` for one component, computed directly from its edges.
pub fn component_degree(comp: &MonoComponent, x: Vertex, n: usize) -> usize {
    let mut seen = BitSet::new(n);
    for t in &comp.edges {
        if t.contains(x) {
            for v in t.vertices() {
                if v != x {
                    seen.insert(v);
                }
            }
        }
    }
    seen.len()
}
