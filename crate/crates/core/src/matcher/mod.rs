//! Two disjoint monochromatic connected matchings covering most vertices of
//! a 2-coloured, nearly complete 3-uniform hypergraph.
//!
//! [`cover`] runs cleanup, component selection, exchange-move local search
//! and, when a large part of a dominant vertex set stays uncovered, the
//! residual perfect matching plus dissolution branch. Every result carries
//! pseudo-path certificates and is checked by [`verify_cover`].

pub mod branch;
pub mod clean;
pub mod local_search;
pub mod params;
pub mod partition;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitSet;
use crate::hypergraph::{Color, Coloring, Hypergraph3, HypergraphError, PseudoPath, Triple, Vertex};

pub use branch::{
    blue_residual_component, degree_condition, dissolve_blue, good_edge, maximum_matching,
    perfect_matching_budgeted, perfect_matching_dense, DegreeCondition, Dissolution, PmOutcome, Residual,
};
pub use clean::{clean, clean_violations, CleanReport};
pub use local_search::{local_search_matching, LocalSearchOutcome};
pub use params::{ceil_count, Params, Thresholds};
pub use partition::{partition_rb, MonoComponent, MonoComponents, PartitionRB};

/// Search nodes allowed for the residual perfect matching before falling
/// back to a budgeted maximum matching.
const PM_NODE_BUDGET: u64 = 200_000;
const MAX_MATCHING_BUDGET: u64 = 200_000;

#[derive(Debug, Error)]
pub enum MatcherError {
    #[error("gamma must lie in (0, 1), got {0}")]
    InvalidGamma(f64),
    #[error("input hypergraph has no vertices")]
    EmptyInput,
    #[error("cleanup removed every vertex ({} rounds)", .0.rounds)]
    CleanupExhausted(CleanReport),
    #[error("good edges need dominant components of both colours")]
    GoodUndefined,
    #[error("{0} is not an edge")]
    NotAnEdge(Triple),
    #[error("branch not applicable: {0}")]
    BranchInapplicable(String),
    #[error("vertex count {0} is not a multiple of three")]
    NotDivisibleByThree(usize),
    #[error("{color} edges {from} and {to} lie in different components")]
    Disconnected { color: Color, from: Triple, to: Triple },
    #[error("colouring does not match the hypergraph")]
    HostMismatch,
    #[error("internal result failed verification: {0:?}")]
    InvalidResult(Vec<String>),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// One pipeline stage or exchange move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub stage: String,
    pub detail: String,
    /// Covered vertices after the event, for matching-changing events.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covered: Option<usize>,
}

impl TraceEvent {
    fn note(stage: &str, detail: impl Into<String>) -> Self {
        Self {
            stage: stage.into(),
            detail: detail.into(),
            covered: None,
        }
    }
}

/// Pairwise disjoint edges of one colour, all in one monochromatic
/// component, with a pseudo-path between each pair of consecutive edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectedMatching {
    pub color: Color,
    /// Colex order.
    pub edges: Vec<Triple>,
    #[serde(default)]
    pub component_id: Option<usize>,
    /// `certificates[i]` runs from `edges[i]` to `edges[i + 1]`.
    pub certificates: Vec<PseudoPath>,
}

impl ConnectedMatching {
    pub fn empty(color: Color) -> Self {
        Self {
            color,
            edges: Vec::new(),
            component_id: None,
            certificates: Vec::new(),
        }
    }

    /// Sorts `edges` and joins consecutive ones by shortest pseudo-paths in
    /// `g`, which must contain only edges of `color`.
    pub fn certify(
        color: Color,
        mut edges: Vec<Triple>,
        component_id: Option<usize>,
        g: &Hypergraph3,
    ) -> Result<Self, MatcherError> {
        edges.sort_unstable();
        let mut certificates = Vec::with_capacity(edges.len().saturating_sub(1));
        for w in edges.windows(2) {
            let path = g.connecting_path(&w[0], &w[1])?.ok_or(MatcherError::Disconnected {
                color,
                from: w[0],
                to: w[1],
            })?;
            certificates.push(path);
        }
        Ok(Self {
            color,
            edges,
            component_id,
            certificates,
        })
    }

    pub fn covered(&self) -> usize {
        3 * self.edges.len()
    }

    pub fn vertices(&self, n: usize) -> BitSet {
        BitSet::from_iter_with_capacity(n, self.edges.iter().flat_map(|e| e.vertices()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverResult {
    pub n: usize,
    pub gamma: f64,
    pub red_matching: ConnectedMatching,
    pub blue_matching: ConnectedMatching,
    pub covered: usize,
    /// Vertices of the input left uncovered, ascending.
    pub uncovered: Vec<Vertex>,
    pub trace: Vec<TraceEvent>,
}

impl CoverResult {
    fn assemble(h: &Hypergraph3, gamma: f64, red: ConnectedMatching, blue: ConnectedMatching) -> Self {
        let mut used = red.vertices(h.n());
        used.union_with(&blue.vertices(h.n()));
        let covered = red.covered() + blue.covered();
        Self {
            n: h.n(),
            gamma,
            red_matching: red,
            blue_matching: blue,
            covered,
            uncovered: h.vertices().difference(&used).iter().collect(),
            trace: Vec::new(),
        }
    }

    pub fn matching(&self, color: Color) -> &ConnectedMatching {
        match color {
            Color::Red => &self.red_matching,
            Color::Blue => &self.blue_matching,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub valid: bool,
    pub diagnostics: Vec<String>,
}

/// Checks a [`CoverResult`] against the coloured host it claims to cover.
///
/// Diagnostics start with one of: `disjointness`, `matching disjointness`,
/// `edge color`, `certificate color`, `certificate path`, `covered count`.
pub fn verify_cover(r: &CoverResult, h: &Hypergraph3, col: &Coloring) -> Verification {
    let mut diag = Vec::new();
    let n = h.n();
    if r.n != n {
        diag.push(format!("covered count: result is for n = {}, host has n = {n}", r.n));
    }
    let mut sets = Vec::new();
    for (color, m) in [(Color::Red, &r.red_matching), (Color::Blue, &r.blue_matching)] {
        if m.color != color {
            diag.push(format!("edge color: {color} matching is labelled {}", m.color));
        }
        let mut seen = BitSet::new(n);
        for e in &m.edges {
            if e.max_vertex() >= n {
                diag.push(format!("edge color: {color} edge {e} is outside the vertex range"));
                continue;
            }
            match col.color_of(e) {
                None => diag.push(format!("edge color: {color} matching edge {e} is not an edge")),
                Some(c) if c != color => diag.push(format!("edge color: {color} matching edge {e} is {c}")),
                _ => {}
            }
            for v in e.vertices() {
                if !seen.insert(v) {
                    diag.push(format!("matching disjointness: vertex {v} repeats in the {color} matching"));
                }
            }
        }
        let mut sorted = m.edges.clone();
        sorted.sort_unstable();
        let expected = sorted.len().saturating_sub(1);
        if m.certificates.len() != expected {
            diag.push(format!(
                "certificate path: {color} matching has {} certificates, expected {expected}",
                m.certificates.len()
            ));
        }
        for (i, (w, path)) in sorted.windows(2).zip(&m.certificates).enumerate() {
            if !path.is_valid() {
                diag.push(format!("certificate path: {color} certificate {i} is not a pseudo-path"));
            } else if path.edges()[0] != w[0] || *path.edges().last().unwrap() != w[1] {
                diag.push(format!("certificate path: {color} certificate {i} does not join {} and {}", w[0], w[1]));
            }
            for e in path.edges() {
                let c = if e.max_vertex() < n { col.color_of(e) } else { None };
                if c != Some(color) {
                    diag.push(format!("certificate color: {color} certificate {i} uses {e} ({c:?})"));
                }
            }
        }
        sets.push(seen);
    }
    let clash = sets[0].intersection(&sets[1]);
    if !clash.is_empty() {
        diag.push(format!("disjointness: red and blue matchings share {clash:?}"));
    }
    let count = r.red_matching.edges.len() * 3 + r.blue_matching.edges.len() * 3;
    if r.covered != count {
        diag.push(format!("covered count: claims {} but matchings cover {count}", r.covered));
    }
    let mut used = sets[0].clone();
    used.union_with(&sets[1]);
    let expected: Vec<Vertex> = h.vertices().difference(&used).iter().collect();
    if r.uncovered != expected {
        diag.push("covered count: uncovered list does not match the host".to_string());
    }
    Verification {
        valid: diag.is_empty(),
        diagnostics: diag,
    }
}

/// Full pipeline. The colouring's host is `H`; coverage is counted against
/// all of `V(H)`, including vertices removed by cleanup.
pub fn cover(col: &Coloring, gamma: f64) -> Result<CoverResult, MatcherError> {
    let params = Params::new(gamma)?;
    let h = col.host();
    let mut trace = Vec::new();
    let (k_host, report) = clean(h, &params)?;
    trace.push(TraceEvent::note(
        "clean",
        format!(
            "t_H = {}, t_K = {}, {} vertices deleted, {} pairs deactivated, {} rounds, size guarantee {}",
            report.vertices_before,
            report.vertices_after,
            report.deleted_vertices.len(),
            report.deactivated_pairs,
            report.rounds,
            if report.size_guarantee_met { "met" } else { "not met" }
        ),
    ));
    let k = col.restrict(k_host)?;
    let t = k.host().vertex_count();
    let th = params.thresholds(t);
    let part = partition_rb(&k, &params);
    trace.push(TraceEvent::note(
        "partition",
        format!(
            "|R| = {}, |B| = {}, dominant red {:?} ({} vertices), dominant blue {:?} ({} vertices), hosts {:?}/{:?}",
            part.red.len(),
            part.blue.len(),
            part.major_red,
            part.v_red.len(),
            part.major_blue,
            part.v_blue.len(),
            part.host_red,
            part.host_blue
        ),
    ));
    let ls = local_search_matching(&k, &part, &params);
    trace.extend(ls.trace.iter().cloned());
    structural_checks(&ls, &part, &th, &mut trace);

    let mut covered = ls.red.vertices(h.n());
    covered.union_with(&ls.blue.vertices(h.n()));
    let base = CoverResult::assemble(h, gamma, ls.red.clone(), ls.blue.clone());
    let mut best = checked(base, h, col, "local search", &mut trace);

    let residual = |side: Color| part.dominant_vertices(side).difference(&covered).len();
    let (res_red, res_blue) = (residual(Color::Red), residual(Color::Blue));
    if (res_red as f64) < th.twelve_delta_t && (res_blue as f64) < th.twelve_delta_t {
        trace.push(TraceEvent::note(
            "early-exit",
            format!(
                "residuals {res_red} red, {res_blue} blue below 12 delta t = {:.3}",
                th.twelve_delta_t
            ),
        ));
    } else {
        let order = if res_red >= res_blue {
            [Color::Red, Color::Blue]
        } else {
            [Color::Blue, Color::Red]
        };
        for side in order {
            match residual_branch(&k, &part, &ls, &covered, side, &params, &mut trace) {
                Ok(cands) => {
                    for (label, red, blue) in cands {
                        let r = CoverResult::assemble(h, gamma, red, blue);
                        if let Some(r) = checked(r, h, col, &label, &mut trace) {
                            if best.as_ref().map_or(true, |b| r.covered > b.covered) {
                                trace.push(TraceEvent {
                                    stage: "select".into(),
                                    detail: label,
                                    covered: Some(r.covered),
                                });
                                best = Some(r);
                            }
                        }
                    }
                }
                Err(e) => trace.push(TraceEvent::note("branch", format!("{side} side: {e}"))),
            }
        }
    }
    let mut result = match best {
        Some(r) => r,
        None => {
            let empty = CoverResult::assemble(h, gamma, ConnectedMatching::empty(Color::Red), ConnectedMatching::empty(Color::Blue));
            trace.push(TraceEvent::note("fallback", "no candidate verified; returning empty matchings"));
            empty
        }
    };
    trace.push(TraceEvent {
        stage: "done".into(),
        detail: format!("{} red + {} blue edges", result.red_matching.edges.len(), result.blue_matching.edges.len()),
        covered: Some(result.covered),
    });
    result.trace = trace;
    Ok(result)
}

fn checked(
    r: CoverResult,
    h: &Hypergraph3,
    col: &Coloring,
    label: &str,
    trace: &mut Vec<TraceEvent>,
) -> Option<CoverResult> {
    let v = verify_cover(&r, h, col);
    if v.valid {
        Some(r)
    } else {
        trace.push(TraceEvent::note("reject", format!("{label}: {}", v.diagnostics.join("; "))));
        None
    }
}

/// After local search no blue matching edge should meet the dominant blue
/// vertex set, and symmetrically for red. Only meaningful when the
/// thresholds are below `t`.
fn structural_checks(ls: &LocalSearchOutcome, part: &PartitionRB, th: &Thresholds, trace: &mut Vec<TraceEvent>) {
    if th.is_vacuous() {
        trace.push(TraceEvent::note(
            "structure",
            format!("skipped: 12 delta t = {:.3} >= t = {}", th.twelve_delta_t, th.t),
        ));
        return;
    }
    for color in Color::BOTH {
        let dominant = part.dominant_vertices(color);
        let mut two_or_more = 0;
        let mut exactly_one = 0;
        for e in &ls.matching(color).edges {
            match e.vertices().iter().filter(|&&v| dominant.contains(v)).count() {
                0 => {}
                1 => exactly_one += 1,
                _ => two_or_more += 1,
            }
        }
        trace.push(TraceEvent::note(
            "structure",
            format!(
                "{color} matching edges meeting V_{color}: {two_or_more} in at least two vertices, {exactly_one} in exactly one"
            ),
        ));
    }
}

type Candidate = (String, ConnectedMatching, ConnectedMatching);

/// Residual branch with the dominant colour `side`: a perfect (or maximum)
/// other-colour matching on the residual component, combined with the
/// `side` matching and the dissolved old other-colour matching.
fn residual_branch(
    k: &Coloring,
    part: &PartitionRB,
    ls: &LocalSearchOutcome,
    covered: &BitSet,
    side: Color,
    params: &Params,
    trace: &mut Vec<TraceEvent>,
) -> Result<Vec<Candidate>, MatcherError> {
    let other = side.other();
    let res = blue_residual_component(k, part, covered, side)?;
    trace.push(TraceEvent::note(
        "residual",
        format!(
            "{side} side: anchor {}, |V'| = {}, |V''| = {}, component on {} vertices, trimmed {:?}",
            res.anchor,
            res.residual.len(),
            res.pruned.len(),
            res.component.covered_vertices().len(),
            res.trimmed
        ),
    ));
    let b = res.trimmed_graph.induced(&res.trimmed_graph.covered_vertices());
    let dc = degree_condition(&b, params.eta_pm);
    trace.push(TraceEvent::note(
        "degree-condition",
        format!(
            "m = {}, min degree {} vs {:.2}: {}",
            dc.vertices,
            dc.min_degree,
            dc.required,
            if dc.holds { "holds" } else { "fails" }
        ),
    ));
    let new_other = match perfect_matching_budgeted(&b, PM_NODE_BUDGET)? {
        PmOutcome::Found(m) => {
            trace.push(TraceEvent::note("perfect-matching", format!("{} edges", m.len())));
            m
        }
        outcome => {
            let (m, exact) = maximum_matching(&b, MAX_MATCHING_BUDGET);
            trace.push(TraceEvent::note(
                "perfect-matching",
                format!(
                    "{}; maximum matching fallback has {} edges ({}), {} vertices left",
                    if outcome == PmOutcome::Absent { "none exists" } else { "search budget exhausted" },
                    m.len(),
                    if exact { "exact" } else { "budgeted" },
                    b.vertex_count() - 3 * m.len()
                ),
            ));
            m
        }
    };
    let other_matching = ConnectedMatching::certify(other, new_other, None, &res.component)?;
    let side_host = part.host_graph(side).expect("dominant component exists");
    let side_id = part.host(side);
    let old_side = ls.matching(side).edges.clone();
    let old_other = &ls.matching(other).edges;
    let arrange = |s: ConnectedMatching, o: ConnectedMatching| match side {
        Color::Red => (s, o),
        Color::Blue => (o, s),
    };
    let mut out = Vec::new();
    match dissolve_blue(k, part, old_other, side) {
        Ok(d) => {
            trace.push(TraceEvent::note(
                "dissolve",
                format!(
                    "{} {other} edges: {} rematched as {side}, leftovers {:?}",
                    old_other.len(),
                    d.rematched.len(),
                    d.leftovers
                ),
            ));
            let mut edges = old_side.clone();
            edges.extend_from_slice(&d.rematched);
            let s = ConnectedMatching::certify(side, edges, side_id, side_host)?;
            let (r, b) = arrange(s, other_matching.clone());
            out.push((format!("{side} residual branch with dissolution"), r, b));
        }
        Err(e) => trace.push(TraceEvent::note("dissolve", format!("{e}"))),
    }
    if out.is_empty() || old_other.len() <= 1 {
        let s = ConnectedMatching::certify(side, old_side, side_id, side_host)?;
        let (r, b) = arrange(s, other_matching);
        out.push((format!("{side} residual branch without old {other} matching"), r, b));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(n: usize, color: Color) -> Coloring {
        Coloring::monochromatic(Hypergraph3::complete(n), color)
    }

    #[test]
    fn monochromatic_covers_floor() {
        for (n, want) in [(12, 12), (13, 12), (14, 12)] {
            for color in Color::BOTH {
                let r = cover(&mono(n, color), 1e-3).unwrap();
                assert_eq!(r.covered, want);
                assert!(r.matching(color.other()).edges.is_empty());
                assert!(verify_cover(&r, &Hypergraph3::complete(n), &mono(n, color)).valid);
            }
        }
    }

    #[test]
    fn certify_rejects_disconnected() {
        let g = Hypergraph3::new(6, [Triple::of(0, 1, 2), Triple::of(3, 4, 5)]).unwrap();
        let err = ConnectedMatching::certify(Color::Red, vec![Triple::of(3, 4, 5), Triple::of(0, 1, 2)], None, &g);
        assert!(matches!(err, Err(MatcherError::Disconnected { .. })));
    }

    #[test]
    fn verifier_flags_corruption() {
        let col = mono(12, Color::Red);
        let r = cover(&col, 1e-3).unwrap();
        assert!(verify_cover(&r, col.host(), &col).valid);

        let path_edge = r.red_matching.certificates[0].edges()[0];
        let recoloured = col.with_color_of(&path_edge, Color::Blue).unwrap();
        let v = verify_cover(&r, recoloured.host(), &recoloured);
        assert!(!v.valid);
        assert!(v.diagnostics.iter().any(|d| d.starts_with("certificate color")));

        let mut overlap = r.clone();
        overlap.blue_matching = ConnectedMatching {
            color: Color::Blue,
            edges: vec![r.red_matching.edges[0]],
            component_id: None,
            certificates: vec![],
        };
        overlap.covered += 3;
        let v = verify_cover(&overlap, col.host(), &col);
        assert!(v.diagnostics.iter().any(|d| d.starts_with("disjointness")));

        let mut miscount = r.clone();
        miscount.covered -= 1;
        let v = verify_cover(&miscount, col.host(), &col);
        assert!(v.diagnostics.iter().any(|d| d.starts_with("covered count")));
    }

    /// Red edges meet `{0..10}` in exactly one vertex; the rest is blue.
    /// Local search can only use ten red edges, so thirty vertices of the
    /// dominant red set stay uncovered and the residual branch fills them
    /// with a blue perfect matching.
    #[test]
    fn residual_branch_completes_cover() {
        let col = Coloring::from_fn(Hypergraph3::complete(60), |t| {
            if t.vertices().iter().filter(|&&v| v < 10).count() == 1 {
                Color::Red
            } else {
                Color::Blue
            }
        });
        let gamma = (1.0f64 / 300.0).powi(6);
        let r = cover(&col, gamma).unwrap();
        assert!(verify_cover(&r, col.host(), &col).valid);
        assert!(r.trace.iter().any(|e| e.stage == "residual"), "{:#?}", r.trace);
        assert_eq!(r.covered, 60);
    }

    #[test]
    fn cover_rejects_bad_gamma_and_empty() {
        assert!(matches!(cover(&mono(6, Color::Red), 0.0), Err(MatcherError::InvalidGamma(_))));
        let tiny = (0.01f64 / 10.0).powi(6);
        assert!(matches!(cover(&mono(9, Color::Red), tiny), Err(MatcherError::CleanupExhausted(_))));
    }

    #[test]
    fn result_roundtrips_through_json() {
        let col = crate::generate::generate(&crate::generate::Model::Uniform(0.5), 10, 7).unwrap();
        let r = cover(&col, 1e-3).unwrap();
        let back: CoverResult = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        assert!(verify_cover(&back, col.host(), &col).valid);
    }
}
