//! One line per criterion: `criterion N: PASS|FAIL ...`.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rcover_core::cycles::{
    loose_from_tight, search_cycle_pair, verify_loose_cycle, verify_tight_cycle, CycleSearch, LooseCycle, Parity,
    TightCycle,
};
use rcover_core::generate::{generate, splitmix64, unit_f64, Model};
use rcover_core::matcher::{clean, cover, verify_cover, MatcherError, Params};
use rcover_core::oracle::{oracle_cycle_pair, oracle_matching_cover};
use rcover_core::reduced::{density, density_tuple, Ratio, Triad};
use rcover_core::{Color, Coloring, Hypergraph3, Triple};
use serde_json::Value;

struct Rng {
    seed: u64,
    counter: u64,
}

impl Rng {
    fn new(seed: u64) -> Self {
        Self { seed, counter: 0 }
    }

    fn unit(&mut self) -> f64 {
        self.counter += 1;
        unit_f64(self.seed, self.counter)
    }

    fn below(&mut self, k: usize) -> usize {
        self.counter += 1;
        (splitmix64(self.seed, self.counter) % k as u64) as usize
    }

    fn bool(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    fn shuffle<T>(&mut self, v: &mut [T]) {
        for i in (1..v.len()).rev() {
            v.swap(i, self.below(i + 1));
        }
    }
}

fn line(n: usize, pass: bool, detail: String) {
    println!("criterion {n}: {} {detail}", if pass { "PASS" } else { "FAIL" });
}

fn all_triples(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (2..n).flat_map(move |c| (1..c).flat_map(move |b| (0..b).map(move |a| [a, b, c])))
}

#[test]
fn criterion_1_validity_suite() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut runs = 0;
    for n in [12usize, 24, 36] {
        for gamma in [1e-3, 1e-6] {
            for seed in 0..1000 {
                let col = generate(&Model::Uniform(0.5), n, seed).unwrap();
                let r = cover(&col, gamma).unwrap();
                if !verify_cover(&r, col.host(), &col).valid {
                    failures.push((n, gamma, seed));
                }
                runs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(600);
    line(1, pass, format!("{runs} runs, {} invalid, {:.1}s", failures.len(), elapsed.as_secs_f64()));
    assert!(pass, "invalid covers: {failures:?}");
}

/// Frozen from calibration: every instance met the optimum at n = 7 and 8.
const ORACLE_EQUAL_FLOOR: f64 = 1.0;

#[test]
fn criterion_2_oracle_slack() {
    let mut worst_gap = 0;
    let mut equal = 0;
    let mut total = 0;
    for n in [7usize, 8] {
        for seed in 0..200 {
            let col = generate(&Model::Uniform(0.5), n, seed).unwrap();
            let got = cover(&col, 1e-3).unwrap().covered;
            let opt = oracle_matching_cover(&col, 1e-3).unwrap().optimum;
            assert!(got <= opt, "n {n} seed {seed}: {got} above optimum {opt}");
            worst_gap = worst_gap.max(opt - got);
            equal += usize::from(got == opt);
            total += 1;
        }
    }
    let rate = equal as f64 / total as f64;
    let pass = worst_gap <= 6 && rate >= 0.5 && rate >= ORACLE_EQUAL_FLOOR;
    line(2, pass, format!("worst gap {worst_gap}, equal on {equal}/{total} ({:.1}%)", rate * 100.0));
    assert!(pass);
}

#[test]
fn criterion_3_monochromatic_exactness() {
    let mut bad = Vec::new();
    for n in 6..=30 {
        for color in Color::BOTH {
            let col = Coloring::monochromatic(Hypergraph3::complete(n), color);
            let r = cover(&col, 1e-3).unwrap();
            if r.covered != n - n % 3 || !r.matching(color.other()).edges.is_empty() {
                bad.push((n, color));
            }
        }
    }
    line(3, bad.is_empty(), format!("50 instances, {} wrong", bad.len()));
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn criterion_4_cycle_search_exactness() {
    let parities = [(Parity::Any, Parity::Any), (Parity::Even, Parity::Any), (Parity::Odd, Parity::Odd)];
    let mut mismatches = Vec::new();
    let mut slowest = Duration::ZERO;
    let mut checked = 0;
    for n in [5usize, 6, 7] {
        for seed in 0..50 {
            let col = generate(&Model::Uniform(0.5), n, seed).unwrap();
            for (pr, pb) in parities {
                let t = Instant::now();
                let oracle = oracle_cycle_pair(&col, pr, pb).unwrap().map(|o| o.optimum);
                slowest = slowest.max(t.elapsed());
                for mu in 0..4 {
                    let t = Instant::now();
                    let got = search_cycle_pair(&col, mu, pr, pb, None).unwrap();
                    slowest = slowest.max(t.elapsed());
                    let agree = match (oracle, &got) {
                        (Some(o), CycleSearch::Found(p)) => o <= mu && p.uncovered.len() == o,
                        (Some(o), CycleSearch::Absent { best_uncovered }) => o > mu && *best_uncovered == Some(o),
                        (None, CycleSearch::Absent { best_uncovered }) => best_uncovered.is_none(),
                        _ => false,
                    };
                    if !agree {
                        mismatches.push((n, seed, pr, pb, mu));
                    }
                    checked += 1;
                }
            }
        }
    }
    let pass = mismatches.is_empty() && slowest < Duration::from_secs(30);
    line(
        4,
        pass,
        format!("{checked} cases, {} mismatches, slowest {:.1}ms", mismatches.len(), slowest.as_secs_f64() * 1e3),
    );
    assert!(pass, "{mismatches:?}");
}

/// Loose-cycle conditions checked from scratch.
fn loose_ok(c: &LooseCycle, col: &Coloring, color: Color) -> bool {
    let m = c.edges.len();
    if m < 3 || c.edges.iter().any(|e| col.color_of(e) != Some(color)) {
        return false;
    }
    (0..m).all(|i| {
        (0..m).filter(|&j| j != i).all(|j| {
            let shared = c.edges[i].intersection_len(&c.edges[j]);
            let adjacent = j == (i + 1) % m || i == (j + 1) % m;
            if adjacent {
                shared == 1
            } else {
                shared == 0
            }
        })
    })
}

#[test]
fn criterion_5_loose_extraction() {
    let mut bad = Vec::new();
    let mut total = 0;
    for l in (6..=30).step_by(2) {
        for s in 0..500u64 {
            let mut rng = Rng::new(s * 31 + l as u64);
            let n = l + rng.below(6);
            let color = if rng.bool(0.5) { Color::Red } else { Color::Blue };
            let mut verts: Vec<usize> = (0..n).collect();
            rng.shuffle(&mut verts);
            let cycle = TightCycle::new(verts[..l].to_vec());
            let on_cycle: BTreeSet<Triple> = cycle.edges().into_iter().collect();
            let mut edges: BTreeSet<Triple> = on_cycle.clone();
            for [a, b, c] in all_triples(n) {
                if rng.bool(0.1) {
                    edges.insert(Triple::of(a, b, c));
                }
            }
            let host = Hypergraph3::new(n, edges.into_iter().collect::<Vec<_>>()).unwrap();
            let col = Coloring::from_fn(host, |e| {
                if on_cycle.contains(e) || rng.bool(0.5) {
                    color
                } else {
                    color.other()
                }
            });
            assert!(verify_tight_cycle(&cycle, &col, color));
            let loose = loose_from_tight(&cycle).unwrap();
            let mut covered: Vec<usize> = loose.edges.iter().flat_map(|e| e.vertices()).collect();
            covered.sort_unstable();
            covered.dedup();
            let mut want = cycle.order.clone();
            want.sort_unstable();
            if !(verify_loose_cycle(&loose, &col, color) && loose_ok(&loose, &col, color) && covered == want) {
                bad.push((l, s));
            }
            total += 1;
        }
    }
    line(5, bad.is_empty(), format!("{total} cycles, {} failures", bad.len()));
    assert!(bad.is_empty(), "{bad:?}");
}

/// `T(P)` by testing all six vertex-to-class assignments of every triple.
fn brute_triangles(classes: &[Vec<usize>; 3], parts: &[BTreeSet<(usize, usize)>; 3], n: usize) -> BTreeSet<Triple> {
    let member = |v: usize| classes.iter().position(|c| c.contains(&v));
    let joined = |u: usize, v: usize| {
        parts.iter().any(|p| p.contains(&(u, v)) || p.contains(&(v, u)))
    };
    all_triples(n)
        .filter(|t| {
            let cls: Vec<Option<usize>> = t.iter().map(|&v| member(v)).collect();
            let mut seen: Vec<usize> = cls.iter().flatten().copied().collect();
            seen.sort_unstable();
            seen == [0, 1, 2] && joined(t[0], t[1]) && joined(t[0], t[2]) && joined(t[1], t[2])
        })
        .map(|[a, b, c]| Triple::of(a, b, c))
        .collect()
}

fn ratio(h: &Hypergraph3, tris: &BTreeSet<Triple>) -> Option<Ratio<u64>> {
    if tris.is_empty() {
        return None;
    }
    Some(Ratio::new(tris.iter().filter(|t| h.contains(t)).count() as u64, tris.len() as u64))
}

#[test]
fn criterion_6_density_exactness() {
    let mut bad = Vec::new();
    for seed in 0..50u64 {
        let mut rng = Rng::new(9000 + seed);
        let sizes = [1 + rng.below(30), 1 + rng.below(30), 1 + rng.below(30)];
        let n: usize = sizes.iter().sum();
        let mut next = 0;
        let classes = sizes.map(|s| {
            let c: Vec<usize> = (next..next + s).collect();
            next += s;
            c
        });
        let p_pair = 0.3 + 0.7 * rng.unit();
        let mut full: [BTreeSet<(usize, usize)>; 3] = Default::default();
        let mut split: [[BTreeSet<(usize, usize)>; 3]; 2] = Default::default();
        for (slot, (a, b)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            for &x in &classes[a] {
                for &y in &classes[b] {
                    if rng.bool(p_pair) {
                        full[slot].insert((x, y));
                        let which = rng.below(3);
                        if which != 1 {
                            split[0][slot].insert((x, y));
                        }
                        if which != 0 {
                            split[1][slot].insert((x, y));
                        }
                    }
                }
            }
        }
        let triad = |parts: &[BTreeSet<(usize, usize)>; 3]| {
            Triad::new(classes.clone(), parts.clone().map(|s| s.into_iter().collect())).unwrap()
        };
        let p = triad(&full);
        let qs = [triad(&split[0]), triad(&split[1])];
        let red_p = 0.2 + 0.6 * rng.unit();
        let col = Coloring::from_fn(Hypergraph3::complete(n), |_| if rng.bool(red_p) { Color::Red } else { Color::Blue });
        let (red, blue) = (col.subgraph(Color::Red), col.subgraph(Color::Blue));

        let tris = brute_triangles(&classes, &full, n);
        let union: BTreeSet<Triple> =
            brute_triangles(&classes, &split[0], n).union(&brute_triangles(&classes, &split[1], n)).copied().collect();
        let ok = density(&red, &p).ok() == ratio(&red, &tris)
            && density_tuple(&red, &qs).ok() == ratio(&red, &union)
            && match (density(&red, &p), density(&blue, &p)) {
                (Ok(r), Ok(b)) => r + b == Ratio::from_integer(1),
                (Err(_), Err(_)) => tris.is_empty(),
                _ => false,
            };
        if !ok {
            bad.push(seed);
        }
    }
    line(6, bad.is_empty(), format!("50 triads, {} mismatches", bad.len()));
    assert!(bad.is_empty(), "{bad:?}");
}

/// Both cleanup properties with links recounted from the edge list.
fn clean_properties_hold(k: &Hypergraph3, gamma: f64) -> bool {
    let delta = 10.0 * gamma.powf(1.0 / 6.0);
    let verts: Vec<usize> = k.vertices().iter().collect();
    let t = verts.len();
    let mut link = std::collections::BTreeMap::<(usize, usize), usize>::new();
    for e in k.edges() {
        for (x, y) in e.pairs() {
            *link.entry((x, y)).or_default() += 1;
        }
    }
    let every_vertex_active = verts.iter().all(|&v| link.keys().any(|&(x, y)| x == v || y == v));
    let links_large = link.values().all(|&len| len as f64 >= (1.0 - delta) * t as f64 - 1e-9);
    every_vertex_active && links_large
}

#[test]
fn criterion_7_cleanup_fixpoint() {
    let mut bad = Vec::new();
    let mut exhausted = 0;
    let mut total = 0;
    for gamma in [1e-2, 1e-4] {
        let params = Params::new(gamma).unwrap();
        for s in 0..250u64 {
            let mut rng = Rng::new(70_000 + s + (gamma * 1e6) as u64);
            let n = 3 + rng.below(38);
            let mut edges: Vec<Triple> = all_triples(n).map(|[a, b, c]| Triple::of(a, b, c)).collect();
            let missing = (gamma * rng.unit() * edges.len() as f64) as usize;
            rng.shuffle(&mut edges);
            edges.truncate(edges.len() - missing);
            edges.sort_unstable();
            let h = Hypergraph3::new(n, edges).unwrap();
            assert!(h.edge_count() as f64 >= (1.0 - gamma) * (n * (n - 1) * (n - 2) / 6) as f64 - 1e-9);
            total += 1;
            match clean(&h, &params) {
                Ok((k, _)) => {
                    if !clean_properties_hold(&k, gamma) || !k.edges().iter().all(|e| h.contains(e)) {
                        bad.push((gamma, s));
                    }
                }
                Err(MatcherError::CleanupExhausted(_)) => exhausted += 1,
                Err(e) => panic!("{e}"),
            }
        }
    }
    let pass = bad.is_empty() && exhausted == 0;
    line(7, pass, format!("{total} instances, {} violations, {exhausted} exhausted", bad.len()));
    assert!(pass, "{bad:?}");
}

#[test]
fn criterion_8_performance_floor() {
    let mut slowest = Duration::ZERO;
    for seed in 0..3 {
        let col = generate(&Model::Uniform(0.5), 60, seed).unwrap();
        assert_eq!(col.host().edge_count(), 34_220);
        let t = Instant::now();
        let r = cover(&col, 1e-3).unwrap();
        slowest = slowest.max(t.elapsed());
        assert!(verify_cover(&r, col.host(), &col).valid);
    }
    let pass = slowest < Duration::from_secs(10);
    line(8, pass, format!("K_60 slowest {:.3}s", slowest.as_secs_f64()));
    assert!(pass);
}

fn run(args: &[&str], threads: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_rcover"))
        .args(args)
        .env("RCOVER_THREADS", threads)
        .output()
        .expect("spawn rcover");
    assert!(matches!(out.status.code(), Some(0) | Some(2)), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn without_timing(bytes: &[u8]) -> Value {
    let mut v: Value = serde_json::from_slice(bytes).expect("JSON artifact");
    if let Some(o) = v.as_object_mut() {
        o.remove("timing");
    }
    v
}

#[test]
fn criterion_9_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let mut diffs = Vec::new();

    let matrix = ["sweep", "--n", "12,24,36", "--seeds", "0..1000", "--format", "json"];
    for gamma in ["1e-3", "1e-6"] {
        let args: Vec<&str> = matrix.iter().copied().chain(["--gamma", gamma]).collect();
        let (a, b) = (run(&args, "1"), run(&args, "4"));
        if without_timing(&a) != without_timing(&b) {
            diffs.push(format!("sweep gamma {gamma}"));
        }
        let records = without_timing(&a)["records"].as_array().map_or(0, Vec::len);
        assert_eq!(records, 3000);
    }

    for seed in ["0", "1", "2"] {
        for fmt in ["h3bits", "h3json"] {
            let args = ["gen", "--n", "9", "--seed", seed, "--format", fmt];
            if run(&args, "1") != run(&args, "2") {
                diffs.push(format!("gen {seed} {fmt}"));
            }
        }
        let inst = path(&format!("u{seed}.json"));
        run(&["gen", "--n", "7", "--seed", seed, "--format", "h3json", "--out", &inst], "1");
        for args in [
            vec!["solve", "--input", &inst],
            vec!["cycles", "--input", &inst, "--max-uncovered", "3"],
            vec!["oracle", "--input", &inst, "--kind", "matching"],
            vec!["oracle", "--input", &inst, "--kind", "cycles", "--parity", "red=odd,blue=odd"],
        ] {
            if without_timing(&run(&args, "1")) != without_timing(&run(&args, "2")) {
                diffs.push(format!("{args:?}"));
            }
        }
        let csv_args = ["sweep", "--n", "12", "--seeds", "0..50"];
        let strip = |b: Vec<u8>| -> Vec<String> {
            String::from_utf8(b).unwrap().lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect()
        };
        if strip(run(&csv_args, "1")) != strip(run(&csv_args, "3")) {
            diffs.push("sweep csv".into());
        }
    }

    let part = path("part.json");
    std::fs::write(&part, r#"{"classes": [[0,1],[2,3],[4,5],[6]], "bip": {"0,1": [[0,2],[1,3]], "0,2": [[0,4],[1,5]], "1,2": [[2,4],[3,5]], "0,3": [[0,6]], "1,3": [[2,6]]}}"#).unwrap();
    let mut sides = Vec::new();
    for (i, threads) in ["1", "2"].into_iter().enumerate() {
        let out = path(&format!("r{i}.json"));
        run(&["reduce", "--input", &path("u0.json"), "--partition", &part, "--out", &out], threads);
        sides.push((std::fs::read(&out).unwrap(), without_timing(&std::fs::read(path(&format!("r{i}.densities.json"))).unwrap())));
    }
    if sides[0] != sides[1] {
        diffs.push("reduce".into());
    }

    line(9, diffs.is_empty(), format!("{} differing artifacts", diffs.len()));
    assert!(diffs.is_empty(), "{diffs:?}");
}
