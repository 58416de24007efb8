//! `rcover`: instance generation, solving, oracles, verification and sweeps.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use rcover_core::cycles::{
    loose_from_tight, search_cycle_pair, verify_cycle_pair, verify_loose_cycle, CycleError, CyclePair, CycleSearch,
    LooseCycle, Parity,
};
use rcover_core::generate::{generate, Model};
use rcover_core::io::{read_instance, write_h3bits, write_h3json, FormatError, Instance};
use rcover_core::matcher::{cover, verify_cover, CoverResult, MatcherError};
use rcover_core::oracle::{oracle_cycle_pair, oracle_matching_cover, oracle_perfect_matching, OracleError};
use rcover_core::reduced::{build_reduced, majority_color, BipartiteFamily, DensityEntry, ReducedError};
use rcover_core::{Color, Coloring, Triple, Vertex};

#[derive(Parser)]
#[command(name = "rcover", version, about = "Monochromatic connected matchings and tight cycles in 2-coloured 3-uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a coloured complete instance.
    Gen(GenArgs),
    /// Two disjoint monochromatic connected matchings.
    Solve(SolveArgs),
    /// Disjoint red and blue tight cycles.
    Cycles(CyclesArgs),
    /// Exhaustive optimum for small instances.
    Oracle(OracleArgs),
    /// Check a result file against its instance.
    Verify(VerifyArgs),
    /// Majority-coloured reduced hypergraph from a partition.
    Reduce(ReduceArgs),
    /// Run the matcher over a grid of sizes and seeds.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    Uniform,
    Planted,
    Mono,
}

#[derive(Args, Clone)]
struct ModelArgs {
    #[arg(long, value_enum, default_value = "uniform")]
    model: ModelKind,
    /// Red probability for the uniform model.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Class sizes for the planted model, e.g. `4,4,4`.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Colour for the monochromatic model.
    #[arg(long, default_value = "red")]
    color: String,
}

impl ModelArgs {
    fn model(&self) -> Result<Model> {
        Ok(match self.model {
            ModelKind::Uniform => Model::Uniform(self.p),
            ModelKind::Planted => {
                if self.sizes.is_empty() {
                    bail!("usage: the planted model needs --sizes");
                }
                Model::PlantedPartition(self.sizes.clone())
            }
            ModelKind::Mono => Model::Monochromatic(parse_color(&self.color)?),
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InstanceFormat {
    H3bits,
    H3json,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "h3bits")]
    format: InstanceFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 1e-3)]
    gamma: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CyclesArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 0)]
    max_uncovered: usize,
    /// `red=even|odd|any,blue=even|odd|any`.
    #[arg(long, default_value = "red=any,blue=any")]
    parity: String,
    #[arg(long)]
    budget_ms: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Matching,
    Cycles,
    Perfect,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "matching")]
    kind: OracleKind,
    #[arg(long, default_value_t = 1e-3)]
    gamma: f64,
    #[arg(long, default_value = "red=any,blue=any")]
    parity: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Instance the result was computed on.
    #[arg(long)]
    input: PathBuf,
    /// Result file written by solve, cycles, oracle or reduce.
    result: PathBuf,
}

#[derive(Args)]
struct ReduceArgs {
    /// Red hypergraph: a coloured instance (its red edges are used) or an
    /// uncoloured h3json file.
    #[arg(long)]
    input: PathBuf,
    /// `{classes: [[v..]..], bip: {"i,j": [[x, y]..]}, regular?: [[i, j, k]..]}`.
    #[arg(long)]
    partition: PathBuf,
    /// Reduced hypergraph as h3json; densities go to `<stem>.densities.json`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Instance file used for every seed instead of a generator.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "12")]
    n: Vec<usize>,
    /// Half-open seed range `A..B`.
    #[arg(long, default_value = "0..10")]
    seeds: String,
    #[arg(long, default_value_t = 1e-3)]
    gamma: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_color(s: &str) -> Result<Color> {
    match s.to_ascii_lowercase().as_str() {
        "red" | "r" => Ok(Color::Red),
        "blue" | "b" => Ok(Color::Blue),
        _ => bail!("usage: unknown colour {s:?}"),
    }
}

fn parse_parity(spec: &str) -> Result<(Parity, Parity)> {
    let (mut red, mut blue) = (Parity::Any, Parity::Any);
    for part in spec.split(',').filter(|s| !s.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("usage: parity entries look like red=even, got {part:?}"))?;
        let p: Parity = value.trim().parse()?;
        match key.trim() {
            "red" => red = p,
            "blue" => blue = p,
            other => bail!("usage: unknown parity colour {other:?}"),
        }
    }
    Ok((red, blue))
}

fn parse_seeds(spec: &str) -> Result<std::ops::Range<u64>> {
    let (a, b) = spec
        .split_once("..")
        .ok_or_else(|| anyhow!("usage: --seeds expects A..B, got {spec:?}"))?;
    let range = a.trim().parse()?..b.trim().parse()?;
    if range.is_empty() {
        bail!("usage: seed range {spec:?} is empty");
    }
    Ok(range)
}

fn load_coloring(path: &Path) -> Result<Coloring> {
    let inst = read_instance(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(inst.into_coloring()?)
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            Ok(stdout.flush()?)
        }
    }
}

fn emit_json(out: Option<&Path>, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(out, text.as_bytes())
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Process outcome beyond plain success.
enum Outcome {
    Ok,
    Absent,
}

fn run_gen(a: GenArgs) -> Result<Outcome> {
    let col = generate(&a.model.model()?, a.n, a.seed).map_err(|e| anyhow!("usage: {e}"))?;
    let bytes = match a.format {
        InstanceFormat::H3bits => write_h3bits(&col)?,
        InstanceFormat::H3json => {
            let mut s = write_h3json(&col);
            s.push('\n');
            s.into_bytes()
        }
    };
    emit(a.out.as_deref(), &bytes)?;
    Ok(Outcome::Ok)
}

fn run_solve(a: SolveArgs) -> Result<Outcome> {
    let col = load_coloring(&a.input)?;
    let start = Instant::now();
    let result = cover(&col, a.gamma)?;
    let elapsed = start.elapsed();
    let v = verify_cover(&result, col.host(), &col);
    emit_json(
        a.out.as_deref(),
        &json!({
            "kind": "cover",
            "valid": v.valid,
            "diagnostics": v.diagnostics,
            "result": result,
            "timing": { "solve_ms": millis(elapsed) },
        }),
    )?;
    if !v.valid {
        bail!("solver produced an invalid cover");
    }
    Ok(Outcome::Ok)
}

#[derive(Serialize, Deserialize)]
struct LoosePair {
    red: Option<LooseCycle>,
    blue: Option<LooseCycle>,
}

fn loose_pair(p: &CyclePair) -> LoosePair {
    LoosePair {
        red: loose_from_tight(&p.red).ok(),
        blue: loose_from_tight(&p.blue).ok(),
    }
}

fn run_cycles(a: CyclesArgs) -> Result<Outcome> {
    let col = load_coloring(&a.input)?;
    let (pr, pb) = parse_parity(&a.parity)?;
    let start = Instant::now();
    let found = search_cycle_pair(&col, a.max_uncovered, pr, pb, a.budget_ms.map(Duration::from_millis))?;
    let elapsed = start.elapsed();
    let loose = match &found {
        CycleSearch::Found(p) => Some(loose_pair(p)),
        _ => None,
    };
    emit_json(
        a.out.as_deref(),
        &json!({
            "kind": "cycles",
            "max_uncovered": a.max_uncovered,
            "parity": { "red": pr, "blue": pb },
            "search": found,
            "loose": loose,
            "timing": { "search_ms": millis(elapsed) },
        }),
    )?;
    Ok(match found {
        CycleSearch::Found(_) => Outcome::Ok,
        _ => Outcome::Absent,
    })
}

fn run_oracle(a: OracleArgs) -> Result<Outcome> {
    let inst = read_instance(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let start = Instant::now();
    let (value, outcome) = match a.kind {
        OracleKind::Matching => {
            let r = oracle_matching_cover(inst.coloring()?, a.gamma)?;
            (json!({ "kind": "oracle-matching", "report": r }), Outcome::Ok)
        }
        OracleKind::Cycles => {
            let (pr, pb) = parse_parity(&a.parity)?;
            let r = oracle_cycle_pair(inst.coloring()?, pr, pb)?;
            let outcome = if r.is_some() { Outcome::Ok } else { Outcome::Absent };
            (
                json!({ "kind": "oracle-cycles", "parity": { "red": pr, "blue": pb }, "report": r }),
                outcome,
            )
        }
        OracleKind::Perfect => {
            let exists = oracle_perfect_matching(inst.host())?;
            let outcome = if exists { Outcome::Ok } else { Outcome::Absent };
            (json!({ "kind": "oracle-perfect", "exists": exists }), outcome)
        }
    };
    let mut value = value;
    value["timing"] = json!({ "oracle_ms": millis(start.elapsed()) });
    emit_json(a.out.as_deref(), &value)?;
    Ok(outcome)
}

#[derive(Deserialize)]
struct PartitionDoc {
    classes: Vec<Vec<Vertex>>,
    #[serde(default)]
    bip: std::collections::BTreeMap<String, Vec<(Vertex, Vertex)>>,
    #[serde(default)]
    regular: Option<Vec<Triple>>,
}

fn parse_bip(raw: &std::collections::BTreeMap<String, Vec<(Vertex, Vertex)>>) -> Result<BipartiteFamily> {
    let mut out = BipartiteFamily::new();
    for (key, pairs) in raw {
        let (i, j) = key
            .split_once(',')
            .ok_or_else(|| anyhow!("input: bip key {key:?} is not \"i,j\""))?;
        let (i, j): (usize, usize) = (i.trim().parse()?, j.trim().parse()?);
        out.insert((i.min(j), i.max(j)), pairs.clone());
    }
    Ok(out)
}

fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.densities.json"))
}

fn run_reduce(a: ReduceArgs) -> Result<Outcome> {
    let h_red = match read_instance(&a.input).with_context(|| format!("reading {}", a.input.display()))? {
        Instance::Plain(h) => h,
        Instance::Coloured(c) => c.subgraph(Color::Red),
    };
    let text = fs::read_to_string(&a.partition).with_context(|| format!("reading {}", a.partition.display()))?;
    let doc: PartitionDoc = serde_json::from_str(&text).context("input: partition document")?;
    let bip = parse_bip(&doc.bip)?;
    let start = Instant::now();
    let r = build_reduced(&doc.classes, &bip, &h_red, doc.regular.as_deref())?;
    let elapsed = start.elapsed();
    let mut h3 = write_h3json(&r.coloring);
    h3.push('\n');
    fs::write(&a.out, h3).with_context(|| format!("writing {}", a.out.display()))?;
    emit_json(
        Some(&sidecar_path(&a.out)),
        &json!({
            "kind": "reduced",
            "t": r.t(),
            "densities": r.density_entries(),
            "timing": { "reduce_ms": millis(elapsed) },
        }),
    )?;
    Ok(Outcome::Ok)
}

fn report(problems: &[String]) -> Result<Outcome> {
    if problems.is_empty() {
        println!("valid");
        Ok(Outcome::Ok)
    } else {
        for p in problems {
            println!("{p}");
        }
        bail!("invalid: {} problem(s)", problems.len())
    }
}

fn field<T: serde::de::DeserializeOwned>(v: &Value, key: &str) -> Result<T> {
    let inner = v.get(key).ok_or_else(|| anyhow!("input: result has no {key:?} field"))?;
    Ok(serde_json::from_value(inner.clone()).with_context(|| format!("input: field {key:?}"))?)
}

fn check_loose(loose: Option<LoosePair>, pair: &CyclePair, col: &Coloring, problems: &mut Vec<String>) {
    let Some(loose) = loose else {
        return;
    };
    for (color, l, tight) in [(Color::Red, loose.red, &pair.red), (Color::Blue, loose.blue, &pair.blue)] {
        if let Some(l) = l {
            if !verify_loose_cycle(&l, col, color) {
                problems.push(format!("{color} loose cycle fails verification"));
            }
            let mut got: Vec<Vertex> = l.vertices(col.host().n()).iter().collect();
            let mut want = tight.order.clone();
            got.sort_unstable();
            want.sort_unstable();
            if got != want {
                problems.push(format!("{color} loose cycle does not cover its tight cycle"));
            }
        }
    }
}

fn run_verify(a: VerifyArgs) -> Result<Outcome> {
    let text = fs::read_to_string(&a.result).with_context(|| format!("reading {}", a.result.display()))?;
    let v: Value = serde_json::from_str(&text).context("input: result is not JSON")?;
    let kind = v.get("kind").and_then(Value::as_str).unwrap_or_default().to_string();
    let inst = read_instance(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let mut problems = Vec::new();
    match kind.as_str() {
        "cover" => {
            let col = inst.coloring()?;
            let r: CoverResult = field(&v, "result")?;
            problems = verify_cover(&r, col.host(), col).diagnostics;
        }
        "cycles" => {
            let col = inst.coloring()?;
            match field::<CycleSearch>(&v, "search")? {
                CycleSearch::Found(p) => {
                    let max: usize = field(&v, "max_uncovered")?;
                    let parity: Value = field(&v, "parity")?;
                    let pr: Parity = field(&parity, "red")?;
                    let pb: Parity = field(&parity, "blue")?;
                    problems = verify_cycle_pair(&p, col);
                    if p.uncovered.len() > max {
                        problems.push(format!("{} uncovered exceeds {max}", p.uncovered.len()));
                    }
                    if !pr.admits(p.red.len()) || !pb.admits(p.blue.len()) {
                        problems.push("cycle lengths violate the requested parities".into());
                    }
                    check_loose(field(&v, "loose")?, &p, col, &mut problems);
                }
                _ => {
                    println!("no cycle pair to check");
                    return Ok(Outcome::Absent);
                }
            }
        }
        "oracle-matching" => {
            let col = inst.coloring()?;
            let r: CoverResult = field(&field::<Value>(&v, "report")?, "witness")?;
            let optimum: usize = field(&field::<Value>(&v, "report")?, "optimum")?;
            problems = verify_cover(&r, col.host(), col).diagnostics;
            if r.covered != optimum {
                problems.push("covered count: witness does not attain the optimum".into());
            }
        }
        "oracle-cycles" => {
            let col = inst.coloring()?;
            let report: Option<Value> = field(&v, "report")?;
            let Some(report) = report else {
                println!("no cycle pair to check");
                return Ok(Outcome::Absent);
            };
            let w: CyclePair = field(&report, "witness")?;
            let optimum: usize = field(&report, "optimum")?;
            problems = verify_cycle_pair(&w, col);
            if w.uncovered.len() != optimum {
                problems.push("witness does not attain the optimum".into());
            }
        }
        "oracle-perfect" => {
            let claimed: bool = field(&v, "exists")?;
            if oracle_perfect_matching(inst.host())? != claimed {
                problems.push("perfect matching existence differs on recomputation".into());
            }
        }
        "reduced" => {
            let col = inst.coloring()?;
            let entries: Vec<DensityEntry> = field(&v, "densities")?;
            let host_edges = col.host().edges();
            if entries.len() != host_edges.len() {
                problems.push("density list does not match the edge list".into());
            }
            for (e, d) in host_edges.iter().zip(&entries) {
                if *e != d.edge {
                    problems.push(format!("density entry {} out of order at {e}", d.edge));
                    continue;
                }
                if d.denominator == 0 || d.numerator > d.denominator {
                    problems.push(format!("density of {e} is not in [0, 1]"));
                    continue;
                }
                let expect = majority_color(rcover_core::reduced::Ratio::new(d.numerator, d.denominator));
                if col.color_of(e) != Some(expect) {
                    problems.push(format!("{e} is coloured against its density"));
                }
            }
        }
        other => bail!("input: unknown result kind {other:?}"),
    }
    report(&problems)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct RunRecord {
    seed: u64,
    n: usize,
    gamma: f64,
    covered: usize,
    uncovered_count: usize,
    valid: bool,
}

fn sweep_one(model: &Model, file: Option<&Coloring>, n: usize, seed: u64, gamma: f64) -> Result<(RunRecord, f64)> {
    let col = match file {
        Some(c) => c.clone(),
        None => generate(model, n, seed).map_err(|e| anyhow!("usage: {e}"))?,
    };
    let start = Instant::now();
    let r = cover(&col, gamma)?;
    let ms = millis(start.elapsed());
    let valid = verify_cover(&r, col.host(), &col).valid;
    Ok((
        RunRecord {
            seed,
            n: col.host().n(),
            gamma,
            covered: r.covered,
            uncovered_count: r.uncovered.len(),
            valid,
        },
        ms,
    ))
}

fn run_sweep(a: SweepArgs) -> Result<Outcome> {
    let model = a.model.model()?;
    let seeds = parse_seeds(&a.seeds)?;
    let file = a.input.as_deref().map(load_coloring).transpose()?;
    let sizes = if file.is_some() { vec![file.as_ref().unwrap().host().n()] } else { a.n.clone() };
    let jobs: Vec<(usize, u64)> = sizes.iter().flat_map(|&n| seeds.clone().map(move |s| (n, s))).collect();
    let start = Instant::now();
    // Collecting an indexed parallel iterator keeps job order.
    let rows: Vec<(RunRecord, f64)> = jobs
        .par_iter()
        .map(|&(n, s)| sweep_one(&model, file.as_ref(), n, s, a.gamma))
        .collect::<Result<_>>()?;
    let total = millis(start.elapsed());
    let all_valid = rows.iter().all(|(r, _)| r.valid);
    match a.format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["seed", "n", "gamma", "covered", "uncovered_count", "valid", "time_ms"])?;
            for (r, ms) in &rows {
                w.write_record([
                    r.seed.to_string(),
                    r.n.to_string(),
                    r.gamma.to_string(),
                    r.covered.to_string(),
                    r.uncovered_count.to_string(),
                    r.valid.to_string(),
                    format!("{ms:.3}"),
                ])?;
            }
            emit(a.out.as_deref(), &w.into_inner()?)?;
        }
        TableFormat::Json => {
            let records: Vec<&RunRecord> = rows.iter().map(|(r, _)| r).collect();
            let times: Vec<f64> = rows.iter().map(|(_, t)| *t).collect();
            emit_json(
                a.out.as_deref(),
                &json!({
                    "kind": "sweep",
                    "records": records,
                    "timing": { "total_ms": total, "record_ms": times },
                }),
            )?;
        }
    }
    if !all_valid {
        bail!("sweep produced invalid covers");
    }
    Ok(Outcome::Ok)
}

/// Short class name for the error, so each failure kind prints a distinct
/// prefix.
fn classify(e: &anyhow::Error) -> &'static str {
    for cause in e.chain() {
        if cause.is::<FormatError>() || cause.is::<serde_json::Error>() || cause.is::<std::io::Error>() {
            return "input error";
        }
        if let Some(o) = cause.downcast_ref::<OracleError>() {
            return match o {
                OracleError::TooLarge { .. } => "instance too large",
                _ => "oracle error",
            };
        }
        if let Some(c) = cause.downcast_ref::<CycleError>() {
            return match c {
                CycleError::TooLarge { .. } => "instance too large",
                _ => "usage error",
            };
        }
        if cause.is::<MatcherError>() {
            return "solver error";
        }
        if cause.is::<ReducedError>() {
            return "reduce error";
        }
    }
    "error"
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("RCOVER_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // Only fails if a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
    }
    let outcome = match cli.command {
        Command::Gen(a) => run_gen(a),
        Command::Solve(a) => run_solve(a),
        Command::Cycles(a) => run_cycles(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Verify(a) => run_verify(a),
        Command::Reduce(a) => run_reduce(a),
        Command::Sweep(a) => run_sweep(a),
    };
    match outcome {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Absent) => ExitCode::from(2),
        Err(e) => {
            eprintln!("rcover: {}: {e:#}", classify(&e));
            ExitCode::from(1)
        }
    }
}
