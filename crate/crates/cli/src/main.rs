mod exit;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use plbm::exactnum::{PrecisionPolicy, SubgadgetKind, WeightSet};
use plbm::gadgets::{
    build_crossing_gadget, build_subgadget, check_printed_expansion, constants_dump,
    verify_constants, verify_crossing_gadget, verify_subgadget, CrossingVerification,
    IdentityReport,
};
use plbm::graph::{
    circular_layout, graph_to_json, graph_to_value, parse_graph, Drawing, Graph, GraphFileError,
};
use plbm::matching::{
    count_matchings, enumerate_matchings, matching_polynomial_with, size_distribution,
    EngineConfig, WeightAssignment, DEFAULT_ORACLE_BOUND,
};
use plbm::poly::MultiPoly;
use plbm::reductions::{
    build_gi, count_matchings_via_pendant, count_via_reduction_with, eliminate_weight,
    replace_crossings, ReductionOptions,
};
use plbm::ring::Ring;

use exit::Failure;

#[derive(Parser)]
#[command(name = "plbm", version, about = "Matching polynomials, crossing gadgets and counting reductions")]
struct Cli {
    /// Print human-readable tables instead of JSON where available.
    #[arg(long, global = true)]
    pretty: bool,
    /// Node budget of the matching recursion.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Weights {
    Published,
    Corrected,
}

impl From<Weights> for WeightSet {
    fn from(w: Weights) -> Self {
        match w {
            Weights::Published => WeightSet::Published,
            Weights::Corrected => WeightSet::Corrected,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    Constants,
    Expansion,
    Delta1,
    Delta2,
    Crossing,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountMode {
    Direct,
    Maximum,
    ViaReduction,
    Pendant,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitWhat {
    Delta1,
    Delta2,
    Crossing,
    G1,
    Gi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceWhat {
    Crossings,
}

#[derive(Subcommand)]
enum Command {
    /// Check the gadget identities and constant residuals.
    Verify {
        target: VerifyTarget,
        #[arg(long, default_value_t = 256)]
        precision: u32,
        #[arg(long, value_enum, default_value = "published")]
        weights: Weights,
        /// Skip the direct recursion over the full crossing gadget.
        #[arg(long)]
        no_direct: bool,
    },
    /// Dump a, b, c of both sub-gadgets, C1, C2 and C.
    Constants {
        #[arg(long, default_value_t = 128)]
        precision: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, value_enum, default_value = "published")]
        weights: Weights,
    },
    /// Count matchings or maximum matchings of a graph file.
    Count {
        mode: CountMode,
        file: PathBuf,
        /// Layout seed when the file has no coordinates.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Starting precision in bits.
        #[arg(long, default_value_t = 128)]
        precision: u32,
        #[arg(long, value_enum, default_value = "published")]
        weights: Weights,
        /// Cross-check against brute-force enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Write a graph in the JSON graph format.
    Emit {
        what: EmitWhat,
        file: Option<PathBuf>,
        #[arg(long)]
        tag: Option<String>,
        #[arg(long = "i")]
        i: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replace every crossing of a drawing by a crossing gadget.
    Reduce {
        what: ReduceWhat,
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Eliminate one weight tag by interpolation.
    Eliminate {
        #[arg(long)]
        tag: String,
        file: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::PARSE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::classify(&e))
        }
    }
}

fn engine(cli: &Cli) -> EngineConfig {
    cli.budget.map(EngineConfig::with_budget).unwrap_or_default()
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value serializes"));
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Verify { target, precision, weights, no_direct } => {
            verify(cli, *target, *precision, (*weights).into(), !no_direct)
        }
        Command::Constants { precision, format, weights } => {
            let dump = constants_dump((*weights).into(), *precision)?;
            match format {
                Format::Json => print_json(&dump),
                Format::Table => print!("{}", verify_constants((*weights).into(), *precision)?),
            }
            Ok(())
        }
        Command::Count { mode, file, seed, precision, weights, oracle } => {
            count(cli, *mode, file, *seed, *precision, (*weights).into(), *oracle)
        }
        Command::Emit { what, file, tag, i, seed, output } => {
            emit(*what, file.as_deref(), tag.as_deref(), *i, *seed, output.as_deref())
        }
        Command::Reduce { what: ReduceWhat::Crossings, file, seed, output } => {
            reduce(file, *seed, output.as_deref())
        }
        Command::Eliminate { tag, file } => eliminate(cli, tag, file),
    }
}

fn load(path: &Path) -> Result<(Graph, Option<Drawing>)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).map_err(|e: GraphFileError| anyhow!(e).context(format!("parsing {}", path.display())))
}

fn load_drawn(path: &Path, seed: u64) -> Result<(Graph, Drawing, Option<u64>)> {
    let (g, d) = load(path)?;
    Ok(match d {
        Some(d) => (g, d, None),
        None => {
            let (d, used) = circular_layout(&g, seed)?;
            (g, d, Some(used))
        }
    })
}

fn write_or_print(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn expansion_json() -> (bool, Value) {
    let check = check_printed_expansion();
    let equal = check.equal();
    (
        equal,
        json!({
            "name": "gadget polynomial vs printed expansion",
            "verdict": if equal { "pass" } else { "fail" },
            "computed_terms": check.computed.len(),
            "difference": check.difference.to_string(),
        }),
    )
}

fn crossing_json(v: &CrossingVerification) -> Value {
    json!({
        "name": v.composed.name,
        "verdict": if v.passed() { "pass" } else { "fail" },
        "composed": v.composed.to_json(),
        "direct": v.direct.as_ref().map(IdentityReport::to_json),
        "disagreements": v.disagreements,
        "asymmetries": v.asymmetries,
    })
}

fn verify(cli: &Cli, target: VerifyTarget, precision: u32, set: WeightSet, direct: bool) -> Result<()> {
    let mut reports: Vec<IdentityReport> = Vec::new();
    let mut json_out = Vec::new();
    let mut passed = true;
    let mut imprecise_only = true;
    let note = |r: &IdentityReport, json_out: &mut Vec<Value>, passed: &mut bool, imprecise_only: &mut bool| {
        if !r.passed() {
            *passed = false;
            *imprecise_only &= r.only_imprecise();
        }
        json_out.push(r.to_json());
    };
    let all = matches!(target, VerifyTarget::All);
    if all || matches!(target, VerifyTarget::Constants) {
        let r = verify_constants(set, precision)?;
        note(&r, &mut json_out, &mut passed, &mut imprecise_only);
        reports.push(r);
    }
    let mut expansion_text = None;
    if all || matches!(target, VerifyTarget::Expansion) {
        let (equal, v) = expansion_json();
        if !equal {
            passed = false;
            imprecise_only = false;
        }
        expansion_text = Some(format!(
            "{}: {}\n  computed - printed = {}\n",
            v["name"].as_str().unwrap_or_default(),
            if equal { "PASS" } else { "FAIL" },
            v["difference"].as_str().unwrap_or_default()
        ));
        json_out.push(v);
    }
    for (t, kind) in [(VerifyTarget::Delta1, SubgadgetKind::Delta1), (VerifyTarget::Delta2, SubgadgetKind::Delta2)] {
        if all || std::mem::discriminant(&target) == std::mem::discriminant(&t) {
            let r = verify_subgadget(kind, set, precision)?;
            note(&r, &mut json_out, &mut passed, &mut imprecise_only);
            reports.push(r);
        }
    }
    let mut crossing_extra = None;
    if all || matches!(target, VerifyTarget::Crossing) {
        let v = verify_crossing_gadget(set, precision, direct)?;
        if !v.passed() {
            passed = false;
            let narrow = v.composed.first_failure().is_some()
                || v.direct.as_ref().is_some_and(|d| d.first_failure().is_some())
                || !v.disagreements.is_empty()
                || !v.asymmetries.is_empty();
            imprecise_only &= !narrow;
        }
        json_out.push(crossing_json(&v));
        crossing_extra = Some(format!(
            "  composed/direct disagreements: {:?}\n  symmetry violations: {:?}\n",
            v.disagreements, v.asymmetries
        ));
        reports.push(v.composed.clone());
        if let Some(d) = v.direct {
            reports.push(d);
        }
    }
    if cli.pretty {
        if let Some(t) = expansion_text {
            print!("{t}");
        }
        for r in &reports {
            print!("{r}");
        }
        if let Some(t) = crossing_extra {
            print!("{t}");
        }
    } else if json_out.len() == 1 {
        print_json(&json_out[0]);
    } else {
        print_json(&json!({
            "verdict": if passed { "pass" } else { "fail" },
            "reports": json_out,
        }));
    }
    if passed {
        Ok(())
    } else if imprecise_only {
        Err(Failure::resource("verification inconclusive at this precision").into())
    } else {
        Err(Failure::verification("verification failed").into())
    }
}

fn oracle_mismatch(what: &str, engine: impl ToString, oracle: impl ToString) -> anyhow::Error {
    Failure::verification(format!(
        "{what}: engine gives {}, enumeration gives {}",
        engine.to_string(),
        oracle.to_string()
    ))
    .into()
}

fn count(
    cli: &Cli,
    mode: CountMode,
    file: &Path,
    seed: u64,
    precision: u32,
    set: WeightSet,
    oracle: bool,
) -> Result<()> {
    let cfg = engine(cli);
    match mode {
        CountMode::Direct => {
            let (g, _) = load(file)?;
            let ones = WeightAssignment::new();
            let unit = g.map_weights(|_| "1".into());
            let m: BigInt = matching_polynomial_with(&unit, &ones, cfg)?;
            let mut out = json!({"mode": "direct", "vertices": g.vertex_count(), "edges": g.edge_count(), "matchings": m.to_string()});
            if oracle {
                let n = enumerate_matchings(&g, DEFAULT_ORACLE_BOUND)?.len();
                if BigInt::from(n) != m {
                    return Err(oracle_mismatch("matchings", m, n));
                }
                out["oracle"] = json!(n.to_string());
            }
            print_json(&out);
        }
        CountMode::Maximum => {
            let (g, _) = load(file)?;
            let dist = size_distribution(&g, cfg)?;
            let mut out = json!({
                "mode": "maximum",
                "nu": dist.nu(),
                "maximum_matchings": dist.maximum_count().to_string(),
                "size_distribution": dist.counts.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            if oracle {
                let all = enumerate_matchings(&g, DEFAULT_ORACLE_BOUND)?;
                let top = all.iter().map(Vec::len).max().unwrap_or(0);
                let n = all.iter().filter(|m| m.len() == top).count();
                if BigInt::from(n) != dist.maximum_count() {
                    return Err(oracle_mismatch("maximum matchings", dist.maximum_count(), n));
                }
                out["oracle"] = json!(n.to_string());
            }
            print_json(&out);
        }
        CountMode::ViaReduction => {
            let (g, d, used_seed) = load_drawn(file, seed)?;
            let opts = ReductionOptions {
                weights: set,
                policy: PrecisionPolicy { start: precision, ..PrecisionPolicy::default() },
                engine: cfg,
                seed: used_seed,
            };
            let cert = count_via_reduction_with(&g, &d, &opts)?;
            let mut out = cert.to_json();
            if oracle {
                let m = count_matchings(&g)?;
                if m != cert.integer {
                    return Err(oracle_mismatch("via reduction", &cert.integer, m));
                }
                out["oracle"] = json!(m.to_string());
            }
            print_json(&out);
        }
        CountMode::Pendant => {
            let (g, _) = load(file)?;
            let run = count_matchings_via_pendant(&g, cfg)?;
            if run.matchings != run.maximum_matchings {
                return Err(oracle_mismatch("M(G) vs MM(G')", &run.maximum_matchings, &run.matchings));
            }
            print_json(&json!({
                "mode": "pendant",
                "u_size": run.extension.u_class.len(),
                "nu": run.nu,
                "maximum_matchings": run.maximum_matchings.to_string(),
                "matchings": run.matchings.to_string(),
                "bijection_checked": run.bijection.is_some(),
            }));
        }
    }
    Ok(())
}

fn emit(
    what: EmitWhat,
    file: Option<&Path>,
    tag: Option<&str>,
    i: Option<usize>,
    seed: u64,
    output: Option<&Path>,
) -> Result<()> {
    let need_file = || file.ok_or_else(|| Failure::precondition("this target needs an input graph file"));
    let text = match what {
        EmitWhat::Delta1 | EmitWhat::Delta2 => {
            let kind = if matches!(what, EmitWhat::Delta1) { SubgadgetKind::Delta1 } else { SubgadgetKind::Delta2 };
            let t = build_subgadget(kind);
            graph_to_json(&t.graph, Some(&t.drawing))
        }
        EmitWhat::Crossing => {
            let g = build_crossing_gadget();
            graph_to_json(&g.graph, Some(&g.drawing))
        }
        EmitWhat::G1 => {
            let (g, d, _) = load_drawn(need_file()?, seed)?;
            let inst = replace_crossings(&g, &d)?;
            graph_to_json(&inst.graph, Some(&inst.drawing))
        }
        EmitWhat::Gi => {
            let tag = tag.ok_or_else(|| Failure::precondition("emit gi needs --tag"))?;
            let i = i.ok_or_else(|| Failure::precondition("emit gi needs --i"))?;
            if i == 0 {
                return Err(Failure::precondition("--i must be positive").into());
            }
            let (g, _) = load(need_file()?)?;
            graph_to_json(&build_gi(&g, tag, i)?, None)
        }
    };
    write_or_print(output, &text)
}

fn reduce(file: &Path, seed: u64, output: Option<&Path>) -> Result<()> {
    let (g, d, used_seed) = load_drawn(file, seed)?;
    let inst = replace_crossings(&g, &d)?;
    let summary = json!({
        "k": inst.k,
        "seed": used_seed,
        "vertices": inst.graph.vertex_count(),
        "edges": inst.graph.edge_count(),
        "placements": inst.placements_json(&g),
    });
    match output {
        Some(p) => {
            write_or_print(Some(p), &graph_to_json(&inst.graph, Some(&inst.drawing)))?;
            let mut side = p.as_os_str().to_owned();
            side.push(".placements.json");
            let side = PathBuf::from(side);
            write_or_print(Some(&side), &serde_json::to_string_pretty(&summary)?)?;
            print_json(&json!({"graph": p.display().to_string(), "placements": side.display().to_string(), "k": inst.k}));
        }
        None => {
            let mut v = summary;
            v["graph"] = graph_to_value(&inst.graph, Some(&inst.drawing));
            print_json(&v);
        }
    }
    Ok(())
}

fn eliminate(cli: &Cli, tag: &str, file: &Path) -> Result<()> {
    let (g, _) = load(file)?;
    let cfg = engine(cli);
    let w = WeightAssignment::symbolic(&g);
    let run = eliminate_weight(&g, &w, tag, cfg)?;
    let x = w.get(tag).ok_or_else(|| Failure::precondition(format!("tag `{tag}` has no value")))?;
    let f = run.evaluate(&x);
    let direct = matching_polynomial_with(&g, &w, cfg)?;
    let matches = f.sub(&direct).is_exact_zero();
    print_json(&json!({
        "tag": tag,
        "m": run.m(),
        "nodes": (2..run.m() + 3).collect::<Vec<_>>(),
        "values": run.values.iter().map(MultiPoly::to_string).collect::<Vec<_>>(),
        "coefficients": run.coefficients.iter().map(MultiPoly::to_string).collect::<Vec<_>>(),
        "f": f.to_string(),
        "direct": direct.to_string(),
        "match": matches,
    }));
    if matches {
        Ok(())
    } else {
        Err(Failure::verification("interpolated value differs from the direct matching polynomial").into())
    }
}
