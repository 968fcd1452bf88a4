//! `capgraph` command-line front end. Every subcommand prints one JSON report
//! on standard output and a short human summary on standard error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use capgraph::{
    canonical_nash, claim_b_witness, construct_nash, dset_witness, enumerate_dsets_capped, enumerate_dsets_pruned,
    gadget_k, gadget_k2, normalize, parse_dimacs, parse_graph, partition_xyz, sat_oracle, unique_dset, unique_nash,
    validate_nash, write_graph, write_sidecar, CapacitatedGraph, CnfFormula, DecideOptions, Error, GadgetArtifact,
    Strategy, VertexSet, Witness, DEFAULT_ENUMERATE_CAP, DEFAULT_OSTAR_CAP,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

const DEFAULT_TIMEOUT_S: f64 = 60.0;

#[derive(Parser, Debug)]
#[command(name = "capgraph", version, about = "DP-Nash subgraphs and D-sets of capacitated graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Drop edges between two zero-capacity vertices and cap κ at the degree.
    Normalize {
        graph: PathBuf,
        /// Also write the normalized graph to this file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// X/Y/Z partition of the normalized graph.
    Partition { graph: PathBuf },
    /// Construct a DP-Nash subgraph.
    Construct { graph: PathBuf },
    /// Decide whether the DP-Nash subgraph is unique.
    UniqueNash { graph: PathBuf },
    /// Decide whether the D-set is unique.
    UniqueDset {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Size cap for the exponential steps (|Y⁺| for O*/M*, n for enumeration).
        #[arg(long)]
        budget: Option<usize>,
    },
    /// List D-sets.
    Enumerate {
        graph: PathBuf,
        /// Stop after this many D-sets.
        #[arg(long)]
        limit: Option<usize>,
        /// Use the propagating search instead of the subset scan.
        #[arg(long)]
        pruned: bool,
        /// Time budget in seconds for the pruned search.
        #[arg(long, default_value_t = DEFAULT_TIMEOUT_S)]
        timeout: f64,
        /// Vertex-count cap for the subset scan.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Test whether a vertex set is a D-set.
    IsDset {
        graph: PathBuf,
        /// Vertex ids separated by commas or spaces; may be empty.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Build a reduction gadget from a DIMACS 3-CNF formula.
    Gadget {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        cnf: PathBuf,
        /// Graph output; the vertex map goes to `<output>.map`.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build a gadget and check both directions of the reduction on it.
    VerifyReduction {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        cnf: PathBuf,
        /// Time budget in seconds for the pruned uniqueness search.
        #[arg(long, default_value_t = DEFAULT_TIMEOUT_S)]
        timeout: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Auto,
    Ostar,
    Mstar,
    Enumerate,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Normalize { .. } => "normalize",
            Command::Partition { .. } => "partition",
            Command::Construct { .. } => "construct",
            Command::UniqueNash { .. } => "unique-nash",
            Command::UniqueDset { .. } => "unique-dset",
            Command::Enumerate { .. } => "enumerate",
            Command::IsDset { .. } => "is-dset",
            Command::Gadget { .. } => "gadget",
            Command::VerifyReduction { .. } => "verify-reduction",
        }
    }
}

enum Failure {
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Successful outcome: report fields, a one-line summary, and whether a
/// budget stopped the computation early.
struct Answer {
    fields: Value,
    summary: String,
    budget_exceeded: bool,
}

fn answer(fields: Value, summary: String) -> Answer {
    Answer { fields, summary, budget_exceeded: false }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<CapacitatedGraph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_cnf(path: &Path) -> Result<CnfFormula, Failure> {
    parse_dimacs(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_set(text: &str, n: usize) -> Result<VertexSet, Failure> {
    let mut set = VertexSet::new();
    for token in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let v: usize = token.parse().map_err(|_| Failure::Input(format!("bad vertex id {token:?} in --set")))?;
        if v >= n {
            return Err(Failure::Input(format!("vertex {v} out of range for a graph with {n} vertices")));
        }
        set.insert(v);
    }
    Ok(set)
}

fn seconds(timeout: f64) -> Result<Duration, Failure> {
    Duration::try_from_secs_f64(timeout).map_err(|_| Failure::Input(format!("bad timeout {timeout}")))
}

fn witness_valid(g: &CapacitatedGraph, w: &Witness) -> bool {
    match w {
        Witness::Subgraph(h) => validate_nash(g, h),
        Witness::Pair(a, b) => validate_nash(g, a) && validate_nash(g, b),
        Witness::DSet(s) => dset_witness(g, s).is_some(),
    }
}

fn gadget(k: u32, cnf: &Path) -> Result<GadgetArtifact, Failure> {
    let f = load_cnf(cnf)?;
    Ok(if k == 2 { gadget_k2(&f)? } else { gadget_k(&f, k)? })
}

fn run(command: &Command) -> Result<Answer, Failure> {
    match command {
        Command::Normalize { graph, output } => {
            let g = load_graph(graph)?;
            let n = normalize(&g);
            let text = write_graph(&n);
            if let Some(out) = output {
                write(out, &text)?;
            }
            let summary = format!("{} of {} edges kept", n.edge_count(), g.edge_count());
            let fields = json!({
                "changed": n != g,
                "edges_removed": g.edge_count() - n.edge_count(),
                "graph": text,
                "output": output,
            });
            Ok(answer(fields, summary))
        }
        Command::Partition { graph } => {
            let g = normalize(&load_graph(graph)?);
            let p = partition_xyz(&g)?;
            let independent = g.is_independent(&p.xz());
            let summary = format!(
                "|X| = {}, |Y| = {}, |Z| = {}, X ∪ Z {}",
                p.x_set.len(),
                p.y_set.len(),
                p.z_set.len(),
                if independent { "independent" } else { "dependent" }
            );
            let fields = json!({
                "x": p.x_set,
                "y": p.y_set,
                "z": p.z_set,
                "y_positive": p.y_positive(&g),
                "xz_independent": independent,
            });
            Ok(answer(fields, summary))
        }
        Command::Construct { graph } => {
            let g = load_graph(graph)?;
            let h = construct_nash(&g);
            let valid = validate_nash(&g, &h);
            let summary = format!("|D| = {}, |P| = {}, {} edges", h.d_set.len(), h.p_set.len(), h.edges.len());
            Ok(answer(json!({ "subgraph": h, "valid": valid }), summary))
        }
        Command::UniqueNash { graph } => {
            let g = load_graph(graph)?;
            let v = unique_nash(&g);
            let valid = v.witness.as_ref().map(|w| witness_valid(&g, w));
            let summary = format!("{} ({:?})", if v.unique { "unique" } else { "not unique" }, v.method);
            let mut fields = to_value(&v);
            fields["witness_valid"] = json!(valid);
            Ok(answer(fields, summary))
        }
        Command::UniqueDset { graph, method, budget } => {
            let g = load_graph(graph)?;
            let strategy = match method {
                MethodArg::Auto => Strategy::Auto,
                MethodArg::Ostar => Strategy::OStar,
                MethodArg::Mstar => Strategy::MStar,
                MethodArg::Enumerate => Strategy::Enumerate,
            };
            let opts = DecideOptions {
                strategy,
                ostar_cap: budget.unwrap_or(DEFAULT_OSTAR_CAP),
                enumerate_cap: budget.unwrap_or(DEFAULT_ENUMERATE_CAP),
            };
            let v = unique_dset(&g, &opts)?;
            let valid = v.witness.as_ref().map(|w| witness_valid(&g, w));
            let summary = format!("{} ({:?})", if v.unique { "unique" } else { "not unique" }, v.method);
            let mut fields = to_value(&v);
            fields["witness_valid"] = json!(valid);
            Ok(answer(fields, summary))
        }
        Command::Enumerate { graph, limit, pruned, timeout, budget } => {
            let g = load_graph(graph)?;
            let (report, timed_out) = if *pruned {
                let r = enumerate_dsets_pruned(&g, seconds(*timeout)?, *limit);
                let timed_out = !r.complete && limit.is_none_or(|l| r.dsets.len() < l);
                (r, timed_out)
            } else {
                (enumerate_dsets_capped(&g, *limit, budget.unwrap_or(DEFAULT_ENUMERATE_CAP))?, false)
            };
            let summary = format!(
                "{} D-sets{}",
                report.dsets.len(),
                if report.complete {
                    ""
                } else if timed_out {
                    " (timed out)"
                } else {
                    " (limit reached)"
                }
            );
            let fields = json!({
                "mode": if *pruned { "pruned" } else { "exhaustive" },
                "count": report.dsets.len(),
                "dsets": report.dsets,
                "complete": report.complete,
                "explored": report.explored,
            });
            Ok(Answer { fields, summary, budget_exceeded: timed_out })
        }
        Command::IsDset { graph, set } => {
            let g = load_graph(graph)?;
            let s = parse_set(set, g.vertex_count())?;
            let w = dset_witness(&g, &s);
            let summary = format!("{} D-set", if w.is_some() { "a" } else { "not a" });
            Ok(answer(json!({ "set": s, "is_dset": w.is_some(), "witness": w }), summary))
        }
        Command::Gadget { k, cnf, output } => {
            let a = gadget(*k, cnf)?;
            let mut map = output.clone().into_os_string();
            map.push(".map");
            let map = PathBuf::from(map);
            write(output, &write_graph(&a.graph))?;
            write(&map, &write_sidecar(&a))?;
            let mut regions = BTreeMap::new();
            for r in &a.region {
                *regions.entry(r.label()).or_insert(0usize) += 1;
            }
            let summary = format!("{} vertices, {} edges", a.graph.vertex_count(), a.graph.edge_count());
            let fields = json!({
                "k": a.k,
                "output": output,
                "sidecar": map,
                "vertices": a.graph.vertex_count(),
                "edges": a.graph.edge_count(),
                "variables": a.var_vertices.len(),
                "clauses": a.clause_vertices.len(),
                "regions": regions,
            });
            Ok(answer(fields, summary))
        }
        Command::VerifyReduction { k, cnf, timeout } => verify_reduction(*k, cnf, seconds(*timeout)?),
    }
}

fn verify_reduction(k: u32, cnf: &Path, timeout: Duration) -> Result<Answer, Failure> {
    let a = gadget(k, cnf)?;
    let g = &a.graph;
    let assignment = sat_oracle(&a.padded_formula, a.mode())?;
    let canonical = canonical_nash(g)?;
    let canonical_valid = canonical.as_ref().is_some_and(|h| validate_nash(g, h));
    let witness = assignment.as_ref().map(|x| claim_b_witness(&a, x)).transpose()?;
    let witness_valid =
        witness.as_ref().map(|h| validate_nash(g, h) && canonical.as_ref().is_some_and(|c| c.d_set != h.d_set));

    let search = enumerate_dsets_pruned(g, timeout, Some(2));
    let found = search.dsets.len();
    let unique = if found >= 2 {
        Some(false)
    } else if search.complete {
        Some(found == 1)
    } else {
        None
    };
    let satisfiable = assignment.is_some();
    let consistent = canonical_valid && witness_valid.unwrap_or(true) && (unique != Some(satisfiable));

    let summary = format!(
        "{}, canonical {}, uniqueness {}",
        if satisfiable { "satisfiable" } else { "unsatisfiable" },
        if canonical_valid { "valid" } else { "INVALID" },
        match unique {
            Some(true) => "confirmed",
            Some(false) => "refuted",
            None => "undecided (timed out)",
        }
    );
    let fields = json!({
        "k": a.k,
        "vertices": g.vertex_count(),
        "satisfiable": satisfiable,
        "assignment": assignment,
        "canonical_valid": canonical_valid,
        "witness_valid": witness_valid,
        "witness": witness,
        "search_complete": search.complete || found >= 2,
        "search_explored": search.explored,
        "dsets_found": found,
        "unique_dset": unique,
        "consistent": consistent,
    });
    Ok(answer(fields, summary))
}

fn budget_fields(command: &Command) -> Value {
    match command {
        Command::UniqueDset { budget, .. } => json!({
            "ostar_cap": budget.unwrap_or(DEFAULT_OSTAR_CAP),
            "enumerate_cap": budget.unwrap_or(DEFAULT_ENUMERATE_CAP),
        }),
        Command::Enumerate { pruned: true, timeout, limit, .. } => json!({ "timeout_s": timeout, "limit": limit }),
        Command::Enumerate { budget, limit, .. } => {
            json!({ "enumerate_cap": budget.unwrap_or(DEFAULT_ENUMERATE_CAP), "limit": limit })
        }
        Command::VerifyReduction { timeout, .. } => json!({ "timeout_s": timeout }),
        _ => Value::Null,
    }
}

fn input_path(command: &Command) -> &Path {
    match command {
        Command::Normalize { graph, .. }
        | Command::Partition { graph }
        | Command::Construct { graph }
        | Command::UniqueNash { graph }
        | Command::UniqueDset { graph, .. }
        | Command::Enumerate { graph, .. }
        | Command::IsDset { graph, .. } => graph,
        Command::Gadget { cnf, .. } | Command::VerifyReduction { cnf, .. } => cnf,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let outcome = run(&cli.command);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;

    let mut report = json!({
        "command": cli.command.name(),
        "input": input_path(&cli.command),
        "budget": budget_fields(&cli.command),
    });
    let code = match outcome {
        Ok(a) => {
            report["result"] = a.fields;
            report["budget_exceeded"] = json!(a.budget_exceeded);
            eprintln!("{}: {}", cli.command.name(), a.summary);
            if a.budget_exceeded {
                2
            } else {
                0
            }
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            report["error"] = json!(message);
            report["budget_exceeded"] = json!(false);
            1
        }
        Err(Failure::Budget(message)) => {
            eprintln!("budget exceeded: {message}");
            report["error"] = json!(message);
            report["budget_exceeded"] = json!(true);
            2
        }
    };
    report["elapsed_ms"] = json!(elapsed_ms);
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    ExitCode::from(code)
}
