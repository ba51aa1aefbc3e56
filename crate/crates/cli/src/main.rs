//! `edim`: generate graph families, compute and verify (edge) metric
//! dimensions, build 3-SAT reductions and compare dim with edim.
//!
//! Exit codes: 0 success, 1 I/O error, 2 usage, parse or parameter-domain
//! error, 3 verification false, 4 exact budget exceeded, 5 method not
//! applicable (not a tree, no known formula).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use edim::families::LabeledGraph;
use edim::graph::{check_generator, Resolution};
use edim::reduction::{build_reduction, parse_cnf, verify_reduction, ExactCheck};
use edim::solve::{
    check_bounds, closed_formula_result, exact_dimension, greedy_dimension, tree_edim,
    BoundsReport, SolveError, SolveResult,
};
use edim::{make_family, FamilySpec, Graph, Kind};
use serde::Serialize;
use serde_json::{json, Value};

const SCHEMA: u32 = 1;

const EXIT_IO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_FALSE: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_NOT_APPLICABLE: u8 = 5;

#[derive(Parser)]
#[command(
    name = "edim",
    version,
    about = "Metric and edge metric dimension of graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family graph as an edge list, plus `<OUT>.labels`.
    Gen {
        /// Family spec, e.g. `wheel:6`, `torus:8,8`, `product(path:3,cycle:4)`.
        spec: String,
        out: PathBuf,
    },
    /// Compute the dimension of a graph file or a family.
    Solve(SolveArgs),
    /// Check whether a vertex set is a (edge) metric generator.
    Verify(VerifyArgs),
    /// Build the edge metric dimension instance of a DIMACS 3-CNF formula.
    Reduce(ReduceArgs),
    /// Tabulate dim and edim for several families.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Vertex,
    Edge,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Vertex => Kind::Vertex,
            KindArg::Edge => Kind::Edge,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Exact,
    Greedy,
    Tree,
    Formula,
}

#[derive(Args)]
struct SolveArgs {
    /// Edge-list file; labels are read from `<FILE>.labels` when present.
    #[arg(required_unless_present = "family", conflicts_with = "family")]
    file: Option<PathBuf>,
    /// Solve a family directly instead of a file.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, value_enum, default_value = "edge")]
    kind: KindArg,
    #[arg(long, value_enum, default_value = "exact")]
    method: MethodArg,
    /// Cap on subsets evaluated by the exact search.
    #[arg(long)]
    budget: Option<u64>,
    /// Also check the general edim bounds (exact edge runs only).
    #[arg(long)]
    bounds: bool,
    #[arg(long)]
    json: bool,
    /// Include wall time in the JSON report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Comma-separated vertices, as labels when a label map is present.
    set: String,
    #[arg(long, value_enum, default_value = "edge")]
    kind: KindArg,
    /// Label map; defaults to `<FILE>.labels` when that exists.
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Read the set as vertex ids even if labels are available.
    #[arg(long)]
    ids: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ReduceArgs {
    cnf: PathBuf,
    out: PathBuf,
    /// Also run the round-trip checks on the instance.
    #[arg(long)]
    verify: bool,
    /// Exact-search budget for `--verify` on tiny instances.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(required = true)]
    specs: Vec<String>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    timing: bool,
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        Self {
            code,
            msg: msg.into(),
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn solve_failure(e: SolveError) -> Failure {
    let code = match e {
        SolveError::BudgetExceeded { .. } => EXIT_BUDGET,
        SolveError::NotATree | SolveError::NoKnownFormula { .. } => EXIT_NOT_APPLICABLE,
        _ => EXIT_USAGE,
    };
    Failure::new(code, e.to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn parse_spec(s: &str) -> Result<FamilySpec> {
    let spec: FamilySpec = s
        .parse()
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{e}")))?;
    spec.validate()
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{e}")))?;
    Ok(spec)
}

fn build_family(spec: &FamilySpec) -> Result<LabeledGraph> {
    make_family(spec).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))
}

/// Loads an edge list and, if present, its label map. The flag says whether
/// labels came from a file.
fn load_graph(path: &Path, labels: Option<&Path>) -> Result<(LabeledGraph, bool)> {
    let text = read(path)?;
    let g = Graph::parse_edge_list(&text)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    let default = with_suffix(path, ".labels");
    let label_path = match labels {
        Some(p) => Some(p.to_path_buf()),
        None => default.exists().then_some(default),
    };
    match label_path {
        Some(lp) => {
            let labels = LabeledGraph::parse_label_map(&read(&lp)?, g.order())
                .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", lp.display())))?;
            Ok((LabeledGraph::new(g, labels), true))
        }
        None => Ok((LabeledGraph::unlabeled(g), false)),
    }
}

fn command_echo() -> Vec<String> {
    std::env::args().skip(1).collect()
}

fn print_json(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("serializable report")
    );
}

fn labels_of(lg: &LabeledGraph, ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&v| lg.label(v).to_string()).collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen { spec, out } => cmd_gen(&spec, &out),
        Command::Solve(a) => cmd_solve(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Reduce(a) => cmd_reduce(&a),
        Command::Compare(a) => cmd_compare(&a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn cmd_gen(spec: &str, out: &Path) -> Result<u8> {
    let spec = parse_spec(spec)?;
    let lg = build_family(&spec)?;
    write(out, &lg.graph.to_edge_list())?;
    write(&with_suffix(out, ".labels"), &lg.label_map_text())?;
    println!(
        "{spec}: {} vertices, {} edges -> {}",
        lg.graph.order(),
        lg.graph.size(),
        out.display()
    );
    Ok(0)
}

fn cmd_solve(a: &SolveArgs) -> Result<u8> {
    let kind = Kind::from(a.kind);
    if a.bounds && (a.method != MethodArg::Exact || kind != Kind::Edge) {
        return Err(Failure::new(
            EXIT_USAGE,
            "--bounds needs --method exact and --kind edge",
        ));
    }
    let (lg, source, spec) = match (&a.file, &a.family) {
        (Some(path), _) => (load_graph(path, None)?.0, path.display().to_string(), None),
        (None, Some(s)) => {
            let spec = parse_spec(s)?;
            (build_family(&spec)?, spec.to_string(), Some(spec))
        }
        (None, None) => unreachable!("clap requires one input"),
    };
    let g = &lg.graph;
    let start = Instant::now();
    let res: SolveResult = match a.method {
        MethodArg::Exact => exact_dimension(g, kind, a.budget),
        MethodArg::Greedy => greedy_dimension(g, kind),
        // a tree's metric dimension equals its edge metric dimension
        MethodArg::Tree => tree_edim(g).map(|r| SolveResult { kind, ..r }),
        MethodArg::Formula => match &spec {
            Some(spec) => closed_formula_result(spec, kind),
            None => {
                return Err(Failure::new(
                    EXIT_NOT_APPLICABLE,
                    "--method formula needs --family SPEC",
                ))
            }
        },
    }
    .map_err(solve_failure)?;
    let bounds: Option<BoundsReport> = if a.bounds {
        Some(check_bounds(g, &res).map_err(solve_failure)?)
    } else {
        None
    };
    let elapsed = start.elapsed();

    if a.json {
        let mut report = json!({
            "schema": SCHEMA,
            "command": command_echo(),
            "input": { "source": source, "order": g.order(), "size": g.size() },
            "result": res,
            "witness_labels": res.witness.as_ref().map(|w| labels_of(&lg, w)),
        });
        if let Some(b) = &bounds {
            report["bounds"] = serde_json::to_value(b).unwrap();
        }
        if a.timing {
            report["wall_ms"] = json!(elapsed.as_secs_f64() * 1e3);
        }
        print_json(&report);
    } else {
        println!(
            "input: {source} ({} vertices, {} edges)",
            g.order(),
            g.size()
        );
        println!("{} dimension: {}", res.kind, res.value);
        println!("method: {}", method_name(&res));
        match &res.witness {
            Some(w) => println!("witness: {{{}}}", labels_of(&lg, w).join(", ")),
            None => println!("witness: none (closed formula)"),
        }
        if let Some(x) = res.explored {
            println!("explored: {x}");
        }
        if let Some(b) = &bounds {
            print!("{}", bounds_text(b));
        }
        eprintln!("time: {:.1} ms", elapsed.as_secs_f64() * 1e3);
    }
    Ok(0)
}

fn method_name(res: &SolveResult) -> String {
    serde_json::to_value(res.method)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn yes(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "VIOLATED"
    }
}

fn bounds_text(b: &BoundsReport) -> String {
    let mut s = String::new();
    let k = b.value;
    let _ = writeln!(s, "bounds:");
    let _ = writeln!(
        s,
        "  ceil(log2 {}) = {} <= {k}: {}",
        b.max_degree,
        b.log_delta_lower,
        yes(b.log_delta_holds)
    );
    let _ = writeln!(
        s,
        "  1 <= {k} <= {}: {}",
        b.order - 1,
        yes(b.trivial_bounds_hold)
    );
    let _ = writeln!(
        s,
        "  |E| = {} <= (D+1)^edim = {}: {}",
        b.size,
        b.edge_count_limit,
        yes(b.edge_count_bound_holds)
    );
    let _ = writeln!(
        s,
        "  witness degrees <= 2^(edim-1) = {}: {}",
        b.basis_degree_limit,
        yes(b.basis_degree_bound_holds)
    );
    let _ = writeln!(
        s,
        "  universal vertices: {} ({})",
        b.universal_vertex_count,
        yes(b.universal_vertex_implication.holds())
    );
    let _ = writeln!(
        s,
        "  edim = n-1 needs common neighbours: {}",
        yes(b.common_neighbor_condition)
    );
    s
}

fn cmd_verify(a: &VerifyArgs) -> Result<u8> {
    let kind = Kind::from(a.kind);
    let (lg, labeled) = load_graph(&a.file, a.labels.as_deref())?;
    let g = &lg.graph;
    let mut set = Vec::new();
    for tok in a.set.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v = if labeled && !a.ids {
            lg.id_of(tok)
                .ok_or_else(|| Failure::new(EXIT_USAGE, format!("unknown vertex label `{tok}`")))?
        } else {
            tok.parse::<usize>()
                .ok()
                .filter(|&v| v < g.order())
                .ok_or_else(|| Failure::new(EXIT_USAGE, format!("bad vertex id `{tok}`")))?
        };
        set.push(v);
    }
    set.sort_unstable();
    set.dedup();
    let res = check_generator(g, kind, &set);
    let item = |x: usize| match kind {
        Kind::Vertex => lg.label(x).to_string(),
        Kind::Edge => {
            let (u, v) = g.edge(x);
            format!("{}-{}", lg.label(u), lg.label(v))
        }
    };
    if a.json {
        let witness = res
            .witness()
            .map(|(x, y)| json!({ "ids": [x, y], "labels": [item(x), item(y)] }));
        print_json(&json!({
            "schema": SCHEMA,
            "command": command_echo(),
            "input": { "source": a.file.display().to_string(), "order": g.order(), "size": g.size() },
            "kind": kind,
            "set": set,
            "resolving": res.is_resolving(),
            "witness": witness,
        }));
    } else {
        match res {
            Resolution::Resolving => println!("true"),
            Resolution::Unresolved(x, y) => {
                println!("false");
                let what = if kind == Kind::Edge {
                    "edges"
                } else {
                    "vertices"
                };
                println!("undistinguished {what}: {} and {}", item(x), item(y));
            }
        }
    }
    Ok(if res.is_resolving() { 0 } else { EXIT_FALSE })
}

#[derive(Serialize)]
struct RoleMap {
    schema: u32,
    n: usize,
    m: usize,
    r: usize,
    roles: BTreeMap<usize, String>,
}

fn cmd_reduce(a: &ReduceArgs) -> Result<u8> {
    let text = read(&a.cnf)?;
    let f = parse_cnf(&text)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", a.cnf.display())))?;
    let inst = build_reduction(&f);
    let g = &inst.graph.graph;
    write(&a.out, &g.to_edge_list())?;
    write(
        &with_suffix(&a.out, ".labels"),
        &inst.graph.label_map_text(),
    )?;
    let roles = RoleMap {
        schema: SCHEMA,
        n: inst.n(),
        m: inst.m(),
        r: inst.r,
        roles: inst
            .roles
            .iter()
            .enumerate()
            .map(|(v, r)| (v, r.to_string()))
            .collect(),
    };
    let roles_text = serde_json::to_string_pretty(&roles).unwrap() + "\n";
    write(&with_suffix(&a.out, ".roles.json"), &roles_text)?;
    let report = if a.verify {
        Some(verify_reduction(&f, a.budget).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?)
    } else {
        None
    };
    if a.json {
        let mut v = json!({
            "schema": SCHEMA,
            "command": command_echo(),
            "input": { "source": a.cnf.display().to_string(), "n": inst.n(), "m": inst.m() },
            "order": g.order(),
            "size": g.size(),
            "r": inst.r,
        });
        if let Some(rep) = &report {
            v["report"] = serde_json::to_value(rep).unwrap();
        }
        print_json(&v);
    } else {
        println!("r={}", inst.r);
        println!(
            "{} vertices, {} edges -> {}",
            g.order(),
            g.size(),
            a.out.display()
        );
        if let Some(rep) = &report {
            println!(
                "claims lower bound: {} ({})",
                rep.claims.lower_bound,
                yes(rep.claims.holds())
            );
            match &rep.satisfying_assignment {
                Some(asg) => {
                    let bits: String = asg
                        .values()
                        .iter()
                        .map(|&b| if b { 'T' } else { 'F' })
                        .collect();
                    println!("satisfiable: {bits}");
                    println!(
                        "assignment generator verifies: {}",
                        rep.generator_verifies.unwrap_or(false)
                    );
                    println!(
                        "round trip satisfies: {}",
                        rep.round_trip_satisfies.unwrap_or(false)
                    );
                }
                None => println!("unsatisfiable"),
            }
            if let Some(s) = &rep.sweep {
                println!(
                    "assignment sweep: {}/{} sets verify, {} satisfying",
                    s.verifying, s.assignments, s.satisfying
                );
            }
            match &rep.exact {
                ExactCheck::Solved { edim, .. } => println!("exact edim: {edim}"),
                ExactCheck::OutOfBudget { lower_bound, .. } => {
                    println!("exact edim: out of budget, at least {lower_bound}")
                }
                ExactCheck::NotRun { reason } => println!("exact edim: not run ({reason})"),
            }
            match rep.certified_edim {
                Some(r) => println!("certified edim = {r}"),
                None => println!("edim = r not certified"),
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct CompareRow {
    family: String,
    n: usize,
    dim: Cell,
    edim: Cell,
    classification: &'static str,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Cell {
    Value(usize),
    AtLeast { at_least: usize },
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Value(v) => v.to_string(),
            Cell::AtLeast { at_least } => format!(">={at_least}"),
        }
    }
}

fn cell(g: &Graph, kind: Kind, budget: Option<u64>) -> Result<Cell> {
    match exact_dimension(g, kind, budget) {
        Ok(r) => Ok(Cell::Value(r.value)),
        Err(SolveError::BudgetExceeded { lower_bound, .. }) => Ok(Cell::AtLeast {
            at_least: lower_bound,
        }),
        Err(e) => Err(solve_failure(e)),
    }
}

fn cmd_compare(a: &CompareArgs) -> Result<u8> {
    let specs = a
        .specs
        .iter()
        .map(|s| parse_spec(s))
        .collect::<Result<Vec<_>>>()?;
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut incomplete = false;
    for spec in &specs {
        let lg = build_family(spec)?;
        let g = &lg.graph;
        let dim = cell(g, Kind::Vertex, a.budget)?;
        let edim = if g.size() == 0 {
            Cell::Value(0)
        } else {
            cell(g, Kind::Edge, a.budget)?
        };
        let classification = match (&dim, &edim) {
            (Cell::Value(d), Cell::Value(e)) => match d.cmp(e) {
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Less => "dim<edim",
                std::cmp::Ordering::Greater => "edim<dim",
            },
            _ => {
                incomplete = true;
                "unknown"
            }
        };
        rows.push(CompareRow {
            family: spec.to_string(),
            n: g.order(),
            dim,
            edim,
            classification,
        });
    }
    let elapsed = start.elapsed();
    if a.json {
        let mut v = json!({
            "schema": SCHEMA,
            "command": command_echo(),
            "rows": rows,
        });
        if a.timing {
            v["wall_ms"] = json!(elapsed.as_secs_f64() * 1e3);
        }
        print_json(&v);
    } else {
        let w = rows
            .iter()
            .map(|r| r.family.len())
            .max()
            .unwrap_or(0)
            .max(6);
        println!(
            "{:<w$}  {:>4}  {:>5}  {:>5}  classification",
            "family", "n", "dim", "edim"
        );
        for r in &rows {
            println!(
                "{:<w$}  {:>4}  {:>5}  {:>5}  {}",
                r.family,
                r.n,
                r.dim.text(),
                r.edim.text(),
                r.classification
            );
        }
        eprintln!("time: {:.1} ms", elapsed.as_secs_f64() * 1e3);
    }
    Ok(if incomplete { EXIT_BUDGET } else { 0 })
}
