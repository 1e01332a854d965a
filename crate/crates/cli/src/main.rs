//! Command-line surface: feasibility checks, constructive solving, witness
//! verification, brute-force oracles, reproducible instance generation, and
//! direct access to the set-function calculus.
//!
//! Exit codes: 0 success/feasible, 1 infeasible or verification failed (the
//! certificate or report is printed as JSON), 2 input error, 3 resource cap.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use arbopack::augment::Feasibility;
use arbopack::caps::Caps;
use arbopack::error::Error;
use arbopack::gen::{instance, GenConfig};
use arbopack::gpoly::{
    integral_element, intersect_box, intersect_cardinality, intersect_nonempty, sum,
    table_from_json, table_to_json, GPolyBounds,
};
use arbopack::hypercore::{InstanceJson, MixedHypergraph};
use arbopack::oracles::{exists_packing_bf, min_augment_bf, AugmentMode};
use arbopack::problem::{Problem, RequirementsJson, SolveOutput};
use arbopack::verify::{verify_packing, PackingWitness};

#[derive(Parser)]
#[command(name = "arbopack", version, about = "Packing and augmentation of hyperarborescences, hyperbranchings and rooted hyperforests")]
struct Cli {
    /// Emit machine-readable JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a problem's feasibility conditions on an instance.
    Check(CheckArgs),
    /// Construct additions and a packing witness.
    Solve(SolveArgs),
    /// Verify a packing witness against requirements or a problem.
    Verify(VerifyArgs),
    /// Run the brute-force oracle instead of the condition checker.
    Oracle(OracleArgs),
    /// Generate a random instance reproducibly.
    Gen(GenArgs),
    /// Apply one g-polymatroid table operation.
    Gpoly(GpolyArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Instance JSON file.
    #[arg(long)]
    instance: PathBuf,
    /// Problem JSON file (kind + parameters).
    #[arg(long)]
    problem: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    problem: PathBuf,
    /// Override the problem's gamma budget.
    #[arg(long)]
    gamma: Option<u32>,
    /// Write the witness JSON here as well as printing the report.
    #[arg(long)]
    emit_witness: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Witness JSON file (PackingWitness fields).
    #[arg(long)]
    witness: PathBuf,
    /// Requirements JSON file.
    #[arg(long)]
    require: Option<PathBuf>,
    /// Alternatively derive the requirements from a problem file.
    #[arg(long)]
    problem: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    problem: PathBuf,
    /// Budget for augmentation problems (defaults to the problem's own).
    #[arg(long)]
    gamma: Option<u32>,
}

#[derive(Args)]
struct GenArgs {
    /// Seed; the same seed and flags are bit-reproducible.
    #[arg(long)]
    seed: u64,
    /// Vertex count.
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Edge count (hyperedges plus dyperedges).
    #[arg(long, default_value_t = 5)]
    edges: usize,
    /// Probability that an edge is directed.
    #[arg(long, default_value_t = 0.6)]
    directed_share: f64,
    /// Largest dyperedge tail set.
    #[arg(long, default_value_t = 3)]
    max_tail: usize,
    /// Largest hyperedge.
    #[arg(long, default_value_t = 4)]
    max_hyperedge: usize,
    /// Restrict dyperedges to plain arcs.
    #[arg(long)]
    arcs_only: bool,
    /// Write the instance here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GpolyOp {
    /// Intersect with a per-element box; needs --lower and --upper.
    Box,
    /// Intersect with a total-size band; needs --alpha and --beta.
    Cardinality,
    /// Sum with the tables in --other.
    Sum,
    /// Report whether the intersection with --other has a point.
    Nonempty,
    /// Extract an integral element.
    Element,
    /// Echo the validated tables.
    Show,
}

#[derive(Args)]
struct GpolyArgs {
    /// Bound tables: {"ground":n,"p":{"<mask>":v,...},"b":{...}} with
    /// "+inf"/"-inf" allowed as values.
    #[arg(long)]
    tables: PathBuf,
    #[arg(long, value_enum)]
    op: GpolyOp,
    /// Second operand for sum/nonempty.
    #[arg(long)]
    other: Option<PathBuf>,
    /// Lower bounds for the box, as a JSON array.
    #[arg(long)]
    lower: Option<String>,
    /// Upper bounds for the box, as a JSON array.
    #[arg(long)]
    upper: Option<String>,
    #[arg(long)]
    alpha: Option<i64>,
    #[arg(long)]
    beta: Option<i64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            match e {
                Error::Input(_) => ExitCode::from(2),
                Error::Cap(_) => ExitCode::from(3),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let caps = Caps::from_env();
    match &cli.command {
        Command::Check(a) => check(cli, a, &caps),
        Command::Solve(a) => solve(cli, a, &caps),
        Command::Verify(a) => verify(cli, a, &caps),
        Command::Oracle(a) => oracle(cli, a, &caps),
        Command::Gen(a) => gen(a),
        Command::Gpoly(a) => gpoly(a, &caps),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &PathBuf) -> Result<T, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::input(format!("cannot parse {}: {e}", path.display())))
}

fn read_instance(path: &PathBuf) -> Result<MixedHypergraph, Error> {
    read_json::<InstanceJson>(path)?.to_graph()
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable report"));
}

fn check(cli: &Cli, a: &CheckArgs, caps: &Caps) -> Result<ExitCode, Error> {
    let g = read_instance(&a.instance)?;
    let p: Problem = read_json(&a.problem)?;
    match p.check(&g, caps)? {
        None => {
            if cli.json {
                print_json(&serde_json::json!({ "feasible": true }));
            } else {
                println!("feasible");
            }
            Ok(ExitCode::SUCCESS)
        }
        Some(cert) => {
            if cli.json {
                print_json(&serde_json::json!({ "feasible": false, "certificate": cert }));
            } else {
                print_json(&cert);
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn solve(cli: &Cli, a: &SolveArgs, caps: &Caps) -> Result<ExitCode, Error> {
    let g = read_instance(&a.instance)?;
    let mut p: Problem = read_json(&a.problem)?;
    if let Some(gamma) = a.gamma {
        p.set_gamma(gamma)?;
    }
    match p.solve(&g, caps)? {
        Feasibility::Feasible(out) => {
            if let Some(path) = &a.emit_witness {
                fs::write(path, serde_json::to_string_pretty(&out.witness).unwrap())
                    .map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))?;
            }
            if cli.json {
                print_json(&out);
            } else {
                report_solution(&out);
            }
            Ok(ExitCode::SUCCESS)
        }
        Feasibility::Infeasible(cert) => {
            print_json(&cert);
            Ok(ExitCode::from(1))
        }
    }
}

fn report_solution(out: &SolveOutput) {
    if out.added_arcs.is_empty() && out.added_edges.is_empty() {
        println!("feasible without additions");
    }
    for (u, v) in &out.added_arcs {
        println!("add arc {u} -> {v}");
    }
    for (u, v) in &out.added_edges {
        println!("add edge {{{u}, {v}}}");
    }
    println!("packing with {} members", out.witness.members.len());
}

fn verify(cli: &Cli, a: &VerifyArgs, caps: &Caps) -> Result<ExitCode, Error> {
    let g = read_instance(&a.instance)?;
    let w: PackingWitness = read_json(&a.witness)?;
    let req = match (&a.require, &a.problem) {
        (Some(path), _) => read_json::<RequirementsJson>(path)?.to_requirements(g.n(), caps)?,
        (None, Some(path)) => read_json::<Problem>(path)?.requirements(&g, caps)?,
        (None, None) => Default::default(),
    };
    let report = verify_packing(&g, &w, &req)?;
    if cli.json {
        print_json(&report);
    } else {
        for attr in &report.attributes {
            let mark = if attr.ok { "ok  " } else { "FAIL" };
            println!("{mark} {:<24} {}", attr.attribute, attr.detail);
        }
    }
    Ok(if report.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn oracle(cli: &Cli, a: &OracleArgs, caps: &Caps) -> Result<ExitCode, Error> {
    let g = read_instance(&a.instance)?;
    let p: Problem = read_json(&a.problem)?;
    let req = p.requirements(&g, caps)?;
    let gamma = a.gamma.or(p.gamma());
    let found = match gamma {
        Some(gamma) => {
            let mode = if matches!(p, Problem::BorderedUndir { .. }) {
                AugmentMode::Edges
            } else {
                AugmentMode::Arcs
            };
            min_augment_bf(&g, &req, mode, gamma, caps)?.map(|(added, w)| (added, w))
        }
        None => exists_packing_bf(&g, &req, caps)?.map(|w| (Vec::new(), w)),
    };
    match found {
        Some((added, witness)) => {
            let out = SolveOutput {
                added_arcs: if matches!(p, Problem::BorderedUndir { .. }) {
                    Vec::new()
                } else {
                    added.clone()
                },
                added_edges: if matches!(p, Problem::BorderedUndir { .. }) {
                    added
                } else {
                    Vec::new()
                },
                witness,
            };
            if cli.json {
                print_json(&out);
            } else {
                report_solution(&out);
            }
            Ok(ExitCode::SUCCESS)
        }
        None => {
            if cli.json {
                print_json(&serde_json::json!({ "feasible": false }));
            } else {
                println!("infeasible (exhaustive search)");
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn gen(a: &GenArgs) -> Result<ExitCode, Error> {
    let cfg = GenConfig {
        n: a.n,
        edges: a.edges,
        directed_share: a.directed_share,
        max_tail: a.max_tail,
        max_hyperedge: a.max_hyperedge,
        arcs_only: a.arcs_only,
    };
    let g = instance(a.seed, &cfg)?;
    let json = serde_json::to_string_pretty(&InstanceJson::from_graph(&g)).unwrap();
    match &a.out {
        Some(path) => fs::write(path, json)
            .map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))?,
        None => println!("{json}"),
    }
    Ok(ExitCode::SUCCESS)
}

/// On-disk form of a pair of bound tables.
#[derive(Serialize, Deserialize)]
struct TablesJson {
    ground: usize,
    p: BTreeMap<String, serde_json::Value>,
    b: BTreeMap<String, serde_json::Value>,
}

fn read_tables(path: &PathBuf, caps: &Caps) -> Result<GPolyBounds, Error> {
    let t: TablesJson = read_json(path)?;
    let p = table_from_json(&t.p, caps)?;
    let b = table_from_json(&t.b, caps)?;
    if p.ground() != t.ground || b.ground() != t.ground {
        return Err(Error::input("table sizes disagree with the declared ground".to_string()));
    }
    GPolyBounds::new(p, b)
}

fn tables_out(q: &GPolyBounds) -> TablesJson {
    TablesJson {
        ground: q.ground(),
        p: table_to_json(&q.p),
        b: table_to_json(&q.b),
    }
}

fn gpoly(a: &GpolyArgs, caps: &Caps) -> Result<ExitCode, Error> {
    let q = read_tables(&a.tables, caps)?;
    let need = |opt: &Option<PathBuf>| -> Result<GPolyBounds, Error> {
        let path = opt
            .as_ref()
            .ok_or_else(|| Error::input("this operation needs --other".to_string()))?;
        read_tables(path, caps)
    };
    let parse_vec = |s: &Option<String>, name: &str| -> Result<Vec<i64>, Error> {
        let s = s
            .as_ref()
            .ok_or_else(|| Error::input(format!("this operation needs --{name}")))?;
        serde_json::from_str(s).map_err(|e| Error::input(format!("bad --{name}: {e}")))
    };
    match a.op {
        GpolyOp::Show => {
            print_json(&tables_out(&q));
            Ok(ExitCode::SUCCESS)
        }
        GpolyOp::Box => {
            let lower = parse_vec(&a.lower, "lower")?;
            let upper = parse_vec(&a.upper, "upper")?;
            let (out, nonempty) = intersect_box(&q, &lower, &upper)?;
            print_json(&serde_json::json!({
                "nonempty": nonempty,
                "tables": tables_out(&out),
            }));
            Ok(if nonempty { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        GpolyOp::Cardinality => {
            let alpha = a.alpha.ok_or_else(|| Error::input("needs --alpha".to_string()))?;
            let beta = a.beta.ok_or_else(|| Error::input("needs --beta".to_string()))?;
            let (out, nonempty) = intersect_cardinality(&q, alpha, beta)?;
            print_json(&serde_json::json!({
                "nonempty": nonempty,
                "tables": tables_out(&out),
            }));
            Ok(if nonempty { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        GpolyOp::Sum => {
            let out = sum(&q, &need(&a.other)?)?;
            print_json(&tables_out(&out));
            Ok(ExitCode::SUCCESS)
        }
        GpolyOp::Nonempty => {
            let nonempty = intersect_nonempty(&q, &need(&a.other)?);
            print_json(&serde_json::json!({ "nonempty": nonempty }));
            Ok(if nonempty { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        GpolyOp::Element => match integral_element(&q, caps)? {
            Some(x) => {
                print_json(&serde_json::json!({ "element": x }));
                Ok(ExitCode::SUCCESS)
            }
            None => {
                print_json(&serde_json::json!({ "element": serde_json::Value::Null }));
                Ok(ExitCode::from(1))
            }
        },
    }
}
