//! `pebble`: command-line front end for the pebbling workbench.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pebbling::bounds::{self, check_table1, class0_test, snl_best, BoundKind, ReportOptions, RowStatus};
use pebbling::corpus::Corpus;
use pebbling::solver::{pi, pi_target, Budget, PiOptions, SolveOptions, Solver, Verdict};
use pebbling::wfl::{aggregate_bound, lp_bound, StrategySet};
use pebbling::{Configuration, Graph, Vertex};
use serde_json::json;

/// Exit code for errors (bad ids, malformed files, I/O).
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "pebble", version, about = "Certified bounds on graph pebbling numbers")]
struct Cli {
    /// Read the corpus from this directory instead of the built-in copy.
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Size, diameter, girth and vertex orbits of a graph.
    Info { graph: String },
    /// Decide whether a configuration can reach a target.
    /// Exit code 0: solvable, 1: unsolvable, 2: unknown.
    Solve {
        #[arg(long)]
        graph: String,
        /// Corpus configuration id or a configuration file.
        #[arg(long)]
        config: String,
        /// Defaults to the target recorded for a corpus configuration.
        #[arg(long)]
        target: Option<String>,
        /// Time limit in seconds.
        #[arg(long)]
        budget: Option<f64>,
        /// Print the moves of a solution.
        #[arg(long)]
        witness: bool,
    },
    /// Pebbling number by exhaustive search, one target or all orbits.
    Pi {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        target: Option<String>,
        /// Time limit in seconds per target.
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Largest small-neighbourhood configuration.
    Snl {
        #[arg(long)]
        graph: String,
        /// Only consider this target.
        #[arg(long)]
        from: Option<String>,
    },
    /// Validate a strategy set and print the bounds it certifies.
    Wfl {
        #[arg(long)]
        graph: String,
        /// Corpus strategy-set id or a strategy file.
        #[arg(long)]
        strategies: String,
        /// Also solve the linear program over the set.
        #[arg(long)]
        lp: bool,
    },
    /// Class 0 tests.
    Class0 {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 60.0)]
        budget: f64,
    },
    /// All certified bounds for a corpus graph.
    Bounds {
        #[arg(long)]
        graph: String,
        /// Seconds per solver check; also attempts hand-proved configurations.
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Recompute the bounds table and compare with the expected values.
    Reproduce {
        #[arg(value_parser = ["table1"])]
        what: String,
        /// Seconds per solver check; also attempts hand-proved configurations.
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Corpus maintenance.
    Corpus {
        #[arg(value_parser = ["check", "list"])]
        action: String,
    },
}

type CliResult = Result<ExitCode, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn run(cli: Cli) -> CliResult {
    let corpus = match &cli.corpus {
        Some(dir) => Corpus::from_dir(dir).map_err(err)?,
        None => Corpus::embedded(),
    };
    match cli.command {
        Command::Info { graph } => info(&corpus, &graph),
        Command::Solve {
            graph,
            config,
            target,
            budget,
            witness,
        } => solve(&corpus, &graph, &config, target.as_deref(), budget, witness),
        Command::Pi {
            graph,
            target,
            budget,
            workers,
        } => pi_cmd(&corpus, &graph, target.as_deref(), budget, workers),
        Command::Snl { graph, from } => snl(&corpus, &graph, from.as_deref()),
        Command::Wfl { graph, strategies, lp } => wfl(&corpus, &graph, &strategies, lp),
        Command::Class0 { graph, budget } => class0(&corpus, &graph, budget),
        Command::Bounds { graph, budget, json } => bounds_cmd(&corpus, &graph, budget, json),
        Command::Reproduce { budget, json, .. } => reproduce(&corpus, budget, json),
        Command::Corpus { action } => corpus_cmd(&corpus, &action),
    }
}

/// A corpus id, or a path to a graph file.
fn load_graph(corpus: &Corpus, id: &str) -> Result<Graph, String> {
    match corpus.graph(id) {
        Ok(g) => Ok(g),
        Err(e) if Path::new(id).is_file() => {
            let text = std::fs::read_to_string(id).map_err(|io| format!("{id}: {io} (and {e})"))?;
            Graph::parse(&text).map_err(err)
        }
        Err(e) => Err(err(e)),
    }
}

fn vertex(g: &Graph, name: &str) -> Result<Vertex, String> {
    g.vertex(name).map_err(err)
}

fn budget_of(secs: Option<f64>) -> Budget {
    secs.map_or_else(Budget::unlimited, Budget::seconds)
}

fn info(corpus: &Corpus, id: &str) -> CliResult {
    let g = load_graph(corpus, id)?;
    println!("graph     {id}");
    println!("vertices  {}", g.n());
    println!("edges     {}", g.edge_count());
    println!("cubic     {}", g.is_cubic());
    println!("diameter  {}", g.diameter());
    match g.girth() {
        Ok(x) => println!("girth     {x}"),
        Err(_) => println!("girth     none (acyclic)"),
    }
    let orbits = g.orbits();
    println!("orbits    {}", orbits.len());
    for o in orbits {
        let names: Vec<String> = o.iter().map(|&v| g.label(v)).collect();
        println!("  {} ({}): {}", names[0], o.len(), names.join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

fn solve(corpus: &Corpus, graph: &str, config: &str, target: Option<&str>, budget: Option<f64>, witness: bool) -> CliResult {
    let g = load_graph(corpus, graph)?;
    let (c, named_target) = match corpus.named_config(config) {
        Ok(nc) => {
            if nc.info.graph != graph {
                return Err(format!("configuration {config} belongs to {}, not {graph}", nc.info.graph));
            }
            (nc.config, Some(nc.target))
        }
        Err(_) if Path::new(config).is_file() => {
            let text = std::fs::read_to_string(config).map_err(err)?;
            (Configuration::parse(&g, &text).map_err(err)?, None)
        }
        Err(e) => return Err(err(e)),
    };
    let r = match (target, named_target) {
        (Some(t), _) => vertex(&g, t)?,
        (None, Some(r)) => r,
        (None, None) => return Err("--target is required for configuration files".into()),
    };
    let opts = SolveOptions {
        budget: budget_of(budget),
        want_witness: witness,
        ..SolveOptions::default()
    };
    let res = Solver::new(&g, r, opts).and_then(|s| s.solve(&c)).map_err(err)?;
    println!("{}", res.verdict);
    println!("target {}, {} pebbles, {} nodes", g.label(r), c.size(), res.nodes_explored);
    if let (true, Some(moves)) = (witness, &res.witness) {
        for (a, b) in moves {
            println!("  {} -> {}", g.label(*a), g.label(*b));
        }
    }
    Ok(ExitCode::from(match res.verdict {
        Verdict::Solvable => 0,
        Verdict::Unsolvable => 1,
        Verdict::Unknown => 2,
    }))
}

fn pi_cmd(corpus: &Corpus, graph: &str, target: Option<&str>, budget: Option<f64>, workers: usize) -> CliResult {
    let g = load_graph(corpus, graph)?;
    let opts = PiOptions {
        budget: budget_of(budget),
        workers: workers.max(1),
        ..PiOptions::default()
    };
    let res = match target {
        Some(t) => pi_target(&g, vertex(&g, t)?, &opts),
        None => {
            let reps = corpus.orbit_representatives(graph, &g);
            pi(&g, Some(&reps), &opts)
        }
    }
    .map_err(err)?;
    if res.exhaustive {
        println!("pi = {}", res.value);
    } else {
        println!("unknown: pi >= {} (search stopped)", res.value);
    }
    for t in &res.per_target {
        let mark = if t.exhaustive { "=" } else { ">=" };
        println!("  pi({}) {mark} {}", g.label(t.target), t.value);
    }
    println!(
        "certificate: {}-unsolvable, {} pebbles: {}",
        g.label(res.target),
        res.extremal_config.size(),
        res.extremal_config.describe(&g)
    );
    println!("nodes {}", res.nodes_explored);
    Ok(ExitCode::from(if res.exhaustive { 0 } else { 2 }))
}

fn snl(corpus: &Corpus, graph: &str, from: Option<&str>) -> CliResult {
    let g = load_graph(corpus, graph)?;
    let u = from.map(|s| vertex(&g, s)).transpose()?;
    let s = snl_best(&g, u).map_err(err)?;
    println!("bound {} (|C*| = {})", s.bound, s.size);
    println!("u {} v {} a {} b {}", g.label(s.u), g.label(s.v), s.a, s.b);
    println!("config {}", s.config.describe(&g));
    Ok(ExitCode::SUCCESS)
}

fn wfl(corpus: &Corpus, graph: &str, source: &str, with_lp: bool) -> CliResult {
    let g = load_graph(corpus, graph)?;
    let set = match corpus.strategy_set(source) {
        Ok(ns) => ns.set,
        Err(_) if Path::new(source).is_file() => {
            let text = std::fs::read_to_string(source).map_err(err)?;
            let (gid, _) = StrategySet::header(&text).map_err(err)?;
            if gid != graph {
                return Err(format!("{source} is for graph {gid}, not {graph}"));
            }
            StrategySet::parse(&g, source, &text).map_err(err)?
        }
        Err(e) => return Err(err(e)),
    };
    println!("set {} root {} ({} strategies)", set.name, g.label(set.root), set.strategies.len());
    let bad = set.violations(&g);
    if bad.is_empty() {
        println!("valid");
    } else {
        println!("INVALID");
        for (s, v) in &bad {
            println!("  {s}: {}", v.describe(&g));
        }
    }
    for s in &set.strategies {
        println!("  {} total weight {}", s.name, s.tvalue());
    }
    match aggregate_bound(&g, &set) {
        Ok(a) => {
            let tight: Vec<String> = a.tight.iter().map(|&v| g.label(v)).collect();
            println!("aggregate {} / {} = {} (tight at {})", a.total, a.q, a.value, tight.join(" "));
            println!("implied pi({}) <= {}", g.label(set.root), a.bound);
        }
        Err(e) => println!("aggregate: {e}"),
    }
    if with_lp {
        match lp_bound(&g, &set) {
            Ok(lp) => {
                println!("lp optimum {}", lp.optimum);
                println!("implied pi({}) <= {}", g.label(set.root), lp.bound);
            }
            Err(e) => println!("lp: {e}"),
        }
    }
    if !bad.is_empty() {
        println!("note: bounds from an invalid set are not certified");
    }
    Ok(ExitCode::SUCCESS)
}

fn class0(corpus: &Corpus, graph: &str, budget: f64) -> CliResult {
    let g = load_graph(corpus, graph)?;
    let v = class0_test(&g, Budget::seconds(budget)).map_err(err)?;
    println!("{}", serde_json::to_string_pretty(&v).map_err(err)?);
    Ok(ExitCode::SUCCESS)
}

fn report_options(budget: Option<f64>) -> ReportOptions {
    let mut o = ReportOptions::default();
    if let Some(b) = budget {
        o.solver_budget = Budget::seconds(b);
        o.attempt_proof_configs = true;
    }
    o
}

fn bounds_cmd(corpus: &Corpus, graph: &str, budget: Option<f64>, as_json: bool) -> CliResult {
    let r = bounds::report(corpus, graph, &report_options(budget)).map_err(err)?;
    if as_json {
        println!("{}", serde_json::to_string_pretty(&r).map_err(err)?);
        return Ok(ExitCode::SUCCESS);
    }
    println!("{}: n={} e={} D={}", r.graph, r.n, r.edges, r.diameter);
    println!("{} <= pi <= {}", r.lower, r.upper);
    println!("  lower from {}", r.lower_from);
    println!("  upper from {}", r.upper_from);
    println!("orbits:");
    for o in &r.orbits {
        let lower = o.lower.map_or("-".to_string(), |l| l.to_string());
        println!("  {} ({}): [{lower}, {}]  {}", o.representative, o.size, o.upper, o.upper_from);
    }
    println!("entries:");
    for e in &r.entries {
        let sign = match e.kind {
            BoundKind::Lower => ">=",
            BoundKind::Upper => "<=",
        };
        let at = e.target.as_deref().map_or(String::new(), |t| format!("({t})"));
        let note = if e.note.is_empty() { String::new() } else { format!("  {}", e.note) };
        println!("  pi{at} {sign} {}  [{}]{note}", e.value, e.origin());
    }
    for n in &r.notes {
        println!("note: {n}");
    }
    Ok(ExitCode::SUCCESS)
}

fn reproduce(corpus: &Corpus, budget: Option<f64>, as_json: bool) -> CliResult {
    let rows = check_table1(corpus, &report_options(budget)).map_err(err)?;
    let worst = rows.iter().map(|r| r.status).max().unwrap_or(RowStatus::Pass);
    if as_json {
        let v = json!({ "rows": rows, "worst": worst });
        println!("{}", serde_json::to_string_pretty(&v).map_err(err)?);
    } else {
        for r in &rows {
            let computed = r.computed.map_or("see detail".to_string(), |(l, u)| format!("({l}, {u})"));
            let expected = match r.computed {
                Some(_) => format!("({}, {})", r.expected.0, r.expected.1),
                None => "formula".to_string(),
            };
            println!("{:<14} {:<15} computed {computed:<12} expected {expected}", r.id, r.status.to_string());
            println!("    lower: {}", r.lower_from);
            println!("    upper: {}", r.upper_from);
            if !r.detail.is_empty() {
                println!("    {}", r.detail);
            }
        }
    }
    Ok(ExitCode::from(if worst == RowStatus::Fail { 1 } else { 0 }))
}

fn corpus_cmd(corpus: &Corpus, action: &str) -> CliResult {
    if action == "list" {
        for e in corpus.entries().map_err(err)? {
            println!("{:<22} {:<14} {}", e.id, format!("{:?}", e.kind), e.description);
        }
        return Ok(ExitCode::SUCCESS);
    }
    let checks = corpus.revalidate();
    let failed = checks.iter().filter(|c| !c.ok).count();
    for c in &checks {
        println!("{} {:<22} {}", if c.ok { "ok  " } else { "FAIL" }, c.id, c.detail);
    }
    println!("{} entries, {failed} failed", checks.len());
    Ok(ExitCode::from(if failed == 0 { 0 } else { 1 }))
}
