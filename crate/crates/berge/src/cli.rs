//! Command line front door: generation, analysis, search, verification.
//!
//! Exit codes are the machine contract; human text may evolve:
//! 0 success/holds, 1 violation found, 2 inconclusive (budget ran out or
//! a heuristic fell short of the bound), 64 usage error, 65 malformed
//! input file (diagnostics carry line numbers where the parser has them).

use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::connectivity::{is_k_connected, vertex_connectivity};
use crate::constructions::{gen_g3, gen_h1, gen_h2, gen_hk, gen_kbip, ConstructionSpec};
use crate::cycles::{circumference, BergeCycle};
use crate::harness::{batch_verify, BatchConfig, TheoremId, DEFAULT_BUDGET};
use crate::hypergraph::Hypergraph;
use crate::lemmas::verify_claims_exhaustive;
use crate::structures::{enumerate_best, find_long_cycle, Structure, StructureFamily};
use crate::{parallel, Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

#[derive(Parser)]
#[command(
    name = "berge",
    version,
    about = "Long Berge cycles in uniform hypergraphs",
    disable_help_subcommand = true
)]
struct Cli {
    /// Worker threads for parallel sweeps (0 = library default)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact circumference of an instance, with a witness cycle
    Circumference {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Vertex connectivity of the incidence graph, or a k-connectivity test
    Connectivity {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Write a sharpness construction with its metadata header
    Generate {
        #[command(subcommand)]
        family: GenerateCmd,
    },
    /// Heuristic long-cycle search with a length-vs-bound summary
    FindCycle {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Batch-verify a statement over a sampled grid, or sweep the cycle
    /// counting claims exhaustively
    Verify {
        /// theorem19 | dirac | jackson-cor | mainold2 | cycle-lemmas
        target: String,
        /// Inline JSON (leading '{') or a path to a JSON config file
        #[arg(long)]
        config: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive best structure of a family, with its rank vector
    BestStructure {
        file: PathBuf,
        /// lollipop | dcp | dcc
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum GenerateCmd {
    /// Blade construction: min degree k-2, circumference 2k-2
    Hk {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Clique-blocks construction through two hub vertices
    H1 {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Thin-side construction: every edge nearly inside a (k-1)-core
    H2 {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Chained complete bipartite graph on four parts
    G3 {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long = "a-prime")]
        a_prime: usize,
        #[arg(long = "b-prime")]
        b_prime: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Complete bipartite graph K_{k-1, n-k+1}
    Kbip {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// Parse and dispatch. `args` excludes the binary name.
pub fn run(args: Vec<String>) -> i32 {
    let argv = std::iter::once("berge".to_string()).chain(args);
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    parallel::with_threads(cli.threads, || execute(cli.command))
}

fn execute(cmd: Command) -> i32 {
    match cmd {
        Command::Circumference { file, budget, json } => cmd_circumference(&file, budget, json),
        Command::Connectivity { file, k, json } => cmd_connectivity(&file, k, json),
        Command::Generate { family } => cmd_generate(family),
        Command::FindCycle { file, seed, budget, json } => cmd_find_cycle(&file, seed, budget, json),
        Command::Verify { target, config, output } => cmd_verify(&target, &config, output.as_deref()),
        Command::BestStructure { file, family, budget, json } => {
            cmd_best_structure(&file, &family, budget, json)
        }
    }
}

/// Load an instance file; failures are data errors (exit 65).
fn load(path: &Path) -> std::result::Result<Hypergraph, i32> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            return Err(EXIT_DATA);
        }
    };
    match Hypergraph::read_str(&text) {
        Ok(h) => Ok(h),
        Err(Error::Parse { line, msg }) => {
            eprintln!("{}:{line}: {msg}", path.display());
            Err(EXIT_DATA)
        }
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            Err(EXIT_DATA)
        }
    }
}

#[derive(Serialize)]
struct CircumferenceOut {
    n: usize,
    m: usize,
    r: usize,
    circumference: usize,
    complete: bool,
    expansions: u64,
    witness: Option<BergeCycle>,
}

fn cmd_circumference(file: &Path, budget: u64, json: bool) -> i32 {
    let h = match load(file) {
        Ok(h) => h,
        Err(code) => return code,
    };
    let search = circumference(&h, budget);
    let out = CircumferenceOut {
        n: h.n(),
        m: h.m(),
        r: h.r(),
        circumference: search.length,
        complete: search.complete,
        expansions: search.expansions,
        witness: search.witness,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serialize"));
    } else {
        let kind = if out.complete { "exact" } else { "lower bound, budget exhausted" };
        println!("circumference: {} ({kind})", out.circumference);
        if let Some(w) = &out.witness {
            println!(
                "witness: vertices {} / edges {}",
                join(&w.vertices),
                join(&w.edge_ids)
            );
        }
    }
    if out.complete {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    }
}

#[derive(Serialize)]
struct ConnectivityOut {
    n: usize,
    m: usize,
    r: usize,
    k: Option<usize>,
    k_connected: Option<bool>,
    connectivity: Option<usize>,
}

fn cmd_connectivity(file: &Path, k: Option<usize>, json: bool) -> i32 {
    let h = match load(file) {
        Ok(h) => h,
        Err(code) => return code,
    };
    let out = match k {
        Some(k) => ConnectivityOut {
            n: h.n(),
            m: h.m(),
            r: h.r(),
            k: Some(k),
            k_connected: Some(is_k_connected(&h, k)),
            connectivity: None,
        },
        None => ConnectivityOut {
            n: h.n(),
            m: h.m(),
            r: h.r(),
            k: None,
            k_connected: None,
            connectivity: Some(vertex_connectivity(&h)),
        },
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serialize"));
    } else if let Some(v) = out.k_connected {
        println!("{}-connected: {v}", out.k.unwrap());
    } else {
        println!("connectivity: {}", out.connectivity.unwrap());
    }
    EXIT_OK
}

fn cmd_generate(family: GenerateCmd) -> i32 {
    let built: Result<((Hypergraph, ConstructionSpec), PathBuf)> = match family {
        GenerateCmd::Hk { r, k, m, output } => gen_hk(r, k, m).map(|b| (b, output)),
        GenerateCmd::H1 { r, k, q, output } => gen_h1(r, k, q).map(|b| (b, output)),
        GenerateCmd::H2 { r, k, n, output } => gen_h2(r, k, n).map(|b| (b, output)),
        GenerateCmd::G3 { a, b, a_prime, b_prime, output } => {
            gen_g3(a, b, a_prime, b_prime).map(|g| (g, output))
        }
        GenerateCmd::Kbip { k, n, output } => gen_kbip(k, n).map(|b| (b, output)),
    };
    let ((h, spec), output) = match built {
        Ok(x) => x,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_USAGE;
        }
    };
    let mut buf = Vec::new();
    if let Err(e) = h.write_text(&mut buf, &[spec.header_comment()]) {
        eprintln!("{e}");
        return EXIT_DATA;
    }
    if let Err(e) = fs::write(&output, buf) {
        eprintln!("{}: {e}", output.display());
        return EXIT_DATA;
    }
    for w in &spec.warnings {
        eprintln!("warning: {w}");
    }
    println!(
        "wrote {} instance to {} (n = {}, m = {}, r = {})",
        spec.name,
        output.display(),
        h.n(),
        h.m(),
        h.r()
    );
    EXIT_OK
}

#[derive(Serialize)]
struct FindCycleOut {
    n: usize,
    m: usize,
    r: usize,
    min_degree: usize,
    two_connected: bool,
    /// largest k with 3 <= k <= r+1 and min degree >= k, when one exists
    k: Option<usize>,
    bound: Option<usize>,
    length: usize,
    reached_bound: Option<bool>,
    restarts: u64,
    steps: u64,
    cycle: Option<BergeCycle>,
}

fn cmd_find_cycle(file: &Path, seed: u64, budget: u64, json: bool) -> i32 {
    let h = match load(file) {
        Ok(h) => h,
        Err(code) => return code,
    };
    let min_degree = h.min_degree();
    let two_connected = is_k_connected(&h, 2);
    let k = min_degree.min(h.r() + 1);
    let applicable = two_connected && k >= 3 && h.r() + 1 <= h.n();
    let bound = applicable.then(|| (2 * k).min(h.n()).min(h.m()));
    let mut out = FindCycleOut {
        n: h.n(),
        m: h.m(),
        r: h.r(),
        min_degree,
        two_connected,
        k: applicable.then_some(k),
        bound,
        length: 0,
        reached_bound: None,
        restarts: 0,
        steps: 0,
        cycle: None,
    };
    match find_long_cycle(&h, seed, budget) {
        Ok(res) => {
            out.length = res.cycle.len();
            out.reached_bound = bound.map(|b| res.cycle.len() >= b);
            out.restarts = res.restarts;
            out.steps = res.steps;
            out.cycle = Some(res.cycle);
        }
        Err(Error::NoCycle) => {}
        Err(e) => {
            eprintln!("{e}");
            return EXIT_DATA;
        }
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serialize"));
    } else if out.cycle.is_none() {
        println!("no Berge cycle found within the budget");
    } else {
        println!(
            "found cycle of length {} ({} restarts, {} steps)",
            out.length, out.restarts, out.steps
        );
        match (out.k, out.bound, out.reached_bound) {
            (Some(k), Some(b), Some(reached)) => {
                let verdict = if reached { "reached" } else { "not reached" };
                println!("degree/connectivity bound with k = {k}: {b} ({verdict})");
            }
            _ => println!("no degree/connectivity bound applies (needs 2-connected, min degree >= 3)"),
        }
    }
    match (out.cycle.is_some(), out.reached_bound) {
        (false, _) => EXIT_INCONCLUSIVE,
        (true, Some(false)) => EXIT_INCONCLUSIVE,
        _ => EXIT_OK,
    }
}

fn read_config(config: &str) -> std::result::Result<String, i32> {
    if config.trim_start().starts_with('{') {
        return Ok(config.to_string());
    }
    fs::read_to_string(config).map_err(|e| {
        eprintln!("{config}: {e}");
        EXIT_DATA
    })
}

fn write_report(path: Option<&Path>, json: &str) -> std::result::Result<(), i32> {
    if let Some(path) = path {
        fs::write(path, json.as_bytes()).map_err(|e| {
            eprintln!("{}: {e}", path.display());
            EXIT_DATA
        })?;
    }
    Ok(())
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct CycleLemmasConfig {
    max_s: usize,
}

fn cmd_verify(target: &str, config: &str, output: Option<&Path>) -> i32 {
    let text = match read_config(config) {
        Ok(t) => t,
        Err(code) => return code,
    };
    if target == "cycle-lemmas" {
        let cfg: CycleLemmasConfig = match serde_json::from_str(&text) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("config: {e}");
                return EXIT_DATA;
            }
        };
        let report = match verify_claims_exhaustive(cfg.max_s) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("{e}");
                return EXIT_USAGE;
            }
        };
        let json = serde_json::to_string_pretty(&report).expect("serialize");
        if let Err(code) = write_report(output, &json) {
            return code;
        }
        println!(
            "cycle-lemmas: {} configurations across {} claims, {} violations",
            report.total_configs,
            report.claims.len(),
            report.total_violations
        );
        return if report.total_violations == 0 { EXIT_OK } else { EXIT_VIOLATION };
    }
    if TheoremId::parse(target).is_none() {
        eprintln!(
            "unknown verify target {target:?}; expected theorem19, dirac, jackson-cor, mainold2 or cycle-lemmas"
        );
        return EXIT_USAGE;
    }
    let mut value: serde_json::Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("config: {e}");
            return EXIT_DATA;
        }
    };
    if let Some(map) = value.as_object_mut() {
        match map.get("theorem") {
            None => {
                map.insert("theorem".into(), serde_json::Value::String(target.to_string()));
            }
            Some(serde_json::Value::String(t)) if t == target => {}
            Some(other) => {
                eprintln!("config names theorem {other} but the command line says {target:?}");
                return EXIT_USAGE;
            }
        }
    }
    let cfg: BatchConfig = match serde_json::from_value(value) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config: {e}");
            return EXIT_DATA;
        }
    };
    let report = match batch_verify(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_USAGE;
        }
    };
    let json = report.to_json();
    if let Err(code) = write_report(output, &json) {
        return code;
    }
    for cell in &report.cells {
        println!(
            "n = {}, r = {}, k = {}: {} unique instances, {} hold, {} violations, {} inconclusive",
            cell.n,
            cell.r,
            cell.k,
            cell.records.len(),
            cell.summary.holds,
            cell.summary.violations,
            cell.summary.inconclusive
        );
    }
    if !report.skipped_cells.is_empty() {
        println!("skipped {} cells outside the statement's range", report.skipped_cells.len());
    }
    let s = &report.summary;
    println!(
        "{target}: checked {}, holds {}, violations {}, inconclusive {}",
        s.checked, s.holds, s.violations, s.inconclusive
    );
    if s.violations > 0 {
        EXIT_VIOLATION
    } else if s.inconclusive > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

#[derive(Serialize)]
struct BestStructureOut {
    family: String,
    complete: bool,
    expansions: u64,
    rank: Option<crate::structures::RankVector>,
    structure: Option<Structure>,
}

fn cmd_best_structure(file: &Path, family: &str, budget: u64, json: bool) -> i32 {
    let fam = match family {
        "lollipop" => StructureFamily::Lollipop,
        "dcp" => StructureFamily::Dcp,
        "dcc" => StructureFamily::Dcc,
        other => {
            eprintln!("unknown family {other:?}; expected lollipop, dcp or dcc");
            return EXIT_USAGE;
        }
    };
    let h = match load(file) {
        Ok(h) => h,
        Err(code) => return code,
    };
    let best = match enumerate_best(&h, fam, budget) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_DATA;
        }
    };
    let out = BestStructureOut {
        family: family.to_string(),
        complete: best.complete,
        expansions: best.expansions,
        rank: best.best.as_ref().map(|(_, r)| *r),
        structure: best.best.map(|(s, _)| s),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serialize"));
    } else {
        match (&out.structure, &out.rank) {
            (Some(s), Some(r)) => {
                println!(
                    "best {family}: rank ({}, {}, {}, {}, {})",
                    r.r1, r.r2, r.r3, r.s4, r.r4
                );
                println!("{}", serde_json::to_string(s).expect("serialize"));
            }
            _ => println!("no {family} exists in this instance"),
        }
        if !out.complete {
            println!("enumeration incomplete: budget exhausted");
        }
    }
    if out.complete {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
