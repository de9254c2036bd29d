use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ggmd_core::graph::{difference_graph, enhanced_power_graph, power_graph, to_dot, to_json};
use ggmd_core::group::DEFAULT_MAX_ORDER;
use ggmd_core::report::{dim_report, Method};
use ggmd_core::verify::{run_sweep, write_csv, CacheMode, CheckOptions, Family, SweepOptions};
use ggmd_core::{Error, Group, GroupSpec};

#[derive(Parser)]
#[command(name = "ggmd", version, about = "Difference graphs of finite groups and their metric dimension")]
struct Cli {
    /// Largest group order any command will construct.
    #[arg(long, global = true, env = "GGMD_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER)]
    cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, element orders and maximal cyclic subgroups of a group.
    Group {
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Export the power, enhanced power or difference graph.
    Graph {
        spec: String,
        #[arg(long, value_enum, default_value_t = Kind::Difference)]
        kind: Kind,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Metric dimension of the difference graph, as a JSON report.
    Dim {
        spec: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Run every property check over families of groups.
    Verify {
        #[arg(long, default_value_t = 60)]
        max_order: u64,
        /// Comma-separated: cyclic, dihedral, quaternion, semidihedral,
        /// abelian, quaternion-products, nilpotent, all.
        #[arg(long, default_value = "all")]
        families: String,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Line-delimited JSON result cache.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Recompute every spec and compare against the cache instead of reusing it.
        #[arg(long)]
        no_cache: bool,
        /// Fill the `ms` column.
        #[arg(long)]
        timings: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Power,
    Enhanced,
    Difference,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Formula,
    Both,
}

enum Failure {
    Usage(String),
    Verification,
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Io(_) | Error::Json(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) -> Result<(), Failure> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn parse(spec: &str) -> Result<GroupSpec, Failure> {
    spec.parse::<GroupSpec>().map_err(|e| Failure::Usage(format!("`{spec}`: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Group { spec, json } => cmd_group(&parse(&spec)?, json, cli.cap),
        Command::Graph { spec, kind, dot, json, out } => {
            cmd_graph(&parse(&spec)?, kind, dot || !json, out, cli.cap)
        }
        Command::Dim { spec, method } => cmd_dim(&parse(&spec)?, method, cli.cap),
        Command::Verify { max_order, families, csv, cache, no_cache, timings, inject_fault } => {
            if max_order > cli.cap {
                return Err(Failure::Usage(format!("--max-order {max_order} exceeds the cap {}", cli.cap)));
            }
            let families = Family::parse_list(&families)?;
            let opts = SweepOptions {
                max_order,
                families,
                cache,
                cache_mode: if no_cache { CacheMode::Audit } else { CacheMode::Use },
                checks: CheckOptions { inject_fault, ..CheckOptions::default() },
                group_cap: cli.cap,
            };
            cmd_verify(&opts, csv, timings)
        }
    }
}

fn cmd_group(spec: &GroupSpec, json: bool, cap: u64) -> Result<(), Failure> {
    let group = Group::build_with_limit(spec, cap)?;
    let mut orders: BTreeMap<u32, usize> = BTreeMap::new();
    for &o in group.element_orders() {
        *orders.entry(o).or_default() += 1;
    }
    let mut inventory: BTreeMap<usize, usize> = BTreeMap::new();
    for c in group.maximal_cyclic_subgroups() {
        *inventory.entry(c.order).or_default() += 1;
    }
    let generators = group.maximal_generators().len();
    if json {
        let value = serde_json::json!({
            "spec": spec.canonical_name(),
            "order": group.order(),
            "element_orders": orders,
            "maximal_cyclic_subgroups": group.maximal_cyclic_subgroups().iter().map(|c| serde_json::json!({
                "order": c.order,
                "generator": group.label(c.generator),
                "members": c.members.iter().map(|&m| group.label(m)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "maximal_generators": generators,
            "elements": group.export(),
        });
        return emit(&(serde_json::to_string_pretty(&value).map_err(Error::from)? + "\n"));
    }
    // largest orders first, matching the usual way of listing the inventory
    let inv: Vec<String> = inventory.iter().rev().map(|(o, k)| format!("{k}×order{o}")).collect();
    let ord: Vec<String> = orders.iter().map(|(o, k)| format!("{o}:{k}")).collect();
    emit(&format!(
        "{}\norder {}; maximal cyclics: {}\nelement orders: {}\nM(G) size {generators}\n",
        spec.canonical_name(),
        group.order(),
        inv.join(", "),
        ord.join(" ")
    ))
}

fn cmd_graph(spec: &GroupSpec, kind: Kind, dot: bool, out: Option<PathBuf>, cap: u64) -> Result<(), Failure> {
    let group = Group::build_with_limit(spec, cap)?;
    let graph = match kind {
        Kind::Power => power_graph(&group),
        Kind::Enhanced => enhanced_power_graph(&group),
        Kind::Difference => difference_graph(&group),
    };
    if graph.is_empty() {
        eprintln!("warning: {} graph of {} has no vertices", graph.kind.as_str(), spec.canonical_name());
    }
    let name = spec.canonical_name();
    let text = if dot {
        to_dot(&graph, &name)
    } else {
        let mut s = serde_json::to_string_pretty(&to_json(&graph, &name)).map_err(Error::from)?;
        s.push('\n');
        s
    };
    match out {
        Some(path) => fs::write(path, text)?,
        None => emit(&text)?,
    }
    Ok(())
}

fn cmd_dim(spec: &GroupSpec, method: MethodArg, cap: u64) -> Result<(), Failure> {
    let method = match method {
        MethodArg::Exact => Method::Exact,
        MethodArg::Formula => Method::Formula,
        MethodArg::Both => Method::Both,
    };
    let report = dim_report(spec, method, cap)?;
    emit(&(serde_json::to_string_pretty(&report).map_err(Error::from)? + "\n"))?;
    if report.agreement() == Some(false) {
        eprintln!(
            "exact dimension {:?} differs from formula {:?}",
            report.dim, report.dim_formula
        );
        return Err(Failure::Verification);
    }
    Ok(())
}

fn cmd_verify(opts: &SweepOptions, csv: Option<PathBuf>, timings: bool) -> Result<(), Failure> {
    let outcome = run_sweep(opts)?;
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    match csv {
        Some(path) => write_csv(&outcome.results, timings, fs::File::create(path)?)?,
        None => {
            let mut buf = Vec::new();
            write_csv(&outcome.results, timings, &mut buf)?;
            emit(&String::from_utf8_lossy(&buf))?;
        }
    }
    let rows: usize = outcome.results.iter().map(|r| r.checks.len()).sum();
    let failed: Vec<String> = outcome
        .results
        .iter()
        .flat_map(|r| r.checks.iter().filter(|c| !c.pass).map(move |c| format!("{} {}: {}", r.spec, c.name, c.detail)))
        .collect();
    for f in &failed {
        eprintln!("FAIL {f}");
    }
    eprintln!(
        "{} specs, {rows} checks, {} failed, {} cache hits",
        outcome.results.len(),
        failed.len(),
        outcome.cache_hits
    );
    if outcome.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
