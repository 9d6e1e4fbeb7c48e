//! `drg`: feasibility checks, fixed searches and graph certification from
//! the command line.
//!
//! Exit status: 0 feasible, distance-regular or matching the known outcome;
//! 1 infeasible, not distance-regular or mismatching; 2 usage, parse or I/O
//! errors.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use drg_core::feasibility::{gate, Filter, FilterConfig};
use drg_core::graphs::{self, certify_drg, CertificationOutcome, Graph};
use drg_core::search::runs;
use drg_core::search::{enumerate, enumerate_unpruned, SearchResult, SearchSpec, MAX_DIAMETER};
use drg_core::spectral::Q;
use drg_core::IntersectionArray;
use num::{BigInt, Zero};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "drg",
    version,
    about = "Feasibility of distance-regular graph intersection arrays"
)]
struct Cli {
    /// Worker threads for searches; output does not depend on it
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct FilterArgs {
    /// Turn a named filter off; repeatable
    #[arg(long = "disable", value_name = "FILTER", value_parser = parse_filter)]
    disable: Vec<Filter>,
    /// Run the core conditions only
    #[arg(long)]
    core_only: bool,
    /// Krein tolerance for irrational spectra
    #[arg(long, value_name = "TOL")]
    krein_tol: Option<f64>,
}

impl FilterArgs {
    fn config(&self) -> FilterConfig {
        let mut cfg = if self.core_only {
            FilterConfig::core_only()
        } else {
            FilterConfig::default()
        };
        for &f in &self.disable {
            cfg.set(f, false);
        }
        if let Some(t) = self.krein_tol {
            cfg.krein_tolerance = t;
        }
        cfg
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the feasibility gate on one array and print its report
    Check {
        /// Array as `b0,...,b(D-1);c1,...,cD`, e.g. `12,6,2;1,4,9`
        array: String,
        #[command(flatten)]
        filters: FilterArgs,
    },
    /// Run a fixed search and compare it with its known outcome
    Reproduce {
        /// s1, s1-literal, s2, s2-literal, s3, s3-relaxed, s4, small-k2,
        /// small-k2-below-kappa or theta2-bracket
        name: String,
        /// Upper end of the valency range
        #[arg(long)]
        kmax: Option<u64>,
        /// Lower end of the valency range (small-k2-below-kappa only)
        #[arg(long)]
        kmin: Option<u64>,
        /// Epsilon for the small-k2 runs, e.g. `1/2` or `0.5`
        #[arg(long, value_parser = parse_rational)]
        epsilon: Option<Q>,
        /// Write survivors as JSON lines here
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        filters: FilterArgs,
    },
    /// Build a graph from a named family
    Graph {
        /// johnson, hypercube, halved-cube, cycle, complete, petersen,
        /// pentagon, icosahedron, hadamard, or line:<family>
        family: String,
        params: Vec<usize>,
        /// Run the distance-regularity certifier
        #[arg(long)]
        certify: bool,
        /// Replace the graph by its distance-i graph
        #[arg(long, value_name = "I")]
        distance: Option<usize>,
        /// Print the edge list instead of a report
        #[arg(long)]
        edges: bool,
    },
    /// Certify a graph read from an edge list
    Certify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Enumerate feasible arrays of one diameter
    Enumerate {
        #[arg(long = "D", visible_alias = "diameter", value_name = "D")]
        d: usize,
        #[arg(long, default_value_t = 1)]
        kmin: u64,
        #[arg(long)]
        kmax: u64,
        /// Linear constraint such as `c2 > k/6`, `theta1 = b1/2 - 1` or
        /// `not taylor`; repeatable
        #[arg(long = "constraint", value_name = "EXPR")]
        constraints: Vec<String>,
        /// Write survivors as JSON lines here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use the brute-force enumerator
        #[arg(long)]
        unpruned: bool,
        #[command(flatten)]
        filters: FilterArgs,
    },
}

fn parse_filter(s: &str) -> Result<Filter, String> {
    Filter::from_name(s).ok_or_else(|| {
        let names: Vec<_> = Filter::ALL.iter().map(|f| f.name()).collect();
        format!("unknown filter {s:?}; known: {}", names.join(", "))
    })
}

/// `p/q`, an integer, or a terminating decimal, read exactly.
fn parse_rational(s: &str) -> Result<Q, String> {
    let int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| format!("{s:?}: {e}"))
    };
    if let Some((n, d)) = s.split_once('/') {
        let d = int(d)?;
        if d.is_zero() {
            return Err(format!("{s:?}: zero denominator"));
        }
        return Ok(Q::new(int(n)?, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let digits = format!("{whole}{frac}");
        let scale = BigInt::from(10).pow(frac.len() as u32);
        return Ok(Q::new(int(&digits)?, scale));
    }
    Ok(Q::from_integer(int(s)?))
}

fn print_json(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("serializable");
    // a closed pipe downstream is not an error of ours
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn write_lines<T: serde::Serialize>(path: Option<&PathBuf>, items: &[T]) -> Result<()> {
    let Some(path) = path else {
        return Ok(());
    };
    let mut w = create(path)?;
    for item in items {
        serde_json::to_writer(&mut w, item)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

fn check(array: &str, filters: &FilterArgs) -> Result<ExitCode> {
    let arr: IntersectionArray = array
        .parse()
        .with_context(|| format!("parsing {array:?}"))?;
    let report = gate(&arr, &filters.config());
    print_json(&serde_json::to_value(&report)?);
    Ok(status(report.is_feasible()))
}

fn reproduce(
    name: &str,
    kmin: Option<u64>,
    kmax: Option<u64>,
    epsilon: Option<Q>,
    out: Option<&PathBuf>,
    filters: &FilterArgs,
) -> Result<ExitCode> {
    let eps = epsilon.unwrap_or_else(runs::one_half);
    match name {
        "small-k2" | "theorem6" => {
            let c = runs::verify_small_k2_from_kappa(&eps, kmax.unwrap_or(80))?;
            for s in &c.searches {
                eprintln!("{}", s.summary());
            }
            write_lines(
                out,
                &c.searches
                    .iter()
                    .flat_map(|s| &s.survivors)
                    .collect::<Vec<_>>(),
            )?;
            let mut v = serde_json::to_value(&c)?;
            strip_survivor_reports(&mut v);
            print_json(&v);
            Ok(status(c.violations.is_empty()))
        }
        "small-k2-below-kappa" => {
            let c = runs::verify_small_k2(&eps, kmin.unwrap_or(3), kmax.unwrap_or(80))?;
            write_lines(
                out,
                &c.searches
                    .iter()
                    .flat_map(|s| &s.survivors)
                    .collect::<Vec<_>>(),
            )?;
            let allowed = runs::small_k2_exceptions();
            let unexplained: Vec<_> = c
                .violations
                .iter()
                .filter(|a| !allowed.contains(a))
                .collect();
            let mut v = serde_json::to_value(&c)?;
            strip_survivor_reports(&mut v);
            v["unexplained"] = json!(unexplained);
            print_json(&v);
            Ok(status(unexplained.is_empty()))
        }
        "theta2-bracket" | "conjecture-a" => {
            let c = runs::verify_theta2_bracket(kmax.unwrap_or(40));
            write_lines(out, &c.checked)?;
            print_json(&json!({
                "k_max": c.k_max,
                "checked": c.checked.len(),
                "violations": c.violations,
            }));
            Ok(status(c.violations.is_empty()))
        }
        _ => {
            let spec = runs::named_search(name).ok_or_else(|| {
                anyhow!(
                    "unknown search {name:?}; known: {}, small-k2, small-k2-below-kappa, theta2-bracket",
                    runs::SEARCH_NAMES.join(", ")
                )
            })?;
            let mut spec = spec.with_config(filters.config());
            if let Some(k) = kmax {
                spec = spec.with_k_max(k);
            }
            let expected = runs::expected_for(&spec);
            let result = enumerate(&spec);
            write_result(&result, out)?;
            let matches = result.arrays() == expected;
            let mut v = result.summary();
            v["expected"] = json!(expected);
            v["matches"] = json!(matches);
            print_json(&v);
            Ok(status(matches))
        }
    }
}

/// Survivor reports are long; summaries keep the arrays only.
fn strip_survivor_reports(v: &mut Value) {
    if let Some(searches) = v.get_mut("searches").and_then(Value::as_array_mut) {
        for s in searches {
            if let Some(list) = s.get_mut("survivors").and_then(Value::as_array_mut) {
                for item in list.iter_mut() {
                    *item = item["array"].clone();
                }
            }
        }
    }
}

fn write_result(result: &SearchResult, out: Option<&PathBuf>) -> Result<()> {
    if let Some(path) = out {
        let mut w = create(path)?;
        result.write_jsonl(&mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn graph_report(g: &Graph, certify: bool) -> (Value, bool) {
    let spectrum: Vec<Value> = g
        .spectrum(1e-6)
        .iter()
        .map(|&(x, m)| json!({ "value": format!("{x:.9}"), "multiplicity": m }))
        .collect();
    let mut v = json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "diameter": g.diameter(),
        "bipartite": graphs::is_bipartite(g),
        "antipodal": graphs::is_antipodal(g),
        "terwilliger": graphs::is_terwilliger(g),
        "spectrum": spectrum,
    });
    let mut ok = true;
    if certify {
        let outcome = certify_drg(g);
        v["certification"] = serde_json::to_value(&outcome).expect("serializable");
        if let CertificationOutcome::DistanceRegular { array } = &outcome {
            v["array"] = json!(array.to_string());
            v["feasible"] = json!(gate(array, &FilterConfig::default()).is_feasible());
        } else {
            ok = false;
        }
    }
    (v, ok)
}

fn graph(
    family: &str,
    params: &[usize],
    certify: bool,
    distance: Option<usize>,
    edges: bool,
) -> Result<ExitCode> {
    let mut g = graphs::build_family(family, params)?;
    if let Some(i) = distance {
        g = graphs::distance_i_graph(&g, i)?;
    }
    if edges {
        io::stdout().write_all(g.to_edge_list().as_bytes())?;
        return Ok(ExitCode::SUCCESS);
    }
    let (mut v, ok) = graph_report(&g, certify);
    v["family"] = json!(family);
    v["params"] = json!(params);
    print_json(&v);
    Ok(status(ok))
}

fn certify(input: &PathBuf) -> Result<ExitCode> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let g: Graph = text.parse()?;
    let (mut v, ok) = graph_report(&g, true);
    v["input"] = json!(input.display().to_string());
    print_json(&v);
    Ok(status(ok))
}

fn enumerate_cmd(
    d: usize,
    kmin: u64,
    kmax: u64,
    constraints: &[String],
    out: Option<&PathBuf>,
    unpruned: bool,
    filters: &FilterArgs,
) -> Result<ExitCode> {
    if d == 0 || d > MAX_DIAMETER {
        bail!("diameter must lie in 1..={MAX_DIAMETER}, got {d}");
    }
    let mut spec = SearchSpec::new("enumerate", d, kmin, kmax).with_config(filters.config());
    for c in constraints {
        spec = spec.constraint(c)?;
    }
    let result = if unpruned {
        enumerate_unpruned(&spec)
    } else {
        enumerate(&spec)
    };
    match out {
        Some(_) => write_result(&result, out)?,
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            result.write_jsonl(&mut w)?;
            w.flush()?;
        }
    }
    eprintln!("{}", result.summary());
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring threads")?;
    }
    match &cli.command {
        Command::Check { array, filters } => check(array, filters),
        Command::Reproduce {
            name,
            kmax,
            kmin,
            epsilon,
            out,
            filters,
        } => reproduce(name, *kmin, *kmax, epsilon.clone(), out.as_ref(), filters),
        Command::Graph {
            family,
            params,
            certify,
            distance,
            edges,
        } => graph(family, params, *certify, *distance, *edges),
        Command::Certify { input } => certify(input),
        Command::Enumerate {
            d,
            kmin,
            kmax,
            constraints,
            out,
            unpruned,
            filters,
        } => enumerate_cmd(
            *d,
            *kmin,
            *kmax,
            constraints,
            out.as_ref(),
            *unpruned,
            filters,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e)
            if e.downcast_ref::<io::Error>().map(io::Error::kind)
                == Some(io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
