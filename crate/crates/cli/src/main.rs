use std::fs::File;
use std::io::{self, BufReader, Read, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use wdim_core::constructions::construct;
use wdim_core::delta::{compute_kappa, crosscheck, min_delta, product_kappa};
use wdim_core::io::{read_vertex_set, vertex_csv_string};
use wdim_core::regime::{classify, Status};
use wdim_core::{solve_wdim, Error, GeneralGraph, ProductGraph, SearchMode, SolveOptions, VertexSet};

#[derive(Parser)]
#[command(name = "wdim", version, about = "Weak k-metric dimension of K_n x K_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form value of a cell
    Formula(CellArgs),
    /// Emit the explicit set for a covered cell
    Construct(CellArgs),
    /// Minimum Δ of a given or constructed set
    Verify(VerifyArgs),
    /// Exact search
    Solve(SolveArgs),
    /// Largest admissible k
    Kappa(KappaArgs),
    /// Grid of formula values over n and k ranges
    Table(TableArgs),
    /// Seeded fast-vs-raw Δ trials
    Crosscheck(CrosscheckArgs),
}

#[derive(Args, Clone, Copy)]
#[group(multiple = false)]
struct Format {
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CellArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, conflicts_with = "t", required_unless_present = "t")]
    k: Option<usize>,
    /// Band parameter: k = 2n − 2t, or 2n − 2t − 1 with --odd
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, requires = "t")]
    odd: bool,
    #[command(flatten)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    /// Threshold to test; without it only the minimum is reported
    #[arg(long, required_if_eq("construct", "true"))]
    k: Option<usize>,
    /// Vertex-set CSV file, or - for stdin
    #[arg(long, conflicts_with = "construct", required_unless_present = "construct")]
    set: Option<String>,
    /// Verify construct(n, k)
    #[arg(long)]
    construct: bool,
    #[command(flatten)]
    format: Format,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    n: Option<usize>,
    /// Edge-list file
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Wall-clock budget in seconds
    #[arg(long)]
    budget_secs: Option<f64>,
    /// SUBSET-ASCENDING, COMPLEMENT-ASCENDING or FULL-ENUMERATION
    #[arg(long)]
    mode: Option<String>,
    /// Disable orbit reduction
    #[arg(long)]
    no_symmetry: bool,
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    format: Format,
}

#[derive(Args)]
struct KappaArgs {
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    n: Option<usize>,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[command(flatten)]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    /// Inclusive range a..b
    #[arg(long, value_parser = parse_range)]
    n_range: RangeInclusive<usize>,
    /// Inclusive range a..b; defaults to 1..κ for each n
    #[arg(long, value_parser = parse_range)]
    k_range: Option<RangeInclusive<usize>>,
    /// Run the solver on cells the formulas leave open
    #[arg(long)]
    solve: bool,
    #[arg(long)]
    budget_nodes: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    format: Format,
}

#[derive(Args)]
struct CrosscheckArgs {
    #[arg(long, conflicts_with = "n_range", required_unless_present = "n_range")]
    n: Option<usize>,
    #[arg(long, value_parser = parse_range)]
    n_range: Option<RangeInclusive<usize>>,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    format: Format,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |t: &str| usize::from_str(t.trim()).map_err(|_| format!("not an integer: {t:?}"));
    let range = match s.split_once("..") {
        Some((a, b)) => parse(a)?..=parse(b.strip_prefix('=').unwrap_or(b))?,
        None => {
            let v = parse(s)?;
            v..=v
        }
    };
    if range.is_empty() {
        return Err(format!("empty range {s:?}"));
    }
    Ok(range)
}

/// Failure that exits with status 1.
enum Failure {
    Domain(Error),
    /// Already reported on stdout.
    Rejected,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    let result = match cli.command {
        Command::Formula(a) => formula(&a, &mut out),
        Command::Construct(a) => construct_cmd(&a, &mut out),
        Command::Verify(a) => verify(&a, &mut out),
        Command::Solve(a) => solve(&a, &mut out),
        Command::Kappa(a) => kappa(&a, &mut out),
        Command::Table(a) => table(&a, &mut out),
        Command::Crosscheck(a) => crosscheck_cmd(&a, &mut out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected) => ExitCode::from(1),
        Err(Failure::Domain(e)) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn cell_k(a: &CellArgs) -> Result<usize, Error> {
    match (a.k, a.t) {
        (Some(k), _) => Ok(k),
        (None, Some(t)) => {
            let drop = 2 * t + usize::from(a.odd);
            if t == 0 || drop >= 2 * a.n {
                return Err(Error::InvalidParameter(format!("t={t} gives no positive k for n={}", a.n)));
            }
            Ok(2 * a.n - drop)
        }
        (None, None) => unreachable!("clap requires --k or --t"),
    }
}

fn formula(a: &CellArgs, out: &mut impl Write) -> Outcome {
    let r = classify(a.n, cell_k(a)?)?;
    if a.format.json {
        writeln!(out, "{}", serde_json::to_string(&r).expect("serializable"))?;
    } else if a.format.csv {
        writeln!(out, "n,k,status,value,t,source")?;
        let value = r.value.map(|v| v.to_string()).unwrap_or_default();
        let t = r.t.map(|v| v.to_string()).unwrap_or_default();
        writeln!(out, "{},{},{},{value},{t},\"{}\"", r.n, r.k, r.status.label(), r.source)?;
    } else {
        let value = r.value.map(|v| format!(" {v}")).unwrap_or_default();
        writeln!(out, "wdim_{}(K_{n} x K_{n}) = {}{value}  [{}]", r.k, r.status.label(), r.source, n = r.n)?;
    }
    if r.status == Status::OutOfRange {
        return Err(Failure::Rejected);
    }
    Ok(())
}

fn construct_cmd(a: &CellArgs, out: &mut impl Write) -> Outcome {
    let c = construct(a.n, cell_k(a)?)?;
    if a.format.csv {
        write!(out, "{}", vertex_csv_string(&c.set))?;
    } else if a.format.json {
        let mut v = serde_json::to_value(c.descriptor()).expect("serializable");
        v["set"] = serde_json::to_value(c.set.to_vec()).expect("serializable");
        writeln!(out, "{v}")?;
    } else {
        let t = c.t.map(|t| format!(" t={t}")).unwrap_or_default();
        writeln!(out, "{} n={} k={}{t} size={}", c.tag.label(), c.n, c.k, c.set.len())?;
        write!(out, "{}", c.set.render_grid())?;
    }
    Ok(())
}

fn open_input(path: &str) -> io::Result<Box<dyn Read>> {
    if path == "-" {
        Ok(Box::new(io::stdin()))
    } else {
        Ok(Box::new(BufReader::new(File::open(path)?)))
    }
}

fn verify(a: &VerifyArgs, out: &mut impl Write) -> Outcome {
    let g = ProductGraph::new(a.n)?;
    let set: VertexSet = match &a.set {
        Some(path) => read_vertex_set(open_input(path)?, a.n)?,
        None => construct(a.n, a.k.expect("clap requires --k with --construct"))?.set,
    };
    let w = min_delta(&g, &set)?;
    let pass = a.k.map(|k| w.value as usize >= k);
    if a.format.json {
        let v = json!({ "n": a.n, "k": a.k, "size": set.len(), "witness": w, "pass": pass });
        writeln!(out, "{v}")?;
    } else if a.format.csv {
        writeln!(out, "n,k,size,min_delta,x,y,pass")?;
        let k = a.k.map(|k| k.to_string()).unwrap_or_default();
        let p = pass.map(|p| p.to_string()).unwrap_or_default();
        writeln!(out, "{},{k},{},{},\"{}\",\"{}\",{p}", a.n, set.len(), w.value, w.x, w.y)?;
    } else {
        let verdict = match (a.k, pass) {
            (Some(k), Some(true)) => format!("pass (k={k})"),
            (Some(k), _) => format!("FAIL (k={k})"),
            _ => String::new(),
        };
        writeln!(out, "|S| = {}, min Δ = {} at {} {}  {verdict}", set.len(), w.value, w.x, w.y)?;
    }
    if pass == Some(false) {
        return Err(Failure::Rejected);
    }
    Ok(())
}

#[cfg(feature = "parallel")]
fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Error> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Error::InvalidParameter("--threads must be positive".into())),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Error> {
    if threads == Some(0) {
        return Err(Error::InvalidParameter("--threads must be positive".into()));
    }
    Ok(f())
}

fn solve_options(a: &SolveArgs) -> Result<SolveOptions, Error> {
    let mode = a.mode.as_deref().map(SearchMode::from_str).transpose()?;
    let budget_time = match a.budget_secs {
        Some(s) if !(s > 0.0 && s.is_finite()) => {
            return Err(Error::InvalidParameter("--budget-secs must be positive".into()))
        }
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    Ok(SolveOptions {
        budget_nodes: a.budget_nodes,
        budget_time,
        mode,
        symmetry: !a.no_symmetry,
        parallel: a.threads != Some(1) && wdim_core::par::available(),
        ..SolveOptions::default()
    })
}

fn print_report<V: serde::Serialize + std::fmt::Display>(
    r: &wdim_core::SolveReport<V>,
    format: Format,
    out: &mut impl Write,
) -> io::Result<()> {
    if format.json {
        return writeln!(out, "{}", r.to_json());
    }
    let basis: Vec<String> = r.basis.iter().map(|v| v.to_string()).collect();
    if format.csv {
        writeln!(out, "n,k,value,exact,lower_bound,min_delta,nodes_explored,wall_time_ms,mode,basis")?;
        return writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},\"{}\"",
            r.n,
            r.k,
            r.value,
            r.exact,
            r.lower_bound,
            r.witness.value,
            r.nodes_explored,
            r.wall_time_ms,
            r.mode.label(),
            basis.join(" ")
        );
    }
    let status = if r.exact {
        format!("= {}", r.value)
    } else {
        format!("in [{}, {}] (budget exhausted)", r.lower_bound, r.value)
    };
    writeln!(out, "wdim_{} {status}  mode={} nodes={} time={}ms", r.k, r.mode.label(), r.nodes_explored, r.wall_time_ms)?;
    writeln!(out, "basis: {}", basis.join(" "))?;
    writeln!(out, "min Δ = {} at {} {}", r.witness.value, r.witness.x, r.witness.y)
}

fn load_graph(path: &Path) -> Result<GeneralGraph, Error> {
    GeneralGraph::parse_edge_list(BufReader::new(File::open(path)?))
}

fn solve(a: &SolveArgs, out: &mut impl Write) -> Outcome {
    let opts = solve_options(a)?;
    match (a.n, &a.graph) {
        (Some(n), _) => {
            let g = ProductGraph::new(n)?;
            let r = with_threads(a.threads, || solve_wdim(&g, a.k, &opts))??;
            print_report(&r, a.format, out)?;
        }
        (None, Some(path)) => {
            let g = load_graph(path)?;
            let r = with_threads(a.threads, || solve_wdim(&g, a.k, &opts))??;
            print_report(&r, a.format, out)?;
        }
        (None, None) => unreachable!("clap requires --n or --graph"),
    }
    Ok(())
}

fn kappa(a: &KappaArgs, out: &mut impl Write) -> Outcome {
    let (label, order, value) = match (a.n, &a.graph) {
        (Some(n), _) => {
            let g = ProductGraph::new(n)?;
            let brute = compute_kappa(&g)? as usize;
            debug_assert_eq!(brute, product_kappa(n));
            (format!("K_{n} x K_{n}"), n * n, brute)
        }
        (None, Some(path)) => {
            let g = load_graph(path)?;
            (path.display().to_string(), wdim_core::DistanceOracle::order(&g), compute_kappa(&g)? as usize)
        }
        (None, None) => unreachable!("clap requires --n or --graph"),
    };
    if a.format.json {
        writeln!(out, "{}", json!({ "graph": label, "order": order, "kappa": value }))?;
    } else if a.format.csv {
        writeln!(out, "graph,order,kappa\n\"{label}\",{order},{value}")?;
    } else {
        writeln!(out, "kappa({label}) = {value}")?;
    }
    Ok(())
}

/// One table cell: formula status, or the solver's value where asked.
struct Cell {
    n: usize,
    k: usize,
    mark: &'static str,
    value: Option<usize>,
}

fn table_cell(n: usize, k: usize, a: &TableArgs) -> Result<Cell, Error> {
    let kappa = product_kappa(n);
    if k > kappa {
        return Ok(Cell { n, k, mark: "OUT-OF-RANGE", value: None });
    }
    let r = classify(n, k)?;
    let formula_mark = match r.status {
        Status::Exact => "EXACT",
        Status::UpperBound => "UB",
        Status::Unknown => "UNKNOWN",
        Status::OutOfRange => "OUT-OF-RANGE",
    };
    if a.solve && r.status != Status::Exact {
        let opts = SolveOptions { budget_nodes: a.budget_nodes, parallel: a.threads != Some(1), ..SolveOptions::default() };
        let report = solve_wdim(&ProductGraph::new(n)?, k, &opts)?;
        if report.exact {
            return Ok(Cell { n, k, mark: "SOLVED", value: Some(report.value) });
        }
    }
    Ok(Cell { n, k, mark: formula_mark, value: r.value })
}

fn table(a: &TableArgs, out: &mut impl Write) -> Outcome {
    if *a.n_range.start() < 3 {
        return Err(Error::InvalidOrder(*a.n_range.start()).into());
    }
    let mut rows: Vec<Vec<Cell>> = Vec::new();
    for n in a.n_range.clone() {
        let ks = a.k_range.clone().unwrap_or(1..=product_kappa(n));
        let row = with_threads(a.threads, || ks.map(|k| table_cell(n, k, a)).collect::<Result<Vec<_>, _>>())??;
        rows.push(row);
    }
    if a.format.json {
        let cells: Vec<_> = rows
            .iter()
            .flatten()
            .map(|c| json!({ "n": c.n, "k": c.k, "mark": c.mark, "value": c.value }))
            .collect();
        writeln!(out, "{}", serde_json::Value::Array(cells))?;
    } else if a.format.csv {
        writeln!(out, "n,k,mark,value")?;
        for c in rows.iter().flatten() {
            writeln!(out, "{},{},{},{}", c.n, c.k, c.mark, c.value.map(|v| v.to_string()).unwrap_or_default())?;
        }
    } else {
        let kmax = rows.iter().flatten().map(|c| c.k).max().unwrap_or(0);
        let kmin = rows.iter().flatten().map(|c| c.k).min().unwrap_or(1);
        let render = |c: &Cell| match (c.mark, c.value) {
            ("OUT-OF-RANGE", _) => "-".to_string(),
            (m, Some(v)) => format!("{m} {v}"),
            (m, None) => m.to_string(),
        };
        let width = rows.iter().flatten().map(|c| render(c).len()).max().unwrap_or(1).max(4);
        write!(out, "{:>4}", "n\\k")?;
        for k in kmin..=kmax {
            write!(out, " {k:>width$}")?;
        }
        writeln!(out)?;
        for row in &rows {
            write!(out, "{:>4}", row.first().map(|c| c.n).unwrap_or(0))?;
            for k in kmin..=kmax {
                let text = row.iter().find(|c| c.k == k).map(render).unwrap_or_default();
                write!(out, " {text:>width$}")?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}

fn crosscheck_cmd(a: &CrosscheckArgs, out: &mut impl Write) -> Outcome {
    let orders = match (a.n, &a.n_range) {
        (Some(n), _) => n..=n,
        (None, Some(r)) => r.clone(),
        (None, None) => unreachable!("clap requires --n or --n-range"),
    };
    let o = crosscheck(a.seed, a.trials, orders)?;
    if a.format.json {
        writeln!(out, "{}", serde_json::to_string(&o).expect("serializable"))?;
    } else if a.format.csv {
        writeln!(out, "seed,trials,agree\n{},{},{}", o.seed, o.trials, o.agree)?;
    } else {
        writeln!(out, "{}/{} agree (seed {})", o.agree, o.trials, o.seed)?;
        if let Some(m) = &o.first_mismatch {
            writeln!(out, "first mismatch: n={} x={} y={} fast={} raw={}", m.n, m.x, m.y, m.fast, m.raw)?;
        }
    }
    if o.agree != o.trials {
        return Err(Failure::Rejected);
    }
    Ok(())
}
