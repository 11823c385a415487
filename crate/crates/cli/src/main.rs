use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kneser::boolean31::color_g_n31;
use kneser::designs::{check_design, one_factorization, resolution_coloring, DesignFile, DesignMode};
use kneser::g42::{color_g42, g42_stats, G42Error, PipelineParams, Routing};
use kneser::graph::{verify_by_edges, verify_coloring, AdjacencyMode, Coloring, KneserGraph, VerificationReport};
use kneser::solver::{
    alpha_exact, chi_exact, greedy_coloring, list_coloring_with_retries, list_size_bound, ExactConfig, ExplicitGraph,
    ListAssignment, DEFAULT_EXACT_CAP,
};

#[derive(Parser)]
#[command(
    name = "kneser",
    version,
    about = "Color and verify generalized Kneser graphs G(n, r, s)"
)]
struct Cli {
    /// Upper bound on worker threads (results do not depend on it)
    #[arg(long, global = true, env = "KNESER_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a coloring, verify it and write it out
    Color(ColorArgs),
    /// Check a coloring file for monochromatic edges
    Verify {
        path: PathBuf,
        /// Check every edge instead of counting per class
        #[arg(long)]
        by_edges: bool,
    },
    /// Chromatic number by exhaustive search
    ChiExact(ExactArgs),
    /// Independence number by exhaustive search
    AlphaExact(ExactArgs),
    /// Check a design file
    DesignCheck {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = DesignKind::Exact)]
        mode: DesignKind,
    },
    /// Family, orbit and short-tuple statistics for G(p^2 - 1, 4, 2)
    G42Stats {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 3)]
        t: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Boolean31,
    Factorization,
    G42,
    Greedy,
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum DesignKind {
    Exact,
    Approx,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Atleast,
}

impl From<Mode> for AdjacencyMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => AdjacencyMode::Exact,
            Mode::Atleast => AdjacencyMode::AtLeast,
        }
    }
}

#[derive(Args)]
struct ColorArgs {
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// boolean31: dimension (n = 2^t); g42: dependence length threshold
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    lambda: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long, value_parser = parse_routing)]
    routing: Option<Routing>,
    /// factorization: resolution file to use instead of the round-robin one
    #[arg(long)]
    design: Option<PathBuf>,
    /// list: list assignment file (default: every vertex gets 0..m)
    #[arg(long)]
    lists: Option<PathBuf>,
    /// list: list size (default ⌈r n^(s+1) ln n⌉)
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 32)]
    retries: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Coloring file
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON report (default: stdout)
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    s: u32,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Refuse graphs with more vertices
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    cap: usize,
    #[arg(long)]
    node_limit: Option<u64>,
}

fn parse_routing(s: &str) -> Result<Routing, String> {
    s.parse().map_err(|e: G42Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        // an already initialized pool is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether the result passed.
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Color(a) => cmd_color(a),
        Command::Verify { path, by_edges } => cmd_verify(&path, by_edges),
        Command::ChiExact(a) => {
            let g = explicit(&a)?;
            println!("{}", chi_exact(&g, &config(&a))?);
            Ok(true)
        }
        Command::AlphaExact(a) => {
            let g = explicit(&a)?;
            println!("{}", alpha_exact(&g, &config(&a))?);
            Ok(true)
        }
        Command::DesignCheck { path, mode } => cmd_design_check(&path, mode),
        Command::G42Stats { p, t } => {
            print_json(&serde_json::to_value(g42_stats(p, t)?)?);
            Ok(true)
        }
    }
}

fn explicit(a: &ExactArgs) -> Result<ExplicitGraph> {
    let g = KneserGraph::new(a.n, a.r, a.s, a.mode.into())?;
    Ok(ExplicitGraph::from_kneser(&g)?)
}

fn config(a: &ExactArgs) -> ExactConfig {
    ExactConfig {
        cap: a.cap,
        node_limit: a.node_limit,
    }
}

fn require(v: Option<u32>, flag: &str, method: &str) -> Result<u32> {
    v.with_context(|| format!("--method {method} requires --{flag}"))
}

fn reject(present: bool, flag: &str, method: &str) -> Result<()> {
    if present {
        bail!("--{flag} does not apply to --method {method}");
    }
    Ok(())
}

fn cmd_color(a: ColorArgs) -> Result<bool> {
    let g42_only = a.p.is_some() || a.lambda.is_some() || a.q.is_some() || a.routing.is_some();
    let (coloring, details) = match a.method {
        Method::Boolean31 => {
            reject(g42_only, "p/lambda/q/routing", "boolean31")?;
            let t = match (a.t, a.n) {
                (Some(t), None) => t,
                (None, Some(n)) if n.is_power_of_two() => n.trailing_zeros(),
                (None, Some(n)) => bail!("n={n} is not a power of two"),
                (Some(t), Some(n)) if n == 1 << t => t,
                (Some(_), Some(_)) => bail!("--n must equal 2^t"),
                (None, None) => bail!("--method boolean31 requires --t or --n"),
            };
            (color_g_n31(t)?, json!({ "t": t }))
        }
        Method::Factorization => {
            reject(g42_only, "p/lambda/q/routing", "factorization")?;
            match &a.design {
                None => {
                    let n = require(a.n, "n", "factorization")?;
                    let res = one_factorization(n)?;
                    let g = KneserGraph::exact(n, 2, 1)?;
                    (
                        resolution_coloring(&res, &g)?,
                        json!({ "parts": res.len(), "design": "round-robin" }),
                    )
                }
                Some(path) => {
                    let file = DesignFile::read_from(open(path)?).with_context(|| path.display().to_string())?;
                    let res = file.resolution()?;
                    res.validate()?;
                    let r = require(a.r, "r", "factorization with --design")?;
                    let s = require(a.s, "s", "factorization with --design")?;
                    let g = KneserGraph::exact(a.n.unwrap_or(file.n), r, s)?;
                    (
                        resolution_coloring(&res, &g)?,
                        json!({ "parts": res.len(), "design": path }),
                    )
                }
            }
        }
        Method::G42 => {
            let p = require(a.p, "p", "g42")?;
            reject(a.n.is_some() || a.r.is_some() || a.s.is_some(), "n/r/s", "g42")?;
            let mut params = PipelineParams::new(p);
            params.seed = a.seed;
            params.t = a.t.unwrap_or(params.t);
            params.lambda = a.lambda.unwrap_or(params.lambda);
            params.q = a.q.unwrap_or(params.q);
            params.routing = a.routing.unwrap_or(params.routing);
            match color_g42(&params) {
                Ok(out) => (out.coloring, serde_json::to_value(&out.report)?),
                Err(G42Error::Improper {
                    violation_count,
                    violations,
                }) => {
                    for v in &violations {
                        eprintln!("violation: {v}");
                    }
                    let report =
                        json!({ "method": "g42", "seed": a.seed, "proper": false, "violation_count": violation_count });
                    emit_report(&report, a.report.as_deref())?;
                    return Ok(false);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Method::Greedy => {
            reject(g42_only || a.t.is_some(), "p/t/lambda/q/routing", "greedy")?;
            (greedy_coloring(&graph_from(&a, "greedy")?), json!({}))
        }
        Method::List => {
            reject(g42_only || a.t.is_some(), "p/t/lambda/q/routing", "list")?;
            let g = graph_from(&a, "list")?;
            let m = a.m.unwrap_or_else(|| list_size_bound(g.n(), g.r(), g.s()));
            let lists = match &a.lists {
                Some(path) => ListAssignment::read_from(&g, open(path)?).with_context(|| path.display().to_string())?,
                None => ListAssignment::uniform(&g, m),
            };
            let (lc, attempt) = list_coloring_with_retries(&g, &lists, m, a.seed, a.retries)?;
            (
                lc.coloring,
                json!({ "m": m, "attempt": attempt, "attempt_seed": lc.seed }),
            )
        }
    };

    let g = coloring.graph().clone();
    let verification = verify_coloring(&g, &coloring)?;
    if let Some(path) = &a.out {
        let mut w = BufWriter::new(File::create(path).with_context(|| path.display().to_string())?);
        coloring.write_to(&mut w)?;
        w.flush()?;
    }
    let report = json!({
        "method": coloring.meta.method,
        "graph": g.to_string(),
        "n": g.n(),
        "r": g.r(),
        "s": g.s(),
        "mode": g.mode(),
        "seed": a.seed,
        "vertices": g.vertex_count(),
        "num_colors": coloring.num_colors(),
        "proper": verification.proper,
        "verification": verification_json(&verification),
        "details": details,
    });
    emit_report(&report, a.report.as_deref())?;
    Ok(verification.proper)
}

fn graph_from(a: &ColorArgs, method: &str) -> Result<KneserGraph> {
    let n = require(a.n, "n", method)?;
    let r = require(a.r, "r", method)?;
    let s = require(a.s, "s", method)?;
    Ok(KneserGraph::new(n, r, s, a.mode.into())?)
}

fn cmd_verify(path: &Path, by_edges: bool) -> Result<bool> {
    let c = Coloring::read_from(open(path)?).with_context(|| path.display().to_string())?;
    let rep = if by_edges {
        verify_by_edges(c.graph(), &c)?
    } else {
        verify_coloring(c.graph(), &c)?
    };
    for (u, v) in &rep.violations {
        eprintln!("violation: {u} {v} (color {})", c.color_of(u)?);
    }
    print_json(&json!({
        "graph": c.graph().to_string(),
        "method": c.meta.method,
        "seed": c.meta.seed,
        "verification": verification_json(&rep),
    }));
    Ok(rep.proper)
}

fn cmd_design_check(path: &Path, mode: DesignKind) -> Result<bool> {
    let file = DesignFile::read_from(open(path)?).with_context(|| path.display().to_string())?;
    let rep = check_design(&file.family()?)?;
    let mode = match mode {
        DesignKind::Exact => DesignMode::Exact,
        DesignKind::Approx => DesignMode::Approximate,
    };
    let mut out = serde_json::to_value(&rep)?;
    if file.parts.len() > 1 {
        let res = file.resolution().and_then(|r| r.validate());
        out["resolution_valid"] = json!(res.is_ok());
        if let Err(e) = res {
            out["resolution_error"] = json!(e.to_string());
        }
    }
    print_json(&out);
    Ok(rep.passes(mode))
}

fn verification_json(v: &VerificationReport) -> Value {
    serde_json::to_value(v).expect("plain data")
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(
        File::open(path).with_context(|| format!("cannot open {}", path.display()))?,
    ))
}

fn emit_report(v: &Value, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => {
            let mut f = File::create(p).with_context(|| p.display().to_string())?;
            serde_json::to_writer_pretty(&mut f, v)?;
            writeln!(f)?;
        }
        None => print_json(v),
    }
    Ok(())
}

fn print_json(v: &Value) {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let _ = serde_json::to_writer_pretty(&mut lock, v);
    let _ = writeln!(lock);
}
