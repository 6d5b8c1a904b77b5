//! Command-line front end: `generate`, `render`, `cut`, `paths` and `experiment`.
//!
//! Exit codes: 0 success, 1 invariant violation, 2 invalid input, 3 budget exceeded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::experiments::{
    run_suite, search_budget, GraphCache, GraphKind, SandwichConfig, Suite, SuiteOptions, DEFAULT_SEED,
};
use crate::fractal::{
    parse_graph, render_svg, vertex_count_formula, write_edge_list, write_header, FractalParams,
    GraphBudget, LevelGraph, DEFAULT_MAX_VERTICES,
};
use crate::separation::{
    constructive_cut, cut_epsilon_exact, path_lower_bound, CanonicalPaths, CutResult, PathSystem,
    DEFAULT_MAX_PAIRS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fractalsep", version, about = "Separators of fractal lattice graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a level graph; print its size and optionally write `<out>.json` + `<out>.edges`.
    Generate(GraphArgs),
    /// Render a 2-D level graph as SVG.
    Render(RenderArgs),
    /// Balanced cut of a level graph or an exported graph.
    Cut(CutArgs),
    /// Canonical path system congestion and the resulting lower bound.
    Paths(PathArgs),
    /// Run a verification suite.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub b: Option<u64>,
    /// Comma-separated digits; `none` for the empty set.
    #[arg(long = "A", value_name = "DIGITS")]
    pub a: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
}

impl ParamArgs {
    fn any(&self) -> bool {
        self.d.is_some() || self.b.is_some() || self.a.is_some() || self.m.is_some()
    }

    /// Missing flags default to the carpet `(2, 3, {1}, 1)`.
    pub fn params(&self) -> Result<FractalParams> {
        let digits = match self.a.as_deref().map(str::trim) {
            None => vec![1],
            Some("" | "none" | "{}") => Vec::new(),
            Some(list) => list
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Input(format!("--A: {s:?} is not a digit")))
                })
                .collect::<Result<_>>()?,
        };
        FractalParams::new(self.d.unwrap_or(2), self.b.unwrap_or(3), digits, self.m.unwrap_or(1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
    Edgelist,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    /// The level graph.
    Level,
    /// Its complete-lines subgraph.
    CompleteLines,
}

impl From<KindArg> for GraphKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Level => GraphKind::Level,
            KindArg::CompleteLines => GraphKind::CompleteLines,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, value_enum, default_value = "level")]
    pub graph: KindArg,
    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
    pub max_vertices: usize,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl GraphArgs {
    fn budget(&self) -> GraphBudget {
        GraphBudget::new(self.max_vertices)
    }

    fn build(&self) -> Result<LevelGraph> {
        GraphCache::from_env().load_or_build(&self.params.params()?, self.graph.into(), self.k, self.budget())
    }
}

#[derive(Debug, Clone, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Fill the complete-lines cells in a second colour.
    #[arg(long)]
    pub highlight_complete: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 20_000_000)]
    pub bb_node_limit: u64,
    /// Seconds.
    #[arg(long)]
    pub time_limit: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct CutArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Exact branch and bound instead of the plane cutter.
    #[arg(long)]
    pub exact: bool,
    /// Cut a graph written by `generate --out PREFIX` instead of building one.
    #[arg(long, value_name = "PREFIX")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PathArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
    pub max_vertices: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_PAIRS)]
    pub max_pairs: u64,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub suite: String,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Largest level (the level itself for random-subgraphs).
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub k_min: Option<u32>,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
    pub max_vertices: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_PAIRS)]
    pub max_pairs: u64,
    /// Run the exact search on graphs up to this size.
    #[arg(long, default_value_t = 64)]
    pub exact_max_vertices: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Consistency(_) => EXIT_INVARIANT,
        Error::Budget { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Generate(a) => generate(a, out),
        Command::Render(a) => render(a, out),
        Command::Cut(a) => cut(a, out),
        Command::Paths(a) => paths(a, out),
        Command::Experiment(a) => experiment(a, out, err),
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => {
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

#[derive(Serialize)]
struct GenerateSummary {
    params: String,
    graph: GraphKind,
    k: u32,
    n: usize,
    edges: usize,
    /// `|V_k|` from the counting formula (level graphs only).
    formula: Option<String>,
    matches_formula: Option<bool>,
}

fn generate(a: &GraphArgs, out: &mut dyn Write) -> Result<i32> {
    let g = a.build()?;
    let kind: GraphKind = a.graph.into();
    let formula = (kind == GraphKind::Level).then(|| vertex_count_formula(g.params(), a.k));
    let matches = formula.as_ref().map(|f| *f == g.n().into());
    match a.format {
        Some(Format::Edgelist) if a.out.is_none() => emit(out, None, &write_edge_list(&g))?,
        Some(Format::Json) if a.out.is_none() => emit(out, None, &write_header(&g)?)?,
        Some(Format::Csv | Format::Svg) => {
            return Err(Error::Input("generate writes json or edgelist".into()));
        }
        _ => {
            if let Some(prefix) = &a.out {
                fs::write(with_suffix(prefix, ".json"), write_header(&g)?)?;
                fs::write(with_suffix(prefix, ".edges"), write_edge_list(&g))?;
            }
            let summary = GenerateSummary {
                params: g.params().to_string(),
                graph: kind,
                k: a.k,
                n: g.n(),
                edges: g.edge_count(),
                formula: formula.map(|f| f.to_string()),
                matches_formula: matches,
            };
            emit(out, None, &serde_json::to_string_pretty(&summary)?)?;
        }
    }
    if matches == Some(false) {
        return Err(Error::Consistency(format!(
            "enumerated {} vertices but the formula gives another count",
            g.n()
        )));
    }
    Ok(EXIT_OK)
}

fn render(a: &RenderArgs, out: &mut dyn Write) -> Result<i32> {
    if let Some(f) = a.graph.format.filter(|f| *f != Format::Svg) {
        return Err(Error::Input(format!("render writes svg, not {f:?}")));
    }
    let g = a.graph.build()?;
    let highlight = if a.highlight_complete {
        Some(GraphCache::from_env().load_or_build(g.params(), GraphKind::CompleteLines, a.graph.k, a.graph.budget())?)
    } else {
        None
    };
    emit(out, a.graph.out.as_deref(), &render_svg(&g, highlight.as_ref())?)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CutReport {
    params: String,
    k: u32,
    n: usize,
    method: &'static str,
    epsilon: f64,
    cut_size: usize,
    cutset: Vec<crate::fractal::LatticePoint>,
    largest_component: usize,
    valid: bool,
    proved_optimal: bool,
    lower_bound: usize,
}

fn load_input(prefix: &Path) -> Result<LevelGraph> {
    let header = fs::read_to_string(with_suffix(prefix, ".json"))?;
    let edges = fs::read_to_string(with_suffix(prefix, ".edges"))?;
    parse_graph(&header, &edges)
}

fn cut(a: &CutArgs, out: &mut dyn Write) -> Result<i32> {
    let g = match &a.input {
        Some(prefix) => load_input(prefix)?,
        None => a.graph.build()?,
    };
    let eps = a.search.epsilon;
    let (method, result): (&'static str, CutResult) = if a.exact {
        let seed = if eps >= 0.5 && !g.is_empty() {
            Some(constructive_cut(&g)?.result.cut_ids)
        } else {
            None
        };
        let budget = search_budget(a.search.bb_node_limit, a.search.time_limit);
        ("exact", cut_epsilon_exact(&g, eps, budget, seed.as_deref())?)
    } else {
        if eps < 0.5 {
            return Err(Error::Input(format!(
                "the plane cutter balances to 1/2; use --exact for epsilon = {eps}"
            )));
        }
        let r = constructive_cut(&g)?.result;
        ("constructive", CutResult::evaluate(&g, &r.cut_ids, eps)?)
    };
    let report = CutReport {
        params: g.params().to_string(),
        k: g.level(),
        n: g.n(),
        method,
        epsilon: eps,
        cut_size: result.cut_size(),
        cutset: result.cutset.clone(),
        largest_component: result.largest_component(),
        valid: result.valid,
        proved_optimal: result.proved_optimal,
        lower_bound: result.lower_bound,
    };
    let text = match a.graph.format {
        None | Some(Format::Json) => serde_json::to_string_pretty(&report)?,
        Some(Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["k", "n", "method", "epsilon", "cut_size", "largest_component", "valid", "proved_optimal"])?;
            w.write_record([
                report.k.to_string(),
                report.n.to_string(),
                report.method.to_string(),
                report.epsilon.to_string(),
                report.cut_size.to_string(),
                report.largest_component.to_string(),
                report.valid.to_string(),
                report.proved_optimal.to_string(),
            ])?;
            String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.into_error()))?)
                .map_err(|e| Error::Consistency(e.to_string()))?
        }
        Some(f) => return Err(Error::Input(format!("cut writes json or csv, not {f:?}"))),
    };
    emit(out, a.graph.out.as_deref(), &text)?;
    if !result.valid {
        return Err(Error::Consistency(format!(
            "cut leaves a component of {} vertices",
            result.largest_component()
        )));
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct PathsReport {
    params: String,
    k: u32,
    n: usize,
    pair_count: u64,
    max_congestion: u64,
    raw_bound: f64,
    bound: u64,
    certified: bool,
    witness_size: Option<usize>,
}

fn paths(a: &PathArgs, out: &mut dyn Write) -> Result<i32> {
    let params = a.params.params()?;
    let g = GraphCache::from_env().load_or_build(
        &params,
        GraphKind::CompleteLines,
        a.k,
        GraphBudget::new(a.max_vertices),
    )?;
    let ps = PathSystem::build(g.adjacency(), &CanonicalPaths::new(&g)?, a.max_pairs)?;
    let witness = if g.is_empty() { None } else { Some(constructive_cut(&g)?.result) };
    let pb = path_lower_bound(&ps, witness.as_ref());
    let report = PathsReport {
        params: params.to_string(),
        k: a.k,
        n: ps.n,
        pair_count: ps.pair_count,
        max_congestion: ps.max_congestion,
        raw_bound: pb.raw,
        bound: pb.bound,
        certified: pb.certified,
        witness_size: pb.witness_size,
    };
    let text = match a.format {
        None | Some(Format::Json) => serde_json::to_string_pretty(&report)?,
        Some(Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.serialize(&report)?;
            String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.into_error()))?)
                .map_err(|e| Error::Consistency(e.to_string()))?
        }
        Some(f) => return Err(Error::Input(format!("paths writes json or csv, not {f:?}"))),
    };
    emit(out, a.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn experiment(a: &ExperimentArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let suite: Suite = a.suite.parse()?;
    let opts = SuiteOptions {
        params: if a.params.any() { Some(a.params.params()?) } else { None },
        k_min: a.k_min,
        k_max: a.k,
        epsilon: a.search.epsilon,
        config: SandwichConfig {
            graph_budget: GraphBudget::new(a.max_vertices),
            search: search_budget(a.search.bb_node_limit, a.search.time_limit),
            exact_max_vertices: a.exact_max_vertices,
            max_pairs: a.max_pairs,
            cache: GraphCache::from_env(),
        },
        seed: a.seed,
        trials: a.trials,
        ..SuiteOptions::default()
    };
    let report = run_suite(suite, &opts)?;
    let text = match a.format {
        None | Some(Format::Json) => report.to_json()?,
        Some(Format::Csv) => report.to_csv()?,
        Some(f) => return Err(Error::Input(format!("experiment writes json or csv, not {f:?}"))),
    };
    emit(out, a.out.as_deref(), &text)?;
    writeln!(err, "digest {}", report.digest()?)?;
    for f in &report.fits {
        writeln!(err, "fit {} slope {:.5} over k {}..{}", f.column, f.fit.slope, f.k_min, f.k_max)?;
    }
    if report.passed() {
        Ok(EXIT_OK)
    } else {
        for f in &report.failures {
            writeln!(err, "failed: {f}")?;
        }
        Ok(EXIT_INVARIANT)
    }
}
