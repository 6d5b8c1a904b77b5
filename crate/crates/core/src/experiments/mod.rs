//! Verification campaigns: formula cross-checks, cut-bound sandwiches across levels and
//! log–log exponent fits.
//!
//! Reports serialize to JSON and CSV. The canonical JSON leaves out wall-clock timings,
//! so its SHA-256 digest is stable across runs with the same inputs.

mod cache;
mod fit;
mod random;

pub use cache::{GraphCache, CACHE_DIR_ENV};
pub use fit::{fit_exponent, ExponentFit};
pub use random::{brute_force_cut, random_connected_subset};

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fractal::{
    build_level_graph, complete_lines_count, complete_lines_in_direction, exponent_e,
    vertex_count_formula, FractalParams, GraphBudget,
};
use crate::separation::{
    constructive_cut, cut_epsilon_exact, direct_line_lower_bound, path_lower_bound,
    CanonicalPaths, CutResult, PathBound, PathSystem, SearchBudget, DEFAULT_MAX_PAIRS,
};

/// Seed used by randomized suites unless one is given.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Slope tolerances against the target exponent, per column.
pub const LOWER_BOUND_TOLERANCE: f64 = 0.05;
pub const UPPER_BOUND_TOLERANCE: f64 = 0.06;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphKind {
    /// `Γ_k`.
    Level,
    /// `C_k`, the complete-lines subgraph.
    CompleteLines,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::Level => "level",
            GraphKind::CompleteLines => "complete-lines",
        })
    }
}

impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "level" | "gamma" => Ok(GraphKind::Level),
            "complete-lines" | "complete" => Ok(GraphKind::CompleteLines),
            _ => Err(Error::Input(format!("unknown graph kind {s:?} (use level or complete-lines)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    CarpetSandwich,
    Counts,
    MengerUpper,
    RandomSubgraphs,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::CarpetSandwich,
        Suite::Counts,
        Suite::MengerUpper,
        Suite::RandomSubgraphs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::CarpetSandwich => "carpet-sandwich",
            Suite::Counts => "counts",
            Suite::MengerUpper => "menger-upper",
            Suite::RandomSubgraphs => "random-subgraphs",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::Input(format!("unknown suite {s:?} (one of {})", names.join(", ")))
            })
    }
}

/// Enumerated count against its closed form or two-sided bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub k: u32,
    /// `vertices`, `complete_lines` (per axis) or `complete_lines_subgraph`.
    pub quantity: String,
    pub axis: Option<usize>,
    pub enumerated: u64,
    pub expected: Option<u64>,
    pub lower: Option<u64>,
    pub upper: Option<u64>,
    pub ok: bool,
}

fn to_u64(x: BigUint, what: &str) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::Domain(format!("{what} = {x} does not fit in 64 bits")))
}

/// Compares enumeration with the counting formulas for `k = 0..=k_max`.
///
/// Checked: `|Γ_k|`, complete lines per direction, and `|C_k|` against
/// `L·b^k ≤ |C_k| ≤ d·L·b^k` where `L` is the per-direction line count (plus the
/// closed form `2·6^k − 4^k` for the carpet).
pub fn run_count_checks(params: &FractalParams, k_max: u32, budget: GraphBudget) -> Result<Vec<CountRow>> {
    let per_k: Vec<Vec<CountRow>> = (0..=k_max)
        .into_par_iter()
        .map(|k| count_rows(params, k, budget))
        .collect::<Result<_>>()?;
    Ok(per_k.into_iter().flatten().collect())
}

fn count_rows(params: &FractalParams, k: u32, budget: GraphBudget) -> Result<Vec<CountRow>> {
    let mut rows = Vec::new();
    let n = build_level_graph(params, k, budget)?.n() as u64;
    let expected = to_u64(vertex_count_formula(params, k), "|V_k|")?;
    rows.push(CountRow {
        k,
        quantity: "vertices".into(),
        axis: None,
        enumerated: n,
        expected: Some(expected),
        lower: None,
        upper: None,
        ok: n == expected,
    });

    let lines = to_u64(complete_lines_count(params, k), "complete lines")?;
    for axis in 0..params.d() {
        let found = complete_lines_in_direction(params, k, axis, budget)?.len() as u64;
        rows.push(CountRow {
            k,
            quantity: "complete_lines".into(),
            axis: Some(axis),
            enumerated: found,
            expected: Some(lines),
            lower: None,
            upper: None,
            ok: found == lines,
        });
    }

    let c = cache::build(params, GraphKind::CompleteLines, k, budget)?.n() as u64;
    let side = params.side(k)?;
    let lower = lines.checked_mul(side);
    let upper = lower.and_then(|l| l.checked_mul(params.d() as u64));
    let closed = if params.is_carpet() {
        6u64.checked_pow(k)
            .and_then(|x| x.checked_mul(2))
            .zip(4u64.checked_pow(k))
            .map(|(a, b)| a - b)
    } else {
        None
    };
    // Lines of an empty graph contribute no vertices.
    let within = lines == 0 || (lower.is_some_and(|l| l <= c) && upper.is_some_and(|u| c <= u));
    rows.push(CountRow {
        k,
        quantity: "complete_lines_subgraph".into(),
        axis: None,
        enumerated: c,
        expected: closed,
        lower,
        upper,
        ok: within && closed.is_none_or(|x| x == c),
    });
    Ok(rows)
}

/// Budgets and switches for [`run_bound_sandwich`].
#[derive(Clone, Debug, PartialEq)]
pub struct SandwichConfig {
    pub graph_budget: GraphBudget,
    pub search: SearchBudget,
    /// Run the exact search only on graphs with at most this many vertices.
    pub exact_max_vertices: usize,
    /// Pair budget for path systems.
    pub max_pairs: u64,
    pub cache: GraphCache,
}

impl Default for SandwichConfig {
    fn default() -> Self {
        SandwichConfig {
            graph_budget: GraphBudget::default(),
            search: SearchBudget::default(),
            exact_max_vertices: 64,
            max_pairs: DEFAULT_MAX_PAIRS,
            cache: GraphCache::disabled(),
        }
    }
}

/// One level of a bound sandwich.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichRow {
    pub k: u32,
    pub n: usize,
    /// Best proven lower bound on `cut^ε`.
    pub lower_bound: Option<u64>,
    /// Which argument produced `lower_bound`: `direct-line`, `path-congestion` or `search`.
    pub lower_source: Option<String>,
    pub path: Option<PathBound>,
    pub exact_or_incumbent: Option<usize>,
    pub exact_proved: Option<bool>,
    /// Pruned cutter result, present when `ε ≥ 1/2`.
    pub constructive: Option<usize>,
    pub plane_vertices: Option<usize>,
    pub envelope: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Lower bound, exact-or-incumbent and constructive cut for each level in `ks`.
///
/// Lower bounds apply for `ε ≤ 1/2` and the cutter's result for `ε ≥ 1/2` (its cut is
/// `1/2`-balanced). Fails with a consistency error if the three columns are out of order.
pub fn run_bound_sandwich(
    params: &FractalParams,
    kind: GraphKind,
    ks: &[u32],
    epsilon: f64,
    config: &SandwichConfig,
) -> Result<Vec<SandwichRow>> {
    crate::separation::check_epsilon(epsilon)?;
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    ks.par_iter()
        .map(|&k| sandwich_row(params, kind, k, epsilon, config))
        .collect()
}

fn sandwich_row(
    params: &FractalParams,
    kind: GraphKind,
    k: u32,
    epsilon: f64,
    config: &SandwichConfig,
) -> Result<SandwichRow> {
    let started = Instant::now();
    let g = config.cache.load_or_build(params, kind, k, config.graph_budget)?;
    let n = g.n();
    let lower_applies = epsilon <= 0.5 + 1e-12;
    let upper_applies = epsilon >= 0.5 - 1e-12;

    let cutter = if n > 0 { Some(constructive_cut(&g)?) } else { None };

    let mut exact: Option<CutResult> = None;
    if n > 0 && n <= config.exact_max_vertices {
        let seed = cutter
            .as_ref()
            .filter(|_| upper_applies)
            .map(|c| c.result.cut_ids.clone());
        exact = Some(cut_epsilon_exact(&g, epsilon, config.search, seed.as_deref())?);
    }

    let mut lower: Option<(u64, &'static str)> = None;
    let mut consider = |value: u64, source: &'static str| {
        if lower.is_none_or(|(best, _)| value > best) {
            lower = Some((value, source));
        }
    };
    if let Some(e) = &exact {
        if e.lower_bound > 0 {
            consider(e.lower_bound as u64, "search");
        }
    }
    let mut path = None;
    if lower_applies && kind == GraphKind::CompleteLines && n > 0 {
        if params.is_carpet() {
            consider(direct_line_lower_bound(params, k)?, "direct-line");
        }
        if params.m() == 1 && (n as u64).saturating_mul(n as u64) <= config.max_pairs {
            let ps = PathSystem::build(g.adjacency(), &CanonicalPaths::new(&g)?, config.max_pairs)?;
            let witness = exact
                .as_ref()
                .filter(|e| (e.epsilon - 0.5).abs() < 1e-12 && e.valid && 4 * e.cut_size() <= n)
                .or(cutter.as_ref().map(|c| &c.result));
            let pb = path_lower_bound(&ps, witness);
            if pb.certified {
                consider(pb.bound, "path-congestion");
            }
            path = Some(pb);
        }
    }

    let row = SandwichRow {
        k,
        n,
        lower_bound: lower.map(|l| l.0),
        lower_source: lower.map(|l| l.1.to_string()),
        path,
        exact_or_incumbent: exact.as_ref().map(CutResult::cut_size),
        exact_proved: exact.as_ref().map(|e| e.proved_optimal),
        constructive: cutter.as_ref().filter(|_| upper_applies).map(|c| c.result.cut_size()),
        plane_vertices: cutter.as_ref().filter(|_| upper_applies).map(|c| c.plane_vertices),
        envelope: cutter.as_ref().and_then(|c| c.bound.as_ref()).map(|b| b.envelope),
        elapsed_ms: Some(started.elapsed().as_millis() as u64),
    };
    check_ordering(&row)?;
    Ok(row)
}

fn check_ordering(row: &SandwichRow) -> Result<()> {
    let lo = row.lower_bound.map(|x| x as usize);
    let chain = [
        ("lower bound", lo, "exact or incumbent", row.exact_or_incumbent),
        ("exact or incumbent", row.exact_or_incumbent, "constructive", row.constructive),
        ("lower bound", lo, "constructive", row.constructive),
    ];
    for (a, x, b, y) in chain {
        if let (Some(x), Some(y)) = (x, y) {
            if x > y {
                return Err(Error::Consistency(format!("level {}: {a} {x} exceeds {b} {y}", row.k)));
            }
        }
    }
    Ok(())
}

/// A fitted column of a sandwich table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColumnFit {
    /// `lower_bound`, `exact_or_incumbent` or `constructive`.
    pub column: String,
    pub k_min: u32,
    pub k_max: u32,
    pub fit: ExponentFit,
    pub tolerance: f64,
    pub within_tolerance: Option<bool>,
}

/// Fits `ln(column)` against `ln n` for every column with at least three usable rows
/// whose level lies in `k_min..=k_max`.
pub fn fit_columns(
    rows: &[SandwichRow],
    k_min: u32,
    k_max: u32,
    target_e: Option<f64>,
) -> Result<Vec<ColumnFit>> {
    type Select = fn(&SandwichRow) -> Option<f64>;
    let columns: [(&str, Select, f64); 3] = [
        ("lower_bound", |r| r.lower_bound.map(|x| x as f64), LOWER_BOUND_TOLERANCE),
        ("exact_or_incumbent", |r| r.exact_or_incumbent.map(|x| x as f64), UPPER_BOUND_TOLERANCE),
        ("constructive", |r| r.constructive.map(|x| x as f64), UPPER_BOUND_TOLERANCE),
    ];
    let mut fits = Vec::new();
    for (column, select, tolerance) in columns {
        let used: Vec<&SandwichRow> = rows
            .iter()
            .filter(|r| (k_min..=k_max).contains(&r.k) && r.n > 0 && select(r).is_some_and(|v| v > 0.0))
            .collect();
        if used.len() < 3 {
            continue;
        }
        let points: Vec<(f64, f64)> = used.iter().map(|r| (r.n as f64, select(r).unwrap_or(0.0))).collect();
        let fit = fit_exponent(&points)?;
        fits.push(ColumnFit {
            column: column.into(),
            k_min: used.first().map_or(k_min, |r| r.k),
            k_max: used.last().map_or(k_max, |r| r.k),
            within_tolerance: target_e.map(|e| (fit.slope - e).abs() <= tolerance),
            fit,
            tolerance,
        });
    }
    Ok(fits)
}

/// Exact search against subset enumeration on one random subgraph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub trial: usize,
    pub n: usize,
    pub epsilon: f64,
    pub exact: usize,
    pub enumerated: usize,
    pub agree: bool,
}

/// Settings echoed into a report; they determine its content.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportSettings {
    pub epsilon: f64,
    pub max_vertices: usize,
    pub node_limit: u64,
    /// A time limit makes search results machine dependent.
    pub time_limit_ms: Option<u64>,
    pub max_pairs: u64,
    pub exact_max_vertices: usize,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub suite: String,
    pub params: FractalParams,
    pub graph: Option<GraphKind>,
    pub settings: ReportSettings,
    pub target_e: Option<f64>,
    /// `proved` for `m = 1`; for `m > 1` the exponent comparison of the lower-bound
    /// column is `conjectural`.
    pub lower_bound_status: String,
    pub counts: Vec<CountRow>,
    pub rows: Vec<SandwichRow>,
    pub fits: Vec<ColumnFit>,
    pub oracle: Vec<OracleRow>,
    pub failures: Vec<String>,
}

impl ExperimentReport {
    fn new(suite: Suite, params: FractalParams, graph: Option<GraphKind>, settings: ReportSettings) -> Self {
        ExperimentReport {
            suite: suite.name().into(),
            target_e: exponent_e(&params).ok(),
            lower_bound_status: if params.m() == 1 { "proved" } else { "conjectural" }.into(),
            params,
            graph,
            settings,
            counts: Vec::new(),
            rows: Vec::new(),
            fits: Vec::new(),
            oracle: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Pretty JSON including timings.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Pretty JSON without timings; byte-identical for identical inputs.
    pub fn canonical_json(&self) -> Result<String> {
        let mut copy = self.clone();
        for row in &mut copy.rows {
            row.elapsed_ms = None;
        }
        Ok(serde_json::to_string_pretty(&copy)?)
    }

    /// Hex SHA-256 of [`ExperimentReport::canonical_json`].
    pub fn digest(&self) -> Result<String> {
        Ok(hex::encode(Sha256::digest(self.canonical_json()?.as_bytes())))
    }

    /// The report's main table as CSV: sandwich rows, else count rows, else oracle rows.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        if !self.rows.is_empty() {
            for r in &self.rows {
                w.serialize(SandwichCsv::from(r))?;
            }
        } else if !self.counts.is_empty() {
            for r in &self.counts {
                w.serialize(r)?;
            }
        } else {
            for r in &self.oracle {
                w.serialize(r)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        String::from_utf8(bytes).map_err(|e| Error::Consistency(e.to_string()))
    }
}

#[derive(Serialize)]
struct SandwichCsv {
    k: u32,
    n: usize,
    lower_bound: Option<u64>,
    lower_source: Option<String>,
    path_congestion: Option<u64>,
    path_bound: Option<u64>,
    path_certified: Option<bool>,
    exact_or_incumbent: Option<usize>,
    exact_proved: Option<bool>,
    constructive: Option<usize>,
    plane_vertices: Option<usize>,
    envelope: Option<f64>,
}

impl From<&SandwichRow> for SandwichCsv {
    fn from(r: &SandwichRow) -> Self {
        SandwichCsv {
            k: r.k,
            n: r.n,
            lower_bound: r.lower_bound,
            lower_source: r.lower_source.clone(),
            path_congestion: r.path.as_ref().map(|p| p.max_congestion),
            path_bound: r.path.as_ref().map(|p| p.bound),
            path_certified: r.path.as_ref().map(|p| p.certified),
            exact_or_incumbent: r.exact_or_incumbent,
            exact_proved: r.exact_proved,
            constructive: r.constructive,
            plane_vertices: r.plane_vertices,
            envelope: r.envelope,
        }
    }
}

/// Inputs for [`run_suite`]. `None` fields take the suite's defaults.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub params: Option<FractalParams>,
    pub k_min: Option<u32>,
    pub k_max: Option<u32>,
    pub epsilon: f64,
    pub config: SandwichConfig,
    pub seed: u64,
    pub trials: usize,
    pub max_subgraph: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            params: None,
            k_min: None,
            k_max: None,
            epsilon: 0.5,
            config: SandwichConfig::default(),
            seed: DEFAULT_SEED,
            trials: 200,
            max_subgraph: 9,
        }
    }
}

impl SuiteOptions {
    fn settings(&self, seed: Option<u64>) -> ReportSettings {
        ReportSettings {
            epsilon: self.epsilon,
            max_vertices: self.config.graph_budget.max_vertices,
            node_limit: self.config.search.node_limit,
            time_limit_ms: self.config.search.time_limit.map(|t| t.as_millis() as u64),
            max_pairs: self.config.max_pairs,
            exact_max_vertices: self.config.exact_max_vertices,
            seed,
        }
    }
}

/// Runs a named suite.
///
/// * `carpet-sandwich`: sandwich on `C_k`, `k = 1..=6` by default, with fits.
/// * `counts`: enumeration against formulas, `k ≤ 3` by default.
/// * `menger-upper`: cutter on `Γ_k` of the sponge, `k ≤ 3` by default.
/// * `random-subgraphs`: exact search against subset enumeration on random connected
///   induced subgraphs of `Γ_2`, at `ε ∈ {1/4, 1/2, 3/4}`.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<ExperimentReport> {
    match suite {
        Suite::CarpetSandwich | Suite::MengerUpper => {
            let (default_params, kind, default_range) = if suite == Suite::CarpetSandwich {
                (FractalParams::carpet(), GraphKind::CompleteLines, (1, 6))
            } else {
                (FractalParams::menger(), GraphKind::Level, (0, 3))
            };
            let params = opts.params.clone().unwrap_or(default_params);
            let k_min = opts.k_min.unwrap_or(default_range.0);
            let k_max = opts.k_max.unwrap_or(default_range.1);
            let mut report = ExperimentReport::new(suite, params, Some(kind), opts.settings(None));
            let ks: Vec<u32> = (k_min..=k_max).collect();
            report.rows = run_bound_sandwich(&report.params, kind, &ks, opts.epsilon, &opts.config)?;
            report.fits = fit_columns(&report.rows, k_min, k_max, report.target_e)?;
            Ok(report)
        }
        Suite::Counts => {
            let params = opts.params.clone().unwrap_or_else(FractalParams::carpet);
            let k_max = opts.k_max.unwrap_or(3);
            let mut report = ExperimentReport::new(suite, params, None, opts.settings(None));
            report.counts = run_count_checks(&report.params, k_max, opts.config.graph_budget)?;
            report.failures = report
                .counts
                .iter()
                .filter(|r| !r.ok)
                .map(|r| {
                    format!(
                        "k={} {}{}: enumerated {} expected {:?} within [{:?}, {:?}]",
                        r.k,
                        r.quantity,
                        r.axis.map(|a| format!("[{a}]")).unwrap_or_default(),
                        r.enumerated,
                        r.expected,
                        r.lower,
                        r.upper
                    )
                })
                .collect();
            Ok(report)
        }
        Suite::RandomSubgraphs => {
            let params = opts.params.clone().unwrap_or_else(FractalParams::carpet);
            let k = opts.k_max.unwrap_or(2);
            let mut report =
                ExperimentReport::new(suite, params, Some(GraphKind::Level), opts.settings(Some(opts.seed)));
            report.oracle = run_oracle_trials(&report.params, k, opts)?;
            report.failures = report
                .oracle
                .iter()
                .filter(|r| !r.agree)
                .map(|r| {
                    format!(
                        "trial {} (n={}, ε={}): search {} vs enumeration {}",
                        r.trial, r.n, r.epsilon, r.exact, r.enumerated
                    )
                })
                .collect();
            Ok(report)
        }
    }
}

fn run_oracle_trials(params: &FractalParams, k: u32, opts: &SuiteOptions) -> Result<Vec<OracleRow>> {
    let g = opts
        .config
        .cache
        .load_or_build(params, GraphKind::Level, k, opts.config.graph_budget)?;
    if g.is_empty() {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let max = opts.max_subgraph.max(1);
    let mut rows = Vec::new();
    for trial in 0..opts.trials {
        let size = rng.gen_range(1..=max);
        let ids = random_connected_subset(g.adjacency(), size, &mut rng);
        let h = g.induced(&ids);
        for epsilon in [0.25, 0.5, 0.75] {
            let exact = cut_epsilon_exact(&h, epsilon, opts.config.search, None)?;
            if !exact.proved_optimal {
                return Err(Error::budget(
                    "exact search nodes",
                    format!("more than {}", opts.config.search.node_limit),
                    opts.config.search.node_limit,
                ));
            }
            let enumerated = brute_force_cut(h.adjacency(), epsilon)?;
            rows.push(OracleRow {
                trial,
                n: h.n(),
                epsilon,
                exact: exact.cut_size(),
                enumerated,
                agree: exact.valid && exact.cut_size() == enumerated,
            });
        }
    }
    Ok(rows)
}

/// Convenience for callers that hold a time limit in seconds.
pub fn search_budget(node_limit: u64, time_limit_secs: Option<f64>) -> SearchBudget {
    SearchBudget {
        node_limit,
        time_limit: time_limit_secs.map(Duration::from_secs_f64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carpet_counts_small() {
        let rows = run_count_checks(&FractalParams::carpet(), 3, GraphBudget::default()).unwrap();
        assert!(rows.iter().all(|r| r.ok), "{rows:?}");
        let c3 = rows
            .iter()
            .find(|r| r.k == 3 && r.quantity == "complete_lines_subgraph")
            .unwrap();
        assert_eq!(c3.enumerated, 368);
        assert!(rows.iter().filter(|r| r.k == 0).all(|r| r.enumerated == 1));
    }

    #[test]
    fn menger_lines_per_direction() {
        let rows = run_count_checks(&FractalParams::menger(), 2, GraphBudget::default()).unwrap();
        let lines: Vec<u64> = rows
            .iter()
            .filter(|r| r.k == 2 && r.quantity == "complete_lines")
            .map(|r| r.enumerated)
            .collect();
        assert_eq!(lines, vec![16, 16, 16]);
    }

    #[test]
    fn carpet_level_one_sandwich() {
        let rows = run_bound_sandwich(
            &FractalParams::carpet(),
            GraphKind::CompleteLines,
            &[1],
            0.5,
            &SandwichConfig::default(),
        )
        .unwrap();
        let r = &rows[0];
        assert_eq!(r.n, 8);
        assert_eq!(r.exact_or_incumbent, Some(2));
        assert_eq!(r.exact_proved, Some(true));
        assert!(r.lower_bound.unwrap() >= 1);
        assert!(r.constructive.unwrap() <= 24);
        assert!(run_bound_sandwich(&FractalParams::carpet(), GraphKind::Level, &[], 0.5, &SandwichConfig::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn digest_ignores_timings() {
        let opts = SuiteOptions {
            k_max: Some(3),
            ..SuiteOptions::default()
        };
        let a = run_suite(Suite::CarpetSandwich, &opts).unwrap();
        let mut b = a.clone();
        for r in &mut b.rows {
            r.elapsed_ms = Some(r.elapsed_ms.unwrap_or(0) + 1000);
        }
        assert_eq!(a.digest().unwrap(), b.digest().unwrap());
        assert_ne!(a.to_json().unwrap(), b.to_json().unwrap());
        let csv = a.to_csv().unwrap();
        assert!(csv.starts_with("k,n,lower_bound"));
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!("complete-lines".parse::<GraphKind>().unwrap(), GraphKind::CompleteLines);
    }
}
