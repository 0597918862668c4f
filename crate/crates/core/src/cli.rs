//! The `slap` command line: generate → baseline → optimize → evaluate →
//! analyze → report.
//!
//! Every command reads its inputs from explicit paths (defaulting to files in
//! the output directory) and writes deterministic outputs given the same
//! inputs and seed. Failures print one line `error[<category>]: <message>`.

use crate::analysis::{
    batch_time_histogram, frequency_heatmap, grid_to_csv, histograms_to_csv,
    neighbor_similarity_map, similarity_grid, NeighborScope,
};
use crate::annealer::{anneal_restarts, AnnealSchedule, Observer, TempRecord};
use crate::baselines::{frequency_assignment, random_assignment};
use crate::cost::{batch_times, total_time, CostParams};
use crate::model::io::{self as mio, FormatError};
use crate::model::{validate_assignment, validate_layout, Assignment, Catalog, WarehouseLayout};
use crate::orders::{load_orders, pick_frequency, write_orders_csv, OrderSet};
use crate::synthetic::{generate_layout, generate_synthetic, LayoutSpec, SyntheticSpec};
use crate::time::Time;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// Reference improvements (percent) observed on a full-scale installation with
/// real order data. Printed next to measured values for a qualitative
/// comparison only; synthetic instances are not expected to reproduce them.
pub const REFERENCE_IMPROVEMENT_VS_RANDOM_PCT: f64 = 38.0;
pub const REFERENCE_IMPROVEMENT_VS_FREQUENCY_PCT: f64 = 21.0;

#[derive(Debug, Parser)]
#[command(name = "slap", version, about = "Storage location assignment by simulated annealing")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// JSON file with any of the options below; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub layout: Option<PathBuf>,
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    #[arg(long, global = true)]
    pub orders: Option<PathBuf>,
    #[arg(long, global = true)]
    pub params: Option<PathBuf>,
    #[arg(long, global = true)]
    pub schedule: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub restarts: Option<u32>,
    #[arg(long, global = true)]
    pub threads: Option<u32>,
    /// Print one line per temperature step while optimizing.
    #[arg(long, global = true)]
    pub progress: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineKind {
    Random,
    Frequency,
}

impl BaselineKind {
    fn name(self) -> &'static str {
        match self {
            BaselineKind::Random => "random",
            BaselineKind::Frequency => "frequency",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic catalog, orders and a matching layout.
    Generate {
        /// Order model as JSON (default: desk preset).
        #[arg(long)]
        synthetic: Option<PathBuf>,
        /// Layout geometry as JSON (default: desk preset).
        #[arg(long)]
        layout_spec: Option<PathBuf>,
    },
    /// Build a reference assignment and report its total cost.
    Baseline {
        #[arg(long, value_enum)]
        kind: BaselineKind,
    },
    /// Anneal from a baseline and write the best assignment found.
    Optimize {
        /// Starting assignment.
        #[arg(long, value_enum, default_value = "frequency")]
        init: BaselineKind,
    },
    /// Total and per-batch retrieval times of an assignment.
    Evaluate {
        #[arg(long)]
        assignment: PathBuf,
        /// Layout the assignment was written against, if rearranged.
        #[arg(long)]
        assignment_layout: Option<PathBuf>,
    },
    /// Heatmaps, neighbour similarity maps and batch-time histograms.
    Analyze {
        /// `name=path` or `name=path@layout`; the first one is the histogram reference.
        #[arg(long = "assignment", required = true)]
        assignments: Vec<String>,
        #[arg(long, default_value_t = 50)]
        bins: usize,
        #[arg(long, value_enum, default_value = "category")]
        neighbor_scope: ScopeArg,
    },
    /// Compare random, frequency and optimized assignments.
    Report {
        #[arg(long)]
        random: Option<PathBuf>,
        #[arg(long)]
        frequency: Option<PathBuf>,
        #[arg(long)]
        optimized: Option<PathBuf>,
        #[arg(long)]
        optimized_layout: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    Category,
    Level,
}

/// Resolved options shared by all commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub layout: Option<PathBuf>,
    pub catalog: Option<PathBuf>,
    pub orders: Option<PathBuf>,
    pub params: Option<PathBuf>,
    pub schedule: Option<PathBuf>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub restarts: Option<u32>,
    pub threads: Option<u32>,
    pub progress: Option<bool>,
}

impl RunConfig {
    /// Loads `--config` (if any) and overlays the flags.
    pub fn from_args(args: &CommonArgs) -> Result<Self, CliError> {
        let mut cfg = match &args.config {
            Some(path) => {
                let text = mio::read_to_string(path)?;
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
            }
            None => RunConfig::default(),
        };
        macro_rules! overlay {
            ($($f:ident),*) => { $( if args.$f.is_some() { cfg.$f = args.$f.clone(); } )* };
        }
        overlay!(layout, catalog, orders, params, schedule, seed, out, restarts, threads);
        if args.progress {
            cfg.progress = Some(true);
        }
        Ok(cfg)
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("out"))
    }

    fn in_out(&self, explicit: &Option<PathBuf>, name: &str) -> PathBuf {
        explicit.clone().unwrap_or_else(|| self.out_dir().join(name))
    }

    pub fn layout_path(&self) -> PathBuf {
        self.in_out(&self.layout, "layout.json")
    }

    pub fn catalog_path(&self) -> PathBuf {
        self.in_out(&self.catalog, "catalog.csv")
    }

    pub fn orders_path(&self) -> PathBuf {
        self.in_out(&self.orders, "orders.csv")
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn load_params(&self) -> Result<CostParams, CliError> {
        match &self.params {
            Some(path) => {
                let text = mio::read_to_string(path)?;
                let params: CostParams = serde_json::from_str(&text)
                    .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
                params
                    .validate()
                    .map_err(|e| CliError::Config(e.to_string()))?;
                Ok(params)
            }
            None => Ok(CostParams::default()),
        }
    }

    pub fn load_schedule(&self, catalog: &Catalog) -> Result<AnnealSchedule, CliError> {
        match &self.schedule {
            Some(path) => {
                let text = mio::read_to_string(path)?;
                let schedule: AnnealSchedule = serde_json::from_str(&text)
                    .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
                schedule
                    .validate()
                    .map_err(|e| CliError::Config(e.to_string()))?;
                Ok(schedule)
            }
            None => Ok(AnnealSchedule::for_catalog(catalog.len())),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Capacity(String),
    #[error("{0}")]
    Cost(String),
    #[error("{0}")]
    Anneal(String),
    #[error("{0}")]
    Analysis(String),
}

impl CliError {
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Format(FormatError::Io { .. }) => "io",
            CliError::Format(_) | CliError::Parse(_) => "parse",
            CliError::Config(_) => "config",
            CliError::Validation(_) => "validation",
            CliError::Capacity(_) => "capacity",
            CliError::Cost(_) => "cost",
            CliError::Anneal(_) => "anneal",
            CliError::Analysis(_) => "analysis",
        }
    }

    /// `error[<category>]: <message>` on a single line.
    pub fn line(&self) -> String {
        let msg = self.to_string().replace('\n', "; ");
        format!("error[{}]: {msg}", self.category())
    }

    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Format(FormatError::Io { .. }) => 3,
            CliError::Config(_) => 4,
            _ => 2,
        }
    }
}

macro_rules! map_err {
    ($variant:ident: $($t:ty),*) => {
        $( impl From<$t> for CliError {
            fn from(e: $t) -> Self { CliError::$variant(e.to_string()) }
        } )*
    };
}
map_err!(Parse: crate::orders::OrdersError, crate::model::AssignmentError);
map_err!(Capacity: crate::baselines::BaselineError);
map_err!(Cost: crate::cost::CostError);
map_err!(Anneal: crate::annealer::AnnealError);
map_err!(Analysis: crate::analysis::AnalysisError);
map_err!(Config: crate::synthetic::SpecError);

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Format(FormatError::io(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(FormatError::from)?;
    text.push('\n');
    Ok(mio::write_string(path, &text)?)
}

fn ensure_dir(path: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(path).map_err(|e| io_err(path, e))
}

/// Layout, catalog, orders and parameters of a run.
#[derive(Debug, Clone)]
pub struct Problem {
    pub layout: WarehouseLayout,
    pub catalog: Arc<Catalog>,
    pub orders: OrderSet,
    pub params: CostParams,
}

impl Problem {
    pub fn load(cfg: &RunConfig) -> Result<Self, CliError> {
        let layout = mio::read_layout(cfg.layout_path())?;
        let report = validate_layout(&layout);
        if !report.is_empty() {
            return Err(CliError::Validation(format!("layout: {report}")));
        }
        let catalog = Arc::new(mio::read_catalog(cfg.catalog_path())?);
        let orders = load_orders(cfg.orders_path(), &catalog)?.orders;
        let params = cfg.load_params()?;
        params
            .check_layout(&layout)
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(Problem {
            layout,
            catalog,
            orders,
            params,
        })
    }

    /// Reads an assignment file, optionally written against a rearranged
    /// layout, and checks admissibility.
    pub fn load_assignment(
        &self,
        path: &Path,
        arranged: Option<&Path>,
    ) -> Result<Assignment, CliError> {
        let placements = mio::read_placements(path)?;
        let assignment = match arranged {
            Some(lp) => {
                let arranged = mio::read_layout(lp)?;
                Assignment::from_arranged_placements(
                    &self.layout,
                    &arranged,
                    self.catalog.clone(),
                    &placements,
                )?
            }
            None => Assignment::from_placements(&self.layout, self.catalog.clone(), &placements)?,
        };
        let report = validate_assignment(&self.layout, &self.catalog, &assignment);
        if !report.is_empty() {
            return Err(CliError::Validation(format!("{}: {report}", path.display())));
        }
        Ok(assignment)
    }

    pub fn baseline(&self, kind: BaselineKind, seed: u64) -> Result<Assignment, CliError> {
        Ok(match kind {
            BaselineKind::Random => random_assignment(&self.layout, self.catalog.clone(), seed)?,
            BaselineKind::Frequency => {
                let freq = pick_frequency(&self.orders, &self.catalog);
                frequency_assignment(
                    &self.layout,
                    self.catalog.clone(),
                    &freq,
                    &self.params.level_categories(),
                )?
            }
        })
    }

    pub fn total(&self, assignment: &Assignment) -> Result<Time, CliError> {
        Ok(total_time(&self.layout, assignment, &self.orders, &self.params)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerateSummary {
    pub seed: u64,
    pub items: usize,
    pub batches: usize,
    pub positions: usize,
}

pub fn cmd_generate(
    cfg: &RunConfig,
    synthetic: Option<&Path>,
    layout_spec: Option<&Path>,
) -> Result<GenerateSummary, CliError> {
    let spec: SyntheticSpec = match synthetic {
        Some(p) => serde_json::from_str(&mio::read_to_string(p)?)
            .map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))?,
        None => SyntheticSpec::desk(),
    };
    let lspec: LayoutSpec = match layout_spec {
        Some(p) => serde_json::from_str(&mio::read_to_string(p)?)
            .map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))?,
        None => LayoutSpec::desk(),
    };
    let seed = cfg.seed();
    let (catalog, orders) = generate_synthetic(&spec, seed)?;
    let layout = generate_layout(&catalog, &lspec, seed)?;

    let out = cfg.out_dir();
    ensure_dir(&out)?;
    mio::write_layout(cfg.layout_path(), &layout)?;
    mio::write_catalog(cfg.catalog_path(), &catalog)?;
    write_orders_csv(cfg.orders_path(), &orders)?;
    write_json(&out.join("params.json"), &CostParams::default())?;
    write_json(&out.join("schedule.json"), &AnnealSchedule::for_catalog(catalog.len()))?;
    write_json(&out.join("synthetic.json"), &spec)?;
    Ok(GenerateSummary {
        seed,
        items: catalog.len(),
        batches: orders.len(),
        positions: layout.position_count(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaselineSummary {
    pub kind: BaselineKind,
    pub seed: u64,
    pub total_cost: Time,
}

pub fn cmd_baseline(cfg: &RunConfig, kind: BaselineKind) -> Result<BaselineSummary, CliError> {
    let problem = Problem::load(cfg)?;
    let assignment = problem.baseline(kind, cfg.seed())?;
    let total_cost = problem.total(&assignment)?;
    let out = cfg.out_dir();
    ensure_dir(&out)?;
    mio::write_assignment(
        out.join(format!("{}_assignment.csv", kind.name())),
        &problem.layout,
        &assignment,
    )?;
    let summary = BaselineSummary {
        kind,
        seed: cfg.seed(),
        total_cost,
    };
    write_json(&out.join(format!("{}_summary.json", kind.name())), &summary)?;
    Ok(summary)
}

/// Contents of `summary.json` written by `optimize`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeSummary {
    pub init: BaselineKind,
    pub seeds: Vec<u64>,
    pub best_seed: u64,
    pub initial_cost: Time,
    pub best_cost: Time,
    pub chain_costs: Vec<Time>,
    pub iterations: u64,
    pub temperature_steps: usize,
    pub schedule: AnnealSchedule,
    /// Excluded from determinism guarantees.
    pub wall_time_secs: f64,
}

struct PrintSteps;

impl Observer for PrintSteps {
    fn on_step(&mut self, r: &TempRecord) {
        println!(
            "step {} T={:e} acceptance={:.4} current={} best={}",
            r.step, r.temperature, r.acceptance_rate, r.current_cost, r.best_cost
        );
    }
}

pub fn cmd_optimize(cfg: &RunConfig, init: BaselineKind) -> Result<OptimizeSummary, CliError> {
    let started = std::time::Instant::now();
    let problem = Problem::load(cfg)?;
    let schedule = cfg.load_schedule(&problem.catalog)?;
    let initial = problem.baseline(init, cfg.seed())?;
    let restarts = cfg.restarts.unwrap_or(1).max(1) as u64;
    let seeds: Vec<u64> = (0..restarts).map(|k| cfg.seed().wrapping_add(k)).collect();
    let threads = cfg.threads.unwrap_or(1).max(1) as usize;

    let outcome = if cfg.progress.unwrap_or(false) && seeds.len() == 1 {
        let annealer = crate::annealer::Annealer::new(
            &problem.layout,
            &problem.orders,
            &problem.params,
            schedule.clone(),
        );
        let (best, trace) = annealer.run_observed(initial.clone(), seeds[0], &mut PrintSteps)?;
        crate::annealer::RestartOutcome {
            costs: vec![trace.best_cost],
            best,
            trace,
            best_index: 0,
        }
    } else {
        anneal_restarts(
            &problem.layout,
            &problem.orders,
            &problem.params,
            &schedule,
            &initial,
            &seeds,
            threads,
        )?
    };

    let out = cfg.out_dir();
    ensure_dir(&out)?;
    mio::write_assignment(
        out.join("optimized_assignment.csv"),
        &problem.layout,
        &outcome.best,
    )?;
    mio::write_layout(
        out.join("optimized_layout.json"),
        &outcome.best.arranged_layout(&problem.layout),
    )?;
    let trace_path = out.join("trace.csv");
    outcome
        .trace
        .write_csv(&trace_path)
        .map_err(|e| io_err(&trace_path, e))?;

    let summary = OptimizeSummary {
        init,
        best_seed: seeds[outcome.best_index],
        seeds,
        initial_cost: outcome.trace.initial_cost,
        best_cost: outcome.trace.best_cost,
        chain_costs: outcome.costs,
        iterations: outcome.trace.iterations,
        temperature_steps: outcome.trace.records.len(),
        schedule,
        wall_time_secs: started.elapsed().as_secs_f64(),
    };
    write_json(&out.join("summary.json"), &summary)?;
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluateSummary {
    pub assignment: PathBuf,
    pub total_cost: Time,
    pub batches: usize,
}

pub fn cmd_evaluate(
    cfg: &RunConfig,
    assignment: &Path,
    arranged: Option<&Path>,
) -> Result<EvaluateSummary, CliError> {
    let problem = Problem::load(cfg)?;
    let a = problem.load_assignment(assignment, arranged)?;
    let costs = batch_times(&problem.layout, &a, &problem.orders, &problem.params)?;
    let mut csv = String::from("batch_id,t_r,t_p,t_bin\n");
    for (batch, c) in problem.orders.batches().iter().zip(&costs) {
        csv.push_str(&format!("{},{},{},{}\n", batch.id(), c.routing, c.picking, c.total));
    }
    let stem = assignment
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("assignment");
    let out = cfg.out_dir();
    ensure_dir(&out)?;
    mio::write_string(&out.join(format!("evaluation_{stem}.csv")), &csv)?;
    let summary = EvaluateSummary {
        assignment: assignment.to_path_buf(),
        total_cost: costs.iter().map(|c| c.total).sum(),
        batches: costs.len(),
    };
    write_json(&out.join(format!("evaluation_{stem}.json")), &summary)?;
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyzedAssignment {
    pub name: String,
    pub total_cost: Time,
    pub mean_neighbor_similarity: Option<f64>,
    pub excluded_pairs: usize,
    pub mean_normalized_batch_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyzeSummary {
    pub bins: usize,
    pub normalization: Time,
    pub assignments: Vec<AnalyzedAssignment>,
}

/// Splits `name=path[@layout]`.
pub fn parse_assignment_spec(spec: &str) -> Result<(String, PathBuf, Option<PathBuf>), CliError> {
    let (name, rest) = spec
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("expected name=path, got `{spec}`")))?;
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
        return Err(CliError::Config(format!("invalid assignment name `{name}`")));
    }
    let (path, layout) = match rest.split_once('@') {
        Some((p, l)) => (PathBuf::from(p), Some(PathBuf::from(l))),
        None => (PathBuf::from(rest), None),
    };
    Ok((name.to_string(), path, layout))
}

pub fn cmd_analyze(
    cfg: &RunConfig,
    specs: &[String],
    bins: usize,
    scope: NeighborScope,
) -> Result<AnalyzeSummary, CliError> {
    let problem = Problem::load(cfg)?;
    let mut loaded = Vec::new();
    for spec in specs {
        let (name, path, layout) = parse_assignment_spec(spec)?;
        let a = problem.load_assignment(&path, layout.as_deref())?;
        loaded.push((name, a));
    }
    let out = cfg.out_dir();
    ensure_dir(&out)?;
    let freq = pick_frequency(&problem.orders, &problem.catalog);

    let named: Vec<(&str, &Assignment)> = loaded.iter().map(|(n, a)| (n.as_str(), a)).collect();
    let histograms =
        batch_time_histogram(&problem.orders, &problem.layout, &named, &problem.params, bins)?;
    mio::write_string(&out.join("histogram.csv"), &histograms_to_csv(&histograms))?;

    let mut rows = Vec::new();
    for ((name, a), h) in loaded.iter().zip(&histograms) {
        for grid in frequency_heatmap(&problem.layout, a, &freq) {
            let csv = grid_to_csv(&grid, |v| format!("{v:.6}"));
            mio::write_string(&out.join(format!("heatmap_{name}_level{}.csv", grid.level)), &csv)?;
        }
        let sim = neighbor_similarity_map(&problem.layout, a, &problem.orders, &problem.params, scope);
        for grid in similarity_grid(&problem.layout, a, &sim) {
            let csv = grid_to_csv(&grid, |v| match v {
                Some(v) => format!("{v:.6}"),
                None => "undef".to_string(),
            });
            mio::write_string(
                &out.join(format!("similarity_{name}_level{}.csv", grid.level)),
                &csv,
            )?;
        }
        rows.push(AnalyzedAssignment {
            name: name.clone(),
            total_cost: problem.total(a)?,
            mean_neighbor_similarity: sim.mean(),
            excluded_pairs: sim.excluded_pairs,
            mean_normalized_batch_time: h.mean,
        });
    }
    let summary = AnalyzeSummary {
        bins,
        normalization: histograms[0].normalization,
        assignments: rows,
    };
    write_json(&out.join("analysis_summary.json"), &summary)?;
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostTriple {
    pub random: Time,
    pub frequency: Time,
    pub optimized: Time,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Improvements {
    pub optimized_vs_random: f64,
    pub optimized_vs_frequency: f64,
    pub frequency_vs_random: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceImprovements {
    pub optimized_vs_random: f64,
    pub optimized_vs_frequency: f64,
}

/// Contents of `report.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub total_cost: CostTriple,
    /// `(baseline - candidate) / baseline * 100`.
    pub improvement_pct: Improvements,
    /// The constant reference values, for comparison.
    pub reference_improvement_pct: ReferenceImprovements,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.total_cost;
        let i = &self.improvement_pct;
        let r = &self.reference_improvement_pct;
        writeln!(f, "total retrieval time [s]")?;
        writeln!(f, "  random     {}", c.random)?;
        writeln!(f, "  frequency  {}", c.frequency)?;
        writeln!(f, "  optimized  {}", c.optimized)?;
        writeln!(f, "improvement          measured   reference")?;
        writeln!(
            f,
            "  vs random          {:>7.2}%   {:>7.2}%",
            i.optimized_vs_random, r.optimized_vs_random
        )?;
        writeln!(
            f,
            "  vs frequency       {:>7.2}%   {:>7.2}%",
            i.optimized_vs_frequency, r.optimized_vs_frequency
        )?;
        write!(f, "  frequency vs random {:>6.2}%", i.frequency_vs_random)
    }
}

/// Percentage by which `candidate` is below `baseline`.
pub fn improvement_pct(baseline: Time, candidate: Time) -> f64 {
    if baseline == Time::ZERO {
        return 0.0;
    }
    (baseline - candidate).ticks() as f64 / baseline.ticks() as f64 * 100.0
}

pub fn cmd_report(
    cfg: &RunConfig,
    random: Option<&Path>,
    frequency: Option<&Path>,
    optimized: Option<&Path>,
    optimized_layout: Option<&Path>,
) -> Result<Report, CliError> {
    let problem = Problem::load(cfg)?;
    let out = cfg.out_dir();
    let pick = |p: Option<&Path>, name: &str| p.map(Path::to_path_buf).unwrap_or_else(|| out.join(name));
    let random_path = pick(random, "random_assignment.csv");
    let frequency_path = pick(frequency, "frequency_assignment.csv");
    let optimized_path = pick(optimized, "optimized_assignment.csv");
    let arranged = match (optimized_layout, optimized) {
        (Some(p), _) => Some(p.to_path_buf()),
        (None, None) if out.join("optimized_layout.json").exists() => {
            Some(out.join("optimized_layout.json"))
        }
        _ => None,
    };

    let random = problem.total(&problem.load_assignment(&random_path, None)?)?;
    let frequency = problem.total(&problem.load_assignment(&frequency_path, None)?)?;
    let optimized = problem.total(&problem.load_assignment(&optimized_path, arranged.as_deref())?)?;
    let report = Report {
        total_cost: CostTriple {
            random,
            frequency,
            optimized,
        },
        improvement_pct: Improvements {
            optimized_vs_random: improvement_pct(random, optimized),
            optimized_vs_frequency: improvement_pct(frequency, optimized),
            frequency_vs_random: improvement_pct(random, frequency),
        },
        reference_improvement_pct: ReferenceImprovements {
            optimized_vs_random: REFERENCE_IMPROVEMENT_VS_RANDOM_PCT,
            optimized_vs_frequency: REFERENCE_IMPROVEMENT_VS_FREQUENCY_PCT,
        },
    };
    ensure_dir(&out)?;
    write_json(&out.join("report.json"), &report)?;
    Ok(report)
}

/// Runs a parsed command line, printing a short summary to stdout.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig::from_args(&cli.common)?;
    match cli.command {
        Command::Generate {
            synthetic,
            layout_spec,
        } => {
            let s = cmd_generate(&cfg, synthetic.as_deref(), layout_spec.as_deref())?;
            println!(
                "generated {} items, {} batches, {} container positions in {}",
                s.items,
                s.batches,
                s.positions,
                cfg.out_dir().display()
            );
        }
        Command::Baseline { kind } => {
            let s = cmd_baseline(&cfg, kind)?;
            println!("{} baseline: total {} s", kind.name(), s.total_cost);
        }
        Command::Optimize { init } => {
            let s = cmd_optimize(&cfg, init)?;
            println!(
                "optimized from {}: {} s -> {} s ({} iterations, {} temperature steps, {:.2}% lower)",
                init.name(),
                s.initial_cost,
                s.best_cost,
                s.iterations,
                s.temperature_steps,
                improvement_pct(s.initial_cost, s.best_cost)
            );
        }
        Command::Evaluate {
            assignment,
            assignment_layout,
        } => {
            let s = cmd_evaluate(&cfg, &assignment, assignment_layout.as_deref())?;
            println!("total {} s over {} batches", s.total_cost, s.batches);
        }
        Command::Analyze {
            assignments,
            bins,
            neighbor_scope,
        } => {
            let scope = match neighbor_scope {
                ScopeArg::Category => NeighborScope::Category,
                ScopeArg::Level => NeighborScope::Level,
            };
            let s = cmd_analyze(&cfg, &assignments, bins, scope)?;
            for a in &s.assignments {
                println!(
                    "{}: total {} s, mean normalized batch time {:.4}, mean neighbour similarity {}",
                    a.name,
                    a.total_cost,
                    a.mean_normalized_batch_time,
                    a.mean_neighbor_similarity
                        .map(|v| format!("{v:.4}"))
                        .unwrap_or_else(|| "undefined".into())
                );
            }
        }
        Command::Report {
            random,
            frequency,
            optimized,
            optimized_layout,
        } => {
            let r = cmd_report(
                &cfg,
                random.as_deref(),
                frequency.as_deref(),
                optimized.as_deref(),
                optimized_layout.as_deref(),
            )?;
            println!("{r}");
        }
    }
    Ok(())
}
