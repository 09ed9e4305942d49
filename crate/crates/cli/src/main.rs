//! Command-line interface: evaluate routes, plan with the schemes, run
//! batch experiments, and brute-force small instances.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use patrol_core::aoi::{average_aoi, bounds, Route};
use patrol_core::cpp::{cpp_augment, duplicate_all};
use patrol_core::error::{CppError, EulerError, GraphError, IoError, OracleError, PlanError, RouteError, SimError};
use patrol_core::euler::{hierholzer, RandomSelector};
use patrol_core::experiment::{run_experiment, summarize, to_csv, Algorithm, ExperimentConfig};
use patrol_core::graph::{Graph, RngSeed};
use patrol_core::heuristic::{heuristic_route, BaseScheme};
use patrol_core::io::{graph_from_json, route_from_str, route_to_string};
use patrol_core::oracle::{verify_ratios, DEFAULT_STATE_BUDGET};
use patrol_core::sim::{simulate_aoi, SimParams};
use patrol_core::{cpp_scheme, dup_scheme};

#[derive(Parser)]
#[command(
    name = "patrol",
    about = "Plan and evaluate periodic patrol routes on weighted graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the time-average age of information of a route.
    Eval(EvalArgs),
    /// Plan a route with one of the schemes and report its bounds.
    Plan(PlanArgs),
    /// Compare the planners on a random graph ensemble, emitting CSV.
    Bench(BenchArgs),
    /// Exhaustively find the best route on a small graph.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Graph file, JSON: {"nodes": N, "edges": [[u, v, length], ...]}.
    #[arg(long)]
    graph: PathBuf,
    /// Route as comma-separated node ids, e.g. "0,1,2,0".
    #[arg(long)]
    route: String,
    /// Also run the discretized simulation and report its estimate.
    #[arg(long)]
    simulate: bool,
    /// Simulation spatial resolution.
    #[arg(long, default_value_t = 1e-3)]
    dx: f64,
    /// Simulation time step.
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    /// Simulation warmup periods.
    #[arg(long, default_value_t = 2)]
    warmup: u32,
    /// Simulation measurement periods.
    #[arg(long, default_value_t = 4)]
    measure: u32,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Scheme {
    Dup,
    Cpp,
    #[value(name = "heu_dup")]
    HeuDup,
    #[value(name = "heu_cpp")]
    HeuCpp,
    #[value(name = "rand_dup")]
    RandDup,
    #[value(name = "rand_cpp")]
    RandCpp,
}

#[derive(Args)]
struct PlanArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Planning scheme.
    #[arg(long, value_enum)]
    scheme: Scheme,
    /// Seed for the rand_* schemes.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Start (and end) node of the route.
    #[arg(long, default_value_t = 0)]
    start: usize,
}

#[derive(Args)]
struct BenchArgs {
    /// Nodes per generated graph.
    #[arg(long)]
    n: usize,
    /// Edge probability of the G(n, p) draw.
    #[arg(long)]
    p: f64,
    /// Number of graphs to retain.
    #[arg(long)]
    graphs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated planners (default: all four).
    #[arg(long, value_delimiter = ',')]
    algs: Vec<Algorithm>,
    /// Random-planner trials per graph.
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Lower end of the edge-length distribution.
    #[arg(long, default_value_t = 0.0)]
    length_low: f64,
    /// Upper end of the edge-length distribution.
    #[arg(long, default_value_t = 10.0)]
    length_high: f64,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Backtracking-state budget for the exhaustive search.
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    cap: u64,
}

enum AppError {
    /// Bad input: exit code 2.
    Validation(String),
    /// Search or retry budget exhausted: exit code 3.
    Budget(String),
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            AppError::Validation(_) => 2,
            AppError::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Validation(m) | AppError::Budget(m) => m,
        }
    }
}

impl From<IoError> for AppError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Graph(g) => g.into(),
            other => AppError::Validation(other.to_string()),
        }
    }
}

impl From<GraphError> for AppError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::GenerationBudgetExceeded { .. } => AppError::Budget(e.to_string()),
            other => AppError::Validation(other.to_string()),
        }
    }
}

impl From<RouteError> for AppError {
    fn from(e: RouteError) -> Self {
        AppError::Validation(e.to_string())
    }
}

impl From<SimError> for AppError {
    fn from(e: SimError) -> Self {
        AppError::Validation(e.to_string())
    }
}

impl From<EulerError> for AppError {
    fn from(e: EulerError) -> Self {
        AppError::Validation(e.to_string())
    }
}

impl From<CppError> for AppError {
    fn from(e: CppError) -> Self {
        AppError::Budget(e.to_string())
    }
}

impl From<PlanError> for AppError {
    fn from(e: PlanError) -> Self {
        match e {
            PlanError::Cpp(c) => c.into(),
            PlanError::Euler(eu) => eu.into(),
        }
    }
}

impl From<OracleError> for AppError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded { .. } | OracleError::TooManyEdges { .. } => {
                AppError::Budget(e.to_string())
            }
            OracleError::Plan(p) => p.into(),
            OracleError::Route(r) => r.into(),
        }
    }
}

fn load_graph(path: &PathBuf) -> Result<Graph, AppError> {
    let text = fs::read_to_string(path)
        .map_err(|e| AppError::Validation(format!("{}: {e}", path.display())))?;
    Ok(graph_from_json(&text)?)
}

fn run_eval(args: &EvalArgs) -> Result<(), AppError> {
    let graph = load_graph(&args.graph)?;
    let route = route_from_str(&args.route)?;
    let report = average_aoi(&graph, &route)?;
    let mut value = serde_json::to_value(&report).expect("report serializes");
    if args.simulate {
        let params = SimParams {
            dx: args.dx,
            dt: args.dt,
            warmup_periods: args.warmup,
            measure_periods: args.measure,
        };
        let simulated = simulate_aoi(&graph, &route, &params)?;
        value["simulated_aoi"] = json!(simulated);
    }
    println!("{}", serde_json::to_string_pretty(&value).unwrap());
    Ok(())
}

fn run_plan(args: &PlanArgs) -> Result<(), AppError> {
    let graph = load_graph(&args.graph)?;
    if args.start >= graph.node_count() {
        return Err(AppError::Validation(format!(
            "start node {} out of range",
            args.start
        )));
    }
    let seed = RngSeed(args.seed);
    let route: Route = match args.scheme {
        Scheme::Dup => hierholzer(&duplicate_all(&graph), args.start)?,
        Scheme::Cpp => hierholzer(&cpp_augment(&graph)?, args.start)?,
        Scheme::HeuDup => heuristic_route(&graph, BaseScheme::Dup, args.start)?,
        Scheme::HeuCpp => heuristic_route(&graph, BaseScheme::Cpp, args.start)?,
        Scheme::RandDup => dup_scheme(&graph, args.start, &mut RandomSelector::new(seed))?,
        Scheme::RandCpp => cpp_scheme(&graph, args.start, &mut RandomSelector::new(seed))?,
    };
    let aoi = average_aoi(&graph, &route)?;
    let bound = bounds(&graph, &route)?;
    let value = json!({
        "route": route_to_string(&route),
        "aoi": aoi,
        "bounds": bound,
    });
    println!("{}", serde_json::to_string_pretty(&value).unwrap());
    Ok(())
}

fn run_bench(args: &BenchArgs) -> Result<(), AppError> {
    let mut config = ExperimentConfig::new(args.n, args.p, args.graphs, RngSeed(args.seed));
    if !args.algs.is_empty() {
        config.algorithms = args.algs.clone();
    }
    config.random_trials_per_graph = args.trials;
    config.length_low = args.length_low;
    config.length_high = args.length_high;
    let rows = run_experiment(&config)?;
    let csv = to_csv(&rows);
    match &args.out {
        Some(path) => fs::write(path, csv)
            .map_err(|e| AppError::Validation(format!("{}: {e}", path.display())))?,
        None => print!("{csv}"),
    }
    for s in summarize(&rows) {
        eprintln!(
            "{:>8}: {} runs, mean ratio {:.4}, median {:.4}, p95 {:.4}",
            s.algorithm.name(),
            s.runs,
            s.mean_ratio,
            s.median_ratio,
            s.p95_ratio
        );
    }
    Ok(())
}

fn run_oracle(args: &OracleArgs) -> Result<(), AppError> {
    let graph = load_graph(&args.graph)?;
    let report = verify_ratios(&graph, args.cap)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&serde_json::to_value(&report).unwrap()).unwrap()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(args) => run_eval(args),
        Command::Plan(args) => run_plan(args),
        Command::Bench(args) => run_bench(args),
        Command::Oracle(args) => run_oracle(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
