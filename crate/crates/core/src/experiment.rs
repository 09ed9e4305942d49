//! Batch experiment harness: generate random graph ensembles, run the
//! planners, and collect ratios against the global lower bound as CSV.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::aoi::{average_aoi, patrol_lower_bound, Route};
use crate::cpp::{cpp_scheme, dup_scheme};
use crate::error::{GraphError, PlanError};
use crate::euler::RandomSelector;
use crate::graph::{generate_er, ErConfig, Graph, RngSeed};
use crate::heuristic::{heuristic_route, BaseScheme};

/// The four planners compared in batch runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    RandDup,
    HeuDup,
    RandCpp,
    HeuCpp,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::RandDup,
        Algorithm::HeuDup,
        Algorithm::RandCpp,
        Algorithm::HeuCpp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::RandDup => "rand_dup",
            Algorithm::HeuDup => "heu_dup",
            Algorithm::RandCpp => "rand_cpp",
            Algorithm::HeuCpp => "heu_cpp",
        }
    }

    fn is_random(self) -> bool {
        matches!(self, Algorithm::RandDup | Algorithm::RandCpp)
    }

    fn plan(self, graph: &Graph, seed: RngSeed) -> Result<Route, PlanError> {
        match self {
            Algorithm::RandDup => dup_scheme(graph, 0, &mut RandomSelector::new(seed)),
            Algorithm::RandCpp => cpp_scheme(graph, 0, &mut RandomSelector::new(seed)),
            Algorithm::HeuDup => heuristic_route(graph, BaseScheme::Dup, 0),
            Algorithm::HeuCpp => heuristic_route(graph, BaseScheme::Cpp, 0),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rand_dup" => Ok(Algorithm::RandDup),
            "heu_dup" => Ok(Algorithm::HeuDup),
            "rand_cpp" => Ok(Algorithm::RandCpp),
            "heu_cpp" => Ok(Algorithm::HeuCpp),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

/// One batch run: an ensemble cell plus the planners to compare.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub nodes: usize,
    pub edge_probability: f64,
    pub graph_count: usize,
    pub seed: RngSeed,
    pub algorithms: Vec<Algorithm>,
    /// Routes sampled per graph for the random planners.
    pub random_trials_per_graph: usize,
    pub length_low: f64,
    pub length_high: f64,
}

impl ExperimentConfig {
    /// All four planners, one random trial per graph, lengths in (0, 10].
    pub fn new(nodes: usize, edge_probability: f64, graph_count: usize, seed: RngSeed) -> Self {
        ExperimentConfig {
            nodes,
            edge_probability,
            graph_count,
            seed,
            algorithms: Algorithm::ALL.to_vec(),
            random_trials_per_graph: 1,
            length_low: 0.0,
            length_high: 10.0,
        }
    }
}

/// One planner run on one generated graph.
#[derive(Debug, Clone)]
pub struct ResultRow {
    pub graph_id: usize,
    pub nodes: usize,
    pub edge_probability: f64,
    /// Seed the graph was generated from.
    pub seed: u64,
    pub edge_count: usize,
    pub total_length: f64,
    pub lower_bound: f64,
    pub algorithm: Algorithm,
    pub aoi: f64,
    pub ratio: f64,
    pub route_length: f64,
    pub elapsed_ms: u64,
}

fn split_mix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generates `graph_count` filtered graphs and runs every configured
/// planner on each. Heuristic planners run once per graph, random
/// planners `random_trials_per_graph` times with derived seeds. Rows come
/// out ordered by graph, then algorithm, then trial, so identical configs
/// produce identical output apart from timings. Graphs whose generation
/// exhausts the retry budget are skipped with a note on stderr.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ResultRow>, GraphError> {
    if config.graph_count == 0 {
        return Err(GraphError::InvalidParameter(
            "graph_count must be at least 1".into(),
        ));
    }
    if config.algorithms.is_empty() {
        return Err(GraphError::InvalidParameter(
            "at least one algorithm is required".into(),
        ));
    }
    let mut er = ErConfig::new(config.nodes, config.edge_probability);
    er.length_low = config.length_low;
    er.length_high = config.length_high;

    let mut rows = Vec::new();
    let mut seed_stream = config.seed.0;
    for graph_id in 0..config.graph_count {
        let graph_seed = RngSeed(split_mix(&mut seed_stream));
        let mut trial_stream = graph_seed.0;
        let graph = match generate_er(&er, graph_seed) {
            Ok(g) => g,
            Err(GraphError::GenerationBudgetExceeded { attempts }) => {
                eprintln!(
                    "graph {graph_id}: no admissible graph after {attempts} attempts, skipping"
                );
                continue;
            }
            Err(e) => return Err(e),
        };
        let lower_bound = patrol_lower_bound(&graph);
        for &algorithm in &config.algorithms {
            let trials = if algorithm.is_random() {
                config.random_trials_per_graph
            } else {
                1
            };
            for _ in 0..trials {
                let trial_seed = RngSeed(split_mix(&mut trial_stream));
                let started = Instant::now();
                let route = algorithm
                    .plan(&graph, trial_seed)
                    .expect("planners succeed on admissible graphs");
                let report = average_aoi(&graph, &route)
                    .expect("planner routes pass coverage validation");
                let elapsed_ms = started.elapsed().as_millis() as u64;
                rows.push(ResultRow {
                    graph_id,
                    nodes: config.nodes,
                    edge_probability: config.edge_probability,
                    seed: graph_seed.0,
                    edge_count: graph.edge_count(),
                    total_length: graph.total_length(),
                    lower_bound,
                    algorithm,
                    aoi: report.average_aoi,
                    ratio: report.average_aoi / lower_bound,
                    route_length: report.route_length,
                    elapsed_ms,
                });
            }
        }
    }
    Ok(rows)
}

/// Exact column order of the CSV interface.
pub const CSV_HEADER: &str =
    "graph_id,n,p,seed,edge_count,total_length,lower_bound,algorithm,aoi,ratio,route_length,elapsed_ms";

/// Renders rows to CSV, header included. Identical runs produce identical
/// bytes except for the elapsed_ms column.
pub fn to_csv(rows: &[ResultRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.graph_id,
            r.nodes,
            r.edge_probability,
            r.seed,
            r.edge_count,
            r.total_length,
            r.lower_bound,
            r.algorithm,
            r.aoi,
            r.ratio,
            r.route_length,
            r.elapsed_ms,
        ));
    }
    out
}

/// Ratio statistics of one planner across an experiment.
#[derive(Debug, Clone)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub runs: usize,
    pub mean_ratio: f64,
    pub median_ratio: f64,
    pub p95_ratio: f64,
}

/// Per-planner mean, median, and 95th-percentile ratio, ordered as in
/// [`Algorithm::ALL`].
pub fn summarize(rows: &[ResultRow]) -> Vec<AlgorithmSummary> {
    Algorithm::ALL
        .iter()
        .filter_map(|&algorithm| {
            let mut ratios: Vec<f64> = rows
                .iter()
                .filter(|r| r.algorithm == algorithm)
                .map(|r| r.ratio)
                .collect();
            if ratios.is_empty() {
                return None;
            }
            ratios.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let n = ratios.len();
            let mean = ratios.iter().sum::<f64>() / n as f64;
            let median = if n % 2 == 1 {
                ratios[n / 2]
            } else {
                0.5 * (ratios[n / 2 - 1] + ratios[n / 2])
            };
            let p95 = ratios[((n as f64 * 0.95).ceil() as usize).max(1) - 1];
            Some(AlgorithmSummary {
                algorithm,
                runs: n,
                mean_ratio: mean,
                median_ratio: median,
                p95_ratio: p95,
            })
        })
        .collect()
}
