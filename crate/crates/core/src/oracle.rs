//! Brute-force ground truth on tiny instances: enumerate every route that
//! covers each edge once or twice, find the one with the smallest average
//! age, and check the planners' approximation ratios against it.

use serde::Serialize;

use crate::aoi::{average_aoi, patrol_lower_bound, Route};
use crate::cpp::cpp_augment;
use crate::error::OracleError;
use crate::euler::{enumerate_eulerian_cycles, hierholzer};
use crate::graph::{Graph, MultiGraph};
use crate::heuristic::{heuristic_route, BaseScheme};
use crate::io::route_to_string;

/// Hard cap on edges for exhaustive search.
pub const MAX_ORACLE_EDGES: usize = 12;

/// Default cap on backtracking states.
pub const DEFAULT_STATE_BUDGET: u64 = 10_000_000;

/// Every multigraph whose Eulerian cycles realize a route covering each
/// edge once or twice: duplicate exactly those edge subsets that flip all
/// odd degrees to even. Ordered by subset bitmask.
pub fn coverage_multigraphs(graph: &Graph) -> Result<Vec<MultiGraph>, OracleError> {
    let m = graph.edge_count();
    if m > MAX_ORACLE_EDGES {
        return Err(OracleError::TooManyEdges {
            edges: m,
            cap: MAX_ORACLE_EDGES,
        });
    }
    let odd = graph.odd_nodes();
    let mut out = Vec::new();
    for mask in 0..(1usize << m) {
        let mut parity = vec![false; graph.node_count()];
        for (id, edge) in graph.edges().iter().enumerate() {
            if mask & (1 << id) != 0 {
                parity[edge.u] = !parity[edge.u];
                parity[edge.v] = !parity[edge.v];
            }
        }
        let boundary: Vec<usize> = (0..graph.node_count()).filter(|&v| parity[v]).collect();
        if boundary == odd {
            let dup: Vec<bool> = (0..m).map(|id| mask & (1 << id) != 0).collect();
            out.push(MultiGraph::with_duplicates(graph.clone(), &dup));
        }
    }
    Ok(out)
}

/// The best once-or-twice coverage route found by exhaustive search.
#[derive(Debug, Clone)]
pub struct OptimalRoute {
    pub route: Route,
    pub average_aoi: f64,
    /// Candidate multigraphs enumerated.
    pub multigraphs: usize,
    /// Distinct cycles evaluated across all of them.
    pub routes_evaluated: u64,
}

/// Exhaustively minimizes the average age over all once-or-twice coverage
/// routes of a small connected graph. `state_budget` bounds the total
/// backtracking states across all candidate multigraphs.
pub fn optimal_route(graph: &Graph, state_budget: u64) -> Result<OptimalRoute, OracleError> {
    let multigraphs = coverage_multigraphs(graph)?;
    let mut best: Option<(f64, Route)> = None;
    let mut remaining = state_budget;
    let mut evaluated = 0u64;
    for mg in &multigraphs {
        let enumeration = enumerate_eulerian_cycles(mg, 0, usize::MAX, remaining)
            .expect("coverage multigraphs are Eulerian");
        if enumeration.out_of_budget {
            return Err(OracleError::BudgetExceeded {
                budget: state_budget,
            });
        }
        remaining -= enumeration.states;
        for route in enumeration.routes {
            let aoi = average_aoi(graph, &route)
                .map_err(OracleError::Route)?
                .average_aoi;
            evaluated += 1;
            if best.as_ref().map_or(true, |(b, _)| aoi < *b) {
                best = Some((aoi, route));
            }
        }
    }
    let (average_aoi, route) = best.expect("a connected graph admits a coverage route");
    Ok(OptimalRoute {
        route,
        average_aoi,
        multigraphs: multigraphs.len(),
        routes_evaluated: evaluated,
    })
}

/// Lower bound on the number of start-anchored directed Eulerian cycles of
/// the fully doubled multigraph: 2^(1 - nodes + copies) with copies equal
/// to twice the edge count.
pub fn doubled_cycle_floor(graph: &Graph) -> u128 {
    let exponent = 1 + 2 * graph.edge_count() as i64 - graph.node_count() as i64;
    assert!(
        (0..128).contains(&exponent),
        "cycle floor exponent {exponent} out of range"
    );
    1u128 << exponent
}

/// AoI and ratios of one planner on one graph.
#[derive(Debug, Clone, Serialize)]
pub struct SchemeRatio {
    pub scheme: &'static str,
    pub route: String,
    pub average_aoi: f64,
    pub ratio_to_optimal: f64,
    pub ratio_to_lower_bound: f64,
}

/// Planner performance against the exhaustive optimum and the global
/// lower bound.
#[derive(Debug, Clone, Serialize)]
pub struct RatioReport {
    pub optimal_aoi: f64,
    pub optimal_route: String,
    pub lower_bound: f64,
    pub schemes: Vec<SchemeRatio>,
    /// True when every ratio is at most 2 (plus floating-point slack).
    pub within_factor_two: bool,
}

/// Runs the deterministic planners, compares each against the exhaustive
/// optimum and the global lower bound, and reports every ratio.
pub fn verify_ratios(graph: &Graph, state_budget: u64) -> Result<RatioReport, OracleError> {
    let optimal = optimal_route(graph, state_budget)?;
    let lower = patrol_lower_bound(graph);

    let mut schemes = Vec::new();
    let runs: Vec<(&'static str, Route)> = vec![
        ("dup", {
            let mg = crate::cpp::duplicate_all(graph);
            hierholzer(&mg, 0).map_err(|e| OracleError::Plan(e.into()))?
        }),
        ("cpp", {
            let mg = cpp_augment(graph).map_err(|e| OracleError::Plan(e.into()))?;
            hierholzer(&mg, 0).map_err(|e| OracleError::Plan(e.into()))?
        }),
        (
            "heu_dup",
            heuristic_route(graph, BaseScheme::Dup, 0).map_err(OracleError::Plan)?,
        ),
        (
            "heu_cpp",
            heuristic_route(graph, BaseScheme::Cpp, 0).map_err(OracleError::Plan)?,
        ),
    ];
    let mut within = true;
    for (scheme, route) in runs {
        let aoi = average_aoi(graph, &route)
            .map_err(OracleError::Route)?
            .average_aoi;
        let ratio_to_optimal = aoi / optimal.average_aoi;
        let ratio_to_lower_bound = aoi / lower;
        within &= ratio_to_optimal <= 2.0 + 1e-9 && ratio_to_lower_bound <= 2.0 + 1e-9;
        schemes.push(SchemeRatio {
            scheme,
            route: route_to_string(&route),
            average_aoi: aoi,
            ratio_to_optimal,
            ratio_to_lower_bound,
        });
    }
    Ok(RatioReport {
        optimal_aoi: optimal.average_aoi,
        optimal_route: route_to_string(&optimal.route),
        lower_bound: lower,
        schemes,
        within_factor_two: within,
    })
}
