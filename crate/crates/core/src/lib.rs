//! Route planning and evaluation for periodic patrols on weighted graphs.
//!
//! A single patroller walks a closed route over every edge of a connected
//! graph at unit speed, period after period. The crate computes the exact
//! long-run time-average age of information of such a route (the mean time
//! since each point of the grid was last visited), provides analytic lower
//! and upper bounds, constructs routes by edge duplication or
//! shortest-path augmentation with a pluggable Eulerian-cycle selector,
//! and ships a brute-force search plus a discretized simulation as
//! independent ground truth on small instances.

pub mod aoi;
pub mod cpp;
pub mod error;
pub mod euler;
pub mod experiment;
pub mod graph;
pub mod heuristic;
pub mod io;
pub mod oracle;
pub mod sim;

pub use aoi::{
    average_aoi, bounds, classify_route, coverage_lower_bound, coverage_upper_bound,
    patrol_lower_bound, revisit_lower_bound, revisit_upper_bound, AoiReport, BoundsReport, Route,
    RouteCoverage, VisitSchedule,
};
pub use cpp::{apsp, cpp_augment, cpp_scheme, dup_scheme, duplicate_all, Matching, ShortestPathTable};
pub use error::{CppError, EulerError, GraphError, IoError, OracleError, PlanError, RouteError, SimError};
pub use euler::{
    enumerate_eulerian_cycles, fleury, hierholzer, Candidate, EdgeSelector, Enumeration,
    RandomSelector, WalkState,
};
pub use experiment::{run_experiment, summarize, Algorithm, ExperimentConfig, ResultRow};
pub use graph::{generate_er, Edge, EdgeCopy, ErConfig, Graph, MultiGraph, RngSeed};
pub use heuristic::{heuristic_route, potential, BaseScheme, PotentialSelector};
pub use oracle::{coverage_multigraphs, doubled_cycle_floor, optimal_route, verify_ratios};
pub use sim::{simulate_aoi, SimParams};
