//! Error types shared across the crate.

use thiserror::Error;

/// Errors from graph construction and random generation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("self-loop at node {node}")]
    SelfLoop { node: usize },
    #[error("duplicate edge between {u} and {v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("edge ({u}, {v}) has non-positive length {length}")]
    NonPositiveLength { u: usize, v: usize, length: f64 },
    #[error("node {node} out of range for a graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no graph satisfying the requirements after {attempts} attempts")]
    GenerationBudgetExceeded { attempts: u32 },
}

/// Errors from route validation and evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RouteError {
    #[error("a route needs at least two nodes")]
    TooShort,
    #[error("route starts at {first} but ends at {last}")]
    NotClosedWalk { first: usize, last: usize },
    #[error("step {position}: nodes {from} and {to} are not adjacent")]
    NotAWalk { position: usize, from: usize, to: usize },
    #[error("edge ({u}, {v}) is never traversed by the route")]
    UncoveredEdge { u: usize, v: usize },
    #[error("edge ({u}, {v}) is traversed {count} times; at most two traversals are allowed")]
    TooManyTraversals { u: usize, v: usize, count: usize },
    #[error("negative inter-visit gap {gap}")]
    NegativeGap { gap: f64 },
}

/// Errors from the discretized simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("step sizes must be positive and finite (dx {dx}, dt {dt})")]
    InvalidStep { dx: f64, dt: f64 },
    #[error("time step {dt} too coarse: must be at most a quarter of the shortest edge ({limit})")]
    StepTooCoarse { dt: f64, limit: f64 },
    #[error("at least one measurement period is required")]
    NoMeasurement,
    #[error(transparent)]
    Route(#[from] RouteError),
}

/// Errors from Eulerian-cycle construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EulerError {
    #[error("multigraph is not Eulerian (must be connected with all degrees even)")]
    NotEulerian,
    #[error("walk stranded at node {node} with untraversed edges remaining")]
    Stranded { node: usize },
}

/// Errors from shortest-path augmentation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CppError {
    #[error("{count} odd-degree nodes exceed the exact matching cap of {cap}")]
    TooManyOddVertices { count: usize, cap: usize },
}

/// Errors from route planning schemes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error(transparent)]
    Cpp(#[from] CppError),
    #[error(transparent)]
    Euler(#[from] EulerError),
}

/// Errors from exhaustive search.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("graph has {edges} edges; exhaustive search is capped at {cap}")]
    TooManyEdges { edges: usize, cap: usize },
    #[error("search budget of {budget} states exhausted")]
    BudgetExceeded { budget: u64 },
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Route(#[from] RouteError),
}

/// Errors from reading and writing files.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed graph file: {0}")]
    MalformedGraph(String),
    #[error("malformed route: {0}")]
    MalformedRoute(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
