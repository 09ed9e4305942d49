//! Exact time-average age-of-information evaluation of periodic routes,
//! together with the analytic bounds used to judge planner output.
//!
//! A patrol route is a closed walk traversed at unit speed, once per
//! period. The age of a point on the grid is the time since the patroller
//! last passed over it; the quantity of interest is the long-run average of
//! the total age integrated over all edges. For routes that cover every
//! edge once or twice per period the average has a closed form: each visit
//! of an edge contributes a cubic polynomial in the edge length and the
//! idle gap since the previous visit of the same edge, with the constant
//! term depending on whether the two visits ran in the same or opposite
//! directions.

use serde::Serialize;

use crate::error::RouteError;
use crate::graph::Graph;

/// A closed walk given as a node sequence whose first and last entries
/// coincide. Adjacency against a concrete graph is checked by the
/// evaluation entry points, not at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route {
    nodes: Vec<usize>,
}

impl Route {
    pub fn new(nodes: Vec<usize>) -> Result<Self, RouteError> {
        if nodes.len() < 2 {
            return Err(RouteError::TooShort);
        }
        let (first, last) = (nodes[0], nodes[nodes.len() - 1]);
        if first != last {
            return Err(RouteError::NotClosedWalk { first, last });
        }
        Ok(Route { nodes })
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    /// Number of edge traversals per period.
    pub fn step_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// The same cyclic walk started `offset` steps later.
    pub fn rotated(&self, offset: usize) -> Route {
        let m = self.step_count();
        let k = offset % m;
        let mut nodes = Vec::with_capacity(m + 1);
        for i in 0..=m {
            nodes.push(self.nodes[(k + i) % m]);
        }
        Route { nodes }
    }

    /// The walk traversed in the opposite direction.
    pub fn reversed(&self) -> Route {
        let mut nodes = self.nodes.clone();
        nodes.reverse();
        Route { nodes }
    }
}

/// One traversal step of a route: which edge, and whether the walk
/// followed the edge's canonical orientation.
#[derive(Debug, Clone, Copy)]
pub struct Step {
    pub edge_id: usize,
    pub forward: bool,
}

/// Checks that consecutive route nodes are adjacent in `graph` and
/// returns the traversed steps. Does not restrict traversal counts.
pub fn walk_steps(graph: &Graph, route: &Route) -> Result<Vec<Step>, RouteError> {
    let nodes = route.nodes();
    let mut steps = Vec::with_capacity(nodes.len() - 1);
    for (i, pair) in nodes.windows(2).enumerate() {
        let (from, to) = (pair[0], pair[1]);
        match graph.edge_between(from, to) {
            Some(edge) => steps.push(Step {
                edge_id: edge.id,
                forward: edge.is_forward_from(from),
            }),
            None => {
                return Err(RouteError::NotAWalk {
                    position: i,
                    from,
                    to,
                })
            }
        }
    }
    Ok(steps)
}

/// Partition of the graph's edges by how often the route traverses them.
#[derive(Debug, Clone)]
pub struct RouteCoverage {
    /// Per edge id, number of traversals (1 or 2).
    pub counts: Vec<u8>,
    /// Edge ids traversed exactly once, ascending.
    pub once: Vec<usize>,
    /// Edge ids traversed exactly twice, ascending.
    pub twice: Vec<usize>,
    /// Total length of the once-traversed edges.
    pub once_length: f64,
    /// Total length of the twice-traversed edges.
    pub twice_length: f64,
    /// Length walked per period.
    pub route_length: f64,
}

/// Verifies that `route` is a closed walk on `graph` covering every edge
/// at least once and at most twice, and splits the edges by traversal
/// count.
pub fn classify_route(graph: &Graph, route: &Route) -> Result<RouteCoverage, RouteError> {
    let steps = walk_steps(graph, route)?;
    let mut counts = vec![0usize; graph.edge_count()];
    let mut route_length = 0.0;
    for step in &steps {
        counts[step.edge_id] += 1;
        route_length += graph.edge(step.edge_id).length;
    }
    let mut once = Vec::new();
    let mut twice = Vec::new();
    let mut once_length = 0.0;
    let mut twice_length = 0.0;
    for edge in graph.edges() {
        match counts[edge.id] {
            0 => {
                return Err(RouteError::UncoveredEdge {
                    u: edge.u,
                    v: edge.v,
                })
            }
            1 => {
                once.push(edge.id);
                once_length += edge.length;
            }
            2 => {
                twice.push(edge.id);
                twice_length += edge.length;
            }
            n => {
                return Err(RouteError::TooManyTraversals {
                    u: edge.u,
                    v: edge.v,
                    count: n,
                })
            }
        }
    }
    Ok(RouteCoverage {
        counts: counts.iter().map(|&c| c as u8).collect(),
        once,
        twice,
        once_length,
        twice_length,
        route_length,
    })
}

/// Accumulated age contributed by one visit of an edge of length `edge_length`
/// after an idle gap of `gap`, when the visit runs in the same direction as
/// the previous one.
pub fn visit_gap_same(edge_length: f64, gap: f64) -> Result<f64, RouteError> {
    if gap < 0.0 || !gap.is_finite() {
        return Err(RouteError::NegativeGap { gap });
    }
    let l = edge_length;
    Ok(0.5 * gap * gap * l + gap * l * l + 0.5 * l * l * l)
}

/// Same as [`visit_gap_same`] but for a visit in the opposite direction of
/// the previous one; only the cubic term differs.
pub fn visit_gap_opposite(edge_length: f64, gap: f64) -> Result<f64, RouteError> {
    if gap < 0.0 || !gap.is_finite() {
        return Err(RouteError::NegativeGap { gap });
    }
    let l = edge_length;
    Ok(0.5 * gap * gap * l + gap * l * l + 2.0 / 3.0 * l * l * l)
}

/// Accumulated age per edge plus the period-average for the whole graph.
#[derive(Debug, Clone, Serialize)]
pub struct AoiReport {
    pub average_aoi: f64,
    pub route_length: f64,
    #[serde(rename = "e1_length")]
    pub once_length: f64,
    #[serde(rename = "e2_length")]
    pub twice_length: f64,
    pub per_edge: Vec<EdgeAoi>,
}

/// Accumulated age of a single edge over one period.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeAoi {
    pub u: usize,
    pub v: usize,
    pub accumulated: f64,
}

/// Computes the exact time-average age of `route` on `graph`.
///
/// The walk is conceptually doubled; for every traversal in the second
/// copy the scan runs backward through the doubled walk, summing edge
/// lengths until the previous traversal of the same edge, which yields the
/// idle gap and the same/opposite direction relation. An edge traversed
/// once per period meets its own earlier traversal one full period back,
/// giving a gap of `route_length - edge_length` in the same direction.
pub fn average_aoi(graph: &Graph, route: &Route) -> Result<AoiReport, RouteError> {
    let coverage = classify_route(graph, route)?;
    let nodes = route.nodes();
    let m = route.step_count();
    // nodes[i % m] walks the doubled route; index 2m wraps back to the start.
    let at = |i: usize| nodes[i % m];

    let mut accumulated = vec![0.0f64; graph.edge_count()];
    for i in m..(2 * m) {
        let (from, to) = (at(i), at(i + 1));
        let edge = graph
            .edge_between(from, to)
            .expect("walk validated by classify_route");
        let mut gap = 0.0;
        for j in (1..=i).rev() {
            let (a, b) = (at(j - 1), at(j));
            if (a, b) == (from, to) {
                accumulated[edge.id] += visit_gap_same(edge.length, gap)?;
                break;
            } else if (a, b) == (to, from) {
                accumulated[edge.id] += visit_gap_opposite(edge.length, gap)?;
                break;
            } else {
                gap += graph
                    .edge_between(a, b)
                    .expect("walk validated by classify_route")
                    .length;
            }
        }
    }

    let total: f64 = accumulated.iter().sum();
    let per_edge = graph
        .edges()
        .iter()
        .map(|e| EdgeAoi {
            u: e.u,
            v: e.v,
            accumulated: accumulated[e.id],
        })
        .collect();
    Ok(AoiReport {
        average_aoi: total / coverage.route_length,
        route_length: coverage.route_length,
        once_length: coverage.once_length,
        twice_length: coverage.twice_length,
        per_edge,
    })
}

/// Lower bound on the average age under any patrol policy whatsoever:
/// half the squared total edge length. Tight on Eulerian graphs.
pub fn patrol_lower_bound(graph: &Graph) -> f64 {
    let l = graph.total_length();
    0.5 * l * l
}

/// Lower bound on the average age of any route that covers each edge once
/// or twice, in terms of the total lengths of the once- and
/// twice-traversed edge sets.
pub fn coverage_lower_bound(once_length: f64, twice_length: f64) -> f64 {
    0.5 * once_length * once_length + 1.25 * once_length * twice_length
        + 0.5 * twice_length * twice_length
}

/// Matching upper bound for once-or-twice coverage routes.
pub fn coverage_upper_bound(once_length: f64, twice_length: f64) -> f64 {
    0.5 * once_length * once_length + 1.5 * once_length * twice_length
        + twice_length * twice_length
}

/// Smallest possible accumulated age of a twice-visited edge over one
/// period of length `route_length`: both revisits evenly spaced, same
/// direction.
pub fn revisit_lower_bound(edge_length: f64, route_length: f64) -> f64 {
    0.25 * edge_length * route_length * route_length
}

/// Largest possible accumulated age of a twice-visited edge over one
/// period: the two visits back-to-back in opposite directions.
pub fn revisit_upper_bound(edge_length: f64, route_length: f64) -> f64 {
    let l = edge_length;
    let r = route_length;
    4.0 / 3.0 * l * l * l - r * l * l + 0.5 * l * r * r
}

/// The three bound values for a (graph, route) pair.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    /// Bound over all policies (half squared total length).
    pub global_lower: f64,
    /// Bound over once-or-twice coverage routes with this route's split.
    pub coverage_lower: f64,
    /// Upper bound with this route's split.
    pub coverage_upper: f64,
}

/// Evaluates all bounds for `route` using its own once/twice split.
pub fn bounds(graph: &Graph, route: &Route) -> Result<BoundsReport, RouteError> {
    let coverage = classify_route(graph, route)?;
    Ok(BoundsReport {
        global_lower: patrol_lower_bound(graph),
        coverage_lower: coverage_lower_bound(coverage.once_length, coverage.twice_length),
        coverage_upper: coverage_upper_bound(coverage.once_length, coverage.twice_length),
    })
}

/// Traversal direction relative to an edge's canonical orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// One timed visit of an edge.
#[derive(Debug, Clone, Copy)]
pub struct Visit {
    /// Time within the period at which the traversal starts.
    pub start: f64,
    pub direction: Direction,
}

/// Per-edge visit times of one route period, at unit speed from time 0.
#[derive(Debug, Clone)]
pub struct VisitSchedule {
    per_edge: Vec<Vec<Visit>>,
    period: f64,
}

impl VisitSchedule {
    pub fn from_route(graph: &Graph, route: &Route) -> Result<Self, RouteError> {
        let steps = walk_steps(graph, route)?;
        let mut per_edge = vec![Vec::new(); graph.edge_count()];
        let mut clock = 0.0;
        for step in &steps {
            per_edge[step.edge_id].push(Visit {
                start: clock,
                direction: if step.forward {
                    Direction::Forward
                } else {
                    Direction::Backward
                },
            });
            clock += graph.edge(step.edge_id).length;
        }
        Ok(VisitSchedule {
            per_edge,
            period: clock,
        })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn visits(&self, edge_id: usize) -> &[Visit] {
        &self.per_edge[edge_id]
    }
}
