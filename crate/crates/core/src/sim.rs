//! Discretized ground truth for the analytic evaluator: sample points on
//! every edge, march the patroller along the route in small time steps,
//! reset a point's age whenever the patroller passes over it, and
//! time-average the total age. Converges to the analytic value as the
//! space and time steps shrink.

use crate::aoi::{walk_steps, Route};
use crate::error::SimError;
use crate::graph::Graph;

/// Discretization parameters.
#[derive(Debug, Clone, Copy)]
pub struct SimParams {
    /// Sample-point spacing along edges.
    pub dx: f64,
    /// Time step; must not exceed a quarter of the shortest edge.
    pub dt: f64,
    /// Full periods discarded before measuring (at least one period is
    /// needed to wash out the all-fresh initial state).
    pub warmup_periods: u32,
    /// Full periods averaged over.
    pub measure_periods: u32,
}

impl Default for SimParams {
    fn default() -> Self {
        SimParams {
            dx: 1e-3,
            dt: 1e-3,
            warmup_periods: 2,
            measure_periods: 4,
        }
    }
}

/// Simulates any closed walk on `graph` (repetition counts are not
/// restricted) and returns the measured time-average age.
pub fn simulate_aoi(graph: &Graph, route: &Route, params: &SimParams) -> Result<f64, SimError> {
    if !(params.dx > 0.0) || !(params.dt > 0.0) || !params.dx.is_finite() || !params.dt.is_finite()
    {
        return Err(SimError::InvalidStep {
            dx: params.dx,
            dt: params.dt,
        });
    }
    if params.measure_periods == 0 {
        return Err(SimError::NoMeasurement);
    }
    let steps = walk_steps(graph, route)?;
    let min_edge = graph
        .edges()
        .iter()
        .map(|e| e.length)
        .fold(f64::INFINITY, f64::min);
    if params.dt > min_edge / 4.0 {
        return Err(SimError::StepTooCoarse {
            dt: params.dt,
            limit: min_edge / 4.0,
        });
    }

    // Sample points sit at cell midpoints so nodes never carry a point;
    // each edge contributes ceil(length / dx) cells of equal width.
    let mut first_point = vec![0usize; graph.edge_count()];
    let mut cell_width = vec![0.0f64; graph.edge_count()];
    let mut cell_count = vec![0usize; graph.edge_count()];
    let mut total_points = 0usize;
    for e in graph.edges() {
        let cells = (e.length / params.dx).ceil().max(1.0) as usize;
        first_point[e.id] = total_points;
        cell_width[e.id] = e.length / cells as f64;
        cell_count[e.id] = cells;
        total_points += cells;
    }
    // weighted_area = sum over points of width * last_visit_time; the
    // instantaneous total age is then t * monitored_length - weighted_area.
    let monitored_length: f64 = graph.edges().iter().map(|e| e.length).sum();
    let mut last_visit = vec![0.0f64; total_points];
    let mut weighted_area = 0.0f64;

    let period: f64 = steps.iter().map(|s| graph.edge(s.edge_id).length).sum();
    // Align ticks with period boundaries.
    let ticks_per_period = (period / params.dt).ceil() as u64;
    let tick = period / ticks_per_period as f64;
    let warmup_ticks = params.warmup_periods as u64 * ticks_per_period;
    let total_ticks = warmup_ticks + params.measure_periods as u64 * ticks_per_period;

    let mut step_index = 0usize;
    let mut offset = 0.0f64; // distance already covered on the current step
    let mut clock = 0.0f64;
    let mut integral = 0.0f64;

    for tick_index in 0..total_ticks {
        let tick_start = clock;
        clock = (tick_index + 1) as f64 * tick;
        let mut budget = clock - tick_start;
        while budget > 0.0 {
            let step = steps[step_index];
            let edge = graph.edge(step.edge_id);
            let advance = budget.min(edge.length - offset);
            let (seg_start, seg_end) = (offset, offset + advance);
            // Map the covered stretch to the edge's canonical coordinate
            // and reset every cell midpoint inside it. Half-open toward
            // the trailing end so consecutive ticks never double-count.
            let width = cell_width[step.edge_id];
            let base = first_point[step.edge_id];
            let count = cell_count[step.edge_id];
            let lo = (seg_start / width - 0.5).floor().max(0.0) as usize;
            let hi = ((seg_end / width - 0.5).ceil() as usize).min(count.saturating_sub(1));
            for k in lo..=hi.min(count - 1) {
                let travel = (k as f64 + 0.5) * width;
                if travel <= seg_start || travel > seg_end {
                    continue;
                }
                let point = if step.forward {
                    base + k
                } else {
                    base + count - 1 - k
                };
                weighted_area += width * (clock - last_visit[point]);
                last_visit[point] = clock;
            }
            offset = seg_end;
            budget -= advance;
            if offset >= edge.length - 1e-15 * edge.length {
                offset = 0.0;
                step_index = (step_index + 1) % steps.len();
            }
        }
        if tick_index >= warmup_ticks {
            // Total age grows linearly between resets; the trapezoid over
            // the tick is exact given resets are booked at tick ends.
            let age_mid = 0.5 * (tick_start + clock) * monitored_length - weighted_area;
            integral += age_mid * tick;
        }
    }

    Ok(integral / (params.measure_periods as f64 * period))
}
