//! Eulerian-cycle construction on multigraphs: Hierholzer's algorithm, a
//! Fleury walk with a pluggable next-edge selector, and exhaustive cycle
//! enumeration for small instances.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::aoi::Route;
use crate::error::EulerError;
use crate::graph::{EdgeCopy, MultiGraph, RngSeed};

/// An edge copy leaving the walk's current node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Candidate {
    /// Node reached by traversing the copy.
    pub node: usize,
    pub copy: EdgeCopy,
}

/// Incremental state of a Fleury-style walk. The walk starts at a fixed
/// node and consumes one untraversed edge copy per step; the state keeps
/// the bookkeeping selectors need: length walked so far and, per edge, the
/// position at which its most recent traversal finished.
#[derive(Debug, Clone)]
pub struct WalkState<'g> {
    mg: &'g MultiGraph,
    start: usize,
    nodes: Vec<usize>,
    walked: f64,
    used: Vec<bool>,
    remaining: usize,
    last_completion: Vec<Option<f64>>,
}

impl<'g> WalkState<'g> {
    pub fn new(mg: &'g MultiGraph, start: usize) -> Self {
        let edge_count = mg.base().edge_count();
        WalkState {
            mg,
            start,
            nodes: vec![start],
            walked: 0.0,
            used: vec![false; edge_count * 2],
            remaining: mg.copy_count(),
            last_completion: vec![None; edge_count],
        }
    }

    pub fn multigraph(&self) -> &MultiGraph {
        self.mg
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn current(&self) -> usize {
        *self.nodes.last().unwrap()
    }

    /// Length of the partial route.
    pub fn walked_length(&self) -> f64 {
        self.walked
    }

    /// Route-length position at which the edge's most recent traversal
    /// finished, if it has been traversed at all.
    pub fn last_completion(&self, edge_id: usize) -> Option<f64> {
        self.last_completion[edge_id]
    }

    pub fn is_used(&self, copy: EdgeCopy) -> bool {
        self.used[copy.dense_index()]
    }

    pub fn remaining(&self) -> usize {
        self.remaining
    }

    pub fn is_complete(&self) -> bool {
        self.remaining == 0
    }

    pub fn nodes_so_far(&self) -> &[usize] {
        &self.nodes
    }

    /// Consumes one incident untraversed copy and moves to its far end.
    pub fn advance(&mut self, candidate: Candidate) -> Result<(), EulerError> {
        let copy = candidate.copy;
        debug_assert!(!self.used[copy.dense_index()]);
        debug_assert!({
            let e = self.mg.base().edge(copy.edge_id);
            e.u == self.current() || e.v == self.current()
        });
        self.used[copy.dense_index()] = true;
        self.remaining -= 1;
        self.walked += self.mg.base().edge(copy.edge_id).length;
        self.last_completion[copy.edge_id] = Some(self.walked);
        self.nodes.push(candidate.node);
        Ok(())
    }

    /// Untraversed copies at the current node, ordered by (node, copy).
    fn incident_candidates(&self) -> Vec<Candidate> {
        self.mg
            .copies_at(self.current())
            .into_iter()
            .filter(|&(_, copy)| !self.used[copy.dense_index()])
            .map(|(node, copy)| Candidate { node, copy })
            .collect()
    }

    /// Candidates whose removal keeps every remaining untraversed copy
    /// reachable from the far endpoint. When none qualifies (the last exit
    /// is a bridge) all incident untraversed copies become eligible.
    pub fn eligible_next(&self) -> Vec<Candidate> {
        let incident = self.incident_candidates();
        let strict: Vec<Candidate> = incident
            .iter()
            .copied()
            .filter(|c| self.keeps_rest_reachable(*c))
            .collect();
        if strict.is_empty() {
            incident
        } else {
            strict
        }
    }

    fn keeps_rest_reachable(&self, candidate: Candidate) -> bool {
        let rest = self.remaining - 1;
        if rest == 0 {
            return true;
        }
        let base = self.mg.base();
        let mut node_seen = vec![false; base.node_count()];
        let mut copy_seen = 0usize;
        let mut stack = vec![candidate.node];
        node_seen[candidate.node] = true;
        while let Some(v) = stack.pop() {
            for (w, copy) in self.mg.copies_at(v) {
                if self.used[copy.dense_index()] || copy == candidate.copy {
                    continue;
                }
                // Count each copy once, from its smaller-seen endpoint.
                if !node_seen[w] {
                    node_seen[w] = true;
                    stack.push(w);
                }
            }
        }
        for copy in self.mg.copies() {
            if self.used[copy.dense_index()] || copy == candidate.copy {
                continue;
            }
            let e = base.edge(copy.edge_id);
            if node_seen[e.u] || node_seen[e.v] {
                copy_seen += 1;
            }
        }
        copy_seen == rest
    }

    pub fn into_route(self) -> Route {
        Route::new(self.nodes).expect("completed walk is closed")
    }
}

/// Chooses the next copy among the eligible candidates of a walk.
pub trait EdgeSelector {
    /// Returns an index into `candidates`, which is never empty.
    fn select(&mut self, walk: &WalkState, candidates: &[Candidate]) -> usize;
}

/// Picks the next node uniformly at random among the distinct eligible
/// neighbors, then that node's first eligible copy.
pub struct RandomSelector {
    rng: ChaCha8Rng,
}

impl RandomSelector {
    pub fn new(seed: RngSeed) -> Self {
        RandomSelector {
            rng: ChaCha8Rng::seed_from_u64(seed.0),
        }
    }
}

impl EdgeSelector for RandomSelector {
    fn select(&mut self, _walk: &WalkState, candidates: &[Candidate]) -> usize {
        // candidates are sorted by node; keep the first index of each node
        let mut firsts: Vec<usize> = Vec::with_capacity(candidates.len());
        let mut last_node = usize::MAX;
        for (i, c) in candidates.iter().enumerate() {
            if c.node != last_node {
                firsts.push(i);
                last_node = c.node;
            }
        }
        firsts[self.rng.gen_range(0..firsts.len())]
    }
}

fn ensure_eulerian(mg: &MultiGraph) -> Result<(), EulerError> {
    if !mg.is_eulerian() {
        return Err(EulerError::NotEulerian);
    }
    Ok(())
}

/// Builds an Eulerian cycle by walking edge by edge, restricted at every
/// step to choices that keep the rest of the multigraph reachable, with
/// `selector` deciding among them.
pub fn fleury(
    mg: &MultiGraph,
    start: usize,
    selector: &mut dyn EdgeSelector,
) -> Result<Route, EulerError> {
    ensure_eulerian(mg)?;
    let mut walk = WalkState::new(mg, start);
    while !walk.is_complete() {
        let candidates = walk.eligible_next();
        if candidates.is_empty() {
            return Err(EulerError::Stranded {
                node: walk.current(),
            });
        }
        let choice = selector.select(&walk, &candidates);
        assert!(choice < candidates.len(), "selector returned {choice} for {} candidates", candidates.len());
        walk.advance(candidates[choice])?;
    }
    Ok(walk.into_route())
}

/// Builds an Eulerian cycle with the stack-based splicing algorithm.
/// Deterministic: copies are consumed in (neighbor, copy) order.
pub fn hierholzer(mg: &MultiGraph, start: usize) -> Result<Route, EulerError> {
    ensure_eulerian(mg)?;
    let adjacency: Vec<Vec<Candidate>> = (0..mg.base().node_count())
        .map(|v| {
            mg.copies_at(v)
                .into_iter()
                .map(|(node, copy)| Candidate { node, copy })
                .collect()
        })
        .collect();
    let mut cursor = vec![0usize; adjacency.len()];
    let mut used = vec![false; mg.base().edge_count() * 2];
    let mut stack = vec![start];
    let mut tail: Vec<usize> = Vec::with_capacity(mg.copy_count() + 1);
    while let Some(&v) = stack.last() {
        let list = &adjacency[v];
        while cursor[v] < list.len() && used[list[cursor[v]].copy.dense_index()] {
            cursor[v] += 1;
        }
        if cursor[v] == list.len() {
            tail.push(v);
            stack.pop();
        } else {
            let c = list[cursor[v]];
            used[c.copy.dense_index()] = true;
            stack.push(c.node);
        }
    }
    tail.reverse();
    Ok(Route::new(tail).expect("Eulerian traversal is closed"))
}

/// Result of exhaustive cycle enumeration.
#[derive(Debug, Clone)]
pub struct Enumeration {
    /// Cycles from the start node as node sequences, deduplicated up to
    /// rotation of the directed edge sequence: swapping the two copies of
    /// a duplicated edge or re-anchoring at a later visit of the start
    /// node does not create a new route. Reflections stay distinct.
    pub routes: Vec<Route>,
    /// Complete start-anchored directed copy sequences found, before any
    /// dedup; parallel copies count as distinct here.
    pub sequence_count: u64,
    /// Backtracking states expanded.
    pub states: u64,
    /// True when the route cap cut recording short.
    pub truncated: bool,
    /// True when the state budget ran out; counts and routes are partial.
    pub out_of_budget: bool,
}

/// Enumerates every Eulerian cycle of `mg` that starts and ends at
/// `start`, by exhaustive backtracking over edge copies. Intended for
/// small instances; `cap` bounds the recorded routes and `state_budget`
/// bounds the explored search states.
pub fn enumerate_eulerian_cycles(
    mg: &MultiGraph,
    start: usize,
    cap: usize,
    state_budget: u64,
) -> Result<Enumeration, EulerError> {
    ensure_eulerian(mg)?;
    let mut search = CycleSearch {
        mg,
        start,
        used: vec![false; mg.base().edge_count() * 2],
        path_copies: Vec::with_capacity(mg.copy_count()),
        path_nodes: vec![start],
        seen: HashSet::new(),
        result: Enumeration {
            routes: Vec::new(),
            sequence_count: 0,
            states: 0,
            truncated: false,
            out_of_budget: false,
        },
        cap,
        state_budget,
    };
    search.run(start, mg.copy_count());
    Ok(search.result)
}

struct CycleSearch<'g> {
    mg: &'g MultiGraph,
    start: usize,
    used: Vec<bool>,
    path_copies: Vec<EdgeCopy>,
    path_nodes: Vec<usize>,
    seen: HashSet<Vec<usize>>,
    result: Enumeration,
    cap: usize,
    state_budget: u64,
}

impl CycleSearch<'_> {
    fn run(&mut self, node: usize, remaining: usize) {
        if self.result.out_of_budget {
            return;
        }
        self.result.states += 1;
        if self.result.states > self.state_budget {
            self.result.out_of_budget = true;
            return;
        }
        if remaining == 0 {
            if node == self.start {
                self.record();
            }
            return;
        }
        for (next, copy) in self.mg.copies_at(node) {
            if self.used[copy.dense_index()] {
                continue;
            }
            self.used[copy.dense_index()] = true;
            self.path_copies.push(copy);
            self.path_nodes.push(next);
            self.run(next, remaining - 1);
            self.path_nodes.pop();
            self.path_copies.pop();
            self.used[copy.dense_index()] = false;
            if self.result.out_of_budget {
                return;
            }
        }
    }

    fn record(&mut self) {
        self.result.sequence_count += 1;
        if self.result.routes.len() >= self.cap {
            self.result.truncated = true;
            return;
        }
        // Canonical form of the node sequence: lexicographically smallest
        // rotation among those anchored at a visit of the start node. The
        // node sequence pins down the directed edge sequence, so copy
        // permutations collapse here.
        let len = self.path_copies.len();
        let mut canonical: Option<Vec<usize>> = None;
        for offset in 0..len {
            if self.path_nodes[offset] != self.start {
                continue;
            }
            let rotation: Vec<usize> = (0..=len)
                .map(|i| self.path_nodes[(offset + i) % len])
                .collect();
            if canonical.as_ref().map_or(true, |c| rotation < *c) {
                canonical = Some(rotation);
            }
        }
        let canonical = canonical.expect("path starts at start");
        if self.seen.insert(canonical) {
            self.result
                .routes
                .push(Route::new(self.path_nodes.clone()).expect("cycle is closed"));
        }
    }
}
