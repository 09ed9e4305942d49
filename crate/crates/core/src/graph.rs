//! Simple weighted graphs and {1,2}-multiplicity multigraphs.
//!
//! The patrol grid is an undirected simple graph with strictly positive
//! edge lengths. Planners augment it into a multigraph in which each edge
//! appears once or twice; the two copies of a duplicated edge carry
//! distinct slots so traversal algorithms can consume a specific copy.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;

/// Seed for every randomized operation. Identical seed and parameters
/// reproduce bit-identical graphs and route choices across runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngSeed(pub u64);

/// An undirected edge. The stored `(u, v)` order is the edge's canonical
/// orientation, used to classify traversal directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub length: f64,
}

impl Edge {
    /// The endpoint opposite to `node`.
    pub fn opposite(&self, node: usize) -> usize {
        if node == self.u {
            self.v
        } else {
            self.u
        }
    }

    /// Whether a traversal from `from` follows the canonical orientation.
    pub fn is_forward_from(&self, from: usize) -> bool {
        from == self.u
    }
}

/// A connected simple graph with positive edge lengths and dense node ids.
#[derive(Debug, Clone)]
pub struct Graph {
    node_count: usize,
    edges: Vec<Edge>,
    // node -> incident edge ids, in insertion order
    incidence: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Edge ids are assigned in input order.
    pub fn build(node_count: usize, edges: &[(usize, usize, f64)]) -> Result<Self, GraphError> {
        let mut graph = Graph {
            node_count,
            edges: Vec::with_capacity(edges.len()),
            incidence: vec![Vec::new(); node_count],
        };
        for &(u, v, length) in edges {
            graph.push_edge(u, v, length)?;
        }
        Ok(graph)
    }

    fn push_edge(&mut self, u: usize, v: usize, length: f64) -> Result<(), GraphError> {
        for &node in &[u, v] {
            if node >= self.node_count {
                return Err(GraphError::NodeOutOfRange {
                    node,
                    node_count: self.node_count,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { node: u });
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(GraphError::NonPositiveLength { u, v, length });
        }
        if self.edge_between(u, v).is_some() {
            return Err(GraphError::DuplicateEdge { u, v });
        }
        let id = self.edges.len();
        self.edges.push(Edge { id, u, v, length });
        self.incidence[u].push(id);
        self.incidence[v].push(id);
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    /// The edge joining `u` and `v`, in either orientation.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<&Edge> {
        if u >= self.node_count || v >= self.node_count {
            return None;
        }
        self.incidence[u]
            .iter()
            .map(|&id| &self.edges[id])
            .find(|e| e.opposite(u) == v)
    }

    /// Ids of the edges incident to `node`, in insertion order.
    pub fn incident(&self, node: usize) -> &[usize] {
        &self.incidence[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.incidence[node].len()
    }

    /// Nodes of odd degree, ascending. Always an even number of them.
    pub fn odd_nodes(&self) -> Vec<usize> {
        (0..self.node_count)
            .filter(|&v| self.degree(v) % 2 == 1)
            .collect()
    }

    /// True iff every node is reachable from node 0. A degree-0 node makes
    /// the graph disconnected.
    pub fn is_connected(&self) -> bool {
        if self.node_count == 0 {
            return false;
        }
        let mut seen = vec![false; self.node_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &id in &self.incidence[v] {
                let w = self.edges[id].opposite(v);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.node_count
    }

    /// True iff the graph is connected and every degree is even.
    pub fn is_eulerian(&self) -> bool {
        self.is_connected() && self.odd_nodes().is_empty()
    }

    /// Sum of all edge lengths.
    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }
}

/// Generation parameters for the G(n, p) ensemble with uniform lengths.
#[derive(Debug, Clone)]
pub struct ErConfig {
    pub nodes: usize,
    pub edge_probability: f64,
    pub length_low: f64,
    pub length_high: f64,
    pub require_connected: bool,
    pub require_non_eulerian: bool,
    /// Rejection-sampling retry cap.
    pub max_attempts: u32,
}

impl ErConfig {
    /// Defaults: lengths drawn from (0, 10], connected non-Eulerian filter,
    /// 10,000 attempts.
    pub fn new(nodes: usize, edge_probability: f64) -> Self {
        ErConfig {
            nodes,
            edge_probability,
            length_low: 0.0,
            length_high: 10.0,
            require_connected: true,
            require_non_eulerian: true,
            max_attempts: 10_000,
        }
    }
}

/// Draws G(n, p) graphs with i.i.d. uniform edge lengths until every
/// required predicate holds. Deterministic under the seed.
///
/// Lengths are sampled from the half-open interval (low, high]: a draw in
/// [low, high) is rejected when it is exactly zero, since zero-length edges
/// break the unit-speed model.
pub fn generate_er(config: &ErConfig, seed: RngSeed) -> Result<Graph, GraphError> {
    if config.nodes < 3 {
        return Err(GraphError::InvalidParameter(format!(
            "need at least 3 nodes, got {}",
            config.nodes
        )));
    }
    if !(config.edge_probability > 0.0 && config.edge_probability < 1.0) {
        return Err(GraphError::InvalidParameter(format!(
            "edge probability must lie in (0, 1), got {}",
            config.edge_probability
        )));
    }
    if !(config.length_low >= 0.0 && config.length_low < config.length_high)
        || !config.length_high.is_finite()
    {
        return Err(GraphError::InvalidParameter(format!(
            "invalid length range [{}, {})",
            config.length_low, config.length_high
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    for _ in 0..config.max_attempts {
        let mut edges = Vec::new();
        for u in 0..config.nodes {
            for v in (u + 1)..config.nodes {
                if rng.gen_bool(config.edge_probability) {
                    let length = loop {
                        let x = rng.gen_range(config.length_low..config.length_high);
                        if x > 0.0 {
                            break x;
                        }
                    };
                    edges.push((u, v, length));
                }
            }
        }
        if edges.is_empty() {
            continue;
        }
        let graph = Graph::build(config.nodes, &edges)?;
        if config.require_connected && !graph.is_connected() {
            continue;
        }
        if config.require_non_eulerian && graph.is_eulerian() {
            continue;
        }
        return Ok(graph);
    }
    Err(GraphError::GenerationBudgetExceeded {
        attempts: config.max_attempts,
    })
}

/// One copy of an edge within a multigraph: slot 0 always exists, slot 1
/// only for duplicated edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeCopy {
    pub edge_id: usize,
    pub slot: u8,
}

impl EdgeCopy {
    /// Dense index usable for per-copy bookkeeping arrays of size
    /// `2 * edge_count`.
    pub fn dense_index(self) -> usize {
        self.edge_id * 2 + self.slot as usize
    }
}

/// A graph whose edges carry multiplicity 1 or 2.
#[derive(Debug, Clone)]
pub struct MultiGraph {
    base: Graph,
    multiplicity: Vec<u8>,
}

impl MultiGraph {
    /// Wraps a graph with every edge at multiplicity 1.
    pub fn from_graph(base: Graph) -> Self {
        let multiplicity = vec![1; base.edge_count()];
        MultiGraph { base, multiplicity }
    }

    /// Wraps a graph duplicating exactly the edges flagged in `duplicated`.
    pub fn with_duplicates(base: Graph, duplicated: &[bool]) -> Self {
        assert_eq!(duplicated.len(), base.edge_count());
        let multiplicity = duplicated.iter().map(|&d| if d { 2 } else { 1 }).collect();
        MultiGraph { base, multiplicity }
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn multiplicity(&self, edge_id: usize) -> u8 {
        self.multiplicity[edge_id]
    }

    /// Ids of the edges present twice, ascending.
    pub fn duplicated_edge_ids(&self) -> Vec<usize> {
        (0..self.base.edge_count())
            .filter(|&id| self.multiplicity[id] == 2)
            .collect()
    }

    /// Number of edge copies.
    pub fn copy_count(&self) -> usize {
        self.multiplicity.iter().map(|&m| m as usize).sum()
    }

    /// All copies, ordered by edge id then slot.
    pub fn copies(&self) -> impl Iterator<Item = EdgeCopy> + '_ {
        self.base.edges().iter().flat_map(move |e| {
            (0..self.multiplicity[e.id]).map(move |slot| EdgeCopy {
                edge_id: e.id,
                slot,
            })
        })
    }

    /// Copies incident to `node`, ordered by (neighbor, edge id, slot).
    pub fn copies_at(&self, node: usize) -> Vec<(usize, EdgeCopy)> {
        let mut out: Vec<(usize, EdgeCopy)> = Vec::new();
        for &id in self.base.incident(node) {
            let neighbor = self.base.edge(id).opposite(node);
            for slot in 0..self.multiplicity[id] {
                out.push((neighbor, EdgeCopy { edge_id: id, slot }));
            }
        }
        out.sort_unstable_by_key(|&(neighbor, copy)| (neighbor, copy));
        out
    }

    /// Degree counting multiplicities.
    pub fn degree(&self, node: usize) -> usize {
        self.base
            .incident(node)
            .iter()
            .map(|&id| self.multiplicity[id] as usize)
            .sum()
    }

    /// Total length counting multiplicities.
    pub fn total_length(&self) -> f64 {
        self.base
            .edges()
            .iter()
            .map(|e| e.length * self.multiplicity[e.id] as f64)
            .sum()
    }

    /// True iff connected with all degrees even (an Eulerian cycle exists).
    pub fn is_eulerian(&self) -> bool {
        self.base.is_connected()
            && (0..self.base.node_count()).all(|v| self.degree(v) % 2 == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The four-node graph used throughout: unit spokes from node 0 and
    /// length-2 edges between nodes 1, 2, 3.
    pub(crate) fn spoke_triangle() -> Graph {
        Graph::build(
            4,
            &[
                (0, 1, 1.0),
                (0, 2, 1.0),
                (0, 3, 1.0),
                (1, 2, 2.0),
                (1, 3, 2.0),
                (2, 3, 2.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn build_single_edge() {
        let g = Graph::build(2, &[(0, 1, 1.0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.total_length(), 1.0);
    }

    #[test]
    fn build_assigns_ids_in_input_order() {
        let g = spoke_triangle();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.total_length(), 9.0);
        assert_eq!(g.edge(3).u, 1);
        assert_eq!(g.edge(3).v, 2);
    }

    #[test]
    fn build_rejects_duplicates_self_loops_and_bad_lengths() {
        assert!(matches!(
            Graph::build(3, &[(0, 1, 1.0), (0, 1, 2.0)]),
            Err(GraphError::DuplicateEdge { u: 0, v: 1 })
        ));
        assert!(matches!(
            Graph::build(3, &[(1, 0, 1.0), (0, 1, 2.0)]),
            Err(GraphError::DuplicateEdge { .. })
        ));
        assert!(matches!(
            Graph::build(2, &[(1, 1, 1.0)]),
            Err(GraphError::SelfLoop { node: 1 })
        ));
        assert!(matches!(
            Graph::build(2, &[(0, 1, 0.0)]),
            Err(GraphError::NonPositiveLength { .. })
        ));
        assert!(matches!(
            Graph::build(2, &[(0, 1, -2.0)]),
            Err(GraphError::NonPositiveLength { .. })
        ));
        assert!(matches!(
            Graph::build(2, &[(0, 2, 1.0)]),
            Err(GraphError::NodeOutOfRange { node: 2, .. })
        ));
    }

    #[test]
    fn connectivity() {
        let path = Graph::build(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert!(path.is_connected());
        let disjoint = Graph::build(4, &[(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert!(!disjoint.is_connected());
        assert!(spoke_triangle().is_connected());
        let isolated = Graph::build(3, &[(0, 1, 1.0)]).unwrap();
        assert!(!isolated.is_connected());
    }

    #[test]
    fn eulerian_check() {
        let triangle = Graph::build(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        assert!(triangle.is_eulerian());
        let path = Graph::build(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert!(!path.is_eulerian());
        // Node 1 has degree 3 here.
        let g = Graph::build(
            4,
            &[(0, 1, 1.0), (1, 3, 1.0), (3, 2, 1.0), (2, 1, 1.0), (3, 0, 1.0)],
        )
        .unwrap();
        assert_eq!(g.degree(1), 3);
        assert!(!g.is_eulerian());
    }

    #[test]
    fn total_length_counts_multiplicity() {
        let g = Graph::build(2, &[(0, 1, 1.0)]).unwrap();
        let mg = MultiGraph::with_duplicates(g, &[true]);
        assert_eq!(mg.total_length(), 2.0);
        assert_eq!(mg.copy_count(), 2);
    }

    #[test]
    fn odd_node_count_is_even() {
        let g = Graph::build(
            4,
            &[(0, 1, 1.0), (1, 3, 1.0), (3, 2, 1.0), (2, 1, 1.0), (3, 0, 1.0)],
        )
        .unwrap();
        assert_eq!(g.odd_nodes(), vec![1, 3]);
    }

    #[test]
    fn generation_is_deterministic_and_filtered() {
        let config = ErConfig::new(10, 0.2);
        let a = generate_er(&config, RngSeed(42)).unwrap();
        let b = generate_er(&config, RngSeed(42)).unwrap();
        assert_eq!(a.edge_count(), b.edge_count());
        for (ea, eb) in a.edges().iter().zip(b.edges()) {
            assert_eq!((ea.u, ea.v), (eb.u, eb.v));
            assert_eq!(ea.length.to_bits(), eb.length.to_bits());
        }
        assert!(a.is_connected());
        assert!(!a.is_eulerian());
        for e in a.edges() {
            assert!(e.length > 0.0 && e.length < 10.0);
        }
    }

    #[test]
    fn generation_rejects_eulerian_draws() {
        // At p close to 1, three-node draws are almost always triangles and
        // get rejected until a non-Eulerian graph shows up.
        let mut config = ErConfig::new(3, 0.999);
        let g = generate_er(&config, RngSeed(7)).unwrap();
        assert!(!g.is_eulerian());
        assert!(g.is_connected());
        // With a tiny budget the same requirement fails instead.
        config.max_attempts = 2;
        let err = generate_er(&config, RngSeed(7));
        assert!(matches!(
            err,
            Err(GraphError::GenerationBudgetExceeded { attempts: 2 })
        ));
    }

    #[test]
    fn generation_validates_parameters() {
        assert!(matches!(
            generate_er(&ErConfig::new(2, 0.5), RngSeed(1)),
            Err(GraphError::InvalidParameter(_))
        ));
        assert!(matches!(
            generate_er(&ErConfig::new(5, 1.0), RngSeed(1)),
            Err(GraphError::InvalidParameter(_))
        ));
        let mut config = ErConfig::new(5, 0.5);
        config.length_low = 3.0;
        config.length_high = 2.0;
        assert!(matches!(
            generate_er(&config, RngSeed(1)),
            Err(GraphError::InvalidParameter(_))
        ));
    }
}
