//! Turning non-Eulerian graphs into Eulerian multigraphs: full edge
//! duplication, and minimum-length augmentation via a perfect matching of
//! the odd-degree nodes over shortest paths.

use crate::aoi::Route;
use crate::error::{CppError, PlanError};
use crate::euler::{fleury, EdgeSelector};
use crate::graph::{Graph, MultiGraph};

/// Largest odd-node set the exact matching solver accepts.
pub const MATCHING_NODE_CAP: usize = 20;

/// Duplicates every edge. The result is always Eulerian for connected
/// input.
pub fn duplicate_all(graph: &Graph) -> MultiGraph {
    let dup = vec![true; graph.edge_count()];
    MultiGraph::with_duplicates(graph.clone(), &dup)
}

/// All-pairs shortest distances with one reconstructible path per pair.
///
/// Among equal-length paths the table prefers fewer hops, then the
/// lexicographically smallest node sequence, so augmentation is
/// deterministic for a fixed input graph.
#[derive(Debug, Clone)]
pub struct ShortestPathTable {
    node_count: usize,
    dist: Vec<f64>,
    paths: Vec<Vec<usize>>,
}

impl ShortestPathTable {
    pub fn dist(&self, from: usize, to: usize) -> f64 {
        self.dist[from * self.node_count + to]
    }

    /// Node sequence of the chosen shortest path, from `from` to `to`
    /// inclusive.
    pub fn path(&self, from: usize, to: usize) -> &[usize] {
        &self.paths[from * self.node_count + to]
    }
}

/// Floyd-Warshall over the connected input graph.
pub fn apsp(graph: &Graph) -> ShortestPathTable {
    let n = graph.node_count();
    let mut dist = vec![f64::INFINITY; n * n];
    let mut paths = vec![Vec::new(); n * n];
    for v in 0..n {
        dist[v * n + v] = 0.0;
        paths[v * n + v] = vec![v];
    }
    for e in graph.edges() {
        // Simple graph: at most one edge per pair.
        dist[e.u * n + e.v] = e.length;
        dist[e.v * n + e.u] = e.length;
        paths[e.u * n + e.v] = vec![e.u, e.v];
        paths[e.v * n + e.u] = vec![e.v, e.u];
    }
    for k in 0..n {
        for i in 0..n {
            if dist[i * n + k].is_infinite() {
                continue;
            }
            for j in 0..n {
                let through = dist[i * n + k] + dist[k * n + j];
                if through.is_infinite() {
                    continue;
                }
                let current = dist[i * n + j];
                let better = if through < current {
                    true
                } else if through == current {
                    let cand_hops = paths[i * n + k].len() + paths[k * n + j].len() - 2;
                    let cur_hops = paths[i * n + j].len().saturating_sub(1);
                    if cand_hops < cur_hops {
                        true
                    } else if cand_hops == cur_hops {
                        let mut cand: Vec<usize> = paths[i * n + k].clone();
                        cand.extend_from_slice(&paths[k * n + j][1..]);
                        cand < paths[i * n + j]
                    } else {
                        false
                    }
                } else {
                    false
                };
                if better {
                    let mut path = paths[i * n + k].clone();
                    path.extend_from_slice(&paths[k * n + j][1..]);
                    dist[i * n + j] = through;
                    paths[i * n + j] = path;
                }
            }
        }
    }
    ShortestPathTable {
        node_count: n,
        dist,
        paths,
    }
}

/// A perfect matching of the odd-degree nodes.
#[derive(Debug, Clone)]
pub struct Matching {
    /// Matched node pairs, each `(a, b)` with `a < b`.
    pub pairs: Vec<(usize, usize)>,
    /// Sum of shortest distances over the pairs.
    pub total_cost: f64,
}

/// Exact minimum-cost perfect matching over the given nodes, by dynamic
/// programming over subsets. Capped at [`MATCHING_NODE_CAP`] nodes.
pub fn min_weight_perfect_matching(
    nodes: &[usize],
    table: &ShortestPathTable,
) -> Result<Matching, CppError> {
    let k = nodes.len();
    assert!(k % 2 == 0, "odd-degree nodes always come in pairs");
    if k > MATCHING_NODE_CAP {
        return Err(CppError::TooManyOddVertices {
            count: k,
            cap: MATCHING_NODE_CAP,
        });
    }
    if k == 0 {
        return Ok(Matching {
            pairs: Vec::new(),
            total_cost: 0.0,
        });
    }
    let full = 1usize << k;
    let mut cost = vec![f64::INFINITY; full];
    let mut partner = vec![usize::MAX; full];
    cost[0] = 0.0;
    for mask in 1..full {
        if (mask as u32).count_ones() % 2 == 1 {
            continue;
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << first);
        let mut best = f64::INFINITY;
        let mut best_j = usize::MAX;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let sub = rest & !(1 << j);
            let candidate = cost[sub] + table.dist(nodes[first], nodes[j]);
            if candidate < best {
                best = candidate;
                best_j = j;
            }
        }
        cost[mask] = best;
        partner[mask] = best_j;
    }
    let mut pairs = Vec::with_capacity(k / 2);
    let mut mask = full - 1;
    while mask != 0 {
        let first = mask.trailing_zeros() as usize;
        let j = partner[mask];
        pairs.push((nodes[first], nodes[j]));
        mask &= !(1 << first);
        mask &= !(1 << j);
    }
    Ok(Matching {
        pairs,
        total_cost: cost[full - 1],
    })
}

/// Builds the minimum-length Eulerian augmentation: match the odd-degree
/// nodes at shortest-path distance and duplicate the edges along each
/// matched path. Edges claimed by two matched paths cancel pairwise, so
/// multiplicity never exceeds 2 and degree parity is preserved.
pub fn cpp_augment(graph: &Graph) -> Result<MultiGraph, CppError> {
    let odd = graph.odd_nodes();
    if odd.is_empty() {
        return Ok(MultiGraph::from_graph(graph.clone()));
    }
    let table = apsp(graph);
    let matching = min_weight_perfect_matching(&odd, &table)?;
    let mut duplicated = vec![false; graph.edge_count()];
    for &(a, b) in &matching.pairs {
        let path = table.path(a, b);
        for pair in path.windows(2) {
            let edge = graph
                .edge_between(pair[0], pair[1])
                .expect("shortest paths follow graph edges");
            duplicated[edge.id] = !duplicated[edge.id];
        }
    }
    Ok(MultiGraph::with_duplicates(graph.clone(), &duplicated))
}

/// Duplicated-edge scheme: an Eulerian cycle on the fully doubled
/// multigraph, with `selector` steering the walk. Every edge ends up
/// traversed exactly twice.
pub fn dup_scheme(
    graph: &Graph,
    start: usize,
    selector: &mut dyn EdgeSelector,
) -> Result<Route, PlanError> {
    Ok(fleury(&duplicate_all(graph), start, selector)?)
}

/// Shortest-augmentation scheme: an Eulerian cycle on the matched
/// multigraph. The route length is the minimum over all routes that cover
/// each edge at least once and at most twice.
pub fn cpp_scheme(
    graph: &Graph,
    start: usize,
    selector: &mut dyn EdgeSelector,
) -> Result<Route, PlanError> {
    Ok(fleury(&cpp_augment(graph)?, start, selector)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aoi::{average_aoi, classify_route, patrol_lower_bound};
    use crate::euler::RandomSelector;
    use crate::graph::RngSeed;

    fn unit_path() -> Graph {
        Graph::build(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    fn bridge_square() -> Graph {
        Graph::build(
            4,
            &[(0, 1, 1.0), (1, 3, 1.0), (3, 2, 1.0), (2, 1, 1.0), (3, 0, 1.0)],
        )
        .unwrap()
    }

    fn spoke_triangle() -> Graph {
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

    fn wheel(a: f64) -> Graph {
        Graph::build(
            6,
            &[
                (0, 1, 1.0),
                (0, 2, 1.0),
                (0, 3, 1.0),
                (0, 4, 1.0),
                (0, 5, 1.0),
                (1, 2, a),
                (2, 3, a),
                (3, 4, a),
                (4, 5, a),
                (5, 1, a),
            ],
        )
        .unwrap()
    }

    #[test]
    fn duplication_always_yields_eulerian_multigraphs() {
        let mg = duplicate_all(&Graph::build(2, &[(0, 1, 1.0)]).unwrap());
        assert!(mg.is_eulerian());
        let mg = duplicate_all(&bridge_square());
        assert_eq!(mg.copy_count(), 10);
        assert!(mg.is_eulerian());
        let mg = duplicate_all(&spoke_triangle());
        assert_eq!(mg.total_length(), 18.0);
    }

    #[test]
    fn shortest_paths_with_tie_breaks() {
        let t = apsp(&unit_path());
        assert_eq!(t.dist(0, 2), 2.0);
        assert_eq!(t.path(0, 2), &[0, 1, 2]);

        // dist(1,2) ties between the direct edge (one hop) and the detour
        // through 0; fewer hops wins.
        let t = apsp(&spoke_triangle());
        assert_eq!(t.dist(1, 2), 2.0);
        assert_eq!(t.path(1, 2), &[1, 2]);

        // On the wheel the detour through the hub is strictly shorter.
        let t = apsp(&wheel(2.01));
        assert_eq!(t.dist(1, 2), 2.0);
        assert_eq!(t.path(1, 2), &[1, 0, 2]);
    }

    #[test]
    fn matching_pairs_singletons() {
        let g = unit_path();
        let t = apsp(&g);
        let m = min_weight_perfect_matching(&g.odd_nodes(), &t).unwrap();
        assert_eq!(m.pairs, vec![(0, 2)]);
        assert_eq!(m.total_cost, 2.0);

        let g = bridge_square();
        assert_eq!(g.odd_nodes(), vec![1, 3]);
        let t = apsp(&g);
        let m = min_weight_perfect_matching(&g.odd_nodes(), &t).unwrap();
        assert_eq!(m.pairs, vec![(1, 3)]);
        assert_eq!(m.total_cost, 1.0);
    }

    #[test]
    fn matching_matches_brute_force_on_four_nodes() {
        // Complete graph on four nodes: every corner has odd degree.
        let g = Graph::build(
            4,
            &[
                (0, 1, 1.0),
                (1, 2, 2.0),
                (2, 3, 1.5),
                (3, 0, 2.5),
                (0, 2, 1.2),
                (1, 3, 0.7),
            ],
        )
        .unwrap();
        let odd = g.odd_nodes();
        assert_eq!(odd.len(), 4);
        let t = apsp(&g);
        let m = min_weight_perfect_matching(&odd, &t).unwrap();
        let pairings = [
            [(odd[0], odd[1]), (odd[2], odd[3])],
            [(odd[0], odd[2]), (odd[1], odd[3])],
            [(odd[0], odd[3]), (odd[1], odd[2])],
        ];
        let brute = pairings
            .iter()
            .map(|p| p.iter().map(|&(a, b)| t.dist(a, b)).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        assert!((m.total_cost - brute).abs() < 1e-12);
    }

    #[test]
    fn augmentation_examples() {
        let mg = cpp_augment(&unit_path()).unwrap();
        assert!(mg.is_eulerian());
        assert_eq!(mg.total_length(), 4.0);
        assert_eq!(mg.duplicated_edge_ids().len(), 2);

        let g = bridge_square();
        let mg = cpp_augment(&g).unwrap();
        assert!(mg.is_eulerian());
        assert_eq!(mg.total_length(), 6.0);
        let dup = mg.duplicated_edge_ids();
        assert_eq!(dup.len(), 1);
        let e = g.edge(dup[0]);
        assert_eq!((e.u, e.v), (1, 3));

        let mg = cpp_augment(&wheel(2.01)).unwrap();
        assert!(mg.is_eulerian());
        assert!((mg.total_length() - 20.05).abs() < 1e-9);

        // Eulerian input: nothing to duplicate.
        let tri = Graph::build(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let mg = cpp_augment(&tri).unwrap();
        assert!(mg.duplicated_edge_ids().is_empty());
    }

    #[test]
    fn augmentation_never_beats_duplication_in_length() {
        for seed in 0..20u64 {
            let g = crate::graph::generate_er(
                &crate::graph::ErConfig::new(9, 0.3),
                RngSeed(seed),
            )
            .unwrap();
            let cpp = cpp_augment(&g).unwrap();
            let dup = duplicate_all(&g);
            assert!(cpp.total_length() <= dup.total_length() + 1e-12);
            assert!(cpp.is_eulerian());
        }
    }

    #[test]
    fn dup_scheme_covers_everything_twice() {
        let g = Graph::build(2, &[(0, 1, 1.0)]).unwrap();
        let r = dup_scheme(&g, 0, &mut RandomSelector::new(RngSeed(1))).unwrap();
        assert_eq!(r.nodes(), &[0, 1, 0]);
        let aoi = average_aoi(&g, &r).unwrap().average_aoi;
        assert!((aoi - 2.0 / 3.0).abs() < 1e-12);
        assert!(aoi / patrol_lower_bound(&g) <= 2.0);

        let g = spoke_triangle();
        let r = dup_scheme(&g, 0, &mut RandomSelector::new(RngSeed(2))).unwrap();
        let coverage = classify_route(&g, &r).unwrap();
        assert!(coverage.once.is_empty());
        let aoi = average_aoi(&g, &r).unwrap().average_aoi;
        assert!(aoi <= g.total_length() * g.total_length() + 1e-9);
    }

    #[test]
    fn cpp_scheme_route_length_is_minimal() {
        let g = unit_path();
        let r = cpp_scheme(&g, 0, &mut RandomSelector::new(RngSeed(1))).unwrap();
        assert_eq!(r.nodes(), &[0, 1, 2, 1, 0]);
        let report = average_aoi(&g, &r).unwrap();
        assert!((report.average_aoi - 8.0 / 3.0).abs() < 1e-12);

        let g = wheel(2.01);
        let r = cpp_scheme(&g, 0, &mut RandomSelector::new(RngSeed(5))).unwrap();
        let report = average_aoi(&g, &r).unwrap();
        assert!((report.route_length - 20.05).abs() < 1e-9);

        // Eulerian input gets the bare cycle.
        let tri = Graph::build(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let r = cpp_scheme(&tri, 0, &mut RandomSelector::new(RngSeed(1))).unwrap();
        let aoi = average_aoi(&tri, &r).unwrap().average_aoi;
        assert!((aoi - patrol_lower_bound(&tri)).abs() < 1e-12);
    }
}
