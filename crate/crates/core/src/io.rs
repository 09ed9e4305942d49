//! File formats: JSON graphs and comma-separated route strings.

use serde::Deserialize;

use crate::aoi::Route;
use crate::error::IoError;
use crate::graph::Graph;

#[derive(Deserialize)]
struct GraphFile {
    nodes: usize,
    edges: Vec<(usize, usize, f64)>,
}

/// Parses `{"nodes": N, "edges": [[u, v, length], ...]}`. Edge ids are
/// assigned by array order.
pub fn graph_from_json(text: &str) -> Result<Graph, IoError> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| IoError::MalformedGraph(e.to_string()))?;
    Ok(Graph::build(file.nodes, &file.edges)?)
}

/// Serializes a graph to the JSON edge-list format. Lengths are written
/// with 17 significant digits so they round-trip bit-exactly.
pub fn graph_to_json(graph: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{{\"nodes\": {}, \"edges\": [", graph.node_count()));
    for (i, e) in graph.edges().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&format!("[{}, {}, {:.16e}]", e.u, e.v, e.length));
    }
    out.push_str("]}");
    out
}

/// Parses a route given as comma-separated node ids, e.g. `0,1,2,0`.
pub fn route_from_str(text: &str) -> Result<Route, IoError> {
    let nodes: Result<Vec<usize>, _> = text
        .split(',')
        .map(|part| part.trim().parse::<usize>())
        .collect();
    let nodes = nodes.map_err(|e| IoError::MalformedRoute(e.to_string()))?;
    Route::new(nodes).map_err(|e| IoError::MalformedRoute(e.to_string()))
}

/// Formats a route as comma-separated node ids.
pub fn route_to_string(route: &Route) -> String {
    route
        .nodes()
        .iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trips_bit_exactly() {
        let g = Graph::build(3, &[(0, 1, 0.1 + 0.2), (1, 2, 10.0 / 3.0)]).unwrap();
        let text = graph_to_json(&g);
        let back = graph_from_json(&text).unwrap();
        assert_eq!(back.node_count(), 3);
        for (a, b) in g.edges().iter().zip(back.edges()) {
            assert_eq!((a.u, a.v), (b.u, b.v));
            assert_eq!(a.length.to_bits(), b.length.to_bits());
        }
    }

    #[test]
    fn graph_json_reports_problems() {
        assert!(matches!(
            graph_from_json("{\"nodes\": 2}"),
            Err(IoError::MalformedGraph(_))
        ));
        assert!(matches!(
            graph_from_json("{\"nodes\": 2, \"edges\": [[0, 0, 1.0]]}"),
            Err(IoError::Graph(_))
        ));
    }

    #[test]
    fn route_strings() {
        let r = route_from_str("0, 1,2,0").unwrap();
        assert_eq!(r.nodes(), &[0, 1, 2, 0]);
        assert_eq!(route_to_string(&r), "0,1,2,0");
        assert!(route_from_str("0,1,x").is_err());
        assert!(route_from_str("0,1,2").is_err());
    }
}
