use std::time::Instant;

use patrol_core::aoi::{average_aoi, Route};
use patrol_core::cpp::cpp_augment;
use patrol_core::euler::enumerate_eulerian_cycles;
use patrol_core::graph::Graph;
use patrol_core::oracle::optimal_route;

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

fn all_small_graphs() -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 2usize..=5 {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        let m = pairs.len();
        for mask in 1usize..(1 << m) {
            if (mask.count_ones() as usize) > 7 {
                continue;
            }
            let edges: Vec<(usize, usize, f64)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &(u, v))| (u, v, 1.0))
                .collect();
            let g = Graph::build(n, &edges).unwrap();
            if g.is_connected() && !g.is_eulerian() {
                out.push(g);
            }
        }
    }
    out
}

fn main() {
    let started = Instant::now();
    let graphs = all_small_graphs();
    println!("{} qualifying graphs", graphs.len());
    let mut total_states = 0u64;
    let mut total_routes = 0u64;
    let mut worst = (0u64, 0usize);
    for (i, g) in graphs.iter().enumerate() {
        let t = Instant::now();
        let best = optimal_route(g, 2_000_000_000).unwrap();
        total_routes += best.routes_evaluated;
        let el = t.elapsed().as_millis();
        if el as u64 > worst.0 {
            worst = (el as u64, i);
        }
        total_states += best.routes_evaluated;
        if el > 1000 {
            println!(
                "graph {i}: n={} m={} routes={} took {el} ms",
                g.node_count(),
                g.edge_count(),
                best.routes_evaluated
            );
        }
    }
    println!(
        "oracle sweep: {:?} total, {} routes evaluated, worst {} ms (graph {})",
        started.elapsed(),
        total_routes,
        worst.0,
        worst.1
    );
    let _ = total_states;

    // Appendix-D-style check: enumerate every cycle of the augmented wheel.
    let t = Instant::now();
    let g = wheel(2.01);
    let mg = cpp_augment(&g).unwrap();
    println!("wheel augmented copies: {}", mg.copy_count());
    let e = enumerate_eulerian_cycles(&mg, 0, usize::MAX, 5_000_000_000).unwrap();
    println!(
        "wheel F3 enumeration: sequences {}, routes {}, states {}, {:?}",
        e.sequence_count,
        e.routes.len(),
        e.states,
        t.elapsed()
    );
    let mut best = f64::INFINITY;
    for r in &e.routes {
        let aoi = average_aoi(&g, r).unwrap().average_aoi;
        if aoi < best {
            best = aoi;
        }
    }
    let paper_route = Route::new(vec![0, 1, 2, 0, 3, 4, 0, 5, 1, 2, 3, 4, 5, 0]).unwrap();
    let witness = average_aoi(&g, &paper_route).unwrap().average_aoi;
    println!("best F3 {best}, witness optimum candidate {witness}");
    println!("total {:?}", started.elapsed());
}
