//! Throughput of the planners and the analytic evaluator across graph
//! sizes.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use patrol_bench::ensemble_graph;
use patrol_core::aoi::average_aoi;
use patrol_core::cpp::{cpp_augment, cpp_scheme, duplicate_all};
use patrol_core::euler::{hierholzer, RandomSelector};
use patrol_core::graph::RngSeed;
use patrol_core::heuristic::{heuristic_route, BaseScheme};

fn bench_planners(c: &mut Criterion) {
    let mut group = c.benchmark_group("planners");
    for &n in &[10usize, 20] {
        let graph = ensemble_graph(n, 0.3, 7);
        group.bench_with_input(BenchmarkId::new("hierholzer_dup", n), &graph, |b, g| {
            b.iter(|| hierholzer(&duplicate_all(black_box(g)), 0).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("rand_cpp", n), &graph, |b, g| {
            b.iter(|| cpp_scheme(black_box(g), 0, &mut RandomSelector::new(RngSeed(3))).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("heu_cpp", n), &graph, |b, g| {
            b.iter(|| heuristic_route(black_box(g), BaseScheme::Cpp, 0).unwrap())
        });
    }
    group.finish();
}

fn bench_evaluator(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluator");
    for &n in &[10usize, 20] {
        let graph = ensemble_graph(n, 0.3, 7);
        let route = heuristic_route(&graph, BaseScheme::Cpp, 0).unwrap();
        group.bench_with_input(
            BenchmarkId::new("average_aoi", n),
            &(&graph, &route),
            |b, (g, r)| b.iter(|| average_aoi(g, r).unwrap()),
        );
    }
    group.finish();
}

fn bench_augmentation(c: &mut Criterion) {
    let graph = ensemble_graph(20, 0.3, 11);
    c.bench_function("cpp_augment_n20", |b| {
        b.iter(|| cpp_augment(black_box(&graph)).unwrap())
    });
}

criterion_group!(benches, bench_planners, bench_evaluator, bench_augmentation);
criterion_main!(benches);
