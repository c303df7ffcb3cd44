use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rbr_bench::seeded_graph;
use rbr_core::{finest_partition, minimise};

fn bench_minimise(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimise");
    group.sample_size(10);
    for &nodes in &[100usize, 500, 2000] {
        let graph = seeded_graph(nodes, 10, 7);
        group.bench_with_input(BenchmarkId::new("random_10_agents", nodes), &graph, |b, g| {
            b.iter(|| minimise(g))
        });
        group.bench_with_input(BenchmarkId::new("finest_partition", nodes), &graph, |b, g| {
            b.iter(|| finest_partition(g))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_minimise);
criterion_main!(benches);
