use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rbr_bench::seeded_graph;
use rbr_core::{fixtures, make_guess_average_game, make_sequence_game, rational_solution};

fn bench_guess_game(c: &mut Criterion) {
    let mut group = c.benchmark_group("rational_solution");
    for &max in &[10u32, 30] {
        let game = make_guess_average_game(3, max).unwrap();
        let graph = fixtures::uncommon_belief_doxastic();
        group.bench_with_input(BenchmarkId::new("guess23_doxastic", max), &game, |b, game| {
            b.iter(|| rational_solution(&graph, game, false).unwrap())
        });
    }
    for &k in &[2usize, 4] {
        let graph = seeded_graph(30, 3, 11);
        let game = make_sequence_game(graph.agent_names(), k).unwrap();
        group.bench_with_input(BenchmarkId::new("sequence_game_30_nodes", k), &game, |b, game| {
            b.iter(|| rational_solution(&graph, game, false).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_guess_game);
criterion_main!(benches);
