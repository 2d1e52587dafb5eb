use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use paircomp::simulation::run;
use paircomp::SimulationConfig;
use std::hint::black_box;

fn bench_run(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulation");
    group.sample_size(10);
    for n in [4, 5, 6] {
        let config = SimulationConfig::new(n, 0.15, 200, 7);
        group.bench_with_input(
            BenchmarkId::new("200-replications", n),
            &config,
            |b, config| b.iter(|| run(black_box(config)).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_run);
criterion_main!(benches);
