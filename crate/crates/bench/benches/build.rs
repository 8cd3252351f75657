use blocktree::corpus::synth::{repetitive, SynthConfig};
use blocktree::{build_parallel, build_sequential, BuildConfig, Text, TreeParams};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

fn input() -> Text {
    let cfg = SynthConfig {
        total_len: 4 << 20,
        ..SynthConfig::default()
    };
    Text::new(repetitive(&cfg)).unwrap()
}

fn build(c: &mut Criterion) {
    let text = input();
    let params = TreeParams::defaults_for(&text);
    let mut group = c.benchmark_group("build");
    group.sample_size(10);
    group.throughput(Throughput::Bytes(text.len() as u64));
    group.bench_function("sequential", |b| {
        b.iter(|| build_sequential(&text, &params, false).unwrap())
    });
    group.bench_function("sequential_pruned", |b| {
        b.iter(|| build_sequential(&text, &params, true).unwrap())
    });
    for workers in [1usize, 2, 4] {
        let config = BuildConfig::with_workers(workers);
        group.bench_with_input(
            BenchmarkId::new("parallel", workers),
            &config,
            |b, config| b.iter(|| build_parallel(&text, &params, config).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, build);
criterion_main!(benches);
