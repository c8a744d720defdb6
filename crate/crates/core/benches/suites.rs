use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pcm_bounds::axioms::axiom_suite;
use pcm_bounds::boundary::search_violation;
use pcm_bounds::generate::random_pcm;
use pcm_bounds::{sweep_pair, BoundaryProperty, Execution, IndexKind, SearchConfig};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

// No violation exists here, so every trial plus the refinement pass runs.
fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search_ci_sub");
    group.sample_size(10);
    for (name, exec) in MODES {
        let cfg = SearchConfig {
            exec,
            ..SearchConfig::with_trials(2000, 7)
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| search_violation(IndexKind::Ci, BoundaryProperty::StronglyUpperBounded, &cfg).unwrap())
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let a = random_pcm(8, 9.0, 1).unwrap();
    let b = random_pcm(8, 9.0, 2).unwrap();
    let mut group = c.benchmark_group("sweep_ci_n8");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |bch| {
            bch.iter(|| sweep_pair(&a, &b, IndexKind::Ci, 1000, exec).unwrap())
        });
    }
    group.finish();
}

fn axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("axioms_gci");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| axiom_suite(IndexKind::Gci, 200, 3, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, search, sweep, axioms);
criterion_main!(benches);
