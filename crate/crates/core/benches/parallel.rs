use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sepkit::alg::{splitting_tower, StructureAlgebra};
use sepkit::exact::Field;
use sepkit::grp::PermGroup;
use sepkit::io::corpus;
use sepkit::par::ExecMode;
use sepkit::permalg::run_batch;
use sepkit::Config;

fn modes() -> [(&'static str, ExecMode); 2] {
    [
        ("sequential", ExecMode::Sequential),
        ("parallel", ExecMode::Parallel),
    ]
}

fn batch(c: &mut Criterion) {
    let entries: Vec<(PermGroup, u64)> = corpus::batch_entries()
        .into_iter()
        .map(|(n, p)| (corpus::group(&n).unwrap(), p))
        .collect();
    let mut group = c.benchmark_group("run_batch");
    group.sample_size(10);
    for (name, mode) in modes() {
        let cfg = Config::default().with_exec(mode);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run_batch(&entries, &cfg).unwrap())
        });
    }
    group.finish();
}

fn tower(c: &mut Criterion) {
    let q = Field::rationals();
    let a = StructureAlgebra::split(&q, 6);
    let f16 = corpus::algebra("f16_over_f2").unwrap().without_action();
    let mut group = c.benchmark_group("splitting_tower");
    group.sample_size(10);
    for (name, mode) in modes() {
        let cfg = Config::default().with_exec(mode);
        group.bench_function(BenchmarkId::new("Q^6", name), |b| {
            b.iter(|| splitting_tower(&a, None, &cfg).unwrap())
        });
        group.bench_function(BenchmarkId::new("F16/F2", name), |b| {
            b.iter(|| splitting_tower(&f16, None, &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, batch, tower);
criterion_main!(benches);
