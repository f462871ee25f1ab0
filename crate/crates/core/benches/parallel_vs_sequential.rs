use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qworkbench::asymptotics::expansion_pair;
use qworkbench::asymptotics::numeric::eval_pair_direct;
use qworkbench::exactnum::parse_rational;
use qworkbench::harness::registry::run_all;
use qworkbench::par::Exec;

fn registry(c: &mut Criterion) {
    let mut group = c.benchmark_group("registry");
    group.sample_size(10);
    for order in [150, 300] {
        for (name, exec) in [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)] {
            group.bench_with_input(BenchmarkId::new(name, order), &order, |b, &n| b.iter(|| run_all(n, exec)));
        }
    }
    group.finish();
}

fn numeric(c: &mut Criterion) {
    let a = parse_rational("1/5").unwrap();
    let x = parse_rational("0.01").unwrap();
    let mut group = c.benchmark_group("pair_direct_200_digits");
    group.sample_size(10);
    for (name, exec) in [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)] {
        group.bench_function(name, |b| b.iter(|| exec.run(|| eval_pair_direct(&a, &x, 200).unwrap())));
    }
    group.finish();
    c.bench_function("pair_expansion_exact_40", |b| b.iter(|| expansion_pair(&a, 40).unwrap()));
}

criterion_group!(benches, registry, numeric);
criterion_main!(benches);
