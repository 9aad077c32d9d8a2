use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lauricella::{axiom_suite, gamma_table, hierarchy_generate, kodama_konopelchenko, Jet1, Rational};
use lauricella_bench::{point, staircase};

fn tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma_table");
    for m in [2, 3, 4] {
        let config = staircase(m);
        let p = point(&config);
        group.bench_with_input(BenchmarkId::new("values", config.dim()), &p, |b, p| {
            b.iter(|| gamma_table::<Rational>(&config, p).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("jets", config.dim()), &p, |b, p| {
            b.iter(|| gamma_table::<Jet1>(&config, p).unwrap())
        });
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("axiom_suite");
    group.sample_size(10);
    for m in [2, 3] {
        let config = staircase(m);
        let p = point(&config);
        group.bench_with_input(BenchmarkId::from_parameter(config.dim()), &p, |b, p| {
            b.iter(|| axiom_suite(&config, p).unwrap())
        });
    }
    group.finish();
}

fn hierarchy(c: &mut Criterion) {
    let mut group = c.benchmark_group("hierarchy");
    group.sample_size(10);
    for n in [3, 5] {
        let (l, a0) = kodama_konopelchenko(n).unwrap();
        group.bench_function(BenchmarkId::new("kodama", n), |b| b.iter(|| hierarchy_generate(&l, &a0, 3).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, tables, suites, hierarchy);
criterion_main!(benches);
