use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pbwdem_bench::fixtures;
use pbwdem_core::exactlat::hnf_dense;
use pbwdem_core::isocheck::{annihilator_ideal, ffl_ideal, verify_main_theorem, Identification};
use pbwdem_core::pbwdem::{associated_graded, pbw_filtration, weyl_module};
use pbwdem_core::{Budget, Side};

fn bench_hnf(c: &mut Criterion) {
    let rows: Vec<Vec<i64>> = (0..24).map(|i| (0..24).map(|j| ((i * 7 + j * 13) % 11) as i64 - 5).collect()).collect();
    c.bench_function("hnf_dense_24x24", |b| b.iter(|| hnf_dense(24, &rows).unwrap()));
}

fn bench_modules(c: &mut Criterion) {
    let budget = Budget::unlimited();
    let mut group = c.benchmark_group("weyl_and_graded");
    for f in fixtures() {
        group.bench_with_input(BenchmarkId::new("weyl_module", f.name), &f, |b, f| {
            b.iter(|| weyl_module(&f.datum, &f.lambda, &budget).unwrap())
        });
        let v = weyl_module(&f.datum, &f.lambda, &budget).unwrap();
        group.bench_with_input(BenchmarkId::new("associated_graded", f.name), &v, |b, v| {
            b.iter(|| associated_graded(&pbw_filtration(v, Side::Lower, &budget).unwrap()).unwrap())
        });
    }
    group.finish();
}

fn bench_ideals(c: &mut Criterion) {
    let budget = Budget::unlimited();
    let mut group = c.benchmark_group("ideals");
    for f in fixtures() {
        let v = weyl_module(&f.datum, &f.lambda, &budget).unwrap();
        let g = associated_graded(&pbw_filtration(&v, Side::Lower, &budget).unwrap()).unwrap();
        let top = g.top_degree() as u32 + 1;
        group.bench_with_input(BenchmarkId::new("annihilator", f.name), &g, |b, g| {
            b.iter(|| annihilator_ideal(&f.datum, g, top, &budget).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("ffl", f.name), &f, |b, f| {
            b.iter(|| ffl_ideal(&f.datum, &f.lambda, top, &budget).unwrap())
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let budget = Budget::unlimited();
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for f in fixtures() {
        group.bench_with_input(BenchmarkId::new(format!("{:?}", Identification::Dual), f.name), &f, |b, f| {
            b.iter(|| verify_main_theorem(&f.datum, &f.lambda, &budget).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_hnf, bench_modules, bench_ideals, bench_verify);
criterion_main!(benches);
