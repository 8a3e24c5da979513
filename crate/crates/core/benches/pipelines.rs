use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;
use sedgeo_core::cayley_dickson::standard_zero_divisors;
use sedgeo_core::homogeneous::{gr_metric, origin_scan, sectional_polynomial};

fn pools(c: &mut Criterion) {
    let pairs = standard_zero_divisors();
    let metric = gr_metric();
    let threads = [1, rayon::current_num_threads()];
    let mut group = c.benchmark_group("pipelines");
    group.sample_size(10);
    for n in threads {
        let pool = ThreadPoolBuilder::new().num_threads(n).build().unwrap();
        group.bench_with_input(BenchmarkId::new("zero_divisors", n), &n, |b, _| {
            b.iter(|| pool.install(standard_zero_divisors))
        });
        group.bench_with_input(BenchmarkId::new("origin_scan", n), &n, |b, _| {
            b.iter(|| pool.install(|| origin_scan(&pairs).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("sectional_polynomial", n), &n, |b, _| {
            b.iter(|| pool.install(|| sectional_polynomial(&metric).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, pools);
criterion_main!(benches);
