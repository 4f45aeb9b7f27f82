use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use k3glue::{build_certificate, plan, verify_with, ConstructionCertificate, Execution};

fn cert(k: i64) -> ConstructionCertificate {
    build_certificate(&plan(k, None, None).unwrap()).unwrap()
}

fn bench_verify(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    g.sample_size(20);
    for k in [50, 200] {
        let cert = cert(k);
        for exec in [Execution::Sequential, Execution::Parallel] {
            g.bench_with_input(BenchmarkId::new(format!("{exec:?}"), k), &cert, |b, cert| {
                b.iter(|| verify_with(black_box(cert), exec).unwrap())
            });
        }
    }
    g.finish();
}

fn bench_sweep(c: &mut Criterion) {
    let certs: Vec<_> = (5..=60).map(cert).collect();
    let mut g = c.benchmark_group("sweep_5_to_60");
    g.sample_size(10);
    for exec in [Execution::Sequential, Execution::Parallel] {
        g.bench_function(format!("{exec:?}"), |b| {
            b.iter(|| exec.map(&certs, |c| verify_with(c, Execution::Sequential).unwrap().passed))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_verify, bench_sweep);
criterion_main!(benches);
