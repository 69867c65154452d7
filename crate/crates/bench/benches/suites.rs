use criterion::{criterion_group, criterion_main, Criterion};

use dancing_core::verify::{run_suite, Suite};

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for suite in Suite::ALL {
        group.bench_function(suite.name(), |b| b.iter(|| run_suite(suite, 42, 20, 1e-8)));
    }
    group.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
