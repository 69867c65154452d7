use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use dancing_bench::{conic_pair, connection, POINT4};
use dancing_core::conic::{dancing_conics_oracle, infinitesimal_quadric};
use dancing_core::connection::{build_family_metric, maple_identity};
use dancing_core::curvature::{curvature, DancingMetric};
use dancing_core::ellipse::{null_oracle_sigma, path_ode_integrate, sextic_sigma};
use dancing_core::projective::conic_intersect;
use dancing_core::{Conic3, HomVec3};

fn curvature_benches(c: &mut Criterion) {
    c.bench_function("curvature/dancing", |b| b.iter(|| curvature(&DancingMetric, black_box(POINT4))));
    let family = build_family_metric(connection());
    c.bench_function("curvature/family", |b| b.iter(|| curvature(&family, black_box(POINT4))));
    let conn = connection();
    c.bench_function("identity/random-connection", |b| b.iter(|| maple_identity(&conn, black_box(POINT4))));
}

fn sextic_benches(c: &mut Criterion) {
    let v = [0.3, -0.7, 0.2, 0.9];
    c.bench_function("sextic/sigma", |b| b.iter(|| sextic_sigma(black_box(2.0), black_box(v))));
    c.bench_function("sextic/oracle", |b| b.iter(|| null_oracle_sigma(black_box(2.0), black_box(v))));
    c.bench_function("ode/unit-circle", |b| b.iter(|| path_ode_integrate(0.0, 1.0, 0.0, black_box(0.5), 1e-3)));
}

fn conic_benches(c: &mut Criterion) {
    let pair = conic_pair();
    let cb = Conic3::diag(2.0, 1.0, -1.0);
    let b = HomVec3::new(0.3, -0.2, 1.0);
    c.bench_function("conic/intersect", |bn| bn.iter(|| conic_intersect(black_box(&pair.conic), black_box(&cb))));
    c.bench_function("conic/oracle", |bn| {
        bn.iter(|| dancing_conics_oracle(black_box(&pair.a), &pair.conic, black_box(&b), &cb))
    });
    c.bench_function("conic/quadric", |bn| bn.iter(|| infinitesimal_quadric(black_box(&pair.a), &pair.conic)));
}

criterion_group!(benches, curvature_benches, sextic_benches, conic_benches);
criterion_main!(benches);
