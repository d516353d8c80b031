use criterion::{black_box, criterion_group, criterion_main, Criterion};
use tbframe::calculus::FrameJet;
use tbframe::curvature::curvature_direct;
use tbframe::wtensor::w_via_commutator;
use tbframe::{run_suite, ConnKind, Suite, Tolerances};
use tbframe_bench::fixtures;

fn pointwise(c: &mut Criterion) {
    for (s, p) in fixtures() {
        let mut g = c.benchmark_group(s.name.clone());
        g.bench_function("frame_jet", |b| b.iter(|| FrameJet::new(black_box(&s), black_box(&p))));
        g.bench_function("canonical_connection", |b| b.iter(|| ConnKind::Canonical.coefficients(&s, black_box(&p))));
        for kind in [ConnKind::Canonical, ConnKind::Natural] {
            g.bench_function(format!("curvature.{}", kind.name()), |b| {
                b.iter(|| curvature_direct(kind, &s, black_box(&p)).unwrap())
            });
        }
        g.bench_function("wtensor.dual", |b| b.iter(|| w_via_commutator(ConnKind::Dual, &s, black_box(&p)).unwrap()));
        g.finish();
    }
}

fn suites(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut g = c.benchmark_group("suite_all");
    g.sample_size(10);
    for (s, p) in fixtures() {
        let points = vec![p];
        g.bench_function(s.name.clone(), |b| b.iter(|| run_suite(&s, Suite::All, black_box(&points), &tol).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, pointwise, suites);
criterion_main!(benches);
