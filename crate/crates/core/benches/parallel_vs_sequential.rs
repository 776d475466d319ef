use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use endoscopy_core::centralizers::{weyl_data_with, ClassicalFactor, GroupProduct};
use endoscopy_core::multiplicity::{ie_sweep, SigmaSolver};
use endoscopy_core::par::Mode;
use endoscopy_core::Settings;

fn modes() -> Vec<(&'static str, Mode)> {
    vec![("sequential", Mode::Sequential), ("parallel", Mode::Parallel)]
}

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("ie_sweep_rank3");
    group.sample_size(10);
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| {
                let solver = SigmaSolver::new(Settings::default());
                ie_sweep(&solver, 3, mode).unwrap().len()
            })
        });
    }
    group.finish();
}

fn weyl(c: &mut Criterion) {
    let g = GroupProduct::new(vec![ClassicalFactor::o(6), ClassicalFactor::sp(6)]);
    let mut group = c.benchmark_group("weyl_data_o6_sp6");
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| weyl_data_with(&g, 1 << 24, mode, |_| true).unwrap().len())
        });
    }
    group.finish();
}

criterion_group!(benches, sweep, weyl);
criterion_main!(benches);
