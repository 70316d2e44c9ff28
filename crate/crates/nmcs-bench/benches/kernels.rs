//! Microbenchmarks for the hot kernels: the simplex flip, Lévy step
//! generation, the radiative-current routes, and full stack-efficiency
//! evaluations (one optimizer "function evaluation" each).

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

use nmcs::cuckoo::levy_step;
use nmcs::nelder_mead::{flip, make_initial_simplex, NmsConfig};
use nmcs::objective::{CountedObjective, EvaluationBudget, ObjectiveSpec};
use nmcs::solar::{
    mj_efficiency, radiative_current, radiative_current_series, ss_efficiency, RadiativeModel,
    SpectrumTable, StackSpec, Topology,
};

fn sphere_spec(d: usize) -> ObjectiveSpec {
    ObjectiveSpec::new("sphere", d, vec![-5.0; d], vec![5.0; d], |x: &[f64]| {
        x.iter().map(|v| v * v).sum()
    })
    .unwrap()
}

fn bench_flip(c: &mut Criterion) {
    let spec = sphere_spec(10);
    let config = NmsConfig::default();
    let mut f = CountedObjective::new(&spec, EvaluationBudget::new(usize::MAX));
    let simplex = make_initial_simplex(&vec![1.0; 10], 0.05, &mut f).unwrap();
    c.bench_function("flip_d10_sphere", |b| {
        b.iter(|| {
            let (next, spent) = flip(black_box(&simplex), &mut f, &config).unwrap();
            black_box((next.best_value(), spent));
        })
    });
}

fn bench_levy(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    c.bench_function("levy_step_d10", |b| {
        b.iter(|| black_box(levy_step(10, 1.5, &mut rng)))
    });
}

fn bench_radiative(c: &mut Criterion) {
    let model = RadiativeModel::default();
    c.bench_function("radiative_series_si", |b| {
        b.iter(|| black_box(radiative_current_series(&model, 1.12, 0.7)))
    });
    c.bench_function("radiative_simpson_si", |b| {
        b.iter(|| black_box(radiative_current(&model, 1.12, 0.7).unwrap()))
    });
}

fn bench_stack(c: &mut Criterion) {
    let spectrum = Arc::new(SpectrumTable::bundled());
    let ss = StackSpec::new(3, Topology::SplitSpectrum, spectrum.clone()).unwrap();
    let mj = StackSpec::new(3, Topology::MultiJunction, spectrum).unwrap();
    let gaps = [0.92, 1.411, 2.044];
    c.bench_function("ss_efficiency_n3", |b| {
        b.iter(|| black_box(ss_efficiency(&ss, black_box(&gaps)).unwrap()))
    });
    c.bench_function("mj_efficiency_n3", |b| {
        b.iter(|| black_box(mj_efficiency(&mj, black_box(&gaps)).unwrap()))
    });
}

criterion_group!(kernels, bench_flip, bench_levy, bench_radiative, bench_stack);
criterion_main!(kernels);
