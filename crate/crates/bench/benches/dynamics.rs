use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use popdyn_cli::config::{ExperimentConfig, ExperimentKind};
use popdyn_cli::experiment::{hamiltonian_h1, run};
use popdyn_core::dynamics::{
    apply_exact, ChipState, DynamicalMatrix, EvolutionMode, RealState, Rounding,
};
use popdyn_core::oracle::fourier_mode;
use popdyn_core::{make_cyclic, section_elem};

fn decorated_h1(n: usize) -> (DynamicalMatrix, RealState) {
    let group = make_cyclic(n).unwrap();
    let h = hamiltonian_h1(&group).unwrap();
    let d = DynamicalMatrix::decorated(&section_elem(&h)).unwrap();
    let s = RealState::encode(&fourier_mode(&group, 1).unwrap()).unwrap();
    (d, s)
}

fn apply(c: &mut Criterion) {
    for n in [20, 1000] {
        let (d, s) = decorated_h1(n);
        c.bench_function(&format!("apply_exact/Z4xZ{n}"), |b| {
            b.iter(|| apply_exact(&d, black_box(&s)).unwrap())
        });
        let chips = ChipState::allocate(&s, 1_000_000).unwrap();
        for rounding in [Rounding::Floor, Rounding::LargestRemainder] {
            c.bench_function(&format!("apply_chip/{rounding:?}/Z4xZ{n}"), |b| {
                b.iter(|| d.apply_chip_with(black_box(&chips), rounding).unwrap())
            });
        }
    }
}

fn time_evolution(c: &mut Criterion) {
    let mut cfg = ExperimentConfig::new(ExperimentKind::TimeEvolution);
    c.bench_function("time_evolution/exact", |b| {
        b.iter(|| run(black_box(&cfg)).unwrap())
    });
    cfg.mode = EvolutionMode::Chip;
    c.bench_function("time_evolution/chip", |b| {
        b.iter(|| run(black_box(&cfg)).unwrap())
    });
}

criterion_group!(benches, apply, time_evolution);
criterion_main!(benches);
