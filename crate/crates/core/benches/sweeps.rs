use boxwell::oracles::{convergence_study, grid_expectation, ladder_from_e1_multiples, GridField, GridObservable};
use boxwell::spectral::{evaluate_series, time_grid, Observable};
use boxwell::{Execution, WavePacket, WellConfig};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

const MODES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

fn label(exec: Execution) -> &'static str {
    if exec.is_parallel() {
        "parallel"
    } else {
        "sequential"
    }
}

fn packet(modes: usize) -> WavePacket {
    let coeffs = (1..=modes).map(|n| Complex64::from_polar(1.0 / n as f64, 0.3 * n as f64)).collect();
    WavePacket::normalized(coeffs).unwrap()
}

fn time_series(c: &mut Criterion) {
    let cfg = WellConfig::default();
    let p = packet(15);
    let mut group = c.benchmark_group("time_series");
    for steps in [1_000, 20_000] {
        let times = time_grid(0.0, 5.0, steps).unwrap();
        for exec in MODES {
            group.bench_with_input(BenchmarkId::new(label(exec), steps), &times, |b, times| {
                b.iter(|| evaluate_series(Observable::EhrenfestResidual, &p, black_box(times), &cfg, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn convergence(c: &mut Criterion) {
    let cfg = WellConfig::default();
    let multiples: Vec<f64> = (0..16).map(|i| 10f64.powf(2.0 + 0.2 * i as f64)).collect();
    let ladder = ladder_from_e1_multiples(&cfg, &multiples).unwrap();
    let pairs = [(1, 2), (2, 3), (1, 4), (3, 4)];
    let mut group = c.benchmark_group("convergence_study");
    for exec in MODES {
        group.bench_function(label(exec), |b| {
            b.iter(|| convergence_study(&cfg, black_box(&pairs), &ladder, exec).unwrap())
        });
    }
    group.finish();
}

fn grid(c: &mut Criterion) {
    let cfg = WellConfig::default();
    let p = packet(6);
    c.bench_function("grid_momentum_4096", |b| {
        b.iter(|| {
            let field = GridField::from_packet(&p, black_box(0.37), &cfg, 4096, 8).unwrap();
            grid_expectation(&field, GridObservable::Momentum, 1e-6).unwrap()
        })
    });
}

criterion_group!(benches, time_series, convergence, grid);
criterion_main!(benches);
