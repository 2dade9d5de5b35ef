use criterion::{black_box, criterion_group, criterion_main, Criterion};

use hiv_dynamics::{
    classified_equilibria, integrate, jacobian, rhs_uncontrolled, solve, Method, ModelParams,
    State, SweepConfig, TimeGrid,
};

fn onset() -> State {
    State::new(5.0, 1.0, 1.0, 2.0, 1.0)
}

fn bench_rhs(c: &mut Criterion) {
    let p = ModelParams::reference();
    let s = onset();
    c.bench_function("rhs_uncontrolled", |b| {
        b.iter(|| rhs_uncontrolled(black_box(&p), black_box(&s)).unwrap())
    });
}

fn bench_jacobian_spectrum(c: &mut Criterion) {
    let p = ModelParams::reference();
    let s = onset();
    c.bench_function("jacobian", |b| {
        b.iter(|| jacobian(black_box(&p), black_box(&s)).unwrap())
    });
    c.bench_function("classified_equilibria", |b| {
        b.iter(|| classified_equilibria(black_box(&p)).unwrap())
    });
}

fn bench_integrate(c: &mut Criterion) {
    let p = ModelParams::reference();
    let s0 = onset();
    let grid = TimeGrid::from_horizon(100.0, 10_000).unwrap();
    c.bench_function("integrate_rk4_10k_steps", |b| {
        b.iter(|| integrate(black_box(&p), black_box(&s0), &grid, None, Method::Rk4).unwrap())
    });
    c.bench_function("integrate_euler_10k_steps", |b| {
        b.iter(|| integrate(black_box(&p), black_box(&s0), &grid, None, Method::Euler).unwrap())
    });
}

fn bench_sweep(c: &mut Criterion) {
    let p = ModelParams::reference();
    let s0 = onset();
    let grid = TimeGrid::from_horizon(100.0, 2_000).unwrap();
    let cfg = SweepConfig::default();
    c.bench_function("fbsm_solve_2k_nodes", |b| {
        b.iter(|| solve(black_box(&p), black_box(&s0), &grid, &cfg, Method::Rk4).unwrap())
    });
}

criterion_group!(
    benches,
    bench_rhs,
    bench_jacobian_spectrum,
    bench_integrate,
    bench_sweep
);
criterion_main!(benches);
