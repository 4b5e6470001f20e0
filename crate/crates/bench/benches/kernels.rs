use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use gonchar_bench::{tol_bits, DEGREES};
use gonchar_core::complex_roots::{gonchar_zeros, SolveOptions};
use gonchar_core::equilibrium::total_mass;
use gonchar_core::factor::{irreducibility_certificate, reduced_polynomial};
use gonchar_core::geometry::{census, theta_solutions};
use gonchar_core::real_roots::{isolate_real_roots, rho, sturm_count};
use gonchar_core::{gonchar_poly, RatQ};

fn polynomials(c: &mut Criterion) {
    let mut g = c.benchmark_group("gonchar_poly");
    for d in DEGREES {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| gonchar_poly(black_box(d)).unwrap())
        });
    }
    g.finish();
}

fn real_roots(c: &mut Criterion) {
    let (lo, hi) = (RatQ::from_int(1), RatQ::from_int(3));
    let mut g = c.benchmark_group("real_roots");
    for d in DEGREES {
        let p = gonchar_poly(d).unwrap();
        g.bench_with_input(BenchmarkId::new("sturm_count", d), &p, |b, p| {
            b.iter(|| sturm_count(p, &lo, &hi).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("isolate", d), &p, |b, p| {
            b.iter(|| isolate_real_roots(p).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("rho_2^-100", d), &d, |b, &d| {
            b.iter(|| rho(d, &tol_bits(100)).unwrap())
        });
    }
    g.finish();
}

fn complex_roots(c: &mut Criterion) {
    let opts = SolveOptions::default();
    let mut g = c.benchmark_group("complex_roots");
    g.sample_size(10);
    for d in [10, 40, 100] {
        g.bench_with_input(BenchmarkId::new("gonchar_zeros", d), &d, |b, &d| {
            b.iter(|| gonchar_zeros(d, &opts).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("theta_solutions", d), &d, |b, &d| {
            b.iter(|| theta_solutions(d, &tol_bits(100)).unwrap())
        });
    }
    g.bench_function("census/60", |b| b.iter(|| census(60, &opts).unwrap()));
    g.finish();
}

fn factoring(c: &mut Criterion) {
    let mut g = c.benchmark_group("irreducibility_certificate");
    g.sample_size(10);
    for d in [12, 30, 60] {
        let f = reduced_polynomial(d).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(d), &f, |b, f| {
            b.iter(|| irreducibility_certificate(f, 25).unwrap())
        });
    }
    g.finish();
}

fn equilibrium(c: &mut Criterion) {
    let mut g = c.benchmark_group("total_mass");
    for d in [2, 3, 8] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| total_mass(2.0, 1.0, d, 1e-12).unwrap())
        });
    }
    g.finish();
}

criterion_group!(
    benches,
    polynomials,
    real_roots,
    complex_roots,
    factoring,
    equilibrium
);
criterion_main!(benches);
