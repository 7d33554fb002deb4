use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use hypcheck::hyper::{f21_eval, f21_series_rational, DEFAULT_TERM_CAP};
use hypcheck::mpreal::{gamma, pow_rational, tanh_sinh, QuadOptions};
use hypcheck::{HypParams, Precision, Rational};
use hypcheck_bench::{gamma_arguments, main_evaluation};

fn main_series(c: &mut Criterion) {
    let (p, z) = main_evaluation();
    let mut g = c.benchmark_group("main-series");
    g.sample_size(10);
    for digits in [50, 150, 300] {
        let prec = Precision::digits(digits);
        g.bench_with_input(BenchmarkId::from_parameter(digits), &prec, |b, prec| {
            b.iter(|| f21_series_rational(black_box(&p), black_box(&z), *prec, DEFAULT_TERM_CAP).unwrap())
        });
    }
    g.finish();
}

fn gamma_values(c: &mut Criterion) {
    let xs = gamma_arguments();
    let mut g = c.benchmark_group("gamma");
    for digits in [30, 100, 300] {
        let prec = Precision::digits(digits);
        g.bench_with_input(BenchmarkId::from_parameter(digits), &prec, |b, prec| {
            b.iter(|| xs.iter().map(|x| gamma(black_box(x), *prec).unwrap()).collect::<Vec<_>>())
        });
    }
    g.finish();
}

fn quadrature(c: &mut Criterion) {
    // Beta(1/3, 1/2): both endpoints singular
    let (ex, ey): (Rational, Rational) = ("-2/3".parse().unwrap(), "-1/2".parse().unwrap());
    let mut g = c.benchmark_group("tanh-sinh");
    g.sample_size(10);
    for digits in [30, 60, 100] {
        let prec = Precision::digits(digits);
        g.bench_with_input(BenchmarkId::new("beta", digits), &prec, |b, prec| {
            b.iter(|| {
                tanh_sinh(
                    |pt| Ok(&pow_rational(pt.from_a, &ex)? * &pow_rational(pt.to_b, &ey)?),
                    &Rational::zero(),
                    &Rational::one(),
                    *prec,
                    &QuadOptions::default(),
                )
                .unwrap()
            })
        });
    }
    // Euler-integral path near z = 1
    let p = HypParams::from_strs("1/8", "3/8", "1/2").unwrap();
    let z: Rational = "2400/2401".parse().unwrap();
    g.bench_function("zucker-joyce-2400/2401-at-40", |b| {
        b.iter(|| f21_eval(&p, black_box(&z), Precision::digits(40)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, main_series, gamma_values, quadrature);
criterion_main!(benches);
