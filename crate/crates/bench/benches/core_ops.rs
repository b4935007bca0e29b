//! Benchmarks for the hot paths: field arithmetic, patch generation and
//! exact sign decisions.

use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::hint::black_box;

use cyclopoly::interval::real_sign;
use cyclopoly::{CyclotomicNumber, ModelSetDescriptor, Patch, Rational};

fn element(n: u64, seed: i64) -> CyclotomicNumber {
    let ph = cyclopoly::phi(n).unwrap() as usize;
    let coeffs: Vec<Rational> = (0..ph as i64)
        .map(|k| BigRational::new(BigInt::from(seed + 3 * k - 7), BigInt::from(k % 5 + 2)))
        .collect();
    CyclotomicNumber::from_coeffs(n, coeffs).unwrap()
}

fn bench_mul(c: &mut Criterion) {
    for n in [8u64, 12, 60] {
        let x = element(n, 11);
        let y = element(n, -4);
        c.bench_function(&format!("mul_n{n}"), |b| {
            b.iter(|| black_box(&x).mul(black_box(&y)).unwrap())
        });
    }
}

fn bench_galois(c: &mut Criterion) {
    let x = element(60, 5);
    c.bench_function("galois_apply_n60", |b| {
        b.iter(|| black_box(&x).galois_apply(7).unwrap())
    });
}

fn bench_patch_generation(c: &mut Criterion) {
    let mut g = c.benchmark_group("patch");
    g.sample_size(10);
    for n in [4u64, 8] {
        let d = ModelSetDescriptor::new(n).unwrap();
        g.bench_function(format!("generate_n{n}_r3"), |b| {
            b.iter(|| {
                Patch::generate(&d, Rational::from_integer(BigInt::from(3))).unwrap()
            })
        });
    }
    g.finish();
}

fn bench_exact_signs(c: &mut Criterion) {
    // a small but nonzero real value: 2 cos(2 pi / 12) - 1 = sqrt(3) - 1.
    let z = CyclotomicNumber::root_of_unity(12).unwrap();
    let v = z
        .add(&z.conj())
        .unwrap()
        .sub(&CyclotomicNumber::one(12))
        .unwrap();
    c.bench_function("real_sign_sqrt3_minus_1", |b| {
        b.iter(|| real_sign(black_box(&v)).unwrap())
    });
    let d = ModelSetDescriptor::new(8).unwrap();
    let p = CyclotomicNumber::from_integer_coeffs(8, &[1, 1, 0, -1]).unwrap();
    c.bench_function("window_membership_n8", |b| {
        b.iter(|| d.is_member(black_box(&p)).unwrap())
    });
}

criterion_group!(benches, bench_mul, bench_galois, bench_patch_generation, bench_exact_signs);
criterion_main!(benches);
