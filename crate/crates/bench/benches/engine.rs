use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use garside_bench::{positive, sample, signed, structure};

const NAMES: [&str; 4] = ["braid4", "cp(3,3)", "dual-sym5", "G24"];

fn normal_form(c: &mut Criterion) {
    let mut g = c.benchmark_group("normal_form");
    for name in NAMES {
        let s = structure(name);
        let words: Vec<_> = (0..32).map(|i| signed(&s, i, 40)).collect();
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| words.iter().map(|w| s.normal_form(black_box(w)).sup()).sum::<i64>())
        });
    }
    g.finish();
}

fn lattice(c: &mut Criterion) {
    let mut g = c.benchmark_group("lcm_gcd");
    for name in NAMES {
        let s = structure(name);
        let pairs: Vec<_> = (0..32).map(|i| (positive(&s, 2 * i, 12), positive(&s, 2 * i + 1, 12))).collect();
        g.bench_function(BenchmarkId::new("lcm", name), |b| {
            b.iter(|| pairs.iter().map(|(u, v)| s.join_pos(black_box(u), v).sup()).sum::<i64>())
        });
        g.bench_function(BenchmarkId::new("gcd", name), |b| {
            b.iter(|| pairs.iter().map(|(u, v)| s.meet_pos(black_box(u), v).sup()).sum::<i64>())
        });
    }
    g.finish();
}

fn conjugacy(c: &mut Criterion) {
    let mut g = c.benchmark_group("conjugacy");
    for name in NAMES {
        let s = structure(name);
        let xs = sample(&s, 16, 16);
        g.bench_function(BenchmarkId::new("swap_orbit", name), |b| {
            b.iter(|| xs.iter().map(|x| s.swap_orbit(black_box(x)).period).sum::<usize>())
        });
        let ps: Vec<_> = (0..16).map(|i| positive(&s, i, 8)).collect();
        g.bench_function(BenchmarkId::new("rho", name), |b| {
            b.iter(|| ps.iter().map(|p| s.rho(0, black_box(p)).sup()).sum::<i64>())
        });
    }
    g.finish();
}

fn parabolic(c: &mut Criterion) {
    let mut g = c.benchmark_group("parabolic");
    g.sample_size(20);
    for name in NAMES {
        let s = structure(name);
        let xs = sample(&s, 16, 12);
        g.bench_function(BenchmarkId::new("closure", name), |b| {
            b.iter(|| xs.iter().map(|x| s.parabolic_closure(black_box(x)).atoms.len()).sum::<usize>())
        });
    }
    for name in ["braid4", "cp(3,3)"] {
        let s = structure(name);
        g.bench_function(BenchmarkId::new("curve_graph", name), |b| {
            b.iter(|| s.curve_graph(black_box(1)).unwrap().vertices.len())
        });
    }
    g.finish();
}

criterion_group!(benches, normal_form, lattice, conjugacy, parabolic);
criterion_main!(benches);
