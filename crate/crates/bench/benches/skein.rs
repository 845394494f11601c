use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use knotslope_bench::{cable, engine_workloads};
use knotslope_core::skein::{bracket_bruteforce, bracket_contract, bracket_lower_part};
use knotslope_core::{corpus, ColorVector, ColoredEngine, SkeinConfig};

fn engines(c: &mut Criterion) {
    let mut g = c.benchmark_group("bracket");
    for (name, d) in engine_workloads() {
        let id = format!("{name} ({} crossings)", d.crossing_count());
        g.bench_with_input(BenchmarkId::new("bruteforce", &id), &d, |b, d| {
            b.iter(|| bracket_bruteforce(black_box(d), 22).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("contract", &id), &d, |b, d| {
            b.iter(|| bracket_contract(black_box(d), 16).unwrap())
        });
    }
    g.finish();
}

fn lower_part(c: &mut Criterion) {
    let d = cable("6_2", &[4]);
    c.bench_function("lower part of 6_2 x4", |b| b.iter(|| bracket_lower_part(black_box(&d), -120)));
}

fn colored(c: &mut Criterion) {
    let mut g = c.benchmark_group("colored jones");
    g.sample_size(10);
    for n in [3u32, 5] {
        let colors = ColorVector::new(vec![n]).unwrap();
        g.bench_with_input(BenchmarkId::new("figure-eight", n), &colors, |b, colors| {
            // fresh engine per iteration so the cable cache is cold
            b.iter(|| ColoredEngine::new(corpus::figure_eight(), SkeinConfig::default()).colored_jones(colors).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("figure-eight maxdeg", n), &colors, |b, colors| {
            b.iter(|| {
                ColoredEngine::new(corpus::figure_eight(), SkeinConfig::default()).colored_jones_maxdeg(colors).unwrap()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, engines, lower_part, colored);
criterion_main!(benches);
