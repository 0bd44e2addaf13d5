use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use structmap_bench::synthetic_catalog;
use structmap_core::emit::{emit, EmitOptions, Format};
use structmap_core::pipeline::{compile, plan_map};
use structmap_core::seed::SEED_CATALOG;
use structmap_core::transform::{compute_levels, map_suite, transitive_reduce};
use structmap_core::{parse_catalog, resolve};

const SIZES: [usize; 3] = [55, 200, 800];

fn parse(c: &mut Criterion) {
    let mut group = c.benchmark_group("parse");
    for n in SIZES {
        let text = synthetic_catalog(n, 10);
        group.bench_with_input(BenchmarkId::from_parameter(n), &text, |b, t| {
            b.iter(|| parse_catalog(black_box(t)).unwrap())
        });
    }
    group.finish();
}

fn resolve_and_reduce(c: &mut Criterion) {
    let mut group = c.benchmark_group("resolve_reduce");
    for n in SIZES {
        let catalog = parse_catalog(&synthetic_catalog(n, 10)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &catalog, |b, cat| {
            b.iter(|| {
                let g = resolve(black_box(cat)).unwrap();
                let mut reduced = transitive_reduce(&g).unwrap().graph;
                compute_levels(&mut reduced).unwrap();
                reduced
            })
        });
    }
    group.finish();
}

fn layout(c: &mut Criterion) {
    let mut group = c.benchmark_group("layout");
    for n in SIZES {
        let graph = compile(&synthetic_catalog(n, 10)).unwrap().graph;
        group.bench_with_input(BenchmarkId::from_parameter(n), &graph, |b, g| {
            b.iter(|| plan_map(black_box(g), false))
        });
    }
    group.finish();
}

fn emitters(c: &mut Criterion) {
    let graph = compile(SEED_CATALOG).unwrap().graph;
    let plan = plan_map(&graph, false);
    let mut group = c.benchmark_group("emit_seed_full");
    for format in Format::ALL {
        let opts = EmitOptions::new(format);
        group.bench_function(format.name(), |b| b.iter(|| emit(black_box(&plan), &opts)));
    }
    group.finish();
}

fn seed_suite(c: &mut Criterion) {
    c.bench_function("seed_suite_svg", |b| {
        b.iter(|| {
            let graph = compile(black_box(SEED_CATALOG)).unwrap().graph;
            map_suite(&graph)
                .unwrap()
                .iter()
                .map(|m| emit(&plan_map(&m.view.graph, false), &EmitOptions::new(Format::Svg)).len())
                .sum::<usize>()
        })
    });
}

criterion_group!(benches, parse, resolve_and_reduce, layout, emitters, seed_suite);
criterion_main!(benches);
