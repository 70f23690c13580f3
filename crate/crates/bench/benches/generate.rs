use criterion::{criterion_group, criterion_main, Criterion};
use endoreg::pipeline::{canonical_form, generate_regular, GenSpec};
use std::hint::black_box;

fn generator(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate");
    group.sample_size(10);
    group.bench_function("cubic-12", |b| {
        b.iter(|| {
            generate_regular(black_box(GenSpec::new(12, 3)), None)
                .graphs
                .len()
        })
    });
    group.bench_function("quartic-10", |b| {
        b.iter(|| {
            generate_regular(black_box(GenSpec::new(10, 4)), None)
                .graphs
                .len()
        })
    });
    group.bench_function("cubic-16-girth-5", |b| {
        b.iter(|| {
            generate_regular(black_box(GenSpec::new(16, 3).girth(5)), None)
                .graphs
                .len()
        })
    });
    group.finish();
}

fn canon(c: &mut Criterion) {
    let graphs = generate_regular(GenSpec::new(12, 3), None).graphs;
    let shuffled: Vec<_> = graphs
        .iter()
        .map(|g| {
            let n = g.n();
            let perm: Vec<usize> = (0..n).map(|v| (v * 5 + 3) % n).collect();
            g.relabel(&perm)
        })
        .collect();
    c.bench_function("canon/cubic-12-class", |b| {
        b.iter(|| {
            shuffled
                .iter()
                .map(|g| canonical_form(black_box(g)).code[0])
                .fold(0u64, |a, x| a ^ x)
        })
    });
}

criterion_group!(benches, generator, canon);
criterion_main!(benches);
