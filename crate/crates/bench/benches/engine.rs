use criterion::{criterion_group, criterion_main, Criterion};
use endoreg::homsearch::rigidity;
use endoreg::pipeline::census::CUBIC_RIGID;
use endoreg::tiling::{build_factor, default_h, factor_report, first_accepting_index};
use endoreg::{build_sausage, parse_g6, solve, FMap, HomProblem, Mode, SearchConfig};
use std::hint::black_box;

fn rigid_cubic(c: &mut Criterion) {
    let g = parse_g6(CUBIC_RIGID).unwrap();
    let cfg = SearchConfig::default();
    c.bench_function("rigidity/cubic-14", |b| {
        b.iter(|| rigidity(black_box(&g), &cfg))
    });
    let comp = g.complement();
    c.bench_function("rigidity/complement-14", |b| {
        b.iter(|| rigidity(black_box(&comp), &cfg))
    });
}

fn sausage_counts(c: &mut Criterion) {
    let fs = FMap::all(4, 1).unwrap();
    let ds: Vec<_> = fs.iter().map(|f| build_sausage(f).digraph).collect();
    c.bench_function("count/sausage-4-1-all-pairs", |b| {
        b.iter(|| {
            let mut total = 0u128;
            for s in &ds {
                for t in &ds {
                    total += solve(&HomProblem::new(s, t, Mode::Count)).count;
                }
            }
            total
        })
    });
}

fn tiling_factor(c: &mut Criterion) {
    let (t, u) = first_accepting_index(7, default_h(7), 40).unwrap().unwrap();
    let f = build_factor(&t, &u).unwrap();
    let mut group = c.benchmark_group("tiling");
    group.sample_size(10);
    group.bench_function("factor-report-g7", |b| {
        b.iter(|| factor_report(black_box(&f), &SearchConfig::default()))
    });
    group.finish();
}

criterion_group!(benches, rigid_cubic, sausage_counts, tiling_factor);
criterion_main!(benches);
