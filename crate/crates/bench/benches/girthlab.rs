use criterion::{black_box, criterion_group, criterion_main, Criterion};
use girthlab::analysis::{girth, min_distance, Strategy};
use girthlab::bounds::min_m_root;
use girthlab::regular::build_h_reg;
use girthlab_bench::{regular, semiregular};

fn construction(c: &mut Criterion) {
    c.bench_function("build_h_reg(4,5)", |b| {
        b.iter(|| build_h_reg(black_box(4), 5))
    });
    c.bench_function("build_h_s(t=32)", |b| b.iter(|| semiregular(black_box(32))));
}

fn girth_bench(c: &mut Criterion) {
    let h = regular(4, 5);
    c.bench_function("girth H_reg(4,5)", |b| b.iter(|| girth(black_box(&h))));
    let h = semiregular(32);
    c.bench_function("girth H_s(t=32)", |b| b.iter(|| girth(black_box(&h))));
}

fn distance(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_distance");
    group.sample_size(10);
    let h = semiregular(8);
    group.bench_function("H_s(8) capped 5", |b| {
        b.iter(|| min_distance(black_box(&h), 5, Strategy::WeightCappedSearch))
    });
    let h = regular(3, 3);
    group.bench_function("H_reg(3,3) capped 6", |b| {
        b.iter(|| min_distance(black_box(&h), 6, Strategy::WeightCappedSearch))
    });
    group.finish();
}

fn roots(c: &mut Criterion) {
    for g in [10, 12, 14, 16] {
        c.bench_function(&format!("min_m_root girth {g} n=1e8"), |b| {
            b.iter(|| min_m_root(g, 3, black_box(100_000_000)))
        });
    }
}

criterion_group!(benches, construction, girth_bench, distance, roots);
criterion_main!(benches);
