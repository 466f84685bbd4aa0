use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use transversal_lab::families::{grid_stream, row_stream};
use transversal_lab::sequence::greedy_disjoint_heterochromatic;
use transversal_lab::stabbing::{min_piercing_number, min_point_stab_intervals};
use transversal_lab::transversal::{has_pq_property, is_k_dependent, line_transversal_2d, transversal, DEFAULT_BUDGET};
use transversal_lab_bench::{arc_disks, lifted_prefix, spans, tangent_prefix};

fn line_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("line_transversal_2d");
    for n in [3, 8, 16] {
        let disks = arc_disks(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &disks, |b, d| b.iter(|| line_transversal_2d(black_box(d)).unwrap()));
    }
    g.finish();
}

fn lifted(c: &mut Criterion) {
    let triple = lifted_prefix(3, 1);
    c.bench_function("lifted_triple_line", |b| b.iter(|| transversal(1, black_box(&triple), DEFAULT_BUDGET).unwrap()));
    let seq = lifted_prefix(8, 2);
    c.bench_function("lifted_k1_dependence_8", |b| b.iter(|| is_k_dependent(black_box(&seq), 1).unwrap()));
}

fn stabbing(c: &mut Criterion) {
    let s = spans(2000);
    c.bench_function("interval_stab_2000", |b| b.iter(|| min_point_stab_intervals(black_box(&s))));
    let disks = arc_disks(10);
    c.bench_function("min_piercing_10_disks", |b| b.iter(|| min_piercing_number(black_box(&disks)).unwrap()));
    let rects = tangent_prefix(8);
    c.bench_function("tangent_pq_2_2_8", |b| b.iter(|| has_pq_property(black_box(&rects), 2, 2, 0).unwrap()));
}

fn builders(c: &mut Criterion) {
    c.bench_function("greedy_disjoint_grid_12", |b| {
        b.iter(|| {
            let mut streams: Vec<_> = (3..15).map(grid_stream).collect();
            greedy_disjoint_heterochromatic(&mut streams, 12).unwrap()
        })
    });
    c.bench_function("greedy_disjoint_rows_12", |b| {
        b.iter(|| {
            let mut streams: Vec<_> = (1..13).map(row_stream).collect();
            greedy_disjoint_heterochromatic(&mut streams, 12).unwrap()
        })
    });
}

criterion_group!(benches, line_sweep, lifted, stabbing, builders);
criterion_main!(benches);
