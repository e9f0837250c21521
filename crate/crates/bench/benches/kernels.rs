use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use matcolor::bound_engine::game_value;
use matcolor::coloring::chi_list;
use matcolor::homology::{delta_eta, eta};
use matcolor::intersection::max_common_independent;
use matcolor::nu::nu_pq;
use matcolor::CoefficientField;
use matcolor_bench::{blown_cycle, dense_complex, game_hypergraph, matroid_pair, uniform_pair};

const Q: CoefficientField = CoefficientField::Rationals;

fn bench_eta(c: &mut Criterion) {
    let mut group = c.benchmark_group("eta");
    let inputs = [
        ("blown_cycle_3_3", blown_cycle(3, 3)),
        ("dense_8", dense_complex(8)),
        ("dense_10", dense_complex(10)),
    ];
    for (name, complex) in &inputs {
        group.bench_with_input(BenchmarkId::new("rationals", name), complex, |b, x| b.iter(|| eta(black_box(x), Q)));
        group.bench_with_input(BenchmarkId::new("gf2", name), complex, |b, x| {
            b.iter(|| eta(black_box(x), CoefficientField::Prime(2)))
        });
    }
    group.finish();
}

fn bench_delta_eta(c: &mut Criterion) {
    let complex = blown_cycle(2, 2);
    c.bench_function("delta_eta/blown_cycle_2_2", |b| b.iter(|| delta_eta(black_box(&complex), Q)));
}

fn bench_game(c: &mut Criterion) {
    let mut group = c.benchmark_group("game_value");
    for n in [5, 7, 9] {
        let h = game_hypergraph(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| b.iter(|| game_value(black_box(h))));
    }
    group.finish();
}

fn bench_nu(c: &mut Criterion) {
    let mut group = c.benchmark_group("nu_pq");
    let (m, n) = uniform_pair(7, 3);
    for (p, q) in [(1, 1), (2, 2), (2, 3)] {
        group.bench_function(format!("uniform_7_3/{p}_{q}"), |b| b.iter(|| nu_pq(black_box(&m), &n, p, q)));
    }
    group.finish();
}

fn bench_intersection(c: &mut Criterion) {
    let (m, n) = matroid_pair(7);
    c.bench_function("max_common_independent/7", |b| b.iter(|| max_common_independent(black_box(&m), &n)));
}

fn bench_chi_list(c: &mut Criterion) {
    let complex = blown_cycle(1, 1);
    c.bench_function("chi_list/blown_cycle_1_1", |b| b.iter(|| chi_list(black_box(&complex), 3)));
}

criterion_group!(benches, bench_eta, bench_delta_eta, bench_game, bench_nu, bench_intersection, bench_chi_list);
criterion_main!(benches);
