use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qmds_bench::{field, full_extended, largest_additive, BENCH_Q};
use qmds_core::grs::BRUTE_FORCE_CAP;
use qmds_core::{additive_code, extended_code, nonexistence_5_1_5, sweep, Family, DEFAULT_MAX_FIELD_SIZE};

fn field_ops(c: &mut Criterion) {
    let mut group = c.benchmark_group("field");
    for q in BENCH_Q {
        let f = field(q);
        let elems: Vec<_> = f.elements().collect();
        group.bench_with_input(BenchmarkId::new("mul_add_all_pairs", q), &elems, |b, elems| {
            b.iter(|| {
                let mut acc = qmds_core::Elem::ZERO;
                for &x in elems {
                    for &y in elems {
                        acc = f.add(acc, f.mul(x, y));
                    }
                }
                black_box(acc)
            })
        });
        group.bench_with_input(BenchmarkId::new("solve_norm_subfield", q), &f.subfield_elements(), |b, sub| {
            b.iter(|| sub.iter().skip(1).map(|&w| f.solve_norm(w).unwrap()).collect::<Vec<_>>())
        });
        group.bench_function(BenchmarkId::new("build_tower", q), |b| b.iter(|| field(black_box(q))));
    }
    group.finish();
}

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct");
    for q in BENCH_Q {
        let f = field(q);
        let t = q as usize;
        let k = qmds_core::construct::max_additive_dimension(t, t);
        group.bench_function(BenchmarkId::new("additive_full_field", q), |b| {
            b.iter(|| additive_code(&f, black_box(t), black_box(k)).unwrap())
        });
        group.bench_function(BenchmarkId::new("extended_full_length", q), |b| {
            b.iter(|| extended_code(&f, black_box(t - 1), black_box(2)).unwrap())
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    for q in BENCH_Q {
        let additive = largest_additive(q).code.to_linear();
        group.bench_function(BenchmarkId::new("hermitian_self_orthogonal", q), |b| {
            b.iter(|| black_box(&additive).is_hermitian_self_orthogonal())
        });
        let extended = full_extended(q).code.to_linear();
        group.bench_function(BenchmarkId::new("brute_force_distance_k2", q), |b| {
            b.iter(|| black_box(&extended).min_distance_bruteforce(BRUTE_FORCE_CAP).unwrap())
        });
    }
    group.bench_function("nonexistence_5_1_5", |b| b.iter(nonexistence_5_1_5));
    group.sample_size(10);
    group.bench_function("sweep_default_q_list", |b| {
        b.iter(|| sweep(&[2, 3, 4, 5, 7, 8, 9], Family::Both, DEFAULT_MAX_FIELD_SIZE).unwrap())
    });
    group.finish();
}

criterion_group!(benches, field_ops, construction, verification);
criterion_main!(benches);
