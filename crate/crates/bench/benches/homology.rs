use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use hochtrace::algebra::{Algebra, FiniteGroup};
use hochtrace::hochschild::{cyclic_homology, NormalizedComplex};
use hochtrace::linalg::smith_normal_form;
use hochtrace::linalg::Matrix;
use hochtrace::ring::{Integers, ModRing, Rationals, Ring};
use hochtrace::trace::{group_homology, morita_map};
use hochtrace::waldhausen::{finite_modules, k0_via_sdot};

fn snf(c: &mut Criterion) {
    // Deterministic dense 12x12 integer matrix with small entries.
    let mut state = 0x2545_f491_u64;
    let rows: Vec<Vec<_>> = (0..12)
        .map(|_| {
            (0..12)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    Integers.from_i64((state >> 60) as i64 - 8)
                })
                .collect()
        })
        .collect();
    let m = Matrix::from_rows(rows).unwrap();
    c.bench_function("snf_z_12x12", |b| b.iter(|| smith_normal_form(&Integers, black_box(&m)).unwrap()));
}

fn hochschild(c: &mut Criterion) {
    let a = Algebra::truncated_polynomial(Integers, 3).unwrap();
    c.bench_function("hh_trunc3_z_deg3", |b| {
        b.iter(|| {
            let cx = NormalizedComplex::new(black_box(&a), 4).unwrap();
            (0..=3).map(|d| cx.homology(d).unwrap().num_generators()).sum::<usize>()
        })
    });
    let f2 = Algebra::base(ModRing::prime_field(2).unwrap());
    c.bench_function("morita_f2_n2_deg2", |b| b.iter(|| morita_map(black_box(&f2), 2, 2).unwrap().is_isomorphism));
    let q = Algebra::base(Rationals);
    c.bench_function("hc_q_deg6", |b| b.iter(|| cyclic_homology(black_box(&q), 6).unwrap()));
}

fn groups_and_k0(c: &mut Criterion) {
    let s3 = FiniteGroup::symmetric(3);
    c.bench_function("group_homology_s3_deg3", |b| b.iter(|| group_homology(black_box(&s3), &Integers, 3).unwrap()));
    let cat = finite_modules(4, 4).unwrap();
    c.bench_function("k0_sdot_finite_modules_4", |b| b.iter(|| k0_via_sdot(black_box(&cat)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = snf, hochschild, groups_and_k0
}
criterion_main!(benches);
