use criterion::{black_box, criterion_group, criterion_main, Criterion};

use freealg::certify::{
    certify_elements, enumerate_words, fga_mul, CertifyOptions, FreeGroupAlgElem, ModelId, WordKind,
};
use freealg::group::ha_mul;
use freealg::pbw::{pbw_mul, pbw_naive_mul, phi_weyl};
use freealg_bench::{dense_pbw, spread_group};

fn multiplication(c: &mut Criterion) {
    let (f, g) = (dense_pbw(4), dense_pbw(3));
    c.bench_function("pbw_mul closed form, degree 4 × 3", |b| b.iter(|| pbw_mul(black_box(&f), black_box(&g))));
    c.bench_function("pbw_mul rewriting, degree 4 × 3", |b| b.iter(|| pbw_naive_mul(black_box(&f), black_box(&g))));
    let (p, q) = (spread_group(10), spread_group(8));
    c.bench_function("ha_mul 10 × 8 terms", |b| b.iter(|| ha_mul(black_box(&p), black_box(&q))));
    let u = FreeGroupAlgElem::parse("g+g^-1+h+h^-1").unwrap();
    let u3 = fga_mul(&fga_mul(&u, &u), &u);
    c.bench_function("fga_mul cubic × linear", |b| b.iter(|| fga_mul(black_box(&u3), black_box(&u))));
}

fn series(c: &mut Criterion) {
    let f = dense_pbw(4);
    c.bench_function("phi_weyl degree 4", |b| b.iter(|| phi_weyl(black_box(&f)).unwrap()));
    c.bench_function("enumerate free group words L=6", |b| {
        b.iter(|| enumerate_words(WordKind::FreeGroup, 2, black_box(6)))
    });
}

fn certification(c: &mut Criterion) {
    let mut g = c.benchmark_group("certify");
    g.sample_size(10);
    let opts = CertifyOptions::default();
    g.bench_function("{s, usu⁻¹} free group L=2", |b| {
        b.iter(|| {
            certify_elements(&["cauchon_s", "cauchon_conj"], ModelId::Weyl, WordKind::FreeGroup, 2, &opts).unwrap()
        })
    });
    g.bench_function("{S1, T1} free monoid L=3", |b| {
        b.iter(|| certify_elements(&["S1", "T1"], ModelId::Weyl, WordKind::FreeMonoid, 3, &opts).unwrap())
    });
    g.bench_function("{g+g⁻¹, h+h⁻¹} exact L=4", |b| {
        b.iter(|| certify_elements(&["g+g^-1", "h+h^-1"], ModelId::Fga, WordKind::FreeMonoid, 4, &opts).unwrap())
    });
    g.finish();
}

criterion_group!(benches, multiplication, series, certification);
criterion_main!(benches);
