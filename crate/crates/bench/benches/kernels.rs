use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spherorb_bench::{color_vectors, orbits_of, systems, tensor_pairs, ORBIT_IDS};
use spherorb_core::cg::{product_map, verify_gamma_product, TTriple};
use spherorb_core::orbits::{
    build_triple, check_orbit, is_spherical, parse_orbit_id, verify_triple,
};
use spherorb_core::semigroup::{gamma_semigroup, is_minuscule, leq_sigma};
use std::hint::black_box;

fn triples(c: &mut Criterion) {
    let mut g = c.benchmark_group("triple");
    for id in ORBIT_IDS {
        let orbit = parse_orbit_id(id).unwrap();
        g.bench_with_input(BenchmarkId::new("build_verify", id), &orbit, |b, o| {
            b.iter(|| verify_triple(&build_triple(black_box(o)).unwrap()))
        });
        let t = build_triple(&orbit).unwrap();
        g.bench_with_input(BenchmarkId::new("is_spherical", id), &t, |b, t| {
            b.iter(|| is_spherical(black_box(t)))
        });
    }
    g.finish();
}

fn orbit_sweep(c: &mut Criterion) {
    let orbits = orbits_of("A:7:p=4", 4);
    c.bench_function("check_orbit/A:7:p=4", |b| {
        b.iter(|| {
            orbits
                .iter()
                .filter(|o| check_orbit(black_box(o)).unwrap().all_ok())
                .count()
        })
    });
}

fn order(c: &mut Criterion) {
    let mut g = c.benchmark_group("order");
    for sys in systems() {
        let vs = color_vectors(sys.n_colors(), 64);
        g.bench_with_input(BenchmarkId::new("leq_sigma", &sys.name), &vs, |b, vs| {
            b.iter(|| {
                vs.windows(2)
                    .filter(|w| leq_sigma(&sys, &w[0], &w[1]))
                    .count()
            })
        });
        g.bench_with_input(BenchmarkId::new("is_minuscule", &sys.name), &vs, |b, vs| {
            b.iter(|| vs.iter().filter(|v| is_minuscule(&sys, v)).count())
        });
    }
    g.finish();
}

fn hilbert_basis(c: &mut Criterion) {
    let mut g = c.benchmark_group("gamma_semigroup");
    g.sample_size(10);
    for sys in systems().into_iter().take(2) {
        g.bench_function(&sys.name, |b| {
            b.iter(|| gamma_semigroup(black_box(&sys), 4).unwrap())
        });
    }
    g.finish();
}

fn products(c: &mut Criterion) {
    let mut g = c.benchmark_group("cg");
    for (m, n) in tensor_pairs() {
        let label = format!("{m}x{n}");
        g.bench_function(BenchmarkId::new("verify_gamma_product", &label), |b| {
            b.iter(|| {
                verify_gamma_product(black_box(&m), black_box(&n))
                    .unwrap()
                    .ok
            })
        });
        let k = TTriple::new(m.m + n.m, m.m1 + n.m1, m.m2 + n.m2);
        g.bench_function(BenchmarkId::new("product_map", &label), |b| {
            b.iter(|| product_map(black_box(&k), &m, &n))
        });
    }
    g.finish();
}

criterion_group!(
    benches,
    triples,
    orbit_sweep,
    order,
    hilbert_basis,
    products
);
criterion_main!(benches);
