use std::hint::black_box;
use std::sync::Arc;

use cherednik_core::bv::bv_suite;
use cherednik_core::groups::{parse_group_spec, Parameter, ReflectionGroup};
use cherednik_core::pbw::PbwEngine;
use cherednik_core::restricted::{cm_partition, RestrictedAlgebra};
use cherednik_core::verma::endo_character;
use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn group(spec: &str) -> Arc<ReflectionGroup> {
    Arc::new(ReflectionGroup::build(&parse_group_spec(spec).unwrap()).unwrap())
}

fn pbw_multiply(c: &mut Criterion) {
    for spec in ["Sn:3", "I2:4"] {
        let g = group(spec);
        let param = Parameter::generic(&g, 1);
        let engine = PbwEngine::new(g.clone(), &param);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pairs: Vec<_> = (0..16)
            .map(|_| (engine.random_element(&mut rng, 2, 2), engine.random_element(&mut rng, 2, 2)))
            .collect();
        c.bench_function(&format!("pbw multiply {spec}"), |b| {
            b.iter(|| {
                for (u, v) in &pairs {
                    black_box(engine.multiply(u, v).unwrap());
                }
            })
        });
    }
}

fn restricted(c: &mut Criterion) {
    let mut grp = c.benchmark_group("restricted");
    grp.sample_size(10);
    for spec in ["Zm:3", "Sn:3"] {
        let g = group(spec);
        let param = Parameter::generic(&g, 1);
        grp.bench_function(format!("build {spec}"), |b| {
            b.iter(|| black_box(RestrictedAlgebra::build(g.clone(), &param, None).unwrap()))
        });
        let alg = RestrictedAlgebra::build(g.clone(), &param, None).unwrap();
        grp.bench_function(format!("cm partition {spec}"), |b| {
            b.iter(|| black_box(cm_partition(&alg, 1).unwrap()))
        });
    }
    grp.finish();
}

fn characters(c: &mut Criterion) {
    let g = group("Sn:4");
    c.bench_function("endo character S4 (2,1,1) to q^24", |b| {
        b.iter(|| black_box(endo_character(&g, "(2,1,1)", 24).unwrap()))
    });
}

fn bv(c: &mut Criterion) {
    let mut grp = c.benchmark_group("bv");
    grp.sample_size(10);
    grp.bench_function("suite n=2 D=6", |b| {
        b.iter(|| {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            black_box(bv_suite(2, 6, 20, &mut rng).unwrap())
        })
    });
    grp.finish();
}

criterion_group!(benches, pbw_multiply, restricted, characters, bv);
criterion_main!(benches);
