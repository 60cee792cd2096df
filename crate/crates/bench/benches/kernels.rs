use casimir_core::algebra::rat;
use casimir_core::connection::{FormStyle, GlConnection, TorusPoint};
use casimir_core::glrep::GlnModule;
use casimir_core::monodromy::{alcove_barycenter, TrigForm};
use casimir_core::ode::OdeOptions;
use casimir_core::qkz::QkzSystem;
use casimir_core::rootsys::{RootSystem, RootType};
use casimir_core::tits::{finite_tits_model, CorootSection};
use casimir_core::yangian::EvalModule;
use casimir_core::Rational;
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn exact_algebra(c: &mut Criterion) {
    let m = GlnModule::new(3, 3);
    let x = m.casimir();
    c.bench_function("matmul 27x27 rational", |b| b.iter(|| black_box(&x).matmul(black_box(&x))));
    let k = GlnModule::new(3, 1).e(0, 1).clone();
    c.bench_function("kron 3x3 by 9x9", |b| b.iter(|| black_box(&k).kron(black_box(GlnModule::new(3, 2).e(1, 2)))));
}

fn connection(c: &mut Criterion) {
    let a: Vec<Rational> = vec![rat(0, 1), rat(2, 5), rat(-3, 7)];
    let conn = GlConnection::new(EvalModule::vector_power(3, &a[..2]));
    let p = TorusPoint::new(vec![rat(2, 1), rat(-3, 1), rat(5, 7)]).unwrap();
    c.bench_function("flatness residual n=3 m=2", |b| {
        b.iter(|| conn.flatness_residual(FormStyle::Tau, black_box(&p)).unwrap())
    });
    let sys = QkzSystem::new(2, a, rat(1, 3)).unwrap();
    let q = TorusPoint::new(vec![rat(3, 2), rat(-1, 4)]).unwrap();
    c.bench_function("qkz consistency m=3", |b| b.iter(|| sys.consistency_residual(black_box(&q)).unwrap()));
}

fn groups(c: &mut Criterion) {
    c.bench_function("weyl group B3", |b| b.iter(|| RootSystem::new(black_box(RootType::B(3))).unwrap()));
    let model = finite_tits_model(3).unwrap();
    c.bench_function("tits closure sl3", |b| b.iter(|| model.closure(&model.generators, 1000).unwrap().len()));
    let s = CorootSection::new(3).unwrap();
    c.bench_function("coroot section sl3", |b| b.iter(|| s.section(black_box(&[3, -2])).unwrap()));
}

fn transport(c: &mut Criterion) {
    let form = TrigForm::new(&EvalModule::vector_power(3, &[rat(0, 1), rat(2, 5)]), 1.0).unwrap();
    let x = alcove_barycenter(3);
    let opts = OdeOptions::with_tol(1e-8);
    let mut group = c.benchmark_group("monodromy");
    group.sample_size(10);
    group.bench_function("braid generator n=3 m=2", |b| b.iter(|| form.braid_generator(1, black_box(&x), &opts).unwrap()));
    group.finish();
}

criterion_group!(benches, exact_algebra, connection, groups, transport);
criterion_main!(benches);
