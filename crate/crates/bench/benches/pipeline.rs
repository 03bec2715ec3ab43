use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qtrace::diffop::{reconstruct_operator, TieBreak};
use qtrace::intertwine::{normalize, psi_series, singular_vector, PsiSeries};
use qtrace::macdonald::{appendix, MacContext};
use qtrace::qfield::wt_from_ints;
use qtrace::uqg::{FiniteModule, Spec, Verma, DEFAULT_DIM_CAP};
use qtrace::{Mat, RootSystem};

fn psi(label: &str, theta: &[i64], depth: usize) -> PsiSeries {
    let rs = RootSystem::from_label(label).unwrap();
    let verma = Verma::new(&rs);
    let module = FiniteModule::build(&verma, &wt_from_ints(theta), DEFAULT_DIM_CAP).unwrap();
    let sv = normalize(&singular_vector(&verma, &module).unwrap(), &module).unwrap();
    psi_series(&verma, &module, &sv, depth).unwrap()
}

fn shapovalov(c: &mut Criterion) {
    let rs = RootSystem::from_label("A2").unwrap();
    c.bench_function("shapovalov_det_a2_mu_2_1", |b| {
        b.iter(|| {
            let v = Verma::new(&rs);
            black_box(v.gram(&Spec::Symbolic, &[2, 1]).unwrap().det_bareiss())
        })
    });
}

fn trace_function(c: &mut Criterion) {
    c.bench_function("psi_a1_k1_depth8", |b| b.iter(|| black_box(psi("A1", &[1], 8))));
    c.bench_function("psi_a2_adjoint_depth4", |b| b.iter(|| black_box(psi("A2", &[1, 1], 4))));
}

fn reconstruction(c: &mut Criterion) {
    let p = psi("A1", &[1], 8);
    let c0 = Mat::from_rows(vec![vec![appendix::c0()]]);
    c.bench_function("reconstruct_m0_depth8", |b| b.iter(|| black_box(reconstruct_operator(&p, &c0, TieBreak::default()).unwrap())));
}

fn eigen_equation(c: &mut Criterion) {
    let ctx = MacContext::new(3, 1).unwrap();
    let psi = ctx.normalized_psi(&ctx.psi(4).unwrap()).unwrap();
    let m1 = ctx.macdonald_operator(1).unwrap().to_series(4).unwrap();
    c.bench_function("apply_m1_sl3_k1_depth4", |b| b.iter(|| black_box(m1.apply(ctx.rs.form(), &psi).unwrap())));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = shapovalov, trace_function, reconstruction, eigen_equation
}
criterion_main!(benches);
