//! Sequential against data-parallel execution on the hot loops: the
//! monodromy search, cocycle filling, explicit covers and isomorphism tests.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hypercover::covers::{explicit_form_with, module_cover, ExtensionContext};
use hypercover::homrep::HomologyModule;
use hypercover::hypermap::{klein, r2_6, search_all};
use hypercover::modec::chiral_split;
use hypercover::par::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search_all_8_2_8");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(search_all(8, 2, 8, 8, 16, exec)))
        });
    }
    g.finish();
}

fn cocycles(c: &mut Criterion) {
    let m = Arc::new(HomologyModule::new(&klein(), 2).unwrap());
    let w = chiral_split(&m).unwrap().unwrap().plus;
    let mut g = c.benchmark_group("fill_cocycles_klein_p2");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                let ctx = ExtensionContext::new(m.clone(), w.clone()).unwrap();
                ctx.fill_cocycles(exec);
                black_box(ctx.order())
            })
        });
    }
    g.finish();
}

fn explicit(c: &mut Criterion) {
    let m = HomologyModule::new(&r2_6(), 13).unwrap();
    let d = module_cover(&m, "r2_6", &chiral_split(&m).unwrap().unwrap().plus).unwrap();
    let mut g = c.benchmark_group("explicit_1352_darts");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(explicit_form_with(&d, 2000, exec).unwrap()))
        });
    }
    g.finish();

    let h = explicit_form_with(&d, 2000, Exec::Parallel).unwrap();
    let mirror = h.mirror();
    let mut g = c.benchmark_group("iso_chiral_1352_darts");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(h.iso_with(&mirror, exec)))
        });
    }
    g.finish();
}

criterion_group!(benches, search, cocycles, explicit);
criterion_main!(benches);
