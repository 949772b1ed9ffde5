use criterion::{criterion_group, criterion_main, Criterion};
use lanecraft::config::MatchConfig;
use lanecraft::experiments::Match;
use lanecraft::influence::{compose, compose_into};

#[path = "../tests/common/mod.rs"]
mod common;

fn compose_dense(c: &mut Criterion) {
    let (spec, view, tuning) = common::dense_scene();
    let mut grid = compose(&view, &spec, &tuning);
    c.bench_function("compose 120x30, 30 features", |b| b.iter(|| compose_into(&mut grid, &view, &tuning)));
}

fn one_minute_of_play(c: &mut Criterion) {
    let cfg = MatchConfig::default();
    let mut g = c.benchmark_group("match");
    g.sample_size(10);
    g.bench_function("first 60 s of a solo match", |b| {
        b.iter(|| {
            let mut m = Match::new(&cfg, 1).unwrap();
            while m.world().clock() < 60.0 {
                m.step().unwrap();
            }
        })
    });
    g.finish();
}

criterion_group!(benches, compose_dense, one_minute_of_play);
criterion_main!(benches);
