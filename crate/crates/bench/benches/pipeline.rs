//! Benchmarks for the stages of the pipeline: polytope construction, system
//! reduction, kernel extraction, and a seeded find-first proof search.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use poly120::paritysearch::{search_incremental, SearchConfig, SearchMode};
use poly120::polytope::{Cell24Label, Polytope};
use poly120::RayBasisSystem;

/// The 17-cell drop that leaves the 96-basis system.
fn drop_cells() -> Vec<Cell24Label> {
    [
        "A'A", "A'B", "A'C", "A'D", "A'E", "B'B", "B'C", "B'D", "B'E", "C'B", "C'C", "C'D",
        "C'E", "D'B", "D'C", "D'D", "D'E",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("construction");
    group.sample_size(10);
    group.bench_function("polytope", |b| {
        b.iter(|| black_box(Polytope::construct().unwrap()))
    });
    group.finish();
}

fn reduction(c: &mut Criterion) {
    let polytope = Polytope::construct().unwrap();
    let full = RayBasisSystem::full_system(&polytope);
    let cells = drop_cells();
    c.bench_function("reduce_to_96", |b| b.iter(|| black_box(full.reduce(&cells))));
}

fn kernel(c: &mut Criterion) {
    let polytope = Polytope::construct().unwrap();
    let system = RayBasisSystem::full_system(&polytope).reduce(&drop_cells());
    let matrix = system.incidence_matrix();
    let mut group = c.benchmark_group("gf2");
    group.bench_function("rank_96", |b| b.iter(|| black_box(matrix.rank())));
    group.bench_function("kernel_basis_96", |b| {
        b.iter(|| black_box(matrix.kernel_basis()))
    });
    group.finish();
}

fn find_first(c: &mut Criterion) {
    let polytope = Polytope::construct().unwrap();
    let system = RayBasisSystem::full_system(&polytope).reduce(&drop_cells());
    let mut config = SearchConfig::new(19);
    config.mode = SearchMode::Incremental;
    config.seed_basis = Some(100);
    config.rng_seed = 100;
    config.max_solutions = 1;
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("find_first_19", |b| {
        b.iter(|| black_box(search_incremental(&system, &config).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, construction, reduction, kernel, find_first);
criterion_main!(benches);
