use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use domset_core::{
    build_lp, gamma_branch_bound, generate_graph, run_pipeline, run_pipeline_direct, simplex_solve, Generator,
    GraphClass,
};

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    for n in [100, 1000] {
        let g = generate_graph(&Generator::RandomApollonian { n }, 1).unwrap();
        group.bench_with_input(BenchmarkId::new("engine", n), &g, |b, g| {
            b.iter(|| run_pipeline(g, GraphClass::Planar))
        });
        group.bench_with_input(BenchmarkId::new("direct", n), &g, |b, g| {
            b.iter(|| run_pipeline_direct(g, GraphClass::Planar))
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let g = generate_graph(&Generator::RandomApollonian { n: 40 }, 3).unwrap();
    c.bench_function("branch_bound_apollonian_40", |b| {
        b.iter(|| gamma_branch_bound(&g, 10_000_000))
    });
}

fn lp(c: &mut Criterion) {
    let model = build_lp(GraphClass::Planar);
    c.bench_function("simplex_planar", |b| b.iter(|| simplex_solve(&model)));
}

criterion_group!(benches, pipeline, oracle, lp);
criterion_main!(benches);
