use criterion::{black_box, criterion_group, criterion_main, Criterion};

use fcd_core::chromatic::ChromaticEngine;
use fcd_core::diagram::FramedChordDiagram;
use fcd_core::graph::FramedGraph;
use fcd_core::linalg::{rank_mod_p, SparseExactMatrix};
use fcd_core::reduction::reduce_diagram;
use fcd_core::relations::fourt_diagram_relations;

fn bench_enumerate(c: &mut Criterion) {
    c.bench_function("enumerate framed diagrams order 4", |b| {
        b.iter(|| black_box(FramedChordDiagram::enumerate(black_box(4), true)))
    });
}

fn bench_graph_canonical(c: &mut Criterion) {
    // A 7-vertex wheel-like framed graph, relabeled away from canonical.
    let framing = vec![0u8, 1, 0, 1, 0, 1, 0];
    let edges = [
        (6, 0),
        (6, 1),
        (6, 2),
        (6, 3),
        (6, 4),
        (6, 5),
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 0),
    ];
    c.bench_function("canonical form of a 7-vertex framed graph", |b| {
        b.iter(|| black_box(FramedGraph::from_parts(black_box(framing.clone()), &edges).unwrap()))
    });
}

fn bench_relations(c: &mut Criterion) {
    c.bench_function("framed diagram relations order 4", |b| {
        b.iter(|| black_box(fourt_diagram_relations(black_box(4), true)))
    });
}

fn bench_rank(c: &mut Criterion) {
    let basis = FramedChordDiagram::enumerate(4, true);
    let rels = fourt_diagram_relations(4, true);
    let matrix = SparseExactMatrix::from_lincombs(&rels.vectors, &basis);
    c.bench_function("rank mod p of the order-4 relation matrix", |b| {
        b.iter(|| black_box(rank_mod_p(black_box(&matrix), 1073741827).unwrap()))
    });
}

fn bench_chromatic(c: &mut Criterion) {
    let g = FramedGraph::parse("6;000111;1-2,1-3,2-3,3-4,4-5,4-6,5-6,1-6").unwrap();
    c.bench_function("framed chromatic of a 6-vertex graph", |b| {
        b.iter(|| {
            let mut engine = ChromaticEngine::new();
            black_box(engine.chromatic(black_box(&g)))
        })
    });
}

fn bench_reduce(c: &mut Criterion) {
    let d = FramedChordDiagram::parse("1 2 3 4 1 2 3 4;0101").unwrap();
    c.bench_function("reduce an order-4 mixed diagram", |b| {
        b.iter(|| black_box(reduce_diagram(black_box(&d))))
    });
}

criterion_group!(
    benches,
    bench_enumerate,
    bench_graph_canonical,
    bench_relations,
    bench_rank,
    bench_chromatic,
    bench_reduce
);
criterion_main!(benches);
