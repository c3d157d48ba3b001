use criterion::{black_box, criterion_group, criterion_main, Criterion};
use pqcol::gadgets::{build_pincushion, build_replicator, verify_pincushion, verify_replicator, VerifyLimits};
use pqcol::graph::{canonical_labelling, enumerate_graphs};
use pqcol::partition::{find_partition, search_unique};
use pqcol::reduction::{enumerate_hypergraphs, parse_hypergraph, reduce};
use pqcol::{ForcingAnchors, GadgetSet, Property, PropertyPairParams};

fn pair() -> (Property, Property) {
    (Property::edgeless(), Property::triangle_free())
}

fn anchors() -> ForcingAnchors {
    let (o, t) = pair();
    ForcingAnchors::search(&o, &t, 9).unwrap().unwrap()
}

fn graphs(c: &mut Criterion) {
    c.bench_function("enumerate graphs n<=6", |b| {
        b.iter(|| enumerate_graphs(black_box(6)).unwrap().count())
    });
    let all: Vec<_> = enumerate_graphs(6).unwrap().collect();
    c.bench_function("canonical labelling, all graphs n<=6", |b| {
        b.iter(|| all.iter().map(|g| canonical_labelling(g).position.len()).sum::<usize>())
    });
    let (o, t) = pair();
    c.bench_function("fixture search (O,T)", |b| {
        b.iter(|| search_unique(&[o.clone(), t.clone()], 9, true).unwrap())
    });
}

fn gadgets(c: &mut Criterion) {
    let (o, t) = pair();
    let a = anchors();
    let params = PropertyPairParams::new(&o, &t);
    let limits = VerifyLimits::default();
    let r = build_replicator(&o, &t, &a).unwrap();
    c.bench_function("verify replicator", |b| {
        b.iter(|| verify_replicator(&r, &o, &t, &limits).unwrap())
    });
    let n = build_pincushion(&o, &t, &params, &r).unwrap();
    c.bench_function("verify pin cushion", |b| {
        b.iter(|| verify_pincushion(&n, &o, &t, &params, &limits).unwrap())
    });
    c.bench_function("solve pin cushion", |b| {
        b.iter(|| find_partition(&n.graph, &[o.clone(), t.clone()]).unwrap())
    });
}

fn reduction(c: &mut Criterion) {
    let (o, t) = pair();
    let set = GadgetSet::build(&o, &t, anchors(), None).unwrap();
    let props = set.props();
    let k4 = parse_hypergraph("3 1 4 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n").unwrap();
    c.bench_function("reduce 4 triples", |b| b.iter(|| reduce(&k4, &set).unwrap()));
    let g = reduce(&k4, &set).unwrap().graph;
    let mut group = c.benchmark_group("slow");
    group.sample_size(10);
    group.bench_function("solve unsatisfiable 4 triples", |b| {
        b.iter(|| find_partition(&g, &props).unwrap())
    });
    group.finish();
    c.bench_function("enumerate hypergraphs v<=4 e<=3", |b| {
        b.iter(|| enumerate_hypergraphs(4, 3, 3, 1).len())
    });
}

criterion_group!(benches, graphs, gadgets, reduction);
criterion_main!(benches);
