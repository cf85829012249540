use charimset::learners::{best_chordal_subgraph, degree_bounded_spanning_tree, max_weight_forest, ChordalObjective};
use charimset::CliqueObjective;
use charimset_bench::{complete_weights, rng};
use criterion::{criterion_group, criterion_main, Criterion};
use rand::Rng;
use std::hint::black_box;

fn learners(c: &mut Criterion) {
    let mut r = rng(2);
    let big = complete_weights(&mut r, 20);
    c.bench_function("max_weight_forest/K20", |b| b.iter(|| max_weight_forest(black_box(&big)).objective));

    let mid = complete_weights(&mut r, 9);
    c.bench_function("degree_bounded_spanning_tree/K9 k=2", |b| {
        b.iter(|| degree_bounded_spanning_tree(black_box(&mid), 2).unwrap())
    });

    let small = complete_weights(&mut r, 7);
    let mut cliques = CliqueObjective::from_pair_weights(&small);
    for s in small.base().char_domain().filter(|s| s.len() == 3) {
        cliques.set(s, r.gen_range(-0.5..0.5)).unwrap();
    }
    c.bench_function("best_chordal_subgraph/K7", |b| {
        b.iter(|| best_chordal_subgraph(ChordalObjective::Cliques(&cliques), small.allowed(), None).unwrap())
    });
}

criterion_group!(benches, learners);
criterion_main!(benches);
