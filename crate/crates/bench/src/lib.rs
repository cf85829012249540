//! Seeded instance generators for the benchmarks.

use charimset::{Dag, UndirectedGraph, VarSet, WeightTable};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Variables `v0`, `v1`, ... (the alphabetic names run out at 20 anyway).
pub fn numbered(n: usize) -> VarSet {
    VarSet::new((0..n).map(|i| format!("v{i}"))).unwrap()
}

pub fn random_dag(rng: &mut impl Rng, n: usize, p: f64) -> Dag {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                arcs.push((order[i], order[j]));
            }
        }
    }
    Dag::new(numbered(n), arcs).unwrap()
}

/// Uniform weights in `[-1, 1)` on the complete graph.
pub fn complete_weights(rng: &mut impl Rng, n: usize) -> WeightTable {
    let k = UndirectedGraph::complete(numbered(n));
    let edges = k.edges();
    WeightTable::new(k, edges.into_iter().map(|e| (e, rng.gen_range(-1.0..1.0)))).unwrap()
}
