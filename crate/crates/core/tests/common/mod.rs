//! Generators and independent reference computations shared by the
//! integration suites.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::HashMap;

use charimset::{Dag, Dataset, NodeSubset, UndirectedGraph, VarSet};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn base(n: usize) -> VarSet {
    VarSet::alphabetic(n).unwrap()
}

/// Random DAG: a random topological order, each forward arc with
/// probability `p`.
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
    Dag::new(base(n), arcs).unwrap()
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> UndirectedGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    UndirectedGraph::new(base(n), edges).unwrap()
}

/// Random chordal graph with its elimination order: start from a random
/// graph and, eliminating nodes in a random order, turn the not yet
/// eliminated neighbours of each node into a clique.
pub fn random_chordal(rng: &mut impl Rng, n: usize, p: f64) -> (UndirectedGraph, Vec<usize>) {
    let mut adj = vec![vec![false; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for (pos, &v) in order.iter().enumerate() {
        let later: Vec<usize> = order[pos + 1..].iter().copied().filter(|&u| adj[v][u]).collect();
        for &x in &later {
            for &y in &later {
                if x != y {
                    adj[x][y] = true;
                }
            }
        }
    }
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| adj[a][b]);
    (UndirectedGraph::new(base(n), edges.collect::<Vec<_>>()).unwrap(), order)
}

/// Orients every edge towards the node eliminated first, so each node's
/// parents are its later neighbours.
pub fn orient_by_elimination(h: &UndirectedGraph, order: &[usize]) -> Dag {
    let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let arcs: Vec<(usize, usize)> =
        h.edges().into_iter().map(|(a, b)| if pos[&a] > pos[&b] { (a, b) } else { (b, a) }).collect();
    Dag::new(h.base().clone(), arcs).unwrap()
}

/// Elimination order found by repeatedly removing a simplicial node (the
/// lowest-numbered one); `None` if the graph is not chordal.
pub fn simplicial_elimination(h: &UndirectedGraph) -> Option<Vec<usize>> {
    let n = h.len();
    let mut left: Vec<usize> = (0..n).collect();
    let mut order = Vec::new();
    while !left.is_empty() {
        let pick = left.iter().position(|&v| {
            let nb: Vec<usize> = left.iter().copied().filter(|&u| h.has_edge(u, v)).collect();
            nb.iter().all(|&x| nb.iter().all(|&y| x == y || h.has_edge(x, y)))
        })?;
        order.push(left.remove(pick));
    }
    Some(order)
}

/// Samples `rows` observations from a random network over `dag` with the
/// given cardinalities and conditional distributions drawn uniformly.
pub fn sample_dataset(rng: &mut impl Rng, dag: &Dag, cards: &[u32], rows: usize) -> Dataset {
    let n = dag.len();
    let order = dag.topological_order().unwrap();
    let mut tables: Vec<HashMap<Vec<u32>, Vec<f64>>> = vec![HashMap::new(); n];
    let mut data = Vec::with_capacity(rows);
    for _ in 0..rows {
        let mut row = vec![0u32; n];
        for &v in &order {
            let key: Vec<u32> = dag.parents(v).iter().map(|p| row[p]).collect();
            let card = cards[v] as usize;
            let probs = tables[v].entry(key).or_insert_with(|| {
                let raw: Vec<f64> = (0..card).map(|_| rng.gen_range(0.05..1.0)).collect();
                let s: f64 = raw.iter().sum();
                raw.into_iter().map(|x| x / s).collect()
            });
            let mut u: f64 = rng.gen();
            let mut state = card - 1;
            for (s, &p) in probs.iter().enumerate() {
                if u < p {
                    state = s;
                    break;
                }
                u -= p;
            }
            row[v] = state as u32;
        }
        data.push(row);
    }
    Dataset::new(base(n), cards.to_vec(), &data).unwrap()
}

/// Binary dataset from a random network on a random DAG.
pub fn random_binary_dataset(rng: &mut impl Rng, n: usize, rows: usize) -> Dataset {
    let dag = random_dag(rng, n, 0.5);
    sample_dataset(rng, &dag, &vec![2; n], rows)
}

/// Empirical mutual information of two columns, in nats.
pub fn mutual_information(d: &Dataset, a: usize, b: usize) -> f64 {
    let (ca, cb) = (d.cardinalities()[a] as usize, d.cardinalities()[b] as usize);
    let mut joint = vec![vec![0usize; cb]; ca];
    for (&x, &y) in d.column(a).iter().zip(d.column(b)) {
        joint[x as usize][y as usize] += 1;
    }
    let l = d.len() as f64;
    let pa: Vec<f64> = joint.iter().map(|r| r.iter().sum::<usize>() as f64 / l).collect();
    let pb: Vec<f64> = (0..cb).map(|y| joint.iter().map(|r| r[y]).sum::<usize>() as f64 / l).collect();
    let mut mi = 0.0;
    for x in 0..ca {
        for y in 0..cb {
            if joint[x][y] > 0 {
                let p = joint[x][y] as f64 / l;
                mi += p * (p / (pa[x] * pb[y])).ln();
            }
        }
    }
    mi
}

/// Chow-Liu tree by Prim's algorithm on mutual information. Among crossing
/// edges of equal weight the least pair `(a, b)`, `a < b`, wins.
pub fn chow_liu(d: &Dataset) -> Vec<(usize, usize)> {
    let n = d.base().len();
    let mut mi = vec![vec![0.0; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            mi[a][b] = mutual_information(d, a, b);
            mi[b][a] = mi[a][b];
        }
    }
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut tree = Vec::new();
    for _ in 1..n {
        let mut best: Option<(f64, (usize, usize))> = None;
        for a in 0..n {
            for b in a + 1..n {
                if inside[a] == inside[b] {
                    continue;
                }
                let w = mi[a][b];
                if best.is_none_or(|(bw, _)| w > bw) {
                    best = Some((w, (a, b)));
                }
            }
        }
        let (_, (a, b)) = best.unwrap();
        inside[a] = true;
        inside[b] = true;
        tree.push((a, b));
    }
    tree.sort();
    tree
}

/// Every edge pair of `K_n` in canonical order.
pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Connectivity of an edge mask over [`all_pairs`], by flood fill.
pub fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for (bit, &(a, b)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 && reached[a] != reached[b] {
                reached[a] = true;
                reached[b] = true;
                changed = true;
            }
        }
    }
    reached.into_iter().all(|r| r)
}

/// Acyclicity of an edge mask: a forest on `n` nodes with `e` edges has
/// exactly `n - e` components.
pub fn mask_acyclic(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    let mut label: Vec<usize> = (0..n).collect();
    for (bit, &(a, b)) in pairs.iter().enumerate() {
        if mask >> bit & 1 == 1 {
            let (la, lb) = (label[a], label[b]);
            if la == lb {
                return false;
            }
            for l in label.iter_mut() {
                if *l == lb {
                    *l = la;
                }
            }
        }
    }
    true
}

pub fn mask_graph(n: usize, pairs: &[(usize, usize)], mask: u32) -> UndirectedGraph {
    let edges: Vec<(usize, usize)> =
        pairs.iter().enumerate().filter(|&(bit, _)| mask >> bit & 1 == 1).map(|(_, &e)| e).collect();
    UndirectedGraph::new(base(n), edges).unwrap()
}

pub fn subset(ix: &[usize]) -> NodeSubset {
    NodeSubset::from_indices(ix.iter().copied())
}
