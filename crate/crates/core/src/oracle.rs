//! Brute-force ground truth for small variable sets.
//!
//! Nothing here goes through the fast paths it is meant to check: imsets are
//! built from the defining sums, acyclicity and chordality are tested by
//! explicit search, and optima come from exhaustive enumeration.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::{Dag, MixedGraph, UndirectedGraph};
use crate::imset::CharVector;
use crate::learners::{CliqueObjective, LearnResult, WeightTable};
use crate::varset::{NodeSubset, VarSet};

/// Largest variable set [`enumerate_dags`] accepts.
pub const ENUMERATION_MAX_VARIABLES: usize = 5;
/// Largest variable set [`brute_force_optimum`] accepts.
pub const BRUTE_FORCE_MAX_VARIABLES: usize = 8;

/// One Markov equivalence class of a [`DagUniverse`].
#[derive(Clone, Debug)]
pub struct EquivalenceClass {
    /// Characteristic imset shared by the members.
    pub key: CharVector,
    /// Indices into [`DagUniverse::dags`], ascending; the first is the
    /// representative with the least arc-set encoding.
    pub members: Vec<usize>,
}

/// Every labeled DAG over a variable set, partitioned into Markov
/// equivalence classes.
#[derive(Clone, Debug)]
pub struct DagUniverse {
    base: VarSet,
    dags: Vec<Dag>,
    classes: Vec<EquivalenceClass>,
    class_of: Vec<usize>,
}

impl DagUniverse {
    pub fn base(&self) -> &VarSet {
        &self.base
    }

    /// DAGs in increasing order of arc-set encoding.
    pub fn dags(&self) -> &[Dag] {
        &self.dags
    }

    /// Classes in order of their representatives.
    pub fn classes(&self) -> &[EquivalenceClass] {
        &self.classes
    }

    pub fn class_of(&self, dag_index: usize) -> usize {
        self.class_of[dag_index]
    }

    pub fn representative(&self, class: usize) -> &Dag {
        &self.dags[self.classes[class].members[0]]
    }

    /// The essential graph of a class from its definition: `a -> b` when
    /// every member has that arc, `a - b` when members disagree.
    pub fn class_essential_graph(&self, class: usize) -> MixedGraph {
        let members = &self.classes[class].members;
        let n = self.base.len();
        let mut arcs = Vec::new();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let forward = members.iter().filter(|&&m| self.dags[m].has_arc(a, b)).count();
                let backward = members.iter().filter(|&&m| self.dags[m].has_arc(b, a)).count();
                if forward == members.len() {
                    arcs.push((a, b));
                } else if forward > 0 && backward > 0 && a < b {
                    edges.push((a, b));
                }
            }
        }
        MixedGraph::new(self.base.clone(), arcs, edges).expect("class members share a skeleton")
    }
}

/// All DAGs on `n` variables named `a`, `b`, ...
pub fn enumerate_dags(n: usize) -> Result<DagUniverse> {
    if !(2..=ENUMERATION_MAX_VARIABLES).contains(&n) {
        return Err(Error::OutOfRange { name: "n", value: n, range: format!("2..={ENUMERATION_MAX_VARIABLES}") });
    }
    enumerate_dags_over(VarSet::alphabetic(n)?)
}

/// All DAGs over `base`.
///
/// Candidate arc sets are the subsets of ordered pairs, visited in increasing
/// bit order (pairs ordered lexicographically); sets containing both
/// directions of a pair or a directed cycle are skipped.
pub fn enumerate_dags_over(base: VarSet) -> Result<DagUniverse> {
    let n = base.len();
    if n > ENUMERATION_MAX_VARIABLES {
        return Err(Error::OverCap { what: "DAG enumeration", n, cap: ENUMERATION_MAX_VARIABLES });
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut dags = Vec::new();
    let mut classes: Vec<EquivalenceClass> = Vec::new();
    let mut index: HashMap<CharVector, usize> = HashMap::new();
    let mut class_of = Vec::new();
    'sets: for mask in 0u64..1 << pairs.len() {
        let mut parents = vec![NodeSubset::EMPTY; n];
        for (bit, &(a, b)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                if parents[a].contains(b) {
                    continue 'sets;
                }
                parents[b] = parents[b].with(a);
            }
        }
        if has_directed_cycle(&parents) {
            continue;
        }
        let dag = Dag::from_parent_sets(base.clone(), parents)?;
        let key = definitional_characteristic(&dag);
        let id = dags.len();
        let class = *index.entry(key.clone()).or_insert_with(|| {
            classes.push(EquivalenceClass { key, members: Vec::new() });
            classes.len() - 1
        });
        classes[class].members.push(id);
        class_of.push(class);
        dags.push(dag);
    }
    Ok(DagUniverse { base, dags, classes, class_of })
}

/// Depth-first search for a directed cycle; `parents[j]` lists arcs into `j`.
pub fn has_directed_cycle(parents: &[NodeSubset]) -> bool {
    fn visit(v: usize, parents: &[NodeSubset], state: &mut [u8]) -> bool {
        // 0 = new, 1 = on stack, 2 = done; walk arcs backwards
        state[v] = 1;
        for u in parents[v].iter() {
            if state[u] == 1 || (state[u] == 0 && visit(u, parents, state)) {
                return true;
            }
        }
        state[v] = 2;
        false
    }
    let mut state = vec![0u8; parents.len()];
    (0..parents.len()).any(|v| state[v] == 0 && visit(v, parents, &mut state))
}

/// The standard imset from its defining formula, as a dense vector indexed
/// by subset bits.
pub fn definitional_standard_imset(g: &Dag) -> Vec<i64> {
    let n = g.len();
    let mut u = vec![0i64; 1 << n];
    u[(1 << n) - 1] += 1;
    u[0] -= 1;
    for i in 0..n {
        let pa = g.parents(i);
        u[pa.bits() as usize] += 1;
        u[pa.with(i).bits() as usize] -= 1;
    }
    u
}

/// `1 − Σ_{X ⊇ T} u(X)` with the superset sum written out.
pub fn definitional_characteristic(g: &Dag) -> CharVector {
    let u = definitional_standard_imset(g);
    let base = g.base().clone();
    let entries: Vec<(NodeSubset, i64)> = base
        .char_domain()
        .map(|t| {
            let portrait: i64 =
                (0..u.len()).filter(|&x| t.is_subset_of(NodeSubset::from_bits(x as u32))).map(|x| u[x]).sum();
            (t, 1 - portrait)
        })
        .collect();
    CharVector::from_entries(base, entries).expect("subsets of the base")
}

/// Skeleton edges `(a, b)` and immoralities `(a, b, c)`, both with `a < b`.
pub type StructureKey = (BTreeSet<(usize, usize)>, BTreeSet<(usize, usize, usize)>);

/// The skeleton and immoralities of `g`, from their definitions.
pub fn skeleton_and_immoralities(g: &Dag) -> StructureKey {
    let n = g.len();
    let adjacent = |a: usize, b: usize| g.has_arc(a, b) || g.has_arc(b, a);
    let mut skeleton = BTreeSet::new();
    let mut imm = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            if adjacent(a, b) {
                skeleton.insert((a, b));
                continue;
            }
            for c in 0..n {
                if g.has_arc(a, c) && g.has_arc(b, c) {
                    imm.insert((a, b, c));
                }
            }
        }
    }
    (skeleton, imm)
}

/// All cliques with at least two members, in canonical subset order.
pub fn cliques(h: &UndirectedGraph) -> Vec<NodeSubset> {
    h.base()
        .char_domain()
        .filter(|s| {
            let ix: Vec<usize> = s.iter().collect();
            ix.iter().enumerate().all(|(x, &a)| ix[x + 1..].iter().all(|&b| h.has_edge(a, b)))
        })
        .collect()
}

/// Size of the largest clique (1 for a graph without edges).
pub fn max_clique_size(h: &UndirectedGraph) -> usize {
    cliques(h).iter().map(|s| s.len()).max().unwrap_or(1)
}

/// Chordality by search for an induced cycle of length at least four: a node
/// set whose induced subgraph is connected with every degree equal to two.
pub fn is_chordal_naive(h: &UndirectedGraph) -> bool {
    !h.base().subsets().filter(|s| s.len() >= 4).any(|s| {
        let induced = h.induced(s);
        s.iter().all(|v| induced.degree(v) == 2) && induced.components().iter().filter(|c| c.len() > 1).count() == 1
    })
}

/// Acyclicity of an undirected graph by depth-first search.
fn is_forest_naive(h: &UndirectedGraph) -> bool {
    let n = h.len();
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        let mut stack = vec![(root, usize::MAX)];
        seen[root] = true;
        while let Some((v, from)) = stack.pop() {
            for w in h.neighbors(v).iter() {
                if w == from {
                    continue;
                }
                if seen[w] {
                    return false;
                }
                seen[w] = true;
                stack.push((w, v));
            }
        }
    }
    true
}

/// Structural class searched by [`brute_force_optimum`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Problem {
    Forest,
    SpanningTree,
    /// Forest with every degree at most `k`.
    DegreeBoundedForest(usize),
    /// Spanning tree with every degree at most `k`.
    DegreeBoundedTree(usize),
    Matching,
    Chordal {
        max_clique: Option<usize>,
    },
}

/// How a candidate subgraph is valued.
#[derive(Clone, Copy)]
pub enum Weights<'a> {
    /// Sum of edge weights; candidates are subgraphs of the table's graph.
    Pairs(&'a WeightTable),
    /// Sum of clique weights over subgraphs of `allowed`.
    Cliques { allowed: &'a UndirectedGraph, objective: &'a CliqueObjective },
}

impl Weights<'_> {
    fn allowed(&self) -> &UndirectedGraph {
        match self {
            Weights::Pairs(w) => w.allowed(),
            Weights::Cliques { allowed, .. } => allowed,
        }
    }

    fn value(&self, g: &UndirectedGraph) -> f64 {
        match self {
            Weights::Pairs(w) => g.edges().into_iter().map(|(a, b)| w.weight(a, b).unwrap_or(0.0)).sum(),
            Weights::Cliques { objective, .. } => cliques(g).into_iter().map(|s| objective.get(s)).sum(),
        }
    }
}

fn feasible(problem: Problem, g: &UndirectedGraph) -> bool {
    let n = g.len();
    let spanning = || g.edge_count() == n - 1 && is_forest_naive(g);
    match problem {
        Problem::Forest => is_forest_naive(g),
        Problem::SpanningTree => spanning(),
        Problem::DegreeBoundedForest(k) => g.max_degree() <= k && is_forest_naive(g),
        Problem::DegreeBoundedTree(k) => g.max_degree() <= k && spanning(),
        Problem::Matching => g.max_degree() <= 1,
        Problem::Chordal { max_clique } => {
            is_chordal_naive(g) && max_clique.is_none_or(|mc| cliques(g).iter().all(|s| s.len() <= mc))
        }
    }
}

/// Exhaustive optimum over all feasible subgraphs of the allowed graph;
/// `Ok(None)` if none is feasible. Among equal values the first subgraph in
/// enumeration order wins.
///
/// Edge subsets are enumerated recursively. For the forest-like problems a
/// branch stops once the partial edge set already violates the degree bound
/// or has too many edges; every leaf is checked from the definitions.
pub fn brute_force_optimum(problem: Problem, weights: Weights<'_>) -> Result<Option<LearnResult>> {
    let allowed = weights.allowed();
    let n = allowed.len();
    if n > BRUTE_FORCE_MAX_VARIABLES {
        return Err(Error::OverCap { what: "brute force", n, cap: BRUTE_FORCE_MAX_VARIABLES });
    }
    let (max_edges, max_degree) = match problem {
        Problem::Forest | Problem::SpanningTree => (n - 1, n),
        Problem::DegreeBoundedForest(k) | Problem::DegreeBoundedTree(k) => (n - 1, k),
        Problem::Matching => (n / 2, 1),
        Problem::Chordal { .. } => (usize::MAX, n),
    };
    let edges = allowed.edges();
    let mut best: Option<(f64, UndirectedGraph)> = None;
    let mut current = UndirectedGraph::empty(allowed.base().clone());

    struct Ctx<'a, 'w> {
        problem: Problem,
        weights: Weights<'w>,
        edges: &'a [(usize, usize)],
        max_edges: usize,
        max_degree: usize,
    }

    fn walk(ctx: &Ctx<'_, '_>, idx: usize, current: &mut UndirectedGraph, best: &mut Option<(f64, UndirectedGraph)>) {
        if idx == ctx.edges.len() {
            if feasible(ctx.problem, current) {
                let value = ctx.weights.value(current);
                if best.as_ref().is_none_or(|(b, _)| value > *b) {
                    *best = Some((value, current.clone()));
                }
            }
            return;
        }
        let (a, b) = ctx.edges[idx];
        walk(ctx, idx + 1, current, best);
        if current.edge_count() < ctx.max_edges
            && current.degree(a) < ctx.max_degree
            && current.degree(b) < ctx.max_degree
        {
            current.add_edge(a, b);
            walk(ctx, idx + 1, current, best);
            current.remove_edge(a, b);
        }
    }

    let ctx = Ctx { problem, weights, edges: &edges, max_edges, max_degree };
    walk(&ctx, 0, &mut current, &mut best);
    Ok(best.map(|(objective, graph)| LearnResult { graph, objective, optimal: true }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::clique_reduction;

    #[test]
    fn dag_counts() {
        for (n, dags, classes) in [(2, 3, 2), (3, 25, 11)] {
            let u = enumerate_dags(n).unwrap();
            assert_eq!(u.dags().len(), dags);
            assert_eq!(u.classes().len(), classes);
        }
        assert!(matches!(enumerate_dags(1), Err(Error::OutOfRange { .. })));
        assert!(matches!(enumerate_dags(6), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn representatives_are_least() {
        let u = enumerate_dags(3).unwrap();
        // the empty graph is its own class and comes first
        assert_eq!(u.representative(0).arc_count(), 0);
        for c in u.classes() {
            assert!(c.members.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn triangle_forest_instance() {
        let k = UndirectedGraph::complete(VarSet::alphabetic(3).unwrap());
        let w = WeightTable::new(k, [((0, 1), 3.0), ((1, 2), 2.0), ((0, 2), 1.0)]).unwrap();
        let r = brute_force_optimum(Problem::Forest, Weights::Pairs(&w)).unwrap().unwrap();
        assert_eq!(r.objective, 5.0);
    }

    #[test]
    fn star_tree_is_infeasible() {
        let base = VarSet::alphabetic(5).unwrap();
        let k = UndirectedGraph::new(base, (1..5).map(|i| (0, i))).unwrap();
        let w = WeightTable::new(k.clone(), k.edges().into_iter().map(|e| (e, 1.0))).unwrap();
        assert!(brute_force_optimum(Problem::DegreeBoundedTree(2), Weights::Pairs(&w)).unwrap().is_none());
    }

    #[test]
    fn four_cycle_has_no_triangle() {
        let base = VarSet::alphabetic(4).unwrap();
        let k = UndirectedGraph::new(base, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(!is_chordal_naive(&k));
        let w = clique_reduction(&k, 3).unwrap();
        let r =
            brute_force_optimum(Problem::Chordal { max_clique: None }, Weights::Cliques { allowed: &k, objective: &w })
                .unwrap()
                .unwrap();
        assert_eq!(r.objective, 0.0);
        assert_eq!(max_clique_size(&k), 2);
    }
}
