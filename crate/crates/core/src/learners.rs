//! Learning restricted undirected structures: forests and spanning trees
//! (greedy), their degree-bounded variants and chordal subgraphs (exact
//! branch-and-bound at desk scale), and the clique-detection instance
//! builder.
//!
//! Every learner sees the data only through edge or clique weights derived
//! from a [`ScoreOracle`]. Objectives are reported relative to the empty
//! graph, so for a learned forest `f`,
//! `score(f) = score(empty) + objective`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Dag, MixedGraph, UndirectedGraph};
use crate::recon;
use crate::scoring::ScoreOracle;
use crate::varset::{NodeSubset, VarSet};

/// Variable cap for the degree-bounded branch-and-bound.
pub const DEGREE_BOUNDED_MAX_VARIABLES: usize = 16;
/// Variable cap for the chordal subgraph search.
pub const CHORDAL_MAX_VARIABLES: usize = 12;

/// Real weights on the edges of an allowed graph `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightTable {
    allowed: UndirectedGraph,
    weights: BTreeMap<(usize, usize), f64>,
}

impl WeightTable {
    /// Pairs may be given in either order. Every edge of `allowed` needs a
    /// weight and no other pair may have one.
    pub fn new<I>(allowed: UndirectedGraph, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), f64)>,
    {
        let mut table = BTreeMap::new();
        for ((a, b), w) in weights {
            allowed.base().check_node(a)?;
            allowed.base().check_node(b)?;
            let key = (a.min(b), a.max(b));
            if !allowed.has_edge(a, b) {
                return Err(Error::WeightOffGraph(key.0, key.1));
            }
            if !w.is_finite() {
                return Err(Error::NonFiniteWeight(key.0, key.1));
            }
            table.insert(key, w);
        }
        if let Some((a, b)) = allowed.edges().into_iter().find(|e| !table.contains_key(e)) {
            return Err(Error::MissingWeight(a, b));
        }
        Ok(WeightTable { allowed, weights: table })
    }

    /// Edge weights `edge_weight(a, b)` for every edge of `allowed`.
    pub fn from_oracle(o: &ScoreOracle<'_>, allowed: UndirectedGraph) -> Result<Self> {
        if allowed.base() != o.base() {
            return Err(Error::BaseMismatch);
        }
        let weights = allowed
            .edges()
            .into_iter()
            .map(|(a, b)| o.edge_weight(a, b).map(|w| ((a, b), w)))
            .collect::<Result<Vec<_>>>()?;
        WeightTable::new(allowed, weights)
    }

    pub fn base(&self) -> &VarSet {
        self.allowed.base()
    }

    pub fn allowed(&self) -> &UndirectedGraph {
        &self.allowed
    }

    /// Weight of the edge `{a, b}`; `None` off the allowed graph.
    pub fn weight(&self, a: usize, b: usize) -> Option<f64> {
        self.weights.get(&(a.min(b), a.max(b))).copied()
    }

    /// Total weight of the edges of `g`, summed in canonical edge order.
    pub fn total(&self, g: &UndirectedGraph) -> f64 {
        g.edges().into_iter().map(|(a, b)| self.weights.get(&(a, b)).copied().unwrap_or(0.0)).sum()
    }

    /// Edges by decreasing weight; equal weights keep canonical pair order.
    fn sorted_edges(&self) -> Vec<(usize, usize, f64)> {
        let mut edges: Vec<(usize, usize, f64)> = self.weights.iter().map(|(&(a, b), &w)| (a, b, w)).collect();
        edges.sort_by(|x, y| y.2.total_cmp(&x.2).then((x.0, x.1).cmp(&(y.0, y.1))));
        edges
    }
}

/// A real weight for every subset with at least two members.
#[derive(Clone, Debug, PartialEq)]
pub struct CliqueObjective {
    base: VarSet,
    values: Vec<f64>,
}

impl CliqueObjective {
    pub fn zeros(base: VarSet) -> Self {
        let len = base.subset_count();
        CliqueObjective { base, values: vec![0.0; len] }
    }

    pub fn from_entries<I>(base: VarSet, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeSubset, f64)>,
    {
        let mut w = CliqueObjective::zeros(base);
        for (s, v) in entries {
            w.set(s, v)?;
        }
        Ok(w)
    }

    /// Pair weights on `|T| = 2`, zero elsewhere.
    pub fn from_pair_weights(w: &WeightTable) -> Self {
        let mut out = CliqueObjective::zeros(w.base().clone());
        for (&(a, b), &v) in &w.weights {
            out.values[NodeSubset::from_indices([a, b]).bits() as usize] = v;
        }
        out
    }

    /// Clique weights of a decomposable score-equivalent criterion.
    ///
    /// With `f(T)` the score gain of a DAG complete on `T`, the weights are
    /// the Möbius inverse `w(T) = Σ_{S ⊆ T} (-1)^{|T \ S|} f(S)`, so that for
    /// every chordal graph `G` the score gain equals the sum of `w` over the
    /// cliques of `G`.
    pub fn from_oracle(o: &ScoreOracle<'_>) -> Result<Self> {
        let base = o.base().clone();
        let n = base.len();
        if n > CHORDAL_MAX_VARIABLES {
            return Err(Error::OverCap { what: "clique weights from scores", n, cap: CHORDAL_MAX_VARIABLES });
        }
        let mut f = vec![0.0; base.subset_count()];
        for s in base.char_domain() {
            let mut gain = 0.0;
            let mut prefix = NodeSubset::EMPTY;
            for i in s.iter() {
                gain += o.local_score(i, prefix)? - o.local_score(i, NodeSubset::EMPTY)?;
                prefix = prefix.with(i);
            }
            f[s.bits() as usize] = gain;
        }
        for bit in 0..n {
            let b = 1usize << bit;
            for mask in 0..f.len() {
                if mask & b != 0 {
                    f[mask] -= f[mask ^ b];
                }
            }
        }
        Ok(CliqueObjective { base, values: f })
    }

    pub fn base(&self) -> &VarSet {
        &self.base
    }

    pub fn get(&self, s: NodeSubset) -> f64 {
        if s.len() < 2 {
            return 0.0;
        }
        self.values.get(s.bits() as usize).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, s: NodeSubset, value: f64) -> Result<()> {
        if s.len() < 2 {
            return Err(Error::OutsideDomain(s.len()));
        }
        if !s.is_subset_of(self.base.full()) {
            let n = self.base.len();
            return Err(Error::NodeOutOfRange { index: s.difference(self.base.full()).iter().next().unwrap(), n });
        }
        if !value.is_finite() {
            let ix: Vec<usize> = s.iter().collect();
            return Err(Error::NonFiniteWeight(ix[0], ix[1]));
        }
        self.values[s.bits() as usize] = value;
        Ok(())
    }

    /// Non-zero entries in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (NodeSubset, f64)> + '_ {
        self.base.char_domain().map(|s| (s, self.values[s.bits() as usize])).filter(|&(_, v)| v != 0.0)
    }

    /// `Σ_{cliques T of g, |T| ≥ 2} w(T)`, in canonical subset order.
    pub fn total(&self, g: &UndirectedGraph) -> f64 {
        self.base.char_domain().filter(|&s| g.is_clique(s)).map(|s| self.values[s.bits() as usize]).sum()
    }
}

/// A learned structure.
#[derive(Clone, Debug, PartialEq)]
pub struct LearnResult {
    pub graph: UndirectedGraph,
    /// Objective value relative to the empty graph.
    pub objective: f64,
    /// Whether the result is a proven optimum. All learners here are exact.
    pub optimal: bool,
}

/// Union-find over node indices.
#[derive(Clone)]
struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; false if they were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

fn finish(w: &WeightTable, graph: UndirectedGraph) -> LearnResult {
    LearnResult { objective: w.total(&graph), graph, optimal: true }
}

/// Greedy maximum-weight forest in `K`; non-positive edges are never taken.
pub fn max_weight_forest(w: &WeightTable) -> LearnResult {
    let n = w.base().len();
    let mut sets = DisjointSets::new(n);
    let mut forest = UndirectedGraph::empty(w.base().clone());
    for (a, b, weight) in w.sorted_edges() {
        if weight <= 0.0 {
            break;
        }
        if sets.union(a, b) {
            forest.add_edge(a, b);
        }
    }
    finish(w, forest)
}

/// Greedy maximum-weight spanning tree of `K`.
pub fn max_weight_spanning_tree(w: &WeightTable) -> Result<LearnResult> {
    if !w.allowed().is_connected() {
        return Err(Error::Disconnected);
    }
    let mut sets = DisjointSets::new(w.base().len());
    let mut tree = UndirectedGraph::empty(w.base().clone());
    for (a, b, _) in w.sorted_edges() {
        if sets.union(a, b) {
            tree.add_edge(a, b);
        }
    }
    Ok(finish(w, tree))
}

fn check_degree_bound(n: usize, k: usize, min_k: usize) -> Result<()> {
    if n > DEGREE_BOUNDED_MAX_VARIABLES {
        return Err(Error::OverCap { what: "degree-bounded search", n, cap: DEGREE_BOUNDED_MAX_VARIABLES });
    }
    if k < min_k || k + 1 >= n {
        return Err(Error::OutOfRange { name: "k", value: k, range: format!("{min_k} <= k < {}", n - 1) });
    }
    Ok(())
}

/// Branch-and-bound state shared by both degree-bounded searches.
struct DegreeSearch {
    edges: Vec<(usize, usize, f64)>,
    k: usize,
    n: usize,
    spanning: bool,
    best: Option<(f64, Vec<usize>)>,
}

impl DegreeSearch {
    /// Kruskal over the still-usable edges from `from` on, starting from the
    /// components of the current partial solution. Returns the picked edge
    /// indices; forests skip non-positive edges.
    fn relaxation(&self, from: usize, sets: &DisjointSets, degree: &[usize]) -> Vec<usize> {
        let mut sets = sets.clone();
        let mut picked = Vec::new();
        for (idx, &(a, b, w)) in self.edges.iter().enumerate().skip(from) {
            if !self.spanning && w <= 0.0 {
                break;
            }
            if degree[a] < self.k && degree[b] < self.k && sets.union(a, b) {
                picked.push(idx);
            }
        }
        picked
    }

    /// Half the sum over nodes of their best `k - deg` usable incident edges.
    fn degree_bound(&self, from: usize, degree: &[usize]) -> f64 {
        let mut incident: Vec<Vec<f64>> = vec![Vec::new(); self.n];
        for &(a, b, w) in &self.edges[from..] {
            if w > 0.0 && degree[a] < self.k && degree[b] < self.k {
                incident[a].push(w);
                incident[b].push(w);
            }
        }
        // edges are already sorted by decreasing weight
        let total: f64 =
            incident.iter().enumerate().map(|(v, ws)| ws.iter().take(self.k - degree[v]).sum::<f64>()).sum();
        total / 2.0
    }

    fn record(&mut self, value: f64, chosen: &[usize]) {
        if self.best.as_ref().is_none_or(|(b, _)| value > *b) {
            self.best = Some((value, chosen.to_vec()));
        }
    }

    fn search(
        &mut self,
        idx: usize,
        sets: &DisjointSets,
        degree: &mut Vec<usize>,
        chosen: &mut Vec<usize>,
        value: f64,
    ) {
        let components = self.n - chosen.len();
        if !self.spanning {
            self.record(value, chosen);
        } else if components == 1 {
            self.record(value, chosen);
            return;
        }
        if idx == self.edges.len() {
            return;
        }
        let relaxed = self.relaxation(idx, sets, degree);
        if self.spanning && relaxed.len() + 1 < components {
            return;
        }
        let relaxed_value: f64 = relaxed.iter().map(|&e| self.edges[e].2).sum();
        let mut bound = relaxed_value;
        if !self.spanning {
            bound = bound.min(self.degree_bound(idx, degree));
        }
        if let Some((best, _)) = &self.best {
            if value + bound <= *best {
                return;
            }
        }
        // the relaxation is itself feasible: it is the best completion
        let mut deg = degree.clone();
        for &e in &relaxed {
            let (a, b, _) = self.edges[e];
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.iter().all(|&d| d <= self.k) {
            let mut full = chosen.clone();
            full.extend(&relaxed);
            self.record(value + relaxed_value, &full);
            return;
        }

        let (a, b, w) = self.edges[idx];
        if degree[a] < self.k && degree[b] < self.k {
            let mut joined = sets.clone();
            if joined.union(a, b) && (self.spanning || w > 0.0) {
                degree[a] += 1;
                degree[b] += 1;
                chosen.push(idx);
                self.search(idx + 1, &joined, degree, chosen, value + w);
                chosen.pop();
                degree[a] -= 1;
                degree[b] -= 1;
            }
        }
        self.search(idx + 1, sets, degree, chosen, value);
    }

    fn run(mut self, w: &WeightTable) -> Option<LearnResult> {
        let mut degree = vec![0; self.n];
        self.search(0, &DisjointSets::new(self.n), &mut degree, &mut Vec::new(), 0.0);
        let (_, chosen) = self.best?;
        let mut g = UndirectedGraph::empty(w.base().clone());
        for e in chosen {
            let (a, b, _) = self.edges[e];
            g.add_edge(a, b);
        }
        Some(finish(w, g))
    }
}

/// Exact maximum-weight forest in `K` with every degree at most `k`.
///
/// `k = 1` is maximum-weight matching, solved by the same search.
pub fn degree_bounded_forest(w: &WeightTable, k: usize) -> Result<LearnResult> {
    let n = w.base().len();
    check_degree_bound(n, k, 1)?;
    let search = DegreeSearch { edges: w.sorted_edges(), k, n, spanning: false, best: None };
    Ok(search.run(w).expect("the empty forest is always feasible"))
}

/// Exact maximum-weight spanning tree of `K` with every degree at most `k`;
/// `Ok(None)` when no such tree exists.
pub fn degree_bounded_spanning_tree(w: &WeightTable, k: usize) -> Result<Option<LearnResult>> {
    let n = w.base().len();
    check_degree_bound(n, k, 2)?;
    let search = DegreeSearch { edges: w.sorted_edges(), k, n, spanning: true, best: None };
    Ok(search.run(w))
}

/// What a chordal subgraph is scored by.
#[derive(Clone, Copy)]
pub enum ChordalObjective<'o, 'd> {
    /// Score gain of a consistent DAG over the empty graph.
    Scores(&'o ScoreOracle<'d>),
    /// Sum of clique weights.
    Cliques(&'o CliqueObjective),
}

/// Calls `visit` on every clique of `g` with at least two members.
fn for_each_clique(g: &UndirectedGraph, max_size: usize, visit: &mut impl FnMut(NodeSubset)) {
    fn extend(
        g: &UndirectedGraph,
        clique: NodeSubset,
        candidates: NodeSubset,
        max_size: usize,
        visit: &mut impl FnMut(NodeSubset),
    ) {
        if clique.len() >= 2 {
            visit(clique);
        }
        if clique.len() == max_size {
            return;
        }
        for v in candidates.iter() {
            let higher = NodeSubset::from_bits(candidates.bits() & !((2u32 << v) - 1));
            extend(g, clique.with(v), higher.intersection(g.neighbors(v)), max_size, visit);
        }
    }
    extend(g, NodeSubset::EMPTY, g.base().full(), max_size, visit);
}

struct ChordalSearch<'w> {
    weights: &'w CliqueObjective,
    edges: Vec<(usize, usize)>,
    max_clique: usize,
    n: usize,
    best: (f64, UndirectedGraph),
}

impl ChordalSearch<'_> {
    fn clique_sum(&self, g: &UndirectedGraph, keep: impl Fn(f64) -> bool) -> f64 {
        let mut total = 0.0;
        for_each_clique(g, self.max_clique.min(self.n), &mut |s| {
            let v = self.weights.get(s);
            if keep(v) {
                total += v;
            }
        });
        total
    }

    fn exceeds_clique_bound(&self, g: &UndirectedGraph) -> bool {
        if self.max_clique >= self.n {
            return false;
        }
        let mut found = false;
        for_each_clique(g, self.max_clique + 1, &mut |s| found |= s.len() > self.max_clique);
        found
    }

    fn search(&mut self, idx: usize, lower: &mut UndirectedGraph, upper: &mut UndirectedGraph) {
        if self.exceeds_clique_bound(lower) {
            return;
        }
        let bound = self.clique_sum(upper, |v| v > 0.0) + self.clique_sum(lower, |v| v < 0.0);
        if bound <= self.best.0 {
            return;
        }
        if idx == self.edges.len() {
            if recon::is_chordal(lower) {
                let value = self.clique_sum(lower, |_| true);
                if value > self.best.0 {
                    self.best = (value, lower.clone());
                }
            }
            return;
        }
        let (a, b) = self.edges[idx];
        lower.add_edge(a, b);
        self.search(idx + 1, lower, upper);
        lower.remove_edge(a, b);
        upper.remove_edge(a, b);
        self.search(idx + 1, lower, upper);
        upper.add_edge(a, b);
    }
}

/// Exact best chordal subgraph of `allowed`, optionally with every clique of
/// size at most `max_clique`.
///
/// The search branches on the edges of `allowed`; a branch is cut when the
/// positive clique weights still reachable plus the negative ones already
/// forced cannot beat the incumbent. The empty graph (objective 0) is the
/// starting incumbent and is kept on ties.
pub fn best_chordal_subgraph(
    objective: ChordalObjective<'_, '_>,
    allowed: &UndirectedGraph,
    max_clique: Option<usize>,
) -> Result<LearnResult> {
    let n = allowed.len();
    if n > CHORDAL_MAX_VARIABLES {
        return Err(Error::OverCap { what: "chordal search", n, cap: CHORDAL_MAX_VARIABLES });
    }
    if let Some(mc) = max_clique {
        if mc < 2 {
            return Err(Error::OutOfRange { name: "max_clique", value: mc, range: ">= 2".into() });
        }
    }
    let derived;
    let weights = match objective {
        ChordalObjective::Cliques(w) => w,
        ChordalObjective::Scores(o) => {
            derived = CliqueObjective::from_oracle(o)?;
            &derived
        }
    };
    if weights.base() != allowed.base() {
        return Err(Error::BaseMismatch);
    }
    let mut search = ChordalSearch {
        weights,
        edges: allowed.edges(),
        max_clique: max_clique.unwrap_or(n).min(n),
        n,
        best: (0.0, UndirectedGraph::empty(allowed.base().clone())),
    };
    let mut lower = UndirectedGraph::empty(allowed.base().clone());
    let mut upper = allowed.clone();
    search.search(0, &mut lower, &mut upper);
    let graph = search.best.1;
    let objective = match objective {
        ChordalObjective::Cliques(w) => w.total(&graph),
        ChordalObjective::Scores(o) => chordal_score_gain(o, &graph)?,
    };
    Ok(LearnResult { graph, objective, optimal: true })
}

/// `score(D) - score(empty)` for a DAG `D` consistent with the chordal graph.
pub fn chordal_score_gain(o: &ScoreOracle<'_>, g: &UndirectedGraph) -> Result<f64> {
    let dag = recon::consistent_extension(&MixedGraph::from(g))?;
    Ok(o.score(&dag)? - o.score(&Dag::empty(g.base().clone()))?)
}

/// Clique weights that make the best chordal subgraph of `K` positive iff
/// `K` has a clique with at least `k` nodes: `w(T) = 1` for `|T| ≥ k`, else 0.
pub fn clique_reduction(allowed: &UndirectedGraph, k: usize) -> Result<CliqueObjective> {
    let n = allowed.len();
    if k < 2 || k >= n {
        return Err(Error::OutOfRange { name: "k", value: k, range: format!("2 <= k <= {}", n - 1) });
    }
    let base = allowed.base().clone();
    CliqueObjective::from_entries(base.clone(), base.char_domain().filter(|s| s.len() >= k).map(|s| (s, 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(n: usize) -> VarSet {
        VarSet::alphabetic(n).unwrap()
    }

    fn triangle_weights() -> WeightTable {
        let k = UndirectedGraph::complete(base(3));
        WeightTable::new(k, [((0, 1), 3.0), ((1, 2), 2.0), ((0, 2), 1.0)]).unwrap()
    }

    #[test]
    fn weight_table_validation() {
        let k = UndirectedGraph::new(base(3), [(0, 1)]).unwrap();
        assert_eq!(WeightTable::new(k.clone(), []), Err(Error::MissingWeight(0, 1)));
        assert_eq!(WeightTable::new(k.clone(), [((1, 2), 1.0)]), Err(Error::WeightOffGraph(1, 2)));
        assert_eq!(WeightTable::new(k.clone(), [((1, 0), f64::NAN)]), Err(Error::NonFiniteWeight(0, 1)));
        assert_eq!(WeightTable::new(k, [((1, 0), 2.0)]).unwrap().weight(0, 1), Some(2.0));
    }

    #[test]
    fn forest_on_triangle() {
        let r = max_weight_forest(&triangle_weights());
        assert_eq!(r.graph.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(r.objective, 5.0);
        let t = max_weight_spanning_tree(&triangle_weights()).unwrap();
        assert_eq!(t.graph.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn negative_weights_give_empty_forest() {
        let k = UndirectedGraph::complete(base(4));
        let w = WeightTable::new(k.clone(), k.edges().into_iter().map(|e| (e, -1.0))).unwrap();
        let r = max_weight_forest(&w);
        assert_eq!(r.graph.edge_count(), 0);
        assert_eq!(r.objective, 0.0);
        // a spanning tree still has to take n - 1 edges
        assert_eq!(max_weight_spanning_tree(&w).unwrap().objective, -3.0);
    }

    #[test]
    fn spanning_tree_edge_cases() {
        let path = UndirectedGraph::new(base(4), [(0, 1), (1, 2), (2, 3)]).unwrap();
        let w = WeightTable::new(path.clone(), [((0, 1), -5.0), ((1, 2), 0.5), ((2, 3), -1.0)]).unwrap();
        assert_eq!(max_weight_spanning_tree(&w).unwrap().graph, path);

        let split = UndirectedGraph::new(base(4), [(0, 1), (2, 3)]).unwrap();
        let w = WeightTable::new(split, [((0, 1), 1.0), ((2, 3), 1.0)]).unwrap();
        assert_eq!(max_weight_spanning_tree(&w), Err(Error::Disconnected));

        let k = UndirectedGraph::complete(base(5));
        let w = WeightTable::new(k.clone(), k.edges().into_iter().map(|e| (e, 2.5))).unwrap();
        assert_eq!(max_weight_spanning_tree(&w).unwrap().objective, 10.0);
    }

    fn star(n: usize, weights: &[f64]) -> WeightTable {
        let k = UndirectedGraph::new(base(n), (1..n).map(|i| (0, i))).unwrap();
        WeightTable::new(k, (1..n).map(|i| ((0, i), weights[i - 1]))).unwrap()
    }

    #[test]
    fn degree_bounded_star() {
        let w = star(5, &[1.0, 4.0, 2.0, 3.0]);
        let r = degree_bounded_forest(&w, 2).unwrap();
        assert_eq!(r.graph.edges(), vec![(0, 2), (0, 4)]);
        assert_eq!(r.objective, 7.0);
        assert_eq!(degree_bounded_spanning_tree(&w, 2).unwrap(), None);
        assert_eq!(degree_bounded_forest(&w, 1).unwrap().objective, 4.0);
    }

    #[test]
    fn degree_bound_range() {
        let w = star(5, &[1.0; 4]);
        assert!(matches!(degree_bounded_forest(&w, 0), Err(Error::OutOfRange { .. })));
        assert!(matches!(degree_bounded_forest(&w, 4), Err(Error::OutOfRange { .. })));
        assert!(matches!(degree_bounded_spanning_tree(&w, 1), Err(Error::OutOfRange { .. })));
        let big = UndirectedGraph::empty(base(17));
        let w = WeightTable::new(big, []).unwrap();
        assert!(matches!(degree_bounded_forest(&w, 2), Err(Error::OverCap { .. })));
    }

    #[test]
    fn path_is_its_own_bounded_tree() {
        let path = UndirectedGraph::new(base(5), [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let w = WeightTable::new(path.clone(), path.edges().into_iter().map(|e| (e, -1.0))).unwrap();
        assert_eq!(degree_bounded_spanning_tree(&w, 2).unwrap().unwrap().graph, path);
    }

    #[test]
    fn clique_reduction_examples() {
        let tri = UndirectedGraph::complete(base(4)).induced(NodeSubset::from_indices([0, 1, 2]));
        let w = clique_reduction(&tri, 3).unwrap();
        assert_eq!(best_chordal_subgraph(ChordalObjective::Cliques(&w), &tri, None).unwrap().objective, 1.0);

        let cycle = UndirectedGraph::new(base(4), [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let w = clique_reduction(&cycle, 3).unwrap();
        let r = best_chordal_subgraph(ChordalObjective::Cliques(&w), &cycle, None).unwrap();
        assert_eq!(r.objective, 0.0);
        assert_eq!(r.graph.edge_count(), 0);

        let k4 = UndirectedGraph::complete(base(4));
        let w = clique_reduction(&k4, 3).unwrap();
        let r = best_chordal_subgraph(ChordalObjective::Cliques(&w), &k4, None).unwrap();
        assert_eq!(r.objective, 5.0);
        assert_eq!(r.graph, k4);

        assert!(matches!(clique_reduction(&k4, 4), Err(Error::OutOfRange { .. })));
        assert!(matches!(clique_reduction(&k4, 1), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn zero_weights_keep_empty_graph() {
        let k = UndirectedGraph::complete(base(4));
        let w = CliqueObjective::zeros(base(4));
        let r = best_chordal_subgraph(ChordalObjective::Cliques(&w), &k, None).unwrap();
        assert_eq!(r.graph.edge_count(), 0);
        assert_eq!(r.objective, 0.0);
    }

    #[test]
    fn chordal_with_pair_cliques_is_a_forest() {
        let w = triangle_weights();
        let cw = CliqueObjective::from_pair_weights(&w);
        let r = best_chordal_subgraph(ChordalObjective::Cliques(&cw), w.allowed(), Some(2)).unwrap();
        assert_eq!(r.graph, max_weight_forest(&w).graph);
        assert_eq!(r.objective, 5.0);
        // without the clique cap the whole triangle wins
        let r = best_chordal_subgraph(ChordalObjective::Cliques(&cw), w.allowed(), None).unwrap();
        assert_eq!(r.objective, 6.0);
    }

    #[test]
    fn clique_enumeration_counts() {
        let mut count = 0;
        for_each_clique(&UndirectedGraph::complete(base(5)), 5, &mut |_| count += 1);
        assert_eq!(count, 32 - 5 - 1);
        let mut count = 0;
        for_each_clique(&UndirectedGraph::complete(base(5)), 2, &mut |_| count += 1);
        assert_eq!(count, 10);
    }
}
