//! Graph types over a [`VarSet`]: acyclic directed graphs, undirected graphs
//! and mixed graphs (patterns and essential graphs).
//!
//! All three store per-node neighbourhoods as [`NodeSubset`] bitmasks, so
//! equality is structural and edge listings come out in a fixed order.

use crate::error::{Error, Result};
use crate::varset::{NodeSubset, VarSet};

/// An acyclic directed graph.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dag {
    base: VarSet,
    parents: Vec<NodeSubset>,
}

impl Dag {
    /// Builds a DAG from arcs `(from, to)`; duplicate arcs are merged.
    pub fn new<I>(base: VarSet, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut parents = vec![NodeSubset::EMPTY; base.len()];
        for (from, to) in arcs {
            base.check_node(from)?;
            base.check_node(to)?;
            if from == to {
                return Err(Error::SelfLoop(from));
            }
            parents[to] = parents[to].with(from);
        }
        Dag::from_parent_sets(base, parents)
    }

    pub fn from_parent_sets(base: VarSet, parents: Vec<NodeSubset>) -> Result<Self> {
        let n = base.len();
        if parents.len() != n {
            return Err(Error::NodeOutOfRange { index: parents.len(), n });
        }
        let full = base.full();
        for (i, &pa) in parents.iter().enumerate() {
            if !pa.is_subset_of(full) {
                return Err(Error::NodeOutOfRange { index: pa.difference(full).iter().next().unwrap(), n });
            }
            if pa.contains(i) {
                return Err(Error::SelfLoop(i));
            }
        }
        let dag = Dag { base, parents };
        if dag.topological_order().is_none() {
            return Err(Error::Cyclic);
        }
        Ok(dag)
    }

    pub fn empty(base: VarSet) -> Self {
        let n = base.len();
        Dag { base, parents: vec![NodeSubset::EMPTY; n] }
    }

    /// The complete DAG with arcs from lower to higher index.
    pub fn complete(base: VarSet) -> Self {
        let parents = (0..base.len()).map(NodeSubset::full).collect();
        Dag { base, parents }
    }

    pub fn base(&self) -> &VarSet {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }

    pub fn parents(&self, i: usize) -> NodeSubset {
        self.parents[i]
    }

    pub fn parent_sets(&self) -> &[NodeSubset] {
        &self.parents
    }

    pub fn children(&self, i: usize) -> NodeSubset {
        NodeSubset::from_indices((0..self.len()).filter(|&j| self.parents[j].contains(i)))
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.parents[to].contains(from)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.has_arc(a, b) || self.has_arc(b, a)
    }

    /// Arcs sorted by `(from, to)`.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> =
            (0..self.len()).flat_map(|to| self.parents[to].iter().map(move |from| (from, to))).collect();
        out.sort_unstable();
        out
    }

    pub fn arc_count(&self) -> usize {
        self.parents.iter().map(|p| p.len()).sum()
    }

    pub fn skeleton(&self) -> UndirectedGraph {
        let mut adj = vec![NodeSubset::EMPTY; self.len()];
        for (from, to) in self.arcs() {
            adj[from] = adj[from].with(to);
            adj[to] = adj[to].with(from);
        }
        UndirectedGraph { base: self.base.clone(), adj }
    }

    /// Kahn's algorithm; ties resolved by lowest index. `None` on a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut placed = NodeSubset::EMPTY;
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n).find(|&i| !placed.contains(i) && self.parents[i].is_subset_of(placed))?;
            placed = placed.with(next);
            order.push(next);
        }
        Some(order)
    }
}

/// An undirected graph without self-loops.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UndirectedGraph {
    base: VarSet,
    adj: Vec<NodeSubset>,
}

impl UndirectedGraph {
    pub fn new<I>(base: VarSet, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = UndirectedGraph::empty(base);
        for (a, b) in edges {
            g.base.check_node(a)?;
            g.base.check_node(b)?;
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    pub fn empty(base: VarSet) -> Self {
        let n = base.len();
        UndirectedGraph { base, adj: vec![NodeSubset::EMPTY; n] }
    }

    pub fn complete(base: VarSet) -> Self {
        let full = base.full();
        let adj = (0..base.len()).map(|i| full.without(i)).collect();
        UndirectedGraph { base, adj }
    }

    pub(crate) fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a] = self.adj[a].with(b);
        self.adj[b] = self.adj[b].with(a);
    }

    pub(crate) fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a] = self.adj[a].without(b);
        self.adj[b] = self.adj[b].without(a);
    }

    pub fn base(&self) -> &VarSet {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, i: usize) -> NodeSubset {
        self.adj[i]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.len()).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|a| self.adj[a].iter().filter(move |&b| b > a).map(move |b| (a, b))).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn is_clique(&self, s: NodeSubset) -> bool {
        s.iter().all(|i| s.without(i).is_subset_of(self.adj[i]))
    }

    pub fn is_subgraph_of(&self, other: &UndirectedGraph) -> bool {
        self.base == other.base && self.adj.iter().zip(&other.adj).all(|(a, b)| a.is_subset_of(*b))
    }

    /// Connected components, each as a node subset, ordered by smallest member.
    pub fn components(&self) -> Vec<NodeSubset> {
        let mut seen = NodeSubset::EMPTY;
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = NodeSubset::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = NodeSubset::EMPTY;
                for v in frontier.iter() {
                    next = next.union(self.adj[v]);
                }
                frontier = next.difference(comp);
                comp = comp.union(next);
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// The subgraph induced on `s` (nodes outside `s` become isolated).
    pub fn induced(&self, s: NodeSubset) -> UndirectedGraph {
        let adj = (0..self.len())
            .map(|i| if s.contains(i) { self.adj[i].intersection(s) } else { NodeSubset::EMPTY })
            .collect();
        UndirectedGraph { base: self.base.clone(), adj }
    }
}

/// A graph with arcs and undirected edges; each pair of nodes carries at most
/// one connection.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MixedGraph {
    base: VarSet,
    /// `parents[j]` holds every `i` with an arc `i -> j`.
    parents: Vec<NodeSubset>,
    undirected: Vec<NodeSubset>,
}

impl MixedGraph {
    pub fn new<A, E>(base: VarSet, arcs: A, edges: E) -> Result<Self>
    where
        A: IntoIterator<Item = (usize, usize)>,
        E: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = MixedGraph::empty(base);
        for (from, to) in arcs {
            g.check_pair(from, to)?;
            if g.has_arc(from, to) {
                continue;
            }
            if g.adjacent(from, to) {
                return Err(Error::ConflictingConnection(from.min(to), from.max(to)));
            }
            g.add_arc(from, to);
        }
        for (a, b) in edges {
            g.check_pair(a, b)?;
            if g.has_edge(a, b) {
                continue;
            }
            if g.adjacent(a, b) {
                return Err(Error::ConflictingConnection(a.min(b), a.max(b)));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        self.base.check_node(a)?;
        self.base.check_node(b)?;
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        Ok(())
    }

    pub fn empty(base: VarSet) -> Self {
        let n = base.len();
        MixedGraph { base, parents: vec![NodeSubset::EMPTY; n], undirected: vec![NodeSubset::EMPTY; n] }
    }

    pub fn base(&self) -> &VarSet {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }

    pub(crate) fn add_arc(&mut self, from: usize, to: usize) {
        self.parents[to] = self.parents[to].with(from);
    }

    pub(crate) fn add_edge(&mut self, a: usize, b: usize) {
        self.undirected[a] = self.undirected[a].with(b);
        self.undirected[b] = self.undirected[b].with(a);
    }

    /// Turns the undirected edge `from - to` into the arc `from -> to`.
    pub(crate) fn orient(&mut self, from: usize, to: usize) {
        debug_assert!(self.has_edge(from, to));
        self.undirected[from] = self.undirected[from].without(to);
        self.undirected[to] = self.undirected[to].without(from);
        self.add_arc(from, to);
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.parents[to].contains(from)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.undirected[a].contains(b)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.has_arc(a, b) || self.has_arc(b, a) || self.has_edge(a, b)
    }

    /// Sources of arcs into `i`.
    pub fn parents(&self, i: usize) -> NodeSubset {
        self.parents[i]
    }

    /// Targets of arcs out of `i`.
    pub fn children(&self, i: usize) -> NodeSubset {
        NodeSubset::from_indices((0..self.len()).filter(|&j| self.parents[j].contains(i)))
    }

    pub fn undirected_neighbors(&self, i: usize) -> NodeSubset {
        self.undirected[i]
    }

    /// All nodes connected to `i` in any way.
    pub fn neighbors(&self, i: usize) -> NodeSubset {
        self.parents[i].union(self.children(i)).union(self.undirected[i])
    }

    /// Arcs sorted by `(from, to)`.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> =
            (0..self.len()).flat_map(|to| self.parents[to].iter().map(move |from| (from, to))).collect();
        out.sort_unstable();
        out
    }

    /// Undirected edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|a| self.undirected[a].iter().filter(move |&b| b > a).map(move |b| (a, b))).collect()
    }

    pub fn is_fully_undirected(&self) -> bool {
        self.parents.iter().all(|p| p.is_empty())
    }

    pub fn is_fully_directed(&self) -> bool {
        self.undirected.iter().all(|u| u.is_empty())
    }

    pub fn skeleton(&self) -> UndirectedGraph {
        let mut g = self.undirected_part();
        for (from, to) in self.arcs() {
            g.add_edge(from, to);
        }
        g
    }

    /// The undirected edges alone, as an undirected graph.
    pub fn undirected_part(&self) -> UndirectedGraph {
        UndirectedGraph { base: self.base.clone(), adj: self.undirected.clone() }
    }

    /// Returns the DAG formed by the arcs if there are no undirected edges.
    pub fn to_dag(&self) -> Result<Dag> {
        if !self.is_fully_directed() {
            return Err(Error::NoConsistentExtension("graph has undirected edges".into()));
        }
        Dag::from_parent_sets(self.base.clone(), self.parents.clone())
    }
}

impl From<&Dag> for MixedGraph {
    fn from(g: &Dag) -> Self {
        MixedGraph {
            base: g.base().clone(),
            parents: g.parent_sets().to_vec(),
            undirected: vec![NodeSubset::EMPTY; g.len()],
        }
    }
}

impl From<&UndirectedGraph> for MixedGraph {
    fn from(g: &UndirectedGraph) -> Self {
        MixedGraph { base: g.base().clone(), parents: vec![NodeSubset::EMPTY; g.len()], undirected: g.adj.clone() }
    }
}
