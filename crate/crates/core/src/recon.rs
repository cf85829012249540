//! Immoralities, patterns, essential graphs and the recovery of a DAG from a
//! characteristic imset.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Dag, MixedGraph, UndirectedGraph};
use crate::imset::{characteristic_imset, CharVector};
use crate::varset::NodeSubset;

/// An induced `a -> c <- b` with `a` and `b` non-adjacent. The outer pair is
/// stored with `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Immorality {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Immorality {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        Immorality { a: a.min(b), b: a.max(b), c }
    }
}

pub fn immoralities(g: &Dag) -> BTreeSet<Immorality> {
    let mut out = BTreeSet::new();
    for c in 0..g.len() {
        let pa: Vec<usize> = g.parents(c).iter().collect();
        for (x, &a) in pa.iter().enumerate() {
            for &b in &pa[x + 1..] {
                if !g.adjacent(a, b) {
                    out.insert(Immorality::new(a, b, c));
                }
            }
        }
    }
    out
}

/// Skeleton of `g` with exactly the arcs that take part in an immorality
/// kept directed.
pub fn pattern(g: &Dag) -> MixedGraph {
    let imm = immoralities(g);
    let mut directed = BTreeSet::new();
    for m in &imm {
        directed.insert((m.a, m.c));
        directed.insert((m.b, m.c));
    }
    let mut p = MixedGraph::empty(g.base().clone());
    for (from, to) in g.arcs() {
        if directed.contains(&(from, to)) {
            p.add_arc(from, to);
        } else {
            p.add_edge(from, to);
        }
    }
    p
}

/// Reads the pattern off the entries of cardinality 2 and 3.
///
/// `{a, b}` is an edge iff `c({a,b}) = 1`, and it is directed `a -> b` iff
/// some `i` has `c({a,b,i}) = 1` and `c({a,i}) = 0`. When the input is not a
/// characteristic imset both directions may qualify; such an edge is left
/// undirected and the candidate fails validation later on.
pub fn pattern_from_charvector(c: &CharVector) -> MixedGraph {
    let n = c.base().len();
    let pair = |x: usize, y: usize| c.get(NodeSubset::from_indices([x, y]));
    let points_into = |a: usize, b: usize| {
        (0..n).any(|i| i != a && i != b && c.get(NodeSubset::from_indices([a, b, i])) == 1 && pair(a, i) == 0)
    };
    let mut p = MixedGraph::empty(c.base().clone());
    for a in 0..n {
        for b in a + 1..n {
            if pair(a, b) != 1 {
                continue;
            }
            match (points_into(a, b), points_into(b, a)) {
                (true, false) => p.add_arc(a, b),
                (false, true) => p.add_arc(b, a),
                _ => p.add_edge(a, b),
            }
        }
    }
    p
}

/// Applies the three orientation rules until none fires.
///
/// * R1: `a -> b - c`, `a`, `c` non-adjacent: orient `b -> c`.
/// * R2: `a -> b -> c` and `a - c`: orient `a -> c`.
/// * R3: `a - b`, `a - c`, `a - d`, `c -> b <- d`, `c`, `d` non-adjacent:
///   orient `a -> b`.
///
/// Rules are tried in that order and the scan restarts after every change.
pub fn meek_closure(p: &MixedGraph) -> MixedGraph {
    let mut g = p.clone();
    while let Some((from, to)) = rule1(&g).or_else(|| rule2(&g)).or_else(|| rule3(&g)) {
        g.orient(from, to);
    }
    g
}

/// Undirected edges in both orientations, in canonical order.
fn candidate_orientations(g: &MixedGraph) -> impl Iterator<Item = (usize, usize)> + '_ {
    g.edges().into_iter().flat_map(|(a, b)| [(a, b), (b, a)])
}

fn rule1(g: &MixedGraph) -> Option<(usize, usize)> {
    candidate_orientations(g).find(|&(b, c)| g.parents(b).iter().any(|a| a != c && !g.adjacent(a, c)))
}

fn rule2(g: &MixedGraph) -> Option<(usize, usize)> {
    candidate_orientations(g).find(|&(a, c)| !g.children(a).intersection(g.parents(c)).is_empty())
}

fn rule3(g: &MixedGraph) -> Option<(usize, usize)> {
    candidate_orientations(g).find(|&(a, b)| {
        let feeders: Vec<usize> = g.undirected_neighbors(a).intersection(g.parents(b)).iter().collect();
        feeders.iter().enumerate().any(|(x, &c)| feeders[x + 1..].iter().any(|&d| !g.adjacent(c, d)))
    })
}

/// The essential graph: Meek closure of the pattern.
pub fn essential_graph(g: &Dag) -> MixedGraph {
    meek_closure(&pattern(g))
}

/// Maximum-cardinality search visiting order; ties go to the lowest index.
pub fn maximum_cardinality_search(h: &UndirectedGraph) -> Vec<usize> {
    let n = h.len();
    let mut visited = NodeSubset::EMPTY;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !visited.contains(v))
            .max_by_key(|&v| (h.neighbors(v).intersection(visited).len(), std::cmp::Reverse(v)))
            .expect("unvisited node remains");
        visited = visited.with(next);
        order.push(next);
    }
    order
}

/// A perfect elimination ordering (reverse maximum-cardinality search), or
/// `None` when `h` is not chordal.
pub fn perfect_elimination_order(h: &UndirectedGraph) -> Option<Vec<usize>> {
    let mut peo = maximum_cardinality_search(h);
    peo.reverse();
    let mut later = h.base().full();
    for &v in &peo {
        later = later.without(v);
        if !h.is_clique(h.neighbors(v).intersection(later)) {
            return None;
        }
    }
    Some(peo)
}

pub fn is_chordal(h: &UndirectedGraph) -> bool {
    perfect_elimination_order(h).is_some()
}

/// Orients every undirected edge along the maximum-cardinality search order
/// of the undirected part and keeps the existing arcs.
fn orient_chain_components(e: &MixedGraph) -> Result<Dag> {
    let undirected = e.undirected_part();
    let mcs = maximum_cardinality_search(&undirected);
    if perfect_elimination_order(&undirected).is_none() {
        return Err(Error::NotChordal);
    }
    let mut rank = vec![0; e.len()];
    for (pos, &v) in mcs.iter().enumerate() {
        rank[v] = pos;
    }
    let arcs =
        e.arcs()
            .into_iter()
            .chain(undirected.edges().into_iter().map(|(a, b)| if rank[a] < rank[b] { (a, b) } else { (b, a) }));
    Dag::new(e.base().clone(), arcs)
}

/// A DAG whose essential graph is `e`.
///
/// Fails with [`Error::NotChordal`] when the undirected part is not chordal,
/// [`Error::Cyclic`] when the orientation closes a directed cycle, and
/// [`Error::NoConsistentExtension`] when the result is acyclic but `e` is not
/// its essential graph.
pub fn consistent_extension(e: &MixedGraph) -> Result<Dag> {
    let dag = orient_chain_components(e)?;
    if &essential_graph(&dag) != e {
        return Err(Error::NoConsistentExtension("input is not an essential graph".into()));
    }
    Ok(dag)
}

/// Why a candidate vector is not a characteristic imset.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RejectReason {
    /// Some entry is outside `{0, 1}`.
    RangeViolation,
    /// The candidate essential graph has a non-chordal undirected part.
    NonChordalComponent,
    /// Orienting the candidate essential graph produced a directed cycle.
    DirectedCycle,
    /// The recovered DAG has a different characteristic imset.
    ImsetMismatch,
}

impl RejectReason {
    pub fn code(self) -> &'static str {
        match self {
            RejectReason::RangeViolation => "range-violation",
            RejectReason::NonChordalComponent => "non-chordal-component",
            RejectReason::DirectedCycle => "directed-cycle",
            RejectReason::ImsetMismatch => "imset-mismatch",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Validation {
    /// The vector is the characteristic imset of the witness.
    Accepted(Dag),
    Rejected(RejectReason),
}

impl Validation {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Validation::Accepted(_))
    }
}

/// Decides whether `v` is the characteristic imset of some DAG by building a
/// candidate pattern, its Meek closure and an orientation of that, and then
/// comparing the orientation's characteristic imset with `v`.
pub fn validate_characteristic_vector(v: &CharVector) -> Validation {
    if !v.is_zero_one() {
        return Validation::Rejected(RejectReason::RangeViolation);
    }
    let essential = meek_closure(&pattern_from_charvector(v));
    let dag = match orient_chain_components(&essential) {
        Ok(dag) => dag,
        Err(Error::NotChordal) => return Validation::Rejected(RejectReason::NonChordalComponent),
        Err(_) => return Validation::Rejected(RejectReason::DirectedCycle),
    };
    if &characteristic_imset(&dag) == v {
        Validation::Accepted(dag)
    } else {
        Validation::Rejected(RejectReason::ImsetMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varset::VarSet;

    fn base(n: usize) -> VarSet {
        VarSet::alphabetic(n).unwrap()
    }

    #[test]
    fn immorality_examples() {
        let g = Dag::new(base(3), [(0, 2), (1, 2)]).unwrap();
        assert_eq!(immoralities(&g).into_iter().collect::<Vec<_>>(), vec![Immorality::new(1, 0, 2)]);
        let shielded = Dag::new(base(3), [(0, 2), (1, 2), (0, 1)]).unwrap();
        assert!(immoralities(&shielded).is_empty());
        let chain = Dag::new(base(3), [(0, 1), (1, 2)]).unwrap();
        assert!(immoralities(&chain).is_empty());
    }

    #[test]
    fn pattern_examples() {
        let collider = Dag::new(base(3), [(0, 2), (1, 2)]).unwrap();
        let p = pattern(&collider);
        assert_eq!(p.arcs(), vec![(0, 2), (1, 2)]);
        assert!(p.edges().is_empty());

        let chain = Dag::new(base(3), [(0, 1), (1, 2)]).unwrap();
        let p = pattern(&chain);
        assert!(p.arcs().is_empty());
        assert_eq!(p.edges(), vec![(0, 1), (1, 2)]);

        let g = Dag::new(base(4), [(0, 2), (1, 2), (2, 3)]).unwrap();
        let p = pattern(&g);
        assert_eq!(p.arcs(), vec![(0, 2), (1, 2)]);
        assert_eq!(p.edges(), vec![(2, 3)]);
    }

    #[test]
    fn pattern_from_charvector_examples() {
        let collider = Dag::new(base(3), [(0, 2), (1, 2)]).unwrap();
        assert_eq!(pattern_from_charvector(&characteristic_imset(&collider)), pattern(&collider));
        let chain = Dag::new(base(3), [(0, 1), (1, 2)]).unwrap();
        let p = pattern_from_charvector(&characteristic_imset(&chain));
        assert_eq!(p.edges(), vec![(0, 1), (1, 2)]);
        assert!(p.arcs().is_empty());
        assert_eq!(pattern_from_charvector(&CharVector::zeros(base(3))), MixedGraph::empty(base(3)));
    }

    #[test]
    fn meek_examples() {
        // a -> c <- b, c - d  ==>  c -> d by R1
        let p = MixedGraph::new(base(4), [(0, 2), (1, 2)], [(2, 3)]).unwrap();
        let e = meek_closure(&p);
        assert_eq!(e.arcs(), vec![(0, 2), (1, 2), (2, 3)]);
        assert!(e.edges().is_empty());

        let chain = MixedGraph::new(base(3), [], [(0, 1), (1, 2)]).unwrap();
        assert_eq!(meek_closure(&chain), chain);

        let complete = essential_graph(&Dag::complete(base(3)));
        assert!(complete.is_fully_undirected());
        assert_eq!(complete.edges().len(), 3);
    }

    #[test]
    fn rule2_and_rule3_fire() {
        // a -> b -> c, a - c  ==>  a -> c
        let p = MixedGraph::new(base(3), [(0, 1), (1, 2)], [(0, 2)]).unwrap();
        assert_eq!(meek_closure(&p).arcs(), vec![(0, 1), (0, 2), (1, 2)]);
        // a - b, a - c, a - d, c -> b <- d  ==>  a -> b
        let p = MixedGraph::new(base(4), [(2, 1), (3, 1)], [(0, 1), (0, 2), (0, 3)]).unwrap();
        let e = meek_closure(&p);
        assert!(e.has_arc(0, 1));
        assert_eq!(e.edges(), vec![(0, 2), (0, 3)]);
    }

    #[test]
    fn chordality_examples() {
        let cycle = UndirectedGraph::new(base(4), [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(!is_chordal(&cycle));
        let mut chorded = cycle.clone();
        chorded.add_edge(0, 2);
        assert!(is_chordal(&chorded));
        let forest = UndirectedGraph::new(base(6), [(0, 1), (1, 2), (3, 4)]).unwrap();
        assert!(is_chordal(&forest));
        assert_eq!(perfect_elimination_order(&forest).unwrap().len(), 6);
    }

    #[test]
    fn extension_examples() {
        let tri = MixedGraph::from(&UndirectedGraph::complete(base(3)));
        let dag = consistent_extension(&tri).unwrap();
        assert_eq!(dag.arc_count(), 3);
        assert_eq!(essential_graph(&dag), tri);

        let collider = Dag::new(base(3), [(0, 2), (1, 2)]).unwrap();
        let e = MixedGraph::from(&collider);
        assert_eq!(consistent_extension(&e).unwrap(), collider);

        let cycle = MixedGraph::new(base(4), [], [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(consistent_extension(&cycle), Err(Error::NotChordal));

        // a pattern that is not closed under the rules is not an essential graph
        let open = MixedGraph::new(base(4), [(0, 2), (1, 2)], [(2, 3)]).unwrap();
        assert!(matches!(consistent_extension(&open), Err(Error::NoConsistentExtension(_))));
    }

    #[test]
    fn validation_examples() {
        let g = Dag::new(base(4), [(0, 2), (1, 2), (2, 3)]).unwrap();
        match validate_characteristic_vector(&characteristic_imset(&g)) {
            Validation::Accepted(w) => assert!(crate::imset::markov_equivalent(&w, &g).unwrap()),
            other => panic!("{other:?}"),
        }

        let mut bad = characteristic_imset(&g);
        bad.set(NodeSubset::from_indices([0, 1]), 2).unwrap();
        assert_eq!(validate_characteristic_vector(&bad), Validation::Rejected(RejectReason::RangeViolation));

        let cycle = CharVector::from_entries(
            base(4),
            [(0, 1), (1, 2), (2, 3), (0, 3)].map(|(a, b)| (NodeSubset::from_indices([a, b]), 1)),
        )
        .unwrap();
        assert_eq!(validate_characteristic_vector(&cycle), Validation::Rejected(RejectReason::NonChordalComponent));

        // a triple entry without any supporting edges
        let stray = CharVector::from_entries(base(3), [(base(3).full(), 1)]).unwrap();
        assert_eq!(validate_characteristic_vector(&stray), Validation::Rejected(RejectReason::ImsetMismatch));
    }
}
