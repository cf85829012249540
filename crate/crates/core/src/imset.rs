//! Subset-indexed integer vectors: standard imsets, their upper portraits,
//! the Möbius inverse, and characteristic imsets.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Dag, UndirectedGraph};
use crate::recon;
use crate::varset::{NodeSubset, VarSet};

/// An integer vector indexed by all subsets of the variable set. Stored
/// sparsely; absent entries are zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Imset {
    base: VarSet,
    values: BTreeMap<NodeSubset, i64>,
}

impl Imset {
    pub fn zero(base: VarSet) -> Self {
        Imset { base, values: BTreeMap::new() }
    }

    /// The basis vector `δ_A`.
    pub fn delta(base: VarSet, a: NodeSubset) -> Result<Self> {
        let mut u = Imset::zero(base);
        u.add(a, 1)?;
        Ok(u)
    }

    /// Sums the given entries; repeated subsets accumulate.
    pub fn from_entries<I>(base: VarSet, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeSubset, i64)>,
    {
        let mut u = Imset::zero(base);
        for (s, v) in entries {
            u.add(s, v)?;
        }
        Ok(u)
    }

    pub fn base(&self) -> &VarSet {
        &self.base
    }

    pub fn get(&self, s: NodeSubset) -> i64 {
        self.values.get(&s).copied().unwrap_or(0)
    }

    pub fn add(&mut self, s: NodeSubset, delta: i64) -> Result<()> {
        if !s.is_subset_of(self.base.full()) {
            let n = self.base.len();
            return Err(Error::NodeOutOfRange { index: s.difference(self.base.full()).iter().next().unwrap(), n });
        }
        let slot = self.values.entry(s).or_insert(0);
        *slot += delta;
        if *slot == 0 {
            self.values.remove(&s);
        }
        Ok(())
    }

    /// Non-zero entries in canonical subset order.
    pub fn entries(&self) -> impl Iterator<Item = (NodeSubset, i64)> + '_ {
        self.values.iter().map(|(&s, &v)| (s, v))
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Sum of all entries.
    pub fn total(&self) -> i64 {
        self.values.values().sum()
    }

    fn to_dense(&self) -> Vec<i64> {
        let mut dense = vec![0; self.base.subset_count()];
        for (&s, &v) in &self.values {
            dense[s.bits() as usize] = v;
        }
        dense
    }
}

/// An integer vector indexed by the subsets with at least two members.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CharVector {
    base: VarSet,
    // Indexed by subset bits; slots for the empty set and singletons stay 0.
    values: Vec<i64>,
}

impl CharVector {
    pub fn zeros(base: VarSet) -> Self {
        let len = base.subset_count();
        CharVector { base, values: vec![0; len] }
    }

    pub fn ones(base: VarSet) -> Self {
        let mut c = CharVector::zeros(base);
        for (i, v) in c.values.iter_mut().enumerate() {
            if i.count_ones() >= 2 {
                *v = 1;
            }
        }
        c
    }

    /// Builds a vector from explicit entries; unlisted subsets are zero.
    pub fn from_entries<I>(base: VarSet, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeSubset, i64)>,
    {
        let mut c = CharVector::zeros(base);
        for (s, v) in entries {
            c.set(s, v)?;
        }
        Ok(c)
    }

    pub fn base(&self) -> &VarSet {
        &self.base
    }

    /// Value at `s`; zero outside the domain.
    pub fn get(&self, s: NodeSubset) -> i64 {
        self.values.get(s.bits() as usize).copied().unwrap_or(0)
    }

    pub fn set(&mut self, s: NodeSubset, value: i64) -> Result<()> {
        if s.len() < 2 {
            return Err(Error::OutsideDomain(s.len()));
        }
        if !s.is_subset_of(self.base.full()) {
            let n = self.base.len();
            return Err(Error::NodeOutOfRange { index: s.difference(self.base.full()).iter().next().unwrap(), n });
        }
        self.values[s.bits() as usize] = value;
        Ok(())
    }

    /// All `2^n - n - 1` entries in canonical subset order.
    pub fn entries(&self) -> impl Iterator<Item = (NodeSubset, i64)> + '_ {
        self.base.char_domain().map(|s| (s, self.values[s.bits() as usize]))
    }

    pub fn dimension(&self) -> usize {
        self.base.subset_count() - self.base.len() - 1
    }

    pub fn is_zero_one(&self) -> bool {
        self.values.iter().all(|&v| v == 0 || v == 1)
    }

    /// Keeps entries with `|T| <= k` and zeroes the rest.
    #[must_use]
    pub fn truncated(&self, k: usize) -> CharVector {
        let mut c = self.clone();
        for (i, v) in c.values.iter_mut().enumerate() {
            if i.count_ones() as usize > k {
                *v = 0;
            }
        }
        c
    }

    /// Subsets whose entry equals 1.
    pub fn support(&self) -> Vec<NodeSubset> {
        self.entries().filter(|&(_, v)| v == 1).map(|(s, _)| s).collect()
    }
}

/// `δ_N − δ_∅ + Σ_i (δ_{pa(i)} − δ_{{i} ∪ pa(i)})`.
pub fn standard_imset(g: &Dag) -> Imset {
    let base = g.base().clone();
    let mut u = Imset::zero(base.clone());
    let mut bump = |s: NodeSubset, v: i64| {
        u.add(s, v).expect("subset of a DAG node set");
    };
    bump(base.full(), 1);
    bump(NodeSubset::EMPTY, -1);
    for i in 0..g.len() {
        let pa = g.parents(i);
        bump(pa, 1);
        bump(pa.with(i), -1);
    }
    u
}

/// Upper portrait: `p(T) = Σ_{X ⊇ T} u(X)` for every `|T| ≥ 2`.
pub fn portrait(u: &Imset) -> CharVector {
    let n = u.base().len();
    let mut f = u.to_dense();
    // superset-sum (zeta) transform
    for bit in 0..n {
        let b = 1usize << bit;
        for mask in 0..f.len() {
            if mask & b == 0 {
                f[mask] += f[mask | b];
            }
        }
    }
    for (mask, v) in f.iter_mut().enumerate() {
        if mask.count_ones() < 2 {
            *v = 0;
        }
    }
    CharVector { base: u.base().clone(), values: f }
}

/// Inverse of [`portrait`] on the restricted domain.
///
/// The empty-set and singleton components are not carried by `p`. They are
/// fixed by requiring the superset sum at every singleton to vanish and the
/// sum of all entries to equal `total`. Standard imsets satisfy both with
/// `total = 0`, so `mobius_restore(&portrait(&standard_imset(g)), 0)` gives
/// back the standard imset of `g`.
pub fn mobius_restore(p: &CharVector, total: i64) -> Imset {
    let n = p.base().len();
    let mut f = p.values.clone();
    f[0] = total;
    for bit in 0..n {
        let b = 1usize << bit;
        for mask in 0..f.len() {
            if mask & b == 0 {
                f[mask] -= f[mask | b];
            }
        }
    }
    let values = f
        .into_iter()
        .enumerate()
        .filter(|&(_, v)| v != 0)
        .map(|(mask, v)| (NodeSubset::from_bits(mask as u32), v))
        .collect();
    Imset { base: p.base().clone(), values }
}

/// `1 − portrait(standard_imset(g))`.
pub fn characteristic_imset(g: &Dag) -> CharVector {
    let mut c = portrait(&standard_imset(g));
    for (mask, v) in c.values.iter_mut().enumerate() {
        if mask.count_ones() >= 2 {
            *v = 1 - *v;
        }
    }
    c
}

/// Characteristic imset from the clique-with-sink condition: `c(T) = 1` iff
/// some `i ∈ T` has all of `T \ {i}` among its parents.
pub fn characteristic_direct(g: &Dag) -> CharVector {
    let mut c = CharVector::zeros(g.base().clone());
    for s in g.base().char_domain() {
        if s.iter().any(|i| s.without(i).is_subset_of(g.parents(i))) {
            c.values[s.bits() as usize] = 1;
        }
    }
    c
}

/// Characteristic imset of a chordal graph: the indicator of its cliques.
pub fn characteristic_of_chordal(h: &UndirectedGraph) -> Result<CharVector> {
    if !recon::is_chordal(h) {
        return Err(Error::NotChordal);
    }
    let mut c = CharVector::zeros(h.base().clone());
    for s in h.base().char_domain() {
        if h.is_clique(s) {
            c.values[s.bits() as usize] = 1;
        }
    }
    Ok(c)
}

/// Same skeleton and same immoralities.
pub fn markov_equivalent(g: &Dag, h: &Dag) -> Result<bool> {
    if g.base() != h.base() {
        return Err(Error::BaseMismatch);
    }
    Ok(g.skeleton() == h.skeleton() && recon::immoralities(g) == recon::immoralities(h))
}

/// Completes a characteristic imset from its entries of cardinality 2 and 3.
///
/// For `|S| ≥ 4`, in order of cardinality, `c(S) = 1` iff at least three of
/// the sets `S \ {i}` have value 1. Entries of `partial` above cardinality 3
/// are ignored.
pub fn extend_from_low_cardinality(partial: &CharVector) -> CharVector {
    let mut c = partial.truncated(3);
    let n = c.base.len();
    for size in 4..=n {
        for s in c.base.char_domain().filter(|s| s.len() == size) {
            let hits = s.iter().filter(|&i| c.values[s.without(i).bits() as usize] == 1).count();
            c.values[s.bits() as usize] = i64::from(hits >= 3);
        }
    }
    c
}
