//! Variable sets and subsets of them.
//!
//! A [`NodeSubset`] is a bitmask over variable indices. Subsets order by
//! cardinality first and then by their bit encoding; every map keyed by
//! subsets in this crate iterates in that order.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported number of variables.
pub const MAX_VARIABLES: usize = 20;

/// An ordered list of distinct variable labels. The index of a label is its
/// position in the list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Arc<[String]>,
}

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() < 2 {
            return Err(Error::TooFewVariables(names.len()));
        }
        if names.len() > MAX_VARIABLES {
            return Err(Error::TooManyVariables { got: names.len(), max: MAX_VARIABLES });
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(VarSet { names: names.into() })
    }

    /// Variables named `a`, `b`, `c`, ... (then `v26`, `v27`, ...).
    pub fn alphabetic(n: usize) -> Result<Self> {
        VarSet::new((0..n).map(|i| if i < 26 { char::from(b'a' + i as u8).to_string() } else { format!("v{i}") }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false; a variable set has at least two members.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn full(&self) -> NodeSubset {
        NodeSubset::full(self.len())
    }

    /// Number of subsets of the variable set, `2^n`.
    pub fn subset_count(&self) -> usize {
        1 << self.len()
    }

    /// All subsets in canonical order.
    pub fn subsets(&self) -> impl Iterator<Item = NodeSubset> {
        canonical_order(self.len()).into_iter()
    }

    /// Subsets with at least two members in canonical order; the index set of
    /// a characteristic vector.
    pub fn char_domain(&self) -> impl Iterator<Item = NodeSubset> {
        self.subsets().filter(|s| s.len() >= 2)
    }

    pub fn subset_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<NodeSubset> {
        let mut s = NodeSubset::EMPTY;
        for name in names {
            s = s.with(self.index_of(name.as_ref())?);
        }
        Ok(s)
    }

    /// Member names of `s`, sorted lexicographically.
    pub fn sorted_names(&self, s: NodeSubset) -> Vec<String> {
        let mut out: Vec<String> = s.iter().map(|i| self.names[i].clone()).collect();
        out.sort();
        out
    }

    pub(crate) fn check_node(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { index, n: self.len() })
        }
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// All `2^n` subsets sorted by (cardinality, encoding).
pub(crate) fn canonical_order(n: usize) -> Vec<NodeSubset> {
    let mut all: Vec<NodeSubset> = (0..1u32 << n).map(NodeSubset).collect();
    all.sort();
    all
}

/// A subset of variable indices, encoded as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct NodeSubset(u32);

impl NodeSubset {
    pub const EMPTY: NodeSubset = NodeSubset(0);

    pub const fn from_bits(bits: u32) -> Self {
        NodeSubset(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        NodeSubset(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        NodeSubset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(NodeSubset::EMPTY, NodeSubset::with)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        NodeSubset(self.0 | 1 << i)
    }

    #[must_use]
    pub fn without(self, i: usize) -> Self {
        NodeSubset(self.0 & !(1 << i))
    }

    pub fn is_subset_of(self, other: NodeSubset) -> bool {
        self.0 & !other.0 == 0
    }

    #[must_use]
    pub fn union(self, other: NodeSubset) -> Self {
        NodeSubset(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: NodeSubset) -> Self {
        NodeSubset(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: NodeSubset) -> Self {
        NodeSubset(self.0 & !other.0)
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Every subset of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = NodeSubset> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(NodeSubset(cur))
        })
    }
}

impl Ord for NodeSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for NodeSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for NodeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_variable_sets() {
        assert_eq!(VarSet::new(["a"]), Err(Error::TooFewVariables(1)));
        assert_eq!(VarSet::new(["a", "a"]), Err(Error::DuplicateVariable("a".into())));
        assert!(matches!(VarSet::alphabetic(21), Err(Error::TooManyVariables { got: 21, .. })));
        assert!(VarSet::alphabetic(20).is_ok());
    }

    #[test]
    fn canonical_order_is_by_cardinality() {
        let order: Vec<u32> = canonical_order(3).into_iter().map(NodeSubset::bits).collect();
        assert_eq!(order, vec![0, 1, 2, 4, 3, 5, 6, 7]);
    }

    #[test]
    fn subsets_of_a_subset() {
        let s = NodeSubset::from_indices([0, 2, 3]);
        let subs: Vec<u32> = s.subsets().map(NodeSubset::bits).collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|&b| NodeSubset(b).is_subset_of(s)));
        assert_eq!(NodeSubset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn names_round_trip() {
        let v = VarSet::new(["z", "y", "x"]).unwrap();
        let s = v.subset_from_names(&["x", "z"]).unwrap();
        assert_eq!(s, NodeSubset::from_indices([0, 2]));
        assert_eq!(v.sorted_names(s), vec!["x", "z"]);
        assert_eq!(v.subset_from_names(&["w"]), Err(Error::UnknownVariable("w".into())));
    }
}
