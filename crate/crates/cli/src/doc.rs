//! JSON documents read and written by the commands.

use std::collections::BTreeSet;

use charimset::{CharVector, Dag, Imset, MixedGraph, NodeSubset, UndirectedGraph, VarSet};
use serde::{Deserialize, Serialize};

use crate::Failure;

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct GraphDocument {
    pub variables: Vec<String>,
    #[serde(default)]
    pub arcs: Vec<[String; 2]>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Entry {
    pub subset: Vec<String>,
    pub value: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ImsetDocument {
    pub variables: Vec<String>,
    pub entries: Vec<Entry>,
}

fn pair(base: &VarSet, (a, b): (usize, usize)) -> [String; 2] {
    [base.name(a).to_string(), base.name(b).to_string()]
}

impl GraphDocument {
    pub fn base(&self) -> Result<VarSet, Failure> {
        Ok(VarSet::new(self.variables.iter().cloned())?)
    }

    fn indices(&self, base: &VarSet, list: &[[String; 2]]) -> Result<Vec<(usize, usize)>, Failure> {
        list.iter().map(|[a, b]| Ok((base.index_of(a)?, base.index_of(b)?))).collect()
    }

    pub fn mixed(&self) -> Result<MixedGraph, Failure> {
        let base = self.base()?;
        let arcs = self.indices(&base, &self.arcs)?;
        let edges = self.indices(&base, &self.edges)?;
        Ok(MixedGraph::new(base, arcs, edges)?)
    }

    /// The DAG given by `arcs`; undirected edges are not allowed.
    pub fn dag(&self) -> Result<Dag, Failure> {
        if !self.edges.is_empty() {
            return Err(Failure::usage("a DAG document may not contain undirected edges"));
        }
        let base = self.base()?;
        let arcs = self.indices(&base, &self.arcs)?;
        Ok(Dag::new(base, arcs)?)
    }

    /// Skeleton of the document, with arcs read as edges.
    pub fn skeleton(&self) -> Result<UndirectedGraph, Failure> {
        Ok(self.mixed()?.skeleton())
    }

    pub fn from_mixed(g: &MixedGraph) -> Self {
        let base = g.base();
        GraphDocument {
            variables: base.names().to_vec(),
            arcs: g.arcs().into_iter().map(|e| pair(base, e)).collect(),
            edges: g.edges().into_iter().map(|e| pair(base, e)).collect(),
        }
    }

    pub fn from_dag(g: &Dag) -> Self {
        GraphDocument::from_mixed(&MixedGraph::from(g))
    }

    pub fn from_undirected(g: &UndirectedGraph) -> Self {
        GraphDocument::from_mixed(&MixedGraph::from(g))
    }
}

impl ImsetDocument {
    fn parsed(&self) -> Result<(VarSet, Vec<(NodeSubset, i64)>), Failure> {
        let base = VarSet::new(self.variables.iter().cloned())?;
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let s = base.subset_from_names(&e.subset)?;
            if s.len() != e.subset.len() {
                return Err(Failure::usage(format!("subset {:?} repeats a variable", e.subset)));
            }
            if !seen.insert(s) {
                return Err(Failure::usage(format!("subset {:?} appears twice", e.subset)));
            }
            out.push((s, e.value));
        }
        Ok((base, out))
    }

    pub fn imset(&self) -> Result<Imset, Failure> {
        let (base, entries) = self.parsed()?;
        Ok(Imset::from_entries(base, entries)?)
    }

    /// Entries of cardinality below 2 are rejected; missing entries are 0.
    pub fn char_vector(&self) -> Result<CharVector, Failure> {
        let (base, entries) = self.parsed()?;
        Ok(CharVector::from_entries(base, entries)?)
    }

    pub fn from_imset(u: &Imset) -> Self {
        let base = u.base();
        ImsetDocument {
            variables: base.names().to_vec(),
            entries: u.entries().map(|(s, value)| Entry { subset: base.sorted_names(s), value }).collect(),
        }
    }

    pub fn from_char_vector(c: &CharVector) -> Self {
        let base = c.base();
        ImsetDocument {
            variables: base.names().to_vec(),
            entries: c.entries().map(|(s, value)| Entry { subset: base.sorted_names(s), value }).collect(),
        }
    }
}
