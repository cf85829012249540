//! Characteristic imsets of DAG models and structure learning over them.

pub mod error;
pub mod graph;
pub mod imset;
pub mod learners;
pub mod oracle;
pub mod recon;
pub mod scoring;
pub mod varset;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Dag, MixedGraph, UndirectedGraph};
pub use imset::{CharVector, Imset};
pub use learners::{CliqueObjective, LearnResult, WeightTable};
pub use recon::{RejectReason, Validation};
pub use scoring::{Criterion, Dataset, ScoreOracle};
pub use varset::{NodeSubset, VarSet};
pub use verify::Report;
