mod common;

use charimset::learners::max_weight_spanning_tree;
use charimset::scoring::{affine_fit, affine_fit_with, ingest_csv};
use charimset::{Criterion, Dag, Error, ScoreOracle, UndirectedGraph, VarSet, WeightTable};
use common::*;

#[test]
fn csv_round_trip_matches_index_rows() {
    let mut rng = rng(11);
    let data = random_binary_dataset(&mut rng, 4, 60);
    let mut text = String::from("a,b,c,d\n");
    for r in 0..data.len() {
        let row: Vec<String> = (0..4).map(|v| format!("s{}", data.column(v)[r])).collect();
        text.push_str(&row.join(","));
        text.push('\n');
    }
    let parsed = ingest_csv(&text).unwrap();
    let a = ScoreOracle::new(&data, Criterion::Bic);
    let b = ScoreOracle::new(&parsed, Criterion::Bic);
    let g = random_dag(&mut rng, 4, 0.5);
    assert!((a.score(&g).unwrap() - b.score(&g).unwrap()).abs() < 1e-9);
}

#[test]
fn malformed_csv_is_reported() {
    assert!(matches!(ingest_csv("a,b\n1,2\n3\n"), Err(Error::RaggedRow { .. })));
    assert!(matches!(ingest_csv("a,b\n1,\n"), Err(Error::EmptyCell { .. })));
    assert!(matches!(ingest_csv("a,b\n1,1\n1,2\n"), Err(Error::SingleState(_))));
    assert!(matches!(ingest_csv("a,a\n1,2\n"), Err(Error::DuplicateVariable(_))));
    assert!(matches!(ingest_csv("a,b\n"), Err(Error::NoRows)));
}

#[test]
fn affine_fit_detects_non_affine_scores() {
    // the arc count sums the pair entries; a single arc indicator is not class-invariant
    let base = VarSet::alphabetic(3).unwrap();
    let fit = affine_fit_with(&base, |g| g.arc_count() as f64).unwrap();
    assert!(fit.residual < 1e-9);
    let fit = affine_fit_with(&base, |g| if g.has_arc(0, 1) { 1.0 } else { 0.0 }).unwrap();
    assert!(fit.residual > 0.1);
}

#[test]
fn affine_fit_predicts_every_dag() {
    let mut rng = rng(12);
    let data = random_binary_dataset(&mut rng, 3, 200);
    let o = ScoreOracle::new(&data, Criterion::Bic);
    let fit = affine_fit(&o).unwrap();
    for _ in 0..20 {
        let g = random_dag(&mut rng, 3, 0.5);
        let c = charimset::imset::characteristic_imset(&g);
        assert!((fit.predict(&c) - o.score(&g).unwrap()).abs() < 1e-9);
    }
    let big = random_binary_dataset(&mut rng, 5, 20);
    assert!(matches!(affine_fit(&ScoreOracle::new(&big, Criterion::Bic)), Err(Error::OverCap { .. })));
}

#[test]
fn chow_liu_on_csv_input() {
    let mut rng = rng(13);
    for _ in 0..5 {
        let data = random_binary_dataset(&mut rng, 6, 400);
        let o = ScoreOracle::new(&data, Criterion::LogLikelihood);
        let w = WeightTable::from_oracle(&o, UndirectedGraph::complete(data.base().clone())).unwrap();
        let tree = max_weight_spanning_tree(&w).unwrap();
        assert_eq!(tree.graph.edges(), chow_liu(&data));
        let empty = o.score(&Dag::empty(data.base().clone())).unwrap();
        assert!(tree.objective >= 0.0 && empty < 0.0);
    }
}
