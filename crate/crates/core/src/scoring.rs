//! Discrete datasets and decomposable, score-equivalent quality criteria.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::Read;
use std::str::FromStr;
use std::sync::Mutex;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::Dag;
use crate::imset::characteristic_imset;
use crate::oracle;
use crate::varset::{NodeSubset, VarSet};

/// A complete table of categorical observations.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    base: VarSet,
    cardinalities: Vec<u32>,
    /// Column-major state indices.
    columns: Vec<Vec<u32>>,
    /// Token of each state, when the data came from text.
    states: Vec<Vec<String>>,
}

impl Dataset {
    /// Builds a dataset from rows of state indices.
    pub fn new(base: VarSet, cardinalities: Vec<u32>, rows: &[Vec<u32>]) -> Result<Self> {
        let n = base.len();
        if cardinalities.len() != n {
            return Err(Error::RaggedRow { line: 0, expected: n, found: cardinalities.len() });
        }
        if let Some(i) = cardinalities.iter().position(|&c| c < 2) {
            return Err(Error::SingleState(base.name(i).to_string()));
        }
        if rows.is_empty() {
            return Err(Error::NoRows);
        }
        let mut columns = vec![Vec::with_capacity(rows.len()); n];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedRow { line: r as u64 + 1, expected: n, found: row.len() });
            }
            for (var, &value) in row.iter().enumerate() {
                if value >= cardinalities[var] {
                    return Err(Error::StateOutOfRange { var, value, card: cardinalities[var] });
                }
                columns[var].push(value);
            }
        }
        let states = cardinalities.iter().map(|&c| (0..c).map(|s| s.to_string()).collect()).collect();
        Ok(Dataset { base, cardinalities, columns, states })
    }

    pub fn base(&self) -> &VarSet {
        &self.base
    }

    pub fn cardinalities(&self) -> &[u32] {
        &self.cardinalities
    }

    /// Number of observations.
    pub fn len(&self) -> usize {
        self.columns[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn column(&self, var: usize) -> &[u32] {
        &self.columns[var]
    }

    pub fn state_labels(&self, var: usize) -> &[String] {
        &self.states[var]
    }
}

/// Reads a comma-separated table with a header row of variable names.
///
/// States are numbered per column in order of first appearance.
pub fn ingest_csv(text: &str) -> Result<Dataset> {
    ingest_csv_reader(text.as_bytes())
}

pub fn ingest_csv_reader<R: Read>(input: R) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .quoting(false)
        .trim(csv::Trim::All)
        .from_reader(input);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    let base = VarSet::new(header.clone())?;
    let n = base.len();
    let mut states: Vec<Vec<String>> = vec![Vec::new(); n];
    let mut columns: Vec<Vec<u32>> = vec![Vec::new(); n];
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != n {
            return Err(Error::RaggedRow { line, expected: n, found: record.len() });
        }
        for (var, token) in record.iter().enumerate() {
            if token.is_empty() {
                return Err(Error::EmptyCell { line, column: header[var].clone() });
            }
            let labels = &mut states[var];
            let state = match labels.iter().position(|l| l == token) {
                Some(s) => s,
                None => {
                    labels.push(token.to_string());
                    labels.len() - 1
                }
            };
            columns[var].push(state as u32);
        }
    }
    if columns[0].is_empty() {
        return Err(Error::NoRows);
    }
    if let Some(var) = states.iter().position(|s| s.len() < 2) {
        return Err(Error::SingleState(header[var].clone()));
    }
    let cardinalities = states.iter().map(|s| s.len() as u32).collect();
    Ok(Dataset { base, cardinalities, columns, states })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Criterion {
    /// Maximized log-likelihood.
    LogLikelihood,
    /// Log-likelihood minus `½ ln(ℓ)` per free parameter.
    Bic,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::LogLikelihood => "ll",
            Criterion::Bic => "bic",
        })
    }
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "ll" => Ok(Criterion::LogLikelihood),
            "bic" => Ok(Criterion::Bic),
            other => Err(format!("unknown criterion `{other}` (expected ll or bic)")),
        }
    }
}

/// Evaluates a decomposable criterion on a dataset. Local scores are
/// memoized per `(node, parent set)`.
pub struct ScoreOracle<'a> {
    data: &'a Dataset,
    criterion: Criterion,
    memo: Mutex<HashMap<(usize, NodeSubset), f64>>,
}

impl<'a> ScoreOracle<'a> {
    pub fn new(data: &'a Dataset, criterion: Criterion) -> Self {
        ScoreOracle { data, criterion, memo: Mutex::new(HashMap::new()) }
    }

    pub fn dataset(&self) -> &'a Dataset {
        self.data
    }

    pub fn base(&self) -> &VarSet {
        self.data.base()
    }

    pub fn criterion(&self) -> Criterion {
        self.criterion
    }

    /// `q_{i|B}` for the configured criterion.
    pub fn local_score(&self, i: usize, parents: NodeSubset) -> Result<f64> {
        self.base().check_node(i)?;
        if parents.contains(i) {
            return Err(Error::TargetInConditioningSet(i));
        }
        if !parents.is_subset_of(self.base().full()) {
            let n = self.base().len();
            return Err(Error::NodeOutOfRange {
                index: parents.difference(self.base().full()).iter().next().unwrap(),
                n,
            });
        }
        if let Some(&v) = self.memo.lock().unwrap().get(&(i, parents)) {
            return Ok(v);
        }
        let v = self.compute_local(i, parents);
        self.memo.lock().unwrap().insert((i, parents), v);
        Ok(v)
    }

    fn compute_local(&self, i: usize, parents: NodeSubset) -> f64 {
        let ll = log_likelihood(self.data, i, parents);
        match self.criterion {
            Criterion::LogLikelihood => ll,
            Criterion::Bic => {
                let card = self.data.cardinalities();
                let free = f64::from(card[i] - 1) * parents.iter().map(|j| f64::from(card[j])).product::<f64>();
                ll - 0.5 * (self.data.len() as f64).ln() * free
            }
        }
    }

    /// `Σ_i q_{i|pa(i)}`.
    pub fn score(&self, g: &Dag) -> Result<f64> {
        if g.base() != self.base() {
            return Err(Error::BaseMismatch);
        }
        (0..g.len()).map(|i| self.local_score(i, g.parents(i))).sum()
    }

    /// Score of the single-arc graph on `{a, b}` minus the score of the empty
    /// graph. Symmetric in its arguments.
    pub fn edge_weight(&self, a: usize, b: usize) -> Result<f64> {
        if a == b {
            return Err(Error::SameEndpoint(a));
        }
        let (lo, hi) = (a.min(b), a.max(b));
        Ok(self.local_score(hi, NodeSubset::singleton(lo))? - self.local_score(hi, NodeSubset::EMPTY)?)
    }
}

/// `Σ_{b,x} n(x,b) ln(n(x,b) / n(b))` over observed configurations.
fn log_likelihood(data: &Dataset, i: usize, parents: NodeSubset) -> f64 {
    let pa: Vec<usize> = parents.iter().collect();
    let card = data.cardinalities()[i] as usize;
    let mut counts: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
    let target = data.column(i);
    for (row, &x) in target.iter().enumerate() {
        let key: Vec<u32> = pa.iter().map(|&j| data.column(j)[row]).collect();
        counts.entry(key).or_insert_with(|| vec![0; card])[x as usize] += 1;
    }
    let mut ll = 0.0;
    for cells in counts.values() {
        let total = f64::from(cells.iter().sum::<u32>());
        for &c in cells.iter().filter(|&&c| c > 0) {
            let c = f64::from(c);
            ll += c * (c / total).ln();
        }
    }
    ll
}

/// Least-squares affine model of a score in characteristic-imset
/// coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineFit {
    pub intercept: f64,
    pub coefficients: BTreeMap<NodeSubset, f64>,
    /// Largest absolute deviation between fitted and actual scores.
    pub residual: f64,
}

impl AffineFit {
    pub fn predict(&self, c: &crate::imset::CharVector) -> f64 {
        self.intercept + self.coefficients.iter().map(|(&s, &w)| w * c.get(s) as f64).sum::<f64>()
    }
}

/// Largest variable set for which [`affine_fit`] enumerates the classes.
pub const AFFINE_FIT_MAX_VARIABLES: usize = 4;

/// Fits `score(g) ≈ intercept + Σ_T w(T) c_g(T)` over one representative of
/// every Markov equivalence class.
pub fn affine_fit(o: &ScoreOracle<'_>) -> Result<AffineFit> {
    let mut failure = None;
    let fit = affine_fit_with(o.base(), |g| {
        o.score(g).unwrap_or_else(|e| {
            failure = Some(e);
            f64::NAN
        })
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(fit),
    }
}

/// [`affine_fit`] for an arbitrary function of the DAG.
pub fn affine_fit_with<F>(base: &VarSet, mut score: F) -> Result<AffineFit>
where
    F: FnMut(&Dag) -> f64,
{
    let n = base.len();
    if n > AFFINE_FIT_MAX_VARIABLES {
        return Err(Error::OverCap { what: "affine fit", n, cap: AFFINE_FIT_MAX_VARIABLES });
    }
    let universe = oracle::enumerate_dags_over(base.clone())?;
    let domain: Vec<NodeSubset> = base.char_domain().collect();
    let reps: Vec<&Dag> = universe.classes().iter().map(|c| &universe.dags()[c.members[0]]).collect();

    let offset = score(&Dag::empty(base.clone()));
    let y = DVector::from_iterator(reps.len(), reps.iter().map(|g| score(g) - offset));
    let mut x = DMatrix::zeros(reps.len(), domain.len() + 1);
    for (row, g) in reps.iter().enumerate() {
        let c = characteristic_imset(g);
        x[(row, 0)] = 1.0;
        for (col, &s) in domain.iter().enumerate() {
            x[(row, col + 1)] = c.get(s) as f64;
        }
    }
    let beta = x
        .clone()
        .svd(true, true)
        .solve(&y, 1e-12)
        .map_err(|e| Error::Numerical(format!("least squares failed: {e}")))?;
    let fitted = &x * &beta;
    let residual = fitted.iter().zip(y.iter()).map(|(f, v)| (f - v).abs()).fold(0.0, f64::max);
    Ok(AffineFit {
        intercept: beta[0] + offset,
        coefficients: domain.iter().enumerate().map(|(k, &s)| (s, beta[k + 1])).collect(),
        residual,
    })
}
