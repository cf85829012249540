//! Exhaustive invariant checks over every DAG on a small variable set.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::imset::{
    characteristic_direct, characteristic_imset, extend_from_low_cardinality, mobius_restore, portrait, standard_imset,
};
use crate::oracle::{enumerate_dags, skeleton_and_immoralities, DagUniverse};
use crate::recon::{
    essential_graph, meek_closure, pattern, pattern_from_charvector, validate_characteristic_vector, Validation,
};

/// Number of Markov equivalence classes of DAGs on `n` labeled nodes.
pub const CLASS_COUNTS: [(usize, usize, usize); 4] = [(2, 3, 2), (3, 25, 11), (4, 543, 185), (5, 29281, 8782)];

/// Largest `n` accepted without the long-running flag.
pub const DEFAULT_MAX_N: usize = 4;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Count of cases examined, or the first counterexample.
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub n: usize,
    pub dags: usize,
    pub classes: usize,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}: {} DAGs, {} classes", self.n, self.dags, self.classes)?;
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{mark}  {:width$}  {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

fn check(name: &'static str, cases: usize, failure: Option<String>) -> Check {
    match failure {
        None => Check { name, passed: true, detail: format!("{cases} cases") },
        Some(d) => Check { name, passed: false, detail: d },
    }
}

/// Runs every check for `n` variables (2 to 5).
pub fn run(n: usize) -> Result<Report> {
    let start = Instant::now();
    let Some(&(_, want_dags, want_classes)) = CLASS_COUNTS.iter().find(|t| t.0 == n) else {
        return Err(Error::OutOfRange { name: "n", value: n, range: "2..=5".into() });
    };
    let u = enumerate_dags(n)?;
    let mut checks = Vec::new();
    let dags = u.dags().len();
    let classes = u.classes().len();

    checks.push(Check {
        name: "counts",
        passed: dags == want_dags && classes == want_classes,
        detail: format!("expected {want_dags} DAGs / {want_classes} classes"),
    });
    checks.push(check(
        "zero-one",
        classes,
        u.classes()
            .iter()
            .position(|c| !c.key.is_zero_one())
            .map(|i| format!("class {i} has an entry outside {{0,1}}")),
    ));
    checks.push(check("partition", dags, partition_mismatch(&u)));

    let mut direct = None;
    let mut roundtrip = None;
    let mut patterns = None;
    let mut low = None;
    for (i, g) in u.dags().iter().enumerate() {
        let key = &u.classes()[u.class_of(i)].key;
        let std = standard_imset(g);
        if direct.is_none() && (characteristic_direct(g) != *key || characteristic_imset(g) != *key) {
            direct = Some(format!("DAG {i}"));
        }
        if roundtrip.is_none() && mobius_restore(&portrait(&std), std.total()) != std {
            roundtrip = Some(format!("DAG {i}"));
        }
        if patterns.is_none() && pattern_from_charvector(key) != pattern(g) {
            patterns = Some(format!("DAG {i}"));
        }
        if low.is_none() && extend_from_low_cardinality(&key.truncated(3)) != *key {
            low = Some(format!("DAG {i}"));
        }
    }
    checks.push(check("direct = 1 - portrait", dags, direct));
    checks.push(check("mobius round-trip", dags, roundtrip));
    checks.push(check("pattern recovery", dags, patterns));
    checks.push(check("low-cardinality extension", dags, low));

    let mut essential = None;
    let mut accepted = None;
    for (c, class) in u.classes().iter().enumerate() {
        let truth = u.class_essential_graph(c);
        let rep = u.representative(c);
        if essential.is_none() && (meek_closure(&pattern(rep)) != truth || essential_graph(rep) != truth) {
            essential = Some(format!("class {c}"));
        }
        if accepted.is_none() {
            match validate_characteristic_vector(&class.key) {
                Validation::Accepted(w) if characteristic_imset(&w) == class.key => {}
                Validation::Accepted(_) => accepted = Some(format!("class {c}: witness outside the class")),
                Validation::Rejected(r) => accepted = Some(format!("class {c}: rejected as {}", r.code())),
            }
        }
    }
    checks.push(check("essential graph", classes, essential));
    checks.push(check("validation accepts", classes, accepted));

    Ok(Report { n, dags, classes, checks, elapsed: start.elapsed() })
}

/// Compares the imset partition with the skeleton-and-immoralities one.
fn partition_mismatch(u: &DagUniverse) -> Option<String> {
    let mut by_structure: HashMap<_, usize> = HashMap::new();
    for (i, g) in u.dags().iter().enumerate() {
        let class = u.class_of(i);
        match by_structure.insert(skeleton_and_immoralities(g), class) {
            Some(prev) if prev != class => return Some(format!("DAG {i} splits a structural class")),
            _ => {}
        }
    }
    // equal sizes plus a well-defined map means the partitions coincide
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in by_structure.values() {
        *sizes.entry(c).or_default() += 1;
    }
    if by_structure.len() != u.classes().len() || sizes.values().any(|&k| k != 1) {
        return Some(format!("{} structural classes vs {} imset classes", by_structure.len(), u.classes().len()));
    }
    None
}
