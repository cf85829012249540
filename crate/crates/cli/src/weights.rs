//! Weight files: `a,b,weight` rows for edges, or `a,b,c;weight` lines for
//! clique objectives.

use crate::Failure;

pub enum WeightsFile {
    Pairs(Vec<(String, String, f64)>),
    Cliques(Vec<(Vec<String>, f64)>),
}

impl WeightsFile {
    /// Variable names in order of first appearance.
    pub fn names(&self) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        let mut add = |n: &String| {
            if !names.contains(n) {
                names.push(n.clone());
            }
        };
        match self {
            WeightsFile::Pairs(rows) => rows.iter().for_each(|(a, b, _)| {
                add(a);
                add(b);
            }),
            WeightsFile::Cliques(rows) => rows.iter().flat_map(|(s, _)| s).for_each(add),
        }
        names
    }
}

fn number(text: &str, line: usize) -> Result<f64, Failure> {
    let w: f64 = text.trim().parse().map_err(|_| Failure::usage(format!("line {line}: bad weight `{text}`")))?;
    if !w.is_finite() {
        return Err(Failure::usage(format!("line {line}: weight is not finite")));
    }
    Ok(w)
}

pub fn parse(text: &str) -> Result<WeightsFile, Failure> {
    if text.lines().any(|l| l.contains(';')) {
        return parse_cliques(text);
    }
    let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Failure::usage(format!("weights: {e}")))?;
        let line = record.position().map_or(i as u64 + 1, |p| p.line()) as usize;
        if record.len() != 3 {
            return Err(Failure::usage(format!("line {line}: expected a,b,weight")));
        }
        // an optional header row
        if i == 0 && record[2].parse::<f64>().is_err() {
            continue;
        }
        rows.push((record[0].to_string(), record[1].to_string(), number(&record[2], line)?));
    }
    Ok(WeightsFile::Pairs(rows))
}

fn parse_cliques(text: &str) -> Result<WeightsFile, Failure> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (set, weight) =
            line.split_once(';').ok_or_else(|| Failure::usage(format!("line {}: expected subset;weight", i + 1)))?;
        let names: Vec<String> = set.split(',').map(|s| s.trim().to_string()).collect();
        if names.iter().any(String::is_empty) {
            return Err(Failure::usage(format!("line {}: empty variable name", i + 1)));
        }
        rows.push((names, number(weight, i + 1)?));
    }
    Ok(WeightsFile::Cliques(rows))
}
