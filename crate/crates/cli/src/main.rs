mod doc;
mod weights;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use charimset::imset::{characteristic_imset, mobius_restore, portrait, standard_imset};
use charimset::learners::{
    best_chordal_subgraph, degree_bounded_forest, degree_bounded_spanning_tree, max_weight_forest,
    max_weight_spanning_tree, ChordalObjective,
};
use charimset::recon::{essential_graph, validate_characteristic_vector, Validation};
use charimset::scoring::ingest_csv;
use charimset::{
    verify, CliqueObjective, Criterion, Error, LearnResult, ScoreOracle, UndirectedGraph, VarSet, WeightTable,
};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use doc::{GraphDocument, ImsetDocument};
use weights::WeightsFile;

/// Characteristic imsets of DAG models and structure learning.
#[derive(Parser)]
#[command(name = "charimset", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transform a graph or imset document.
    Imset {
        #[arg(value_enum)]
        transform: Transform,
        /// Graph document (standard, characteristic) or imset document.
        input: PathBuf,
        /// Value of the restored imset on the empty set (mobius only).
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        total: i64,
    },
    /// Check a characteristic vector and recover its essential graph.
    Recover { input: PathBuf },
    /// Learn a structure from data or weights.
    Learn(LearnArgs),
    /// Run the exhaustive invariant checks over all DAGs on n nodes.
    Verify {
        #[arg(long = "verify-n")]
        verify_n: usize,
        /// Allow n = 5, which enumerates 29281 DAGs.
        #[arg(long)]
        long: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Transform {
    Standard,
    Characteristic,
    Portrait,
    Mobius,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Task {
    Forest,
    Tree,
    ForestK,
    TreeK,
    Chordal,
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    Ll,
    Bic,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["data", "weights"])))]
struct LearnArgs {
    #[arg(long, value_enum)]
    task: Task,
    /// CSV data with a header row of variable names.
    #[arg(long)]
    data: Option<PathBuf>,
    /// Edge weights (`a,b,weight`) or clique weights (`a,b,c;weight`).
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Graph document whose skeleton bounds the learned structure.
    #[arg(long)]
    restriction: Option<PathBuf>,
    /// Degree bound for forest-k and tree-k.
    #[arg(long)]
    k: Option<usize>,
    /// Largest clique allowed by the chordal task.
    #[arg(long)]
    max_clique: Option<usize>,
    #[arg(long, value_enum, default_value = "bic")]
    criterion: CriterionArg,
}

/// A failed command: exit code, message and optional stdout document.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
    document: Option<String>,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into(), document: None }
    }

    fn infeasible(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into(), document: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Disconnected => 2,
            Error::OverCap { .. } => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string(), document: None }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn render<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("documents serialize");
    out.push('\n');
    out
}

fn imset(transform: Transform, input: &Path, total: i64) -> Result<String, Failure> {
    Ok(match transform {
        Transform::Standard => {
            render(&ImsetDocument::from_imset(&standard_imset(&read_json::<GraphDocument>(input)?.dag()?)))
        }
        Transform::Characteristic => {
            render(&ImsetDocument::from_char_vector(&characteristic_imset(&read_json::<GraphDocument>(input)?.dag()?)))
        }
        Transform::Portrait => {
            render(&ImsetDocument::from_char_vector(&portrait(&read_json::<ImsetDocument>(input)?.imset()?)))
        }
        Transform::Mobius => render(&ImsetDocument::from_imset(&mobius_restore(
            &read_json::<ImsetDocument>(input)?.char_vector()?,
            total,
        ))),
    })
}

#[derive(Serialize)]
struct Recovered {
    verdict: &'static str,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    witness: Option<GraphDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    essential: Option<GraphDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'static str>,
}

fn recover(input: &Path) -> Result<String, Failure> {
    let v = read_json::<ImsetDocument>(input)?.char_vector()?;
    match validate_characteristic_vector(&v) {
        Validation::Accepted(dag) => Ok(render(&Recovered {
            verdict: "accepted",
            essential: Some(GraphDocument::from_mixed(&essential_graph(&dag))),
            witness: Some(GraphDocument::from_dag(&dag)),
            reason: None,
        })),
        Validation::Rejected(r) => Err(Failure {
            code: 1,
            message: format!("not a characteristic imset: {r}"),
            document: Some(render(&Recovered {
                verdict: "rejected",
                witness: None,
                essential: None,
                reason: Some(r.code()),
            })),
        }),
    }
}

#[derive(Serialize)]
struct Learned {
    task: &'static str,
    #[serde(flatten)]
    graph: GraphDocument,
    objective: f64,
    criterion: Option<String>,
}

/// Skeleton of the restriction document laid over `base`; the document must
/// declare the same variables, in any order.
fn restriction_over(path: &Path, base: &VarSet) -> Result<UndirectedGraph, Failure> {
    let doc: GraphDocument = read_json(path)?;
    let mut declared = doc.variables.clone();
    let mut expected = base.names().to_vec();
    declared.sort();
    expected.sort();
    if declared != expected {
        return Err(Failure::usage("the restriction must declare exactly the learned variables"));
    }
    let own = doc.skeleton()?;
    let edges: Vec<(usize, usize)> = own
        .edges()
        .into_iter()
        .map(|(a, b)| Ok((base.index_of(own.base().name(a))?, base.index_of(own.base().name(b))?)))
        .collect::<Result<_, Error>>()?;
    Ok(UndirectedGraph::new(base.clone(), edges)?)
}

fn pair_task(task: Task, k: Option<usize>, w: &WeightTable) -> Result<LearnResult, Failure> {
    let need_k = || k.ok_or_else(|| Failure::usage("this task needs --k"));
    match task {
        Task::Forest => Ok(max_weight_forest(w)),
        Task::Tree => Ok(max_weight_spanning_tree(w)?),
        Task::ForestK => Ok(degree_bounded_forest(w, need_k()?)?),
        Task::TreeK => {
            let k = need_k()?;
            degree_bounded_spanning_tree(w, k)?
                .ok_or_else(|| Failure::infeasible(format!("no spanning tree with maximum degree {k}")))
        }
        Task::Chordal => unreachable!("handled by the caller"),
    }
}

fn learn(args: &LearnArgs) -> Result<String, Failure> {
    let task_name = match args.task {
        Task::Forest => "forest",
        Task::Tree => "tree",
        Task::ForestK => "forest-k",
        Task::TreeK => "tree-k",
        Task::Chordal => "chordal",
    };
    let (result, criterion) = if let Some(path) = &args.data {
        let data = ingest_csv(&read(path)?)?;
        let criterion = match args.criterion {
            CriterionArg::Ll => Criterion::LogLikelihood,
            CriterionArg::Bic => Criterion::Bic,
        };
        let o = ScoreOracle::new(&data, criterion);
        let allowed = match &args.restriction {
            Some(p) => restriction_over(p, data.base())?,
            None => UndirectedGraph::complete(data.base().clone()),
        };
        let result = if args.task == Task::Chordal {
            best_chordal_subgraph(ChordalObjective::Scores(&o), &allowed, args.max_clique)?
        } else {
            pair_task(args.task, args.k, &WeightTable::from_oracle(&o, allowed)?)?
        };
        (result, Some(criterion.to_string()))
    } else {
        let path = args.weights.as_ref().expect("clap requires a source");
        let file = weights::parse(&read(path)?)?;
        let base = match &args.restriction {
            Some(p) => read_json::<GraphDocument>(p)?.base()?,
            None => VarSet::new(file.names())?,
        };
        let allowed = match &args.restriction {
            Some(p) => Some(restriction_over(p, &base)?),
            None => None,
        };
        let result = match file {
            WeightsFile::Pairs(rows) => {
                let pairs = rows
                    .iter()
                    .map(|(a, b, w)| Ok(((base.index_of(a)?, base.index_of(b)?), *w)))
                    .collect::<Result<Vec<_>, Error>>()?;
                let allowed = match allowed {
                    Some(k) => k,
                    None => UndirectedGraph::new(base.clone(), pairs.iter().map(|&(e, _)| e).collect::<Vec<_>>())?,
                };
                let table = WeightTable::new(allowed.clone(), pairs)?;
                if args.task == Task::Chordal {
                    let objective = CliqueObjective::from_pair_weights(&table);
                    best_chordal_subgraph(ChordalObjective::Cliques(&objective), &allowed, args.max_clique)?
                } else {
                    pair_task(args.task, args.k, &table)?
                }
            }
            WeightsFile::Cliques(rows) => {
                if args.task != Task::Chordal {
                    return Err(Failure::usage("clique weights are only meaningful for the chordal task"));
                }
                let mut objective = CliqueObjective::zeros(base.clone());
                for (names, w) in &rows {
                    let s = base.subset_from_names(names)?;
                    if s.len() != names.len() {
                        return Err(Failure::usage(format!("subset {names:?} repeats a variable")));
                    }
                    objective.set(s, objective.get(s) + w)?;
                }
                let allowed = allowed.unwrap_or_else(|| UndirectedGraph::complete(base.clone()));
                best_chordal_subgraph(ChordalObjective::Cliques(&objective), &allowed, args.max_clique)?
            }
        };
        (result, None)
    };
    Ok(render(&Learned {
        task: task_name,
        graph: GraphDocument::from_undirected(&result.graph),
        objective: result.objective,
        criterion,
    }))
}

fn run_verify(n: usize, long: bool) -> Result<String, Failure> {
    let max = if long { 5 } else { verify::DEFAULT_MAX_N };
    if !(2..=max).contains(&n) {
        let hint = if n == 5 { " (n = 5 needs --long)" } else { "" };
        return Err(Failure::usage(format!("--verify-n must be between 2 and {max}{hint}")));
    }
    let report = verify::run(n)?;
    if report.passed() {
        Ok(report.to_string())
    } else {
        Err(Failure { code: 1, message: "invariant check failed".into(), document: Some(report.to_string()) })
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Imset { transform, input, total } => imset(transform, &input, total),
        Command::Recover { input } => recover(&input),
        Command::Learn(args) => learn(&args),
        Command::Verify { verify_n, long } => run_verify(verify_n, long),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(doc) = f.document {
                print!("{doc}");
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
