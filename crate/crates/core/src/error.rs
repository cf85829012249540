use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("a variable set needs at least 2 variables, got {0}")]
    TooFewVariables(usize),
    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { got: usize, max: usize },
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("node index {index} out of range for {n} variables")]
    NodeOutOfRange { index: usize, n: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("nodes {0} and {1} carry more than one connection")]
    ConflictingConnection(usize, usize),
    #[error("the arcs contain a directed cycle")]
    Cyclic,
    #[error("the graphs are defined over different variable sets")]
    BaseMismatch,
    #[error("the graph is not chordal")]
    NotChordal,
    #[error("subset of cardinality {0} is outside the characteristic domain")]
    OutsideDomain(usize),
    #[error("no consistent extension exists: {0}")]
    NoConsistentExtension(String),
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("csv: {0}")]
    Csv(String),
    #[error("line {line}: expected {expected} fields, found {found}")]
    RaggedRow { line: u64, expected: usize, found: usize },
    #[error("line {line}: empty cell in column `{column}`")]
    EmptyCell { line: u64, column: String },
    #[error("column `{0}` has fewer than 2 observed states")]
    SingleState(String),
    #[error("the dataset has no rows")]
    NoRows,
    #[error("value {value} of variable {var} exceeds its cardinality {card}")]
    StateOutOfRange { var: usize, value: u32, card: u32 },
    #[error("variable {0} appears in its own conditioning set")]
    TargetInConditioningSet(usize),
    #[error("an edge needs two distinct endpoints, got {0} twice")]
    SameEndpoint(usize),

    #[error("missing weight for edge {{{0}, {1}}}")]
    MissingWeight(usize, usize),
    #[error("weight given for non-edge {{{0}, {1}}}")]
    WeightOffGraph(usize, usize),
    #[error("weight for {{{0}, {1}}} is not finite")]
    NonFiniteWeight(usize, usize),
    #[error("the allowed graph is disconnected")]
    Disconnected,
    #[error("parameter {name} = {value} is out of range {range}")]
    OutOfRange { name: &'static str, value: usize, range: String },
    #[error("{what} supports at most {cap} variables, got {n}")]
    OverCap { what: &'static str, n: usize, cap: usize },
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
