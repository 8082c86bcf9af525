use thiserror::Error;

/// Errors shared across the workbench.
#[derive(Debug, Error)]
pub enum Error {
    /// A graph constructor was handed inconsistent data (self edge, duplicate
    /// edge, vertex out of range, zero vertices, ...).
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// The graph text format could not be parsed. `line` is 1-based.
    #[error("graph format error at line {line}: {msg}")]
    GraphFormat { line: usize, msg: String },

    /// A game or formula parameter is outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// Solving would materialize more configurations than the state budget
    /// allows. `required` is the exact configuration count of the instance.
    #[error("state budget exceeded: instance has {required} configurations, budget is {budget}")]
    BudgetExceeded { required: u64, budget: u64 },

    /// A graph expression failed to parse. `offset` is a byte offset into the
    /// input string.
    #[error("syntax error at byte {offset}: {msg}")]
    ExprSyntax { offset: usize, msg: String },

    /// The decomposition reached a graph that matches no structure case.
    #[error("not decomposable: {0}")]
    NotDecomposable(String),

    /// A move handed to the simulator is not legal in its configuration.
    #[error("illegal move: {0}")]
    IllegalMove(String),

    /// A strategy was queried from a configuration its player loses, or a
    /// policy has no legal answer.
    #[error("policy query: {0}")]
    PolicyQuery(String),

    /// A set-cover instance violates its invariants.
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
