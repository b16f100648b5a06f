use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incomplete rule: no entry for symbol `{symbol}` in state `{state}`")]
    IncompleteRule { symbol: String, state: String },

    #[error("duplicate rule entry for symbol `{symbol}` in state `{state}`")]
    DuplicateRule { symbol: String, state: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("invalid move {0}: expected -1 or +1")]
    InvalidMove(i64),

    #[error("{0} must not be empty")]
    Empty(&'static str),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("budget exceeded: {what} needs {needed} simulations, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u64,
    },

    #[error("insufficient horizon: no eventually periodic fit on [0, {horizon}]")]
    InsufficientHorizon { horizon: usize },

    #[error("unstable fit for {piece}: refit at horizon {horizon} disagrees")]
    UnstableFit { piece: String, horizon: usize },

    #[error("interval property violated for arrival language: lengths {0:?}")]
    IntervalViolation(Vec<usize>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("nondeterministic transition: {0}")]
    Nondeterministic(String),

    #[error("stack-bottom discipline violated: {0}")]
    BottomDiscipline(String),

    #[error("alphabet mismatch between automata")]
    AlphabetMismatch,

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
