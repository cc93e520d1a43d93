use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("orbit seed must be a connected graph")]
    DisconnectedSeed,

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),

    #[error("hamiltonicity search exhausted its budget of {0} nodes")]
    BudgetExhausted(u64),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    /// True for errors caused by a request that is too large to serve.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity(_))
    }
}
