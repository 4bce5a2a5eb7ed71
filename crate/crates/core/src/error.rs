use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },

    #[error("self-loop event on node '{0}'")]
    SelfLoop(String),

    #[error("layer mismatch: {0}")]
    Layer(String),

    #[error("invalid duration '{0}' (expected e.g. 10y, 18m, 100d, inf)")]
    Duration(String),

    #[error("invalid thresholds: {0}")]
    Thresholds(String),

    #[error("cannot classify events: {0}")]
    Classify(String),

    #[error("invalid bin boundaries: {0}")]
    Bins(String),

    #[error("null model {model}: {msg}")]
    NullModel { model: &'static str, msg: String },

    #[error("unknown null model '{0}' (expected one of ls, dcls, wts, is, ts)")]
    UnknownModel(String),

    #[error("significance: {0}")]
    Significance(String),

    #[error("analysis requires node attributes but none were loaded")]
    MissingAttributes,

    #[error("invalid synthetic config: {0}")]
    Synth(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
