use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("motif is not connected")]
    DisconnectedMotif,
    #[error("motif has {0} nodes; at least 3 are required")]
    MotifTooSmall(usize),
    #[error("motif patterns cannot contain Unknown relations")]
    UnknownInMotif,
    #[error("motif has {0} nodes; canonicalization supports at most 9")]
    MotifTooLarge(usize),
    #[error("edge index {0} is not part of the network")]
    UnknownEdge(usize),
    #[error("node index {0} is not part of the network")]
    UnknownNode(usize),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(String, String),
    #[error("polynomial exceeds the term cap of {cap} terms")]
    PolynomialBlowup { cap: usize },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("{requested} qubits exceeds the cap of {cap}")]
    QubitCapExceeded { requested: usize, cap: usize },
    #[error("motif needs {motif_edges} qubits but the cap is {cap}")]
    MotifLargerThanCap { motif_edges: usize, cap: usize },
    #[error("conflict component of {size} embeddings exceeds the exact-solver cap of {cap}")]
    TooManyEmbeddings { size: usize, cap: usize },
    #[error("infeasible synthetic spec: {0}")]
    InfeasibleSpec(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("network {0} has no edges")]
    EmptyNetwork(String),
    #[error("unknown motif '{0}'")]
    UnknownMotif(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
