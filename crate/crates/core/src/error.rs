use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} qubits vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("controlled-Z needs two distinct qubits, got {0} twice")]
    SameQubit(usize),

    #[error("cannot parse Pauli string {input:?}: {reason}")]
    ParsePauli { input: String, reason: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid stabilizer group: {0}")]
    InvalidGroup(String),

    #[error("{operator} does not commute with generator {generator}")]
    NotInNormalizer { operator: String, generator: String },

    #[error("{what} = {value} is out of range ({expected})")]
    OutOfRange {
        what: &'static str,
        value: String,
        expected: &'static str,
    },

    #[error("malformed measurement policy: {0}")]
    MalformedPolicy(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn out_of_range(what: &'static str, value: impl ToString, expected: &'static str) -> Self {
        Error::OutOfRange {
            what,
            value: value.to_string(),
            expected,
        }
    }
}
