use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("duplicate edge between nodes {i} and {j}")]
    DuplicateEdge { i: usize, j: usize },

    #[error("node index {index} out of range for {n_nodes} nodes")]
    IndexOutOfRange { index: usize, n_nodes: usize },

    #[error("self-energy `{token}` is not a real number")]
    NonRealSelfEnergy { token: String },

    #[error("edge ({i}, {j}) has zero magnitude")]
    ZeroMagnitude { i: usize, j: usize },

    #[error("invalid value for {what}: {value}")]
    InvalidValue { what: &'static str, value: f64 },

    #[error("edge endpoints must differ (got {i} twice); use a self-energy instead")]
    SelfLoopEdge { i: usize },

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("support graph is not a forest")]
    NotForest,

    #[error("support graph is not bipartite")]
    NotBipartite,

    #[error("self-energies are not all equal")]
    UnequalSelfEnergies,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("walk uses missing edge {from} -> {to}")]
    MissingEdge { from: usize, to: usize },

    #[error("cycle must be a closed walk with at least one step")]
    NotClosedWalk,

    #[error("edge magnitudes are not uniform ({first} vs {other})")]
    NonUniformMagnitude { first: f64, other: f64 },

    #[error("{n} qubits exceeds the dense simulation limit of {max}")]
    QubitLimit { n: usize, max: usize },

    #[error("empty grid")]
    EmptyGrid,

    #[error("invalid range [{start}, {end}]")]
    InvalidRange { start: f64, end: f64 },

    #[error("csv schema violation at line {line}: {message}")]
    Csv { line: usize, message: String },
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Error {
        match self {
            e @ (Error::Syntax { .. } | Error::AtLine { .. }) => e,
            other => Error::AtLine {
                line,
                source: Box::new(other),
            },
        }
    }

    /// Line number for errors raised while reading a text file.
    pub fn line(&self) -> Option<usize> {
        match self {
            Error::Syntax { line, .. } | Error::AtLine { line, .. } | Error::Csv { line, .. } => {
                Some(*line)
            }
            _ => None,
        }
    }
}
