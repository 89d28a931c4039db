use std::path::PathBuf;

/// Everything that can go wrong inside the simulator, the classifier and the
/// data pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("a Kraus set needs at least one operator")]
    EmptyKrausSet,

    #[error("operators are not trace preserving: max deviation from identity {deviation:.3e}")]
    NotCompletePositive { deviation: f64 },

    #[error(
        "transition operators leaving node {node} violate completeness (deviation {deviation:.3e})"
    )]
    IncompleteNode { node: usize, deviation: f64 },

    #[error("matrix is not unitary: max deviation {deviation:.3e}")]
    NotUnitary { deviation: f64 },

    #[error("invalid density block: {0}")]
    InvalidDensity(String),

    #[error("vector is not normalized: norm {norm}")]
    Unnormalized { norm: f64 },

    #[error("{name} = {value} is outside its allowed range")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("node {node} out of range for a graph with {num_nodes} nodes")]
    NodeOutOfRange { node: usize, num_nodes: usize },

    #[error("post-selection probability {probability:.3e} is below threshold")]
    PostSelection { probability: f64 },

    #[error("omega = {omega} gives an absorbing chain; all mass ends at node {node}")]
    AbsorbingChain { omega: f64, node: usize },

    #[error("iteration estimate is only defined for omega > 1/2 (got {omega})")]
    EstimateUndefined { omega: f64 },

    #[error("probability ratio is singular: test point is antipodal to the +1 training point")]
    SingularRatio,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("{0}")]
    InvalidArgument(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    MalformedRow { line: u64, message: String },

    #[error("line {line}: unknown species {name:?}")]
    UnknownSpecies { line: u64, name: String },

    #[error("feature column {column} has zero variance")]
    ZeroVariance { column: usize },

    #[error("row {row} standardizes to the zero vector")]
    ZeroNorm { row: usize },

    #[error("not enough usable points: {0}")]
    InsufficientData(String),
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Argument,
    Data,
    Numerical,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Io { .. }
            | Error::MalformedRow { .. }
            | Error::UnknownSpecies { .. }
            | Error::EmptyDataset
            | Error::ZeroVariance { .. }
            | Error::ZeroNorm { .. }
            | Error::InsufficientData(_) => ErrorKind::Data,
            Error::PostSelection { .. }
            | Error::SingularRatio
            | Error::AbsorbingChain { .. }
            | Error::NonFinite => ErrorKind::Numerical,
            _ => ErrorKind::Argument,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
