use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },

    #[error("matrix has zero rows or columns")]
    EmptyMatrix,

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch in {op}: {detail}")]
    DimensionMismatch { op: &'static str, detail: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max |M - M^dagger| = {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("trace is {re} + {im}i, expected 1")]
    TraceNotUnit { re: f64, im: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("subsystem selection {keep:?} is invalid for dims {dims:?}")]
    InvalidSubsystems { dims: Vec<usize>, keep: Vec<usize> },

    #[error("expected a {expected}x{expected} state, got {got}x{got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("{name} must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("observer inside horizon: radius {radius} <= 2m = {horizon}")]
    InsideHorizon { radius: f64, horizon: f64 },

    #[error("squeezing r = {r} outside [0, pi/2)")]
    SqueezingOutOfRange { r: f64 },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("unknown metric `{0}`")]
    UnknownMetric(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
