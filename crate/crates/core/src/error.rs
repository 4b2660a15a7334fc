use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degenerate basis")]
    DegenerateBasis,
    #[error("singular system")]
    SingularSystem,
    #[error("insufficient sample geometry")]
    InsufficientSampleGeometry,
    #[error("samples are inconsistent with the requested support")]
    InconsistentSamples,
    #[error("incompatible radical classes: sqrt({0}) vs sqrt({1})")]
    IncompatibleRadicalClasses(String, String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid rank {rank} for type {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("index {index} out of range for rank {rank}")]
    InvalidIndex { index: usize, rank: usize },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("point on reflection hyperplane")]
    PointOnHyperplane,
    #[error("not a dominant coweight: {0:?}")]
    NotDominant(Vec<i64>),
    #[error("not a coweight")]
    NotCoweight,
    #[error("word of length {word_len} is not reduced (element length {length})")]
    NotReduced { word_len: usize, length: usize },
    #[error("word does not spell the given element")]
    WordMismatch,
    #[error("budget exceeded: {what} would exceed limit {limit}")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("enumeration refused: {0}")]
    EnumerationRefused(String),
    #[error("radical inconsistency in volume recursion for J = {0:?}")]
    RadicalInconsistency(Vec<usize>),
    #[error("fit failed verification at lambda = {lambda:?}: formula {formula}, lattice {lattice}")]
    FitFailedVerification {
        lambda: Vec<i64>,
        formula: String,
        lattice: String,
    },
    #[error("formula evaluation inconsistent: {0}")]
    FormulaInconsistent(String),
    #[error("coefficients belong to {expected}, not {got}")]
    SystemMismatch { expected: String, got: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
