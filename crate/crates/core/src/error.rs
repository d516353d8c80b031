use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameBlock {
    Horizontal,
    Vertical,
}

impl std::fmt::Display for FrameBlock {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FrameBlock::Horizontal => f.write_str("horizontal"),
            FrameBlock::Vertical => f.write_str("vertical"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("point outside the domain of space `{space}`: {detail}")]
    PointOutsideDomain { space: String, detail: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("singular {block} frame (|det| = {det:e})")]
    SingularFrame { block: FrameBlock, det: f64 },
    #[error("inconsistent frame/coframe pair (Kronecker residual {residual:e})")]
    InconsistentFrame { residual: f64 },
    #[error("singular metric")]
    SingularMetric,
    #[error("unknown space `{0}`")]
    UnknownSpace(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("evaluation error: {0}")]
    EvaluationDomain(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("space is not of Cartan type (residual {residual:e})")]
    PreconditionNotCartan { residual: f64 },
    #[error("space is not of Berwald type (residual {residual:e})")]
    PreconditionNotBerwald { residual: f64 },
    #[error("space does not satisfy the CB-condition (residual {residual:e})")]
    PreconditionNotCB { residual: f64 },
}

pub type Result<T> = std::result::Result<T, GeomError>;
