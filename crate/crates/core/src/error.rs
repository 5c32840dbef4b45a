use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("probability {0} outside the open interval (0, 1)")]
    ProbabilityOutOfRange(f64),
    #[error("mean excess undefined: {0}")]
    MeanExcessUndefined(&'static str),
    #[error("lognormal mean-excess asymptote needs u > exp(mu), got u = {0}")]
    AsymptoteDomain(f64),
    #[error("Lorenz curve undefined: {0}")]
    LorenzUndefined(&'static str),
    #[error("Zenga curve undefined: {0}")]
    ZengaUndefined(&'static str),
    #[error("no usable observations")]
    NoUsableObservations,
    #[error("degenerate sample: {0}")]
    Degenerate(&'static str),
    #[error("insufficient data: need at least {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("insufficient tail: need at least {needed} points, got {got}")]
    InsufficientTail { needed: usize, got: usize },
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("verdict refused: {got} observations is below the reliability floor of {needed}")]
    VerdictRefused { needed: usize, got: usize },
    #[error("unsupported configuration: {0}")]
    Unsupported(&'static str),
}
