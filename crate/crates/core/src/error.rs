use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("grid of {rows}x{cols} cells exceeds the enumeration limit of {limit} cells")]
    SizeGuard { rows: u32, cols: u32, limit: u32 },
    #[error("grid is not completely tiled")]
    IncompleteGrid,
    #[error("value {0} is outside the domain")]
    Domain(String),
    #[error("empty input")]
    EmptyInput,
    #[error("window [{start}, {end}] has {equations} equations, need at least {needed}")]
    WindowTooSmall { start: usize, end: usize, equations: usize, needed: usize },
    #[error("not enough data: {0}")]
    InsufficientData(String),
    #[error("no feasible start index up to {0}")]
    NoFeasibleStart(usize),
    #[error("closed form produced a non-integral value {0}")]
    NonIntegral(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
