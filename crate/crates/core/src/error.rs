use thiserror::Error;

/// Errors produced by precondition violations and malformed input.
///
/// Every operation in this crate is total on its stated domain; these
/// variants only appear when a caller steps outside it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed interval: lower endpoint {lo} must be strictly below upper endpoint {hi}")]
    MalformedInterval { lo: String, hi: String },
    #[error("operation `{0}` requires a nonempty set")]
    EmptySet(&'static str),
    #[error("affine map requires a nonzero scale factor")]
    ZeroScale,
    #[error("operation `{op}` requires a strictly positive argument, got {value}")]
    NonpositiveArgument { op: &'static str, value: String },
    #[error("iterated sumset requires lambda + mu >= 1")]
    EmptyIteratedSumset,
    #[error("superlevel threshold must be nonnegative, got {0}")]
    NegativeLevel(String),
    #[error("distribution requires a nonnegative function")]
    NegativeFunction,
    #[error("cell fraction delta must satisfy 0 <= delta < 1/2, got {0}")]
    DeltaOutOfRange(String),
    #[error("integer-set cardinality must be at least {required}, got {got}")]
    TooFewElements { required: usize, got: usize },
    #[error("lattice construction requires lambda >= 2, got {0}")]
    LambdaTooSmall(u64),
    #[error("probe requires |F| = 3|E| exactly; got |E| = {e}, |F| = {f}")]
    MeasureMismatch { e: String, f: String },
    #[error("gap width must satisfy 0 <= s < 1/4, got {0}")]
    GapOutOfRange(String),
    #[error("check is inapplicable: {0}")]
    Inapplicable(String),
    #[error("generator config is unsatisfiable: {0}")]
    UnsatisfiableConfig(String),
    #[error("unknown sweep family `{0}` (expected `gap` or `random`)")]
    UnknownFamily(String),
    #[error("integer index {0} does not fit in i64")]
    IndexOverflow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
