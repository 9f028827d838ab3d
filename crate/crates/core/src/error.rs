use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("jet order {order} of `{var}` exceeds layout order {max}")]
    JetOrderExceeded { var: String, order: u32, max: u32 },

    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),

    #[error("empty polytope")]
    EmptyPolytope,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid simplex block: {0}")]
    InvalidBlock(String),

    #[error("polytope has a negative coordinate")]
    NegativeCoordinates,

    #[error("polynomial is not affine-linear in the prolongation block")]
    NonLinear,

    #[error("expected {expected} inputs, got {found}")]
    CountMismatch { expected: usize, found: usize },

    #[error("dimension {found} exceeds the supported maximum {max}")]
    GuardExceeded { max: usize, found: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("basis polytope `{0}` is not a standard coordinate simplex")]
    NonSimplexBasis(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("co-ideal guard failed: {0}")]
    CoidealGuard(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("degenerate Mobius map: ad - bc = 0")]
    DegenerateMobius,

    #[error("polynomial involves formal constants with no value")]
    UnboundConstant,

    #[error("evaluation hit a pole")]
    Pole,

    #[error("arithmetic overflow in fixed-width fast path")]
    Overflow,

    #[error("{0}")]
    Input(String),
}

impl Error {
    /// True for violated mathematical preconditions (CLI exit code 2), as
    /// opposed to malformed input (exit code 1).
    pub fn is_hypothesis_violation(&self) -> bool {
        matches!(self, Error::Hypothesis(_) | Error::CoidealGuard(_) | Error::DegenerateMobius)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
