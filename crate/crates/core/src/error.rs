use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {0} has no square root in Q(sqrt2, sqrt3)")]
    NotRepresentable(String),

    #[error("product of two affine values with nonzero r parts exceeds degree one")]
    DegreeOverflow,

    #[error("division by zero")]
    DivisionByZero,

    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u32, right: u32 },

    #[error("level {level} exceeds the configured cap {cap}")]
    LevelTooLarge { level: u32, cap: u32 },

    #[error("coordinate vector of length {0} is not a power of two")]
    BadLength(usize),

    #[error("input must be nonzero")]
    ZeroInput,

    #[error("bracket of X{0} and X{1} does not lie in the span of the g2 basis")]
    BracketNotInSpan(usize, usize),

    #[error("metric is degenerate: leading principal minor {0} is not positive")]
    DegenerateMetric(usize),

    #[error("isotropy algebra of the origin is not span{{X0, X1, X2}} (kernel dimension {0})")]
    IsotropyMismatch(usize),

    #[error("origin is not a valid zero divisor: {0}")]
    InvalidOrigin(String),

    #[error("value is not affine in r: samples {0} are not collinear")]
    NonAffineInR(String),

    #[error("metric is not diagonal in the X basis")]
    NotDiagonal,

    #[error("vector is not in the required subspace {0}")]
    OutsideSubspace(&'static str),

    #[error("expected an exactly rational value, found {0}")]
    NotRational(String),

    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("matrix is not positive semidefinite")]
    NotPsd,

    #[error("identity mismatch at monomial {monomial:?}: expected {expected}, found {found}")]
    IdentityMismatch {
        monomial: [u8; 4],
        expected: String,
        found: String,
    },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("golden data error: {0}")]
    Golden(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
