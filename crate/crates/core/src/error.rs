use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("generator `{name}` has non-positive degree {degree}")]
    NonPositiveDegree { name: String, degree: i64 },

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("image of `{generator}` has degree {found}, expected {expected}")]
    DegreeMismatch {
        generator: String,
        expected: i64,
        found: i64,
    },

    #[error("differential does not square to zero on generator `{generator}`")]
    NotSquareZero { generator: String },

    #[error("span is not closed: {reason} ({left}, {right})")]
    NotClosed {
        reason: &'static str,
        left: String,
        right: String,
    },

    #[error("not a dg Lie algebra: {0}")]
    InvalidLieAlgebra(String),

    #[error("derivation basis has {size} elements, over the cap of {cap}")]
    BasisTooLarge { size: usize, cap: usize },

    #[error("action is not a dg Lie map: {0}")]
    InvalidAction(String),

    #[error("fibre algebra is not finite-dimensional")]
    InfiniteFibre,

    #[error("fibre integration is not a cycle: {0}")]
    NotACycle(String),

    #[error("identity does not hold: {0}")]
    IdentityFailed(String),

    #[error("intersection pairing is degenerate")]
    DegeneratePairing,

    #[error("no unit pivot available, matrix is not invertible over the base ring")]
    NoUnitPivot,

    #[error("top-degree basis element is not unique")]
    NonUniqueTop,

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
