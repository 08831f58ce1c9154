use thiserror::Error;

/// Everything that can go wrong across the library.
///
/// Variants are shared by all modules so callers match on one type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("characteristic must be 0 or an odd prime below 2^62, got {0}")]
    BadCharacteristic(u64),
    #[error("bad reduction mod {p}: {reason}")]
    BadReduction { p: u64, reason: String },
    #[error("zero polynomial has no multidegree")]
    ZeroPolynomial,
    #[error("expected {expected} entries, got {got}")]
    BadArity { expected: usize, got: usize },
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("polynomial is not multihomogeneous: {0}")]
    NotHomogeneous(String),
    #[error("operands live in different rings")]
    MixedRings,
    #[error("images are not multihomogeneous forms of one multidegree")]
    InhomogeneousImages,
    #[error("zero vector cannot be normalized")]
    ZeroVector,
    #[error("colon by the zero polynomial")]
    ZeroDivisorInput,
    #[error("saturation by the zero ideal")]
    ZeroIdealDivisor,
    #[error("ideal is the unit ideal")]
    UnitIdeal,
    #[error("polynomial is not a monomial: {0}")]
    NotMonomial(String),
    #[error("multidegree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("variety is empty")]
    EmptyVariety,
    #[error("no sampling strategy for this variety class: {0}")]
    UnsupportedClass(String),
    #[error("sampling failed after {tries} attempts")]
    SamplingFailed { tries: usize },
    #[error("representative has all components zero on the source")]
    ZeroRepresentative,
    #[error("component images do not land in the declared target: {0}")]
    TargetMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("maps are not composable: {0}")]
    NotComposable(String),
    #[error("restriction is undefined on the subvariety")]
    RestrictionUndefined,
    #[error("operation needs a finite coefficient field")]
    NeedsFiniteField,
    #[error("degree ratio {num}/{den} is not an integer")]
    NonIntegralDegree { num: i128, den: i128 },
    #[error("map is not birational: {0}")]
    NotBirational(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
