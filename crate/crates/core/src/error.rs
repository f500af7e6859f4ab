use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shift constants differ")]
    ShiftMismatch,
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("series is zero on its stored range")]
    ZeroSeries,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("unbound atom {0:?}")]
    UnboundAtom(String),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("not homogeneous")]
    NotHomogeneous,
    #[error("zero element")]
    ZeroElement,
    #[error("not an involution: {0}")]
    NotAnInvolution(String),
    #[error("outside supported subfields: {0}")]
    OutsideSupportedSubfields(String),
    #[error("Lie algebra is not nilpotent")]
    NotNilpotent,
    #[error("Lie algebra is abelian")]
    Abelian,
    #[error("invalid involution: {0}")]
    InvolutionInvalid(String),
    #[error("filtration violation: {0}")]
    FiltrationViolation(String),
    #[error("leading forms cancel: {0}")]
    LeadingCancellation(String),
    #[error("sample range exhausted")]
    SampleRangeExhausted,
    #[error("sample point is singular")]
    SingularSample,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
