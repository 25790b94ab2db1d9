use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not supported (expected 2, 3, 5 or 7)")]
    UnsupportedCharacteristic(u32),
    #[error("field F_{p}^{degree} exceeds the size ceiling")]
    FieldTooLarge { p: u32, degree: u32 },
    #[error("defining polynomial is reducible")]
    Reducible,
    #[error("values live in different fields")]
    FieldMismatch,
    #[error("precision exhausted: need order {needed}, have {available}")]
    PrecisionExhausted { needed: i64, available: i64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("parameter denominators vanish: {0} is a square")]
    SquareParameter(String),
    #[error("reduction left non-terminal exponent {0}")]
    ShapeEscaped(i64),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
