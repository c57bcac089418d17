use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    ZeroDivision,
    #[error("scalar field mismatch: conductor {0} vs {1}")]
    FieldMismatch(u32, u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("series precision exhausted: need {needed}, have {available}")]
    PrecisionExhausted { needed: usize, available: usize },
    #[error("graded depth exhausted: need {needed}, have {available}")]
    DepthExhausted { needed: usize, available: usize },
    #[error("a {degree}-th root of {value} is not available in the scalar field")]
    MissingRoot { value: String, degree: u32 },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("right-hand side not in the image of the bracket: {0}")]
    BracketObstruction(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("step cap of {0} reached")]
    StepCap(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn pre<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn parse_err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}
