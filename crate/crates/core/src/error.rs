use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at offset {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent overflow (per-variable cap is 65535)")]
    ExponentOverflow,
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("the origin is not a point of {0}")]
    PointNotOnVariety(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("morphism `{map}` is not well defined: image of generator `{generator}` is not in the target ideal")]
    IllDefinedMorphism { map: String, generator: String },
    #[error("line {line}: {msg}")]
    Scenario { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Budget exhaustion and truncated resolutions are reported as indeterminate outcomes.
    pub fn is_indeterminate(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_) | Error::Indeterminate(_))
    }
}
