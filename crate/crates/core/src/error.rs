use thiserror::Error;

/// Errors from the expression and symbol parsers. These map to CLI exit code 2.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown indeterminate `{name}` at position {pos}")]
    UnknownIndeterminate { name: String, pos: usize },
    #[error("{value} is not a power of the declared prime {p}")]
    NotPrimePower { value: u64, p: u64 },
    #[error("omega has {got} coordinates but the degree implies {want}")]
    OmegaLength { got: usize, want: usize },
}

impl ParseError {
    pub fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax { pos, msg: msg.into() }
    }
}

/// Domain errors from the engine itself. These map to CLI exit code 1.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inversion of a non-unit element")]
    NonUnit,
    #[error("denominator vanishes at the assignment")]
    Pole,
    #[error("mismatched shapes: {0}")]
    ShapeMismatch(String),
    #[error("degenerate shift: beta + x^(p^m) = 0")]
    DegenerateShift,
    #[error("form is not reducible over the generator; stuck at {stuck}")]
    NotReducible { stuck: String },
    #[error("rule pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("degenerate delta at fold step {step}")]
    DegenerateDelta { step: usize },
    #[error("unsupported realization parameters p={p}, m={m}")]
    UnsupportedRealization { p: u64, m: usize },
}
