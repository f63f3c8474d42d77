use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("grafting needs at least 2 children, got {0}")]
    Arity(usize),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("domain error: {0}")]
    Domain(String),

    /// `1 ≺ 1`, `1 ≻ 1` and `1 · 1` have no value in the augmented algebra.
    #[error("`1 {0} 1` is undefined in the augmented algebra")]
    UndefinedUnitProduct(&'static str),

    #[error("sequence index {index} is beyond horizon {horizon}")]
    Horizon { index: usize, horizon: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),

    #[error("degree {degree} exceeds the enumeration cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("conventions are unresolved; run convention resolution and load conventions.json")]
    Unresolved,

    #[error("convention resolution accepted {0} flag combinations, expected exactly one")]
    Resolution(usize),
}
