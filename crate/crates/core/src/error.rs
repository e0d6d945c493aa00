use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("malformed exponent in token `{0}`")]
    MalformedExponent(String),

    #[error("the identity element has no cyclic core")]
    IdentityHasNoCore,

    #[error("not an inverse pair: {direction} sends generator `{generator}` to `{image}`")]
    NotInverse {
        direction: &'static str,
        generator: String,
        image: String,
    },

    #[error("generator `{generator}` is not fixed: it maps to `{image}`")]
    NotFixed { generator: String, image: String },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not hyperbolic (trace {trace}, determinant {determinant})")]
    NotHyperbolic { trace: i64, determinant: i64 },

    #[error("word length {length} exceeds the budget of {limit} letters at iteration {iteration}")]
    GrowthOverflow {
        iteration: usize,
        length: usize,
        limit: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
