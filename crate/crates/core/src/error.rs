use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Arity, degree or slot mismatch in a tree operation.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("not a bijection of the right size: {0:?}")]
    NotBijection(Vec<u32>),

    #[error("not multilinear: {0}")]
    NotMultilinear(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("invalid subset decoration: {0}")]
    BadDecoration(String),

    #[error("unary operation `{0}` needs a derivation or endomorphism flag")]
    UnflaggedUnary(String),

    #[error("degree {degree} exceeds the limit {limit} for {what}")]
    DegreeLimit {
        degree: usize,
        limit: usize,
        what: String,
    },

    #[error("presentation-ambiguous: {0}")]
    PresentationAmbiguous(String),

    #[error("algebra does not model the required operad: {0}")]
    NotAModel(String),

    #[error("operator check failed: {0}")]
    OperatorCheck(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{line}:{col}: {msg} (at `{token}`)")]
    Parse {
        line: usize,
        col: usize,
        token: String,
        msg: String,
    },

    #[error("unknown {kind} `{name}`")]
    UnknownReference { kind: &'static str, name: String },

    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },

    #[error("unsupported: {0}")]
    Unsupported(String),
}
