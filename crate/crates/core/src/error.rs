use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),
    #[error("elements from different field contexts")]
    MixedContexts,
    #[error("no embedding of F_{{p^{src}}} into F_{{p^{dst}}}")]
    NoEmbedding { src: u32, dst: u32 },
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("triple ({0},{1},{2}) is not hyperbolic")]
    NotHyperbolic(u64, u64, u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("singular matrix")]
    Singular,
    #[error("internal invariant broken: {0}")]
    Internal(String),
}
