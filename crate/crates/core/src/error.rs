use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("apex `{0}` is already a vertex of the complex")]
    ApexCollision(String),

    #[error("complex is not flag")]
    NotFlag,

    #[error("not a subcomplex: simplex {0:?} is missing from the ambient complex")]
    NotSubcomplex(Vec<String>),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("insufficient subdivision: {check} fails after {subdivisions} subdivision(s)")]
    InsufficientSubdivision { check: String, subdivisions: usize },

    #[error("invalid group action: {0}")]
    InvalidAction(String),

    #[error("complex too large for a complement scan ({simplices} simplices, limit {limit})")]
    TooLarge { simplices: usize, limit: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
