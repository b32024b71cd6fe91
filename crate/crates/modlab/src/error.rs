use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be at least 2 (got {n})")]
    InvalidModulus { n: i64 },

    #[error("modulus {n} exceeds the supported bound {max}")]
    ModulusTooLarge { n: i64, max: i64 },

    #[error("multiplicative set over Z/{n} contains 0: some product of the generators vanishes")]
    ZeroInMultSet { n: i64 },

    #[error("element {value} is not a member of the multiplicative set")]
    NotInMultSet { value: i64 },

    #[error("ring mismatch: Z/{left} vs Z/{right}")]
    RingMismatch { left: i64, right: i64 },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("invalid invariant factors {factors:?} over Z/{n}: {reason}")]
    InvalidInvariants { factors: Vec<i64>, n: i64, reason: String },

    #[error("hom matrix ill-defined: generator {col} of order {order} is not killed in the target")]
    IllFormedHom { col: usize, order: i64 },

    #[error("maps are not composable: {context}")]
    NotComposable { context: String },

    #[error("unknown proposition id `{0}`")]
    UnknownProp(String),

    #[error("empty hunt predicate")]
    EmptyPredicate,

    #[error("unknown predicate literal `{0}`")]
    BadPredicateLiteral(String),

    #[error("S-injectivity routes disagree on {module}: {details} — this is an implementation bug, not a mathematical outcome")]
    RouteDisagreement { module: String, details: String },

    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
