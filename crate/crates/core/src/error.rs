use thiserror::Error;

/// Everything that can go wrong while loading a presentation or computing in it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("line {line}: relation {relation} uses a{tail} but only generators above a{bound} are allowed")]
    IndexOrder {
        line: usize,
        relation: String,
        tail: usize,
        bound: usize,
    },

    #[error("line {line}: exponent {exponent} of a{generator} outside [1, {max}]")]
    ExponentRange {
        line: usize,
        generator: usize,
        exponent: i64,
        max: u32,
    },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("generator index a{index} outside [1, {ngens}]")]
    GeneratorRange { index: usize, ngens: usize },

    #[error("presentation is inconsistent: {failures} overlap(s) fail, first: {first}")]
    Inconsistent { failures: usize, first: String },

    #[error("group order {order} exceeds the configured bound {bound}")]
    OrderBound { order: u64, bound: u64 },

    #[error("element index {index} does not belong to a group of order {order}")]
    ForeignElement { index: usize, order: usize },

    #[error("subgroup is not abelian")]
    NotAbelian,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("derivation: {0}")]
    Derivation(String),

    #[error("group is not eligible for the derivation construction: {0}")]
    Ineligible(String),

    #[error("cannot certify: {0}")]
    CannotCertify(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
