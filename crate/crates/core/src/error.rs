use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be prime ≥ 7 (got {0})")]
    InvalidPrime(u64),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("matrix [[{a},{b}],[{c},{d}]] has determinant {det} mod {p}, expected 1")]
    NotInSl2 {
        p: u64,
        a: u64,
        b: u64,
        c: u64,
        d: u64,
        det: u64,
    },

    #[error("cyclotomic order must be positive")]
    ZeroOrder,

    #[error("cannot parse cyclotomic number {input:?}: {reason}")]
    ParseCyc { input: String, reason: String },

    #[error("class functions live on different tables (p = {left} vs p = {right})")]
    TableMismatch { left: u64, right: u64 },

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("value {value} is not rational{context}")]
    NotRational { value: String, context: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("degree mismatch for p = {p}: index formula gives {index}, genus formula gives {genus}")]
    DegreeMismatch { p: u64, index: String, genus: String },

    #[error("character table check failed at p = {p}: {detail}")]
    TableCheck { p: u64, detail: String },

    #[error("corollary falsified at p = {p}: {detail}")]
    CorollaryFalsified { p: u64, detail: String },

    #[error("invalid character table document: {0}")]
    Document(String),
}
