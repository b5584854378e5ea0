use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("moduli {left} and {right} differ; lift both operands to a common modulus first")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("{from} does not divide {to}")]
    NotDivisible { from: u64, to: u64 },

    #[error("{k} is not a unit modulo {n}")]
    NotCoprime { k: i64, n: u64 },

    #[error("zero has no multiplicative inverse")]
    DivisionByZero,

    #[error("triangle does not embed in H²_ℂ for these parameters (signature {pos} positive, {neg} negative, {zero} null)")]
    Signature { pos: usize, neg: usize, zero: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
