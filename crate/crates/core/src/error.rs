use thiserror::Error;

/// Errors produced by the exact-arithmetic and combinatorial layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("element is not invertible in Q[x]/Phi_{order}(x)")]
    NotInvertible { order: u64 },

    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u64, u64),

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("parity violated: (n+1)*khat = {lhs} is not congruent to i+m = {rhs} mod 2")]
    Parity { lhs: i64, rhs: i64 },

    #[error("expected an integer, found {0}")]
    NotIntegral(String),

    #[error("{name} = {value} is out of range ({expected})")]
    OutOfRange {
        name: &'static str,
        value: i64,
        expected: &'static str,
    },

    #[error("degenerate projective point (0, 0)")]
    DegeneratePoint,

    #[error("scan window i_max = {i_max} is smaller than the required {required}")]
    WindowTooSmall { i_max: i64, required: i64 },

    #[error("cyclotomic sum has nonzero irrational part: {0}")]
    NotRational(String),

    #[error(
        "insufficient samples: residue class {residue} of period {period} has {have}, needs {need}"
    )]
    InsufficientSamples {
        period: usize,
        residue: usize,
        have: usize,
        need: usize,
    },

    #[error("no period <= {max_period} fits the sequence")]
    NoPeriodFits { max_period: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unsupported singularity type {0:?}; only type A_n is handled")]
    UnsupportedSingularity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
