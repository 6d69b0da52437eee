use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid pair ({a}, {b}): both arguments must be positive and finite")]
    InvalidPair { a: f64, b: f64 },

    #[error("modulus {0} is outside [0, 1)")]
    InvalidModulus(f64),

    #[error("{what}: argument {value} is outside {domain}")]
    OutOfDomain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("AGM iteration did not converge within {0} steps")]
    NoConvergence(usize),

    #[error("adaptive quadrature missed tolerance {tolerance:e} (estimated error {estimate:e})")]
    Quadrature { tolerance: f64, estimate: f64 },

    #[error("parameter {value} is outside [{lo}, {hi}] for {family}")]
    ParameterRange {
        family: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}
