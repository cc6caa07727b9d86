use crate::remez::RemezState;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Even-index Chebyshev coefficients of a supposedly odd polynomial are too
    /// large to be roundoff.
    #[error("parity violation: even coefficient ratio {ratio:e} exceeds {threshold:e}")]
    ParityViolation { ratio: f64, threshold: f64 },

    /// A configured size cap (degree, Taylor order, grid size) was exceeded.
    #[error("resource cap exceeded: {what} = {value} > {cap}")]
    Resource { what: &'static str, value: u64, cap: u64 },

    #[error("no convergence after {} iterations (levelled error {:e})", .0.iteration, .0.levelled_error)]
    Convergence(Box<RemezState>),

    #[error("numerical failure: {0}")]
    Numerical(String),
}
