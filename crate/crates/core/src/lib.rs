//! Odd polynomial approximations to `1/x` on `S(a) = [-1,-a] ∪ [a,1]`, `a = 1/κ`.
//!
//! Four constructions are provided, all returning a [`ChebyshevOddSeries`]:
//!
//! * [`optimal`]: the analytic minimax polynomial, evaluated through a scaled
//!   three-term recurrence and interpolated exactly at Chebyshev nodes.
//! * [`taylor`]: the classical `(1 - (1-x²)^b)/x` construction with its
//!   analytic Chebyshev truncation, plus a search for the shortest truncation.
//! * [`chebiter`]: the Chebyshev-iteration polynomial minimizing `‖xp - 1‖`.
//! * [`remez`]: a small-degree Remez exchange used to certify the analytic
//!   minimax solution.
//!
//! [`analysis`] measures the uniform error on `[a,1]`, certifies the maximum
//! of `|p|` on `[-1,1]` from an oversampled grid and counts alternations of
//! the error curve.
//!
//! Grid sweeps run on rayon when the `parallel` feature is enabled (the
//! default) and sequentially otherwise; see [`exec`].

pub mod analysis;
pub mod cheb;
pub mod chebiter;
mod error;
pub mod exec;
pub mod optimal;
pub mod remez;
pub mod taylor;

pub use analysis::{ErrorReport, MaxBound};
pub use cheb::{ChebNodeGrid, ChebyshevOddSeries};
pub use error::{Error, Result};
pub use exec::Execution;
pub use optimal::DomainSpec;
