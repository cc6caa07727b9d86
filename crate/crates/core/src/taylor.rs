//! The Taylor-derived polynomial `(1 − (1−x²)^b)/x`, its analytic Chebyshev
//! truncation and the searched shortest truncation ("Taylor min").

use crate::analysis;
use crate::cheb::{self, ChebyshevOddSeries};
use crate::exec::Execution;
use crate::optimal::DomainSpec;
use crate::{Error, Result};

pub const DEFAULT_B_CAP: u64 = 1_000_000_000;
pub const DEFAULT_GRID_CAP: u64 = 1 << 30;

/// `b = ⌈κ²·log(κ/(ε/2))⌉`, `D = ⌈√(b·log(4b/(ε/2)))⌉`, `d = 2D + 1`.
///
/// Both stages are allotted `ε/2` so the truncated polynomial stays within `ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorParams {
    pub b: u64,
    /// Truncation index `D`; the polynomial keeps `T₁, T₃, …, T_{2D+1}`.
    pub trunc: u64,
    pub degree: u64,
    pub kappa: f64,
    pub eps: f64,
}

pub fn taylor_params(kappa: f64, eps: f64) -> Result<TaylorParams> {
    taylor_params_with_cap(kappa, eps, DEFAULT_B_CAP)
}

pub fn taylor_params_with_cap(kappa: f64, eps: f64, b_cap: u64) -> Result<TaylorParams> {
    DomainSpec::from_kappa(kappa)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("Taylor target error must lie in (0, 1), got {eps}")));
    }
    let half = 0.5 * eps;
    let b = (kappa * kappa * (kappa / half).ln()).ceil();
    if b > b_cap as f64 {
        return Err(Error::Resource { what: "b", value: b.min(u64::MAX as f64) as u64, cap: b_cap });
    }
    let trunc = (b * (4.0 * b / half).ln()).sqrt().ceil();
    let (b, trunc) = (b as u64, trunc as u64);
    Ok(TaylorParams { b, trunc, degree: 2 * trunc + 1, kappa, eps })
}

/// `(1 − (1−x²)^b)/x` as `−expm1(b·log1p(−x²))/x`; 0 at `x = 0`.
pub fn eval_taylor_base(x: f64, b: u64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    -(b as f64 * (-x * x).ln_1p()).exp_m1() / x
}

/// Full odd Chebyshev expansion of the degree `2b − 1` base polynomial.
#[derive(Debug, Clone)]
pub struct TaylorExpansion {
    pub b: u64,
    series: ChebyshevOddSeries,
}

impl TaylorExpansion {
    /// All `b` odd coefficients.
    pub fn series(&self) -> &ChebyshevOddSeries {
        &self.series
    }

    /// Keeps `T₁ … T_{2D+1}`; an index past the expansion keeps everything.
    pub fn truncate(&self, trunc: u64) -> ChebyshevOddSeries {
        let terms = (trunc + 1).min(self.b) as usize;
        self.series.truncated(terms).expect("terms within 1..=b")
    }
}

/// Projects the base polynomial onto Chebyshev polynomials by sampling at the
/// smallest power-of-two count `M ≥ 2b` of first-kind nodes.
pub fn taylor_expansion(b: u64) -> Result<TaylorExpansion> {
    taylor_expansion_with(b, DEFAULT_GRID_CAP, Execution::default())
}

pub fn taylor_expansion_with(b: u64, grid_cap: u64, exec: Execution) -> Result<TaylorExpansion> {
    if b == 0 {
        return Err(Error::Domain("b must be at least 1".into()));
    }
    let m = (2 * b).next_power_of_two();
    if m > grid_cap {
        return Err(Error::Resource { what: "projection grid", value: m, cap: grid_cap });
    }
    let full = cheb::odd_interpolant(m as usize, |x| eval_taylor_base(x, b), exec)?;
    let series = full.truncated(b as usize)?;
    Ok(TaylorExpansion { b, series })
}

/// The analytic truncation of degree `2D + 1` (or `2b − 1` when `D ≥ b`).
pub fn taylor_series(params: &TaylorParams) -> Result<ChebyshevOddSeries> {
    Ok(taylor_expansion(params.b)?.truncate(params.trunc))
}

#[derive(Debug, Clone)]
pub struct TaylorMin {
    pub params: TaylorParams,
    pub series: ChebyshevOddSeries,
    /// Grid error of `series` on `[a, 1]`.
    pub eps_measured: f64,
    /// Set when the search hit non-monotone errors and fell back to a scan.
    pub used_linear_scan: bool,
}

/// Shortest truncation `D' ≤ D` of the Taylor expansion whose grid error on
/// `[1/κ, 1]` stays within `eps`.
///
/// Bisection assumes the error is nonincreasing in `D'`. If the returned
/// truncation passes but the next longer one does not, the assumption is
/// broken and the answer comes from a downward scan from `D` instead.
pub fn taylor_min(kappa: f64, eps: f64, grid_size: usize) -> Result<TaylorMin> {
    let params = taylor_params(kappa, eps)?;
    let expansion = taylor_expansion(params.b)?;
    taylor_min_from(&params, &expansion, grid_size)
}

pub fn taylor_min_from(
    params: &TaylorParams,
    expansion: &TaylorExpansion,
    grid_size: usize,
) -> Result<TaylorMin> {
    let a = 1.0 / params.kappa;
    let eps = params.eps;
    let top = params.trunc.min(expansion.b - 1);
    let error = |t: u64| -> Result<f64> {
        Ok(analysis::uniform_error(&expansion.truncate(t), a, grid_size)?.eps_measured)
    };
    let done = |t: u64, e: f64, scan: bool| TaylorMin {
        params: *params,
        series: expansion.truncate(t),
        eps_measured: e,
        used_linear_scan: scan,
    };

    let top_err = error(top)?;
    if top_err > eps {
        return Ok(done(top, top_err, false));
    }
    let bottom_err = error(0)?;
    if bottom_err <= eps {
        return Ok(done(0, bottom_err, false));
    }
    // invariant: error(lo) > eps >= error(hi)
    let (mut lo, mut hi, mut hi_err) = (0, top, top_err);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let e = error(mid)?;
        if e <= eps {
            hi = mid;
            hi_err = e;
        } else {
            lo = mid;
        }
    }
    if hi == top || error(hi + 1)? <= eps {
        return Ok(done(hi, hi_err, false));
    }

    let (mut t, mut t_err) = (top, top_err);
    while t > 0 {
        let e = error(t - 1)?;
        if e > eps {
            break;
        }
        t -= 1;
        t_err = e;
    }
    Ok(done(t, t_err, true))
}
