//! The Chebyshev-iteration polynomial
//! `p(x) = 1/x − T_n(y(x)) / (x·T_n(y₀))`, the minimizer of `‖xp − 1‖` on
//! `S(a)`, and its degree rule `n = ⌈(κ/2)·log(2κ/ε)⌉`.
//!
//! `T_n(y₀)` with `|y₀| > 1` is huge, so evaluation uses `T_n/(2α)ⁿ`, which
//! satisfies the same scaled recurrence as the optimal family and has the
//! closed value `(−1)ⁿ(1 + (2α)^{−2n})/2` at `y₀`. Inside the gap the
//! numerator is `1 − cosh(nψ)/cosh(nψ₀) = −expm1(−nu)·(−expm1(−2nψ₀+nu))/(1+e^{−2nψ₀})`
//! with `u = ψ₀ − ψ` as for the optimal family.

use crate::cheb::{self, ChebyshevOddSeries};
use crate::exec::Execution;
use crate::optimal::{self, check_a, gap_psi0, gap_u, y_of_x, Family, ScaledRecurrence};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebIterParams {
    pub n: usize,
    pub a: f64,
    /// `1/|T_n(y₀)|`, the residual bound `‖xp − 1‖` on `S(a)`.
    pub eps_prime: f64,
}

impl ChebIterParams {
    pub fn new(n: usize, a: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        check_a(a)?;
        Ok(Self { n, a, eps_prime: eps_prime(n, a) })
    }

    pub fn degree(&self) -> usize {
        2 * self.n - 1
    }
}

/// `1/|T_n(y₀)| = 2/((2α)ⁿ + (2α)^{−n})`, i.e. `1/cosh(n·arccosh|y₀|)`.
pub fn eps_prime(n: usize, a: f64) -> f64 {
    // arccosh|y₀| = ln(2α) = ln((1+a)/(1−a))
    let t = n as f64 * (a.ln_1p() - (-a).ln_1p());
    let e = (-t).exp();
    2.0 * e / (1.0 + e * e)
}

/// `n = ⌈(κ/2)·log(2κ/ε)⌉`, at least 1.
pub fn chebiter_degree(kappa: f64, eps: f64) -> Result<usize> {
    optimal::DomainSpec::from_kappa(kappa)?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::Domain(format!("target error must be positive, got {eps}")));
    }
    Ok(((0.5 * kappa * (2.0 * kappa / eps).ln()).ceil()).max(1.0) as usize)
}

#[derive(Debug, Clone, Copy)]
pub struct ChebIterPoly {
    params: ChebIterParams,
    rec: ScaledRecurrence,
    /// `T_n(y₀)/(2α)ⁿ`.
    scaled_at_y0: f64,
}

impl ChebIterPoly {
    pub fn new(n: usize, a: f64) -> Result<Self> {
        let params = ChebIterParams::new(n, a)?;
        let rec = ScaledRecurrence::new(Family::Chebyshev, a);
        let decay = (-2.0 * n as f64 * (2.0 * rec.alpha).ln()).exp();
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(Self { params, rec, scaled_at_y0: sign * 0.5 * (1.0 + decay) })
    }

    pub fn params(&self) -> &ChebIterParams {
        &self.params
    }

    pub fn eval(&self, x: f64) -> f64 {
        let a = self.params.a;
        if x == 0.0 {
            0.0
        } else if x.abs() >= a {
            (1.0 - self.rec.value(self.params.n, y_of_x(x, a)) / self.scaled_at_y0) / x
        } else {
            let n = self.params.n as f64;
            let psi0 = gap_psi0(a);
            let u = gap_u(x, a);
            let num = (-n * u).exp_m1() * (-2.0 * n * psi0 + n * u).exp_m1()
                / (1.0 + (-2.0 * n * psi0).exp());
            num / x
        }
    }

    /// `x·p(x) − 1 = −T_n(y)/T_n(y₀)`.
    pub fn residual(&self, x: f64) -> f64 {
        -self.rec.value(self.params.n, y_of_x(x, self.params.a)) / self.scaled_at_y0
    }

    /// `1/x − p(x)`.
    pub fn error(&self, x: f64) -> f64 {
        -self.residual(x) / x
    }

    pub fn series_with(&self, exec: Execution) -> Result<ChebyshevOddSeries> {
        cheb::odd_interpolant(2 * self.params.n, |x| self.eval(x), exec)
    }
}

/// `1/x − T_n(y(x))/(x·T_n(y₀))`; 0 at `x = 0`.
pub fn eval_chebiter(x: f64, n: usize, a: f64) -> Result<f64> {
    Ok(ChebIterPoly::new(n, a)?.eval(x))
}

pub fn chebiter_series(n: usize, a: f64) -> Result<ChebyshevOddSeries> {
    chebiter_series_with(n, a, optimal::DEFAULT_DEGREE_CAP, Execution::default())
}

pub fn chebiter_series_with(
    n: usize,
    a: f64,
    degree_cap: usize,
    exec: Execution,
) -> Result<ChebyshevOddSeries> {
    let poly = ChebIterPoly::new(n, a)?;
    let d = poly.params().degree();
    if d > degree_cap {
        return Err(Error::Resource { what: "degree", value: d as u64, cap: degree_cap as u64 });
    }
    poly.series_with(exec)
}
