//! The minimax odd polynomial for `1/x` on `S(a)`.
//!
//! With `y(x) = (2x² − (1+a²))/(1−a²)` and `y₀ = y(0) = −(1+a²)/(1−a²)`,
//!
//! ```text
//! P_{2n−1}(x; a) = 1/x − L_n(y(x); a) / (x · L_n(y₀; a)),
//! L_n(y; a) = 2^{1−n} (T_n(y) + ((1−a)/(1+a)) T_{n−1}(y)),
//! ```
//!
//! and its uniform error on `S(a)` is `(1−a)ⁿ / (a (1+a)^{n−1})`.
//!
//! `L_n` grows like `αⁿ` with `α = (1+a)/(2(1−a))`, so every evaluation goes
//! through the scaled family `𝓛_n = L_n / αⁿ`, which obeys
//! `𝓛_n = y𝓛_{n−1}/α − 𝓛_{n−2}/(4α²)` and has the closed value
//! `𝓛_n(y₀) = (−1)ⁿ · 4a/(1+a)²`.
//!
//! Inside the gap `|x| < a` the recurrence is ill-conditioned for large `n`
//! (its characteristic roots nearly coincide), so there the numerator is
//! written in hyperbolic form. With `y = −cosh ψ`, `y₀ = −cosh ψ₀`,
//! `ψ₀ = log((1+a)/(1−a))` and `u = ψ₀ − ψ`,
//!
//! ```text
//! 1 − L_n(y)/L_n(y₀) = −expm1(−nu)
//!     − expm1(−u) · (e^{−2ψ₀−(n−1)u} − e^{−2nψ₀+nu}) / (−expm1(−2ψ₀)),
//! u = 2·asinh(x² / (a√(1−x²) + √(a²−x²))),
//! ```
//!
//! where every exponent is nonpositive and nothing cancels as `x → 0`.

use crate::cheb::{self, ChebyshevOddSeries};
use crate::exec::Execution;
use crate::{Error, Result};

/// Largest polynomial degree [`optimal_series`] will build.
pub const DEFAULT_DEGREE_CAP: usize = 1_000_000;

/// Exponent magnitude above which `ε` is evaluated in log space.
const LOG_SPACE_THRESHOLD: f64 = 700.0;

/// Condition number `κ` and the gap `a = 1/κ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainSpec {
    pub kappa: f64,
    pub a: f64,
}

impl DomainSpec {
    pub fn from_kappa(kappa: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa > 1.0) {
            return Err(Error::Domain(format!("condition number must exceed 1, got {kappa}")));
        }
        Ok(Self { kappa, a: 1.0 / kappa })
    }

    pub fn from_a(a: f64) -> Result<Self> {
        check_a(a)?;
        Ok(Self { kappa: 1.0 / a, a })
    }
}

pub(crate) fn check_a(a: f64) -> Result<()> {
    if a > 0.0 && a < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("a must lie in (0, 1), got {a}")))
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Domain("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `α(a) = (1+a)/(2(1−a))`.
pub fn alpha(a: f64) -> f64 {
    (1.0 + a) / (2.0 * (1.0 - a))
}

/// `y(x) = (2x² − (1+a²))/(1−a²)`, mapping `[a,1]` onto `[−1,1]`.
pub fn y_of_x(x: f64, a: f64) -> f64 {
    (2.0 * x * x - (1.0 + a * a)) / (1.0 - a * a)
}

/// The image `y(0)` of the singular point, always below −1.
pub fn y_at_zero(a: f64) -> f64 {
    -(1.0 + a * a) / (1.0 - a * a)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalParams {
    /// Half the degree plus one half: `d = 2n − 1`.
    pub n: usize,
    pub a: f64,
    pub alpha: f64,
    pub beta1: f64,
}

impl OptimalParams {
    pub fn new(n: usize, a: f64) -> Result<Self> {
        check_n(n)?;
        check_a(a)?;
        Ok(Self { n, a, alpha: alpha(a), beta1: (a - 1.0) / (1.0 + a) })
    }

    pub fn degree(&self) -> usize {
        2 * self.n - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBudget {
    pub target_eps: f64,
    pub achieved_eps: f64,
}

/// Smallest `n` whose optimal polynomial meets `eps`, with the achieved error.
pub fn budget_for_eps(a: f64, eps: f64) -> Result<(usize, ErrorBudget)> {
    let n = degree_for_eps(a, eps)?;
    let achieved_eps = eps_for_degree(n, a)?;
    Ok((n, ErrorBudget { target_eps: eps, achieved_eps }))
}

/// `ε_{2n−1}(a) = (1−a)ⁿ / (a (1+a)^{n−1})`.
pub fn eps_for_degree(n: usize, a: f64) -> Result<f64> {
    check_n(n)?;
    check_a(a)?;
    let nf = n as f64;
    let log_ratio = (-a).ln_1p() - a.ln_1p();
    if nf * log_ratio.abs() > LOG_SPACE_THRESHOLD {
        Ok((nf * (-a).ln_1p() - a.ln() - (nf - 1.0) * a.ln_1p()).exp())
    } else {
        Ok((1.0 - a).powi(n as i32) / (a * (1.0 + a).powi(n as i32 - 1)))
    }
}

/// Smallest `n ≥ 1` with `ε_{2n−1}(a) ≤ eps`.
pub fn degree_for_eps(a: f64, eps: f64) -> Result<usize> {
    check_a(a)?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::Domain(format!("target error must be positive, got {eps}")));
    }
    let num = -eps.ln() - a.ln() + a.ln_1p();
    let den = a.ln_1p() - (-a).ln_1p();
    let mut n = (num / den).ceil().max(1.0) as usize;
    // the closed form can misround at the boundary
    while eps_for_degree(n, a)? > eps {
        n += 1;
    }
    while n > 1 && eps_for_degree(n - 1, a)? <= eps {
        n -= 1;
    }
    Ok(n)
}

/// Which scaled family a [`ScaledRecurrence`] runs.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Family {
    /// `𝓛_n = L_n/αⁿ`.
    Optimal,
    /// `T_n/(2α)ⁿ`.
    Chebyshev,
}

/// Runs `v_k = y·v_{k−1}/α − v_{k−2}/(4α²)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ScaledRecurrence {
    pub family: Family,
    pub a: f64,
    pub alpha: f64,
}

impl ScaledRecurrence {
    pub fn new(family: Family, a: f64) -> Self {
        Self { family, a, alpha: alpha(a) }
    }

    fn start(&self, y: f64) -> (usize, f64, f64) {
        let al = self.alpha;
        match self.family {
            Family::Optimal => {
                let r = (1.0 - self.a) / (1.0 + self.a);
                (1, (y + r) / al, (y * y + 0.5 * r * y - 0.5) / (al * al))
            }
            Family::Chebyshev => (0, 1.0, y / (2.0 * al)),
        }
    }

    /// Scaled value at `y`.
    pub fn value(&self, n: usize, y: f64) -> f64 {
        let (first, mut v0, mut v1) = self.start(y);
        if n == first {
            return v0;
        }
        let p = y / self.alpha;
        let q = 0.25 / (self.alpha * self.alpha);
        for _ in first + 1..n {
            let v = p * v1 - q * v0;
            v0 = v1;
            v1 = v;
        }
        v1
    }
}

/// `ψ₀ = arccosh|y₀| = log((1+a)/(1−a))`.
pub(crate) fn gap_psi0(a: f64) -> f64 {
    a.ln_1p() - (-a).ln_1p()
}

/// `u = ψ₀ − ψ(x)` for `|x| ≤ a`, accurate down to `x = 0`.
pub(crate) fn gap_u(x: f64, a: f64) -> f64 {
    let x = x.abs();
    let den = a * (1.0 - x * x).sqrt() + ((a - x) * (a + x)).sqrt();
    2.0 * (x * x / den).asinh()
}

/// `𝓛_n(y; a) = L_n(y; a)/αⁿ` by the scaled recurrence.
pub fn scaled_l_eval(n: usize, y: f64, a: f64) -> Result<f64> {
    check_n(n)?;
    check_a(a)?;
    Ok(ScaledRecurrence::new(Family::Optimal, a).value(n, y))
}

/// Unscaled `L_n(y; a)` straight from its Chebyshev form. Overflows for large
/// `n`; meant as a cross-check.
pub fn l_direct(n: usize, y: f64, a: f64) -> Result<f64> {
    check_n(n)?;
    check_a(a)?;
    let r = (1.0 - a) / (1.0 + a);
    Ok((cheb::eval_t(n, y) + r * cheb::eval_t(n - 1, y)) / 2f64.powi(n as i32 - 1))
}

/// `L_n(y₀; a) = (−1)ⁿ · 4a/(1+a)² · αⁿ`.
pub fn denominator_value(n: usize, a: f64) -> Result<f64> {
    check_n(n)?;
    check_a(a)?;
    Ok(sign(n) * 4.0 * a / ((1.0 + a) * (1.0 + a)) * alpha(a).powi(n as i32))
}

fn sign(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Evaluator for a fixed `(n, a)`.
#[derive(Debug, Clone, Copy)]
pub struct OptimalPoly {
    params: OptimalParams,
    rec: ScaledRecurrence,
    /// `(−1)ⁿ (1+a)²/(4a)`, the reciprocal of `𝓛_n(y₀)`.
    inv_denominator: f64,
}

impl OptimalPoly {
    pub fn new(n: usize, a: f64) -> Result<Self> {
        let params = OptimalParams::new(n, a)?;
        Ok(Self {
            params,
            rec: ScaledRecurrence::new(Family::Optimal, a),
            inv_denominator: sign(n) * (1.0 + a) * (1.0 + a) / (4.0 * a),
        })
    }

    pub fn params(&self) -> &OptimalParams {
        &self.params
    }

    /// `P_{2n−1}(x; a)`.
    ///
    /// The recurrence on `|x| ≥ a`, the hyperbolic form inside the gap.
    pub fn eval(&self, x: f64) -> f64 {
        let a = self.params.a;
        if x == 0.0 {
            0.0
        } else if x.abs() >= a {
            (1.0 - self.inv_denominator * self.rec.value(self.params.n, y_of_x(x, a))) / x
        } else {
            self.gap_numerator(x) / x
        }
    }

    /// `1 − 𝓛_n(y)/𝓛_n(y₀)` for `|x| < a`.
    fn gap_numerator(&self, x: f64) -> f64 {
        let a = self.params.a;
        let n = self.params.n as f64;
        let psi0 = gap_psi0(a);
        let u = gap_u(x, a);
        let mixed = (-2.0 * psi0 - (n - 1.0) * u).exp() - (-2.0 * n * psi0 + n * u).exp();
        -(-n * u).exp_m1() - (-u).exp_m1() * mixed / -(-2.0 * psi0).exp_m1()
    }

    /// `1/x − P_{2n−1}(x)` without cancellation: `𝓛_n(y)/(x·𝓛_n(y₀))`.
    pub fn residual(&self, x: f64) -> f64 {
        let y = y_of_x(x, self.params.a);
        self.inv_denominator * self.rec.value(self.params.n, y) / x
    }

    /// Exact Chebyshev coefficients from the `d + 1 = 2n` first-kind nodes.
    pub fn series_with(&self, exec: Execution) -> Result<ChebyshevOddSeries> {
        let count = 2 * self.params.n;
        cheb::odd_interpolant(count, |x| self.eval(x), exec)
    }
}

/// `P_{2n−1}(x; a)`; exactly 0 at `x = 0`.
pub fn eval_optimal(x: f64, n: usize, a: f64) -> Result<f64> {
    Ok(OptimalPoly::new(n, a)?.eval(x))
}

/// Chebyshev coefficients of `P_{2n−1}(·; a)`.
pub fn optimal_series(n: usize, a: f64) -> Result<ChebyshevOddSeries> {
    optimal_series_with(n, a, DEFAULT_DEGREE_CAP, Execution::default())
}

pub fn optimal_series_with(
    n: usize,
    a: f64,
    degree_cap: usize,
    exec: Execution,
) -> Result<ChebyshevOddSeries> {
    let poly = OptimalPoly::new(n, a)?;
    let d = poly.params().degree();
    if d > degree_cap {
        return Err(Error::Resource { what: "degree", value: d as u64, cap: degree_cap as u64 });
    }
    poly.series_with(exec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn error_formula_examples() {
        assert!(rel(eps_for_degree(1, 0.5).unwrap(), 1.0) < 1e-15);
        assert!(rel(eps_for_degree(2, 0.5).unwrap(), 1.0 / 3.0) < 1e-15);
        assert!(rel(eps_for_degree(2, 1.0 / 3.0).unwrap(), 1.0) < 1e-15);
        assert!(matches!(eps_for_degree(1, 1.0), Err(Error::Domain(_))));
        assert!(matches!(eps_for_degree(1, 0.0), Err(Error::Domain(_))));
        assert!(eps_for_degree(0, 0.5).is_err());
    }

    #[test]
    fn log_space_branch_is_continuous() {
        // a = 0.5: |log r| = ln 3, so the switch sits near n = 637
        let a = 0.5;
        for n in [630, 637, 638, 645] {
            let direct = 3.0 * (1.0f64 / 3.0).powi(n as i32);
            assert!(rel(eps_for_degree(n, a).unwrap(), direct) < 1e-12, "n={n}");
        }
        let tiny = eps_for_degree(100_000, 0.01).unwrap();
        assert!((0.0..1e-300).contains(&tiny));
    }

    #[test]
    fn degree_formula_examples() {
        assert_eq!(degree_for_eps(0.5, 1.0).unwrap(), 1);
        assert_eq!(degree_for_eps(0.5, 1.0 / 3.0).unwrap(), 2);
        assert!(degree_for_eps(0.5, 0.0).is_err());
        assert!(degree_for_eps(0.5, -1.0).is_err());
        // large target error is met already by n = 1
        assert_eq!(degree_for_eps(0.5, 10.0).unwrap(), 1);
    }

    #[test]
    fn degree_formula_asymptotics() {
        let (kappa, eps) = (1e4f64, 1e-12f64);
        let n = degree_for_eps(1.0 / kappa, eps).unwrap() as f64;
        let ratio = n / (0.5 * kappa * (kappa / eps).ln());
        assert!((0.9..=1.1).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn budget_meets_target() {
        let (n, b) = budget_for_eps(0.1, 1e-6).unwrap();
        assert!(b.achieved_eps <= b.target_eps);
        assert_eq!(n, degree_for_eps(0.1, 1e-6).unwrap());
    }

    #[test]
    fn params_invariants() {
        for a in [0.01, 0.3, 0.5, 0.99] {
            let p = OptimalParams::new(3, a).unwrap();
            assert!(p.alpha > 0.5);
            assert!(p.beta1 > -1.0 && p.beta1 < 0.0);
            assert_eq!(p.degree(), 5);
        }
        let d = DomainSpec::from_kappa(7.0).unwrap();
        assert!(rel(d.a * d.kappa, 1.0) < 1e-15);
        assert!(DomainSpec::from_kappa(1.0).is_err());
        assert!(DomainSpec::from_a(1.5).is_err());
    }

    #[test]
    fn scaled_recurrence_examples() {
        let a = 1.0 / 3.0;
        assert!(rel(scaled_l_eval(1, 0.0, a).unwrap(), 0.5) < 1e-15);
        assert!(rel(scaled_l_eval(2, 0.0, a).unwrap(), -0.5) < 1e-15);
        assert!(rel(scaled_l_eval(3, 1.0, a).unwrap(), 0.375) < 1e-15);
    }

    #[test]
    fn direct_l_examples() {
        assert!(rel(l_direct(1, 0.0, 1.0 / 3.0).unwrap(), 0.5) < 1e-15);
        for a in [0.1, 0.5] {
            assert!(rel(l_direct(2, 0.0, a).unwrap(), -0.5) < 1e-15);
        }
    }

    #[test]
    fn denominator_examples() {
        assert!(rel(denominator_value(1, 0.5).unwrap(), -4.0 / 3.0) < 1e-15);
        assert!(rel(denominator_value(2, 1.0 / 3.0).unwrap(), 0.75) < 1e-15);
    }

    #[test]
    fn scaled_closed_value_at_y0() {
        for a in [0.05, 0.5, 0.9] {
            let rec = ScaledRecurrence::new(Family::Optimal, a);
            for n in [1, 2, 7, 300, 5000] {
                let want = sign(n) * 4.0 * a / ((1.0 + a) * (1.0 + a));
                assert!(rel(rec.value(n, y_at_zero(a)), want) < 1e-9, "a={a} n={n}");
            }
        }
    }

    #[test]
    fn optimal_values() {
        for n in [1, 4, 30] {
            assert_eq!(eval_optimal(0.0, n, 0.3).unwrap(), 0.0);
        }
        // P₁(x) = x/a
        assert!(rel(eval_optimal(0.5, 1, 0.5).unwrap(), 1.0) < 1e-15);
        // independent route: the defining quotient with L from Chebyshev form
        let (n, a) = (6, 0.2);
        for x in [0.05, 0.2, 0.7, 1.0] {
            let y = y_of_x(x, a);
            let want = 1.0 / x
                - l_direct(n, y, a).unwrap() / (x * l_direct(n, y_at_zero(a), a).unwrap());
            assert!(rel(eval_optimal(x, n, a).unwrap(), want) < 1e-11, "x={x}");
        }
    }

    #[test]
    fn evaluation_paths_agree_around_switch() {
        let p = OptimalPoly::new(40, 0.05).unwrap();
        for i in 1..50 {
            let x = 0.001 * i as f64;
            let direct = (1.0 - p.inv_denominator * p.rec.value(40, y_of_x(x, 0.05))) / x;
            let gap = p.gap_numerator(x) / x;
            assert!((direct - gap).abs() < 1e-11 * 20.0, "x={x}: {direct} vs {gap}");
        }
    }

    #[test]
    fn gap_form_matches_high_precision() {
        // 60-digit reference values for n = 17270, a = 1e-3
        let p = OptimalPoly::new(17270, 1e-3).unwrap();
        for (x, want) in [
            (1e-5, 175.046029266776955),
            (2e-4, 2536.81565441322766),
            (5e-4, 1981.74905145877175),
            (9.99e-4, 1001.00100100099845),
        ] {
            assert!(rel(p.eval(x), want) < 1e-13, "x={x}: {}", p.eval(x));
        }
    }

    #[test]
    fn optimal_is_odd() {
        let p = OptimalPoly::new(17, 0.1).unwrap();
        for i in 0..100 {
            let x = -1.0 + 0.0203 * i as f64;
            assert_eq!(p.eval(-x), -p.eval(x));
        }
    }

    #[test]
    fn series_examples() {
        let s = optimal_series(1, 0.5).unwrap();
        assert_eq!(s.degree(), 1);
        assert!(rel(s.coeffs()[0], 2.0) < 1e-14);
        let s = optimal_series(3, 0.25).unwrap();
        assert_eq!(s.degree(), 5);
    }

    #[test]
    fn series_round_trip() {
        for (n, a) in [(5usize, 0.3), (60, 0.02), (700, 0.01), (3000, 0.002)] {
            let p = OptimalPoly::new(n, a).unwrap();
            let s = p.series_with(Execution::default()).unwrap();
            let kappa = 1.0 / a;
            for i in 0..1000 {
                let x = -1.0 + 2.0 * (i as f64 + 0.37) / 1000.0;
                let d = (s.eval(x) - p.eval(x)).abs();
                assert!(d <= 1e-10 * kappa, "n={n} a={a} x={x}: {d:e}");
            }
        }
    }

    #[test]
    fn degree_cap() {
        assert!(matches!(
            optimal_series_with(600_001, 0.1, DEFAULT_DEGREE_CAP, Execution::Sequential),
            Err(Error::Resource { what: "degree", .. })
        ));
    }
}
