//! Remez exchange for the best odd approximation to `1/x` on `[a, 1]`.
//!
//! Double precision limits this to small degrees; it serves as an
//! independent check on the closed-form optimum, not as a production path.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::analysis::golden_max;
use crate::cheb::{eval_t, ChebyshevOddSeries};
use crate::optimal::check_a;
use crate::{Error, Result};

/// Largest `n` (degree `2n − 1`) accepted by [`remez_solve`].
pub const MAX_N: usize = 24;
pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 100;

/// Dense samples per reference point when locating residual extrema.
const SAMPLES_PER_POINT: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct RemezState {
    /// `n + 1` strictly increasing points in `[a, 1]`.
    pub reference_points: Vec<f64>,
    /// Coefficients of `T₁, T₃, …, T_{2n−1}`.
    pub coefficients: Vec<f64>,
    /// Signed `h` with `1/x_i − p(x_i) = (−1)ⁱ h` on the reference.
    pub levelled_error: f64,
    pub iteration: usize,
}

#[derive(Debug, Clone)]
pub struct RemezSolution {
    pub series: ChebyshevOddSeries,
    pub achieved_eps: f64,
    pub state: RemezState,
}

/// Best odd polynomial of degree `2n − 1` for `1/x` on `[a, 1]`.
///
/// Starts from Chebyshev extrema of order `n` mapped to `[a, 1]` and stops
/// when `|h|` changes by less than `tol` relative.
pub fn remez_solve(a: f64, n: usize, tol: f64, max_iter: usize) -> Result<RemezSolution> {
    check_a(a)?;
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidInput(format!("Remez supports 1 <= n <= {MAX_N}, got {n}")));
    }
    let mut reference: Vec<f64> = (0..=n)
        .map(|i| 0.5 * (1.0 + a) - 0.5 * (1.0 - a) * (PI * i as f64 / n as f64).cos())
        .collect();
    reference[0] = a;
    reference[n] = 1.0;

    let mut previous_h: Option<f64> = None;
    let mut state = RemezState {
        reference_points: reference.clone(),
        coefficients: vec![],
        levelled_error: f64::NAN,
        iteration: 0,
    };
    for iteration in 1..=max_iter {
        let (coefficients, h) = levelled_solve(&reference, n)?;
        state = RemezState {
            reference_points: reference.clone(),
            coefficients,
            levelled_error: h,
            iteration,
        };
        if let Some(prev) = previous_h {
            if (h.abs() - prev.abs()).abs() <= tol * h.abs() {
                let series = ChebyshevOddSeries::new(state.coefficients.clone())?;
                return Ok(RemezSolution { series, achieved_eps: h.abs(), state });
            }
        }
        previous_h = Some(h);
        reference = exchange(a, n, &state.coefficients)?;
    }
    Err(Error::Convergence(Box::new(state)))
}

fn odd_poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().enumerate().map(|(j, c)| c * eval_t(2 * j + 1, x)).sum()
}

/// Solves `Σ c_j T_{2j+1}(x_i) + (−1)ⁱ h = 1/x_i`.
fn levelled_solve(reference: &[f64], n: usize) -> Result<(Vec<f64>, f64)> {
    let m = n + 1;
    let matrix = DMatrix::from_fn(m, m, |i, j| {
        if j < n {
            eval_t(2 * j + 1, reference[i])
        } else if i % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    });
    let rhs = DVector::from_iterator(m, reference.iter().map(|x| 1.0 / x));
    let sol = matrix
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Numerical("singular Remez system".into()))?;
    if sol.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("non-finite Remez solution".into()));
    }
    Ok((sol.as_slice()[..n].to_vec(), sol[n]))
}

/// New reference: the largest `|residual|` in each run of constant sign,
/// refined by golden-section search, trimmed to `n + 1` alternating points.
fn exchange(a: f64, n: usize, coeffs: &[f64]) -> Result<Vec<f64>> {
    let residual = |x: f64| 1.0 / x - odd_poly(coeffs, x);
    // equispaced in y = (2x² − 1 − a²)/(1 − a²), where the error oscillates evenly
    let samples = SAMPLES_PER_POINT * (n + 1);
    let xs: Vec<f64> = (0..=samples)
        .map(|k| {
            let y = -(PI * k as f64 / samples as f64).cos();
            (0.5 * (1.0 + a * a) + 0.5 * (1.0 - a * a) * y).sqrt().clamp(a, 1.0)
        })
        .collect();
    let es: Vec<f64> = xs.iter().map(|&x| residual(x)).collect();

    let mut peaks: Vec<(f64, f64)> = Vec::new(); // (x, residual)
    let mut k = 0;
    while k < xs.len() {
        let positive = es[k] >= 0.0;
        let mut best = k;
        let mut j = k;
        while j < xs.len() && (es[j] >= 0.0) == positive {
            if es[j].abs() > es[best].abs() {
                best = j;
            }
            j += 1;
        }
        let lo = xs[best.saturating_sub(1)];
        let hi = xs[(best + 1).min(xs.len() - 1)];
        let x = golden_max(|x| residual(x).abs(), lo, hi, xs[best]);
        peaks.push((x, residual(x)));
        k = j;
    }

    while peaks.len() > n + 1 {
        if peaks[0].1.abs() < peaks[peaks.len() - 1].1.abs() {
            peaks.remove(0);
        } else {
            peaks.pop();
        }
    }
    if peaks.len() < n + 1 {
        return Err(Error::Numerical(format!(
            "residual has {} alternations, need {}",
            peaks.len(),
            n + 1
        )));
    }
    let reference: Vec<f64> = peaks.into_iter().map(|(x, _)| x).collect();
    if reference.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Numerical("reference points collapsed".into()));
    }
    Ok(reference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimal::eps_for_degree;

    #[test]
    fn degree_one_matches_closed_form() {
        let s = remez_solve(0.5, 1, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert!((s.series.coeffs()[0] - 2.0).abs() < 1e-8);
        assert!((s.achieved_eps - 1.0).abs() < 1e-8);
    }

    #[test]
    fn reference_alternates() {
        let s = remez_solve(0.2, 6, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let st = &s.state;
        assert_eq!(st.reference_points.len(), 7);
        assert!(st.reference_points.windows(2).all(|w| w[0] < w[1]));
        for (i, &x) in st.reference_points.iter().enumerate() {
            let r = 1.0 / x - odd_poly(&st.coefficients, x);
            let want = if i % 2 == 0 { 1.0 } else { -1.0 } * st.levelled_error.signum();
            assert_eq!(r.signum(), want, "point {i}");
        }
        let eps = eps_for_degree(6, 0.2).unwrap();
        assert!((s.achieved_eps - eps).abs() < 1e-8 * eps);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(remez_solve(0.5, 0, DEFAULT_TOL, DEFAULT_MAX_ITER).is_err());
        assert!(remez_solve(0.5, MAX_N + 1, DEFAULT_TOL, DEFAULT_MAX_ITER).is_err());
        assert!(remez_solve(1.5, 3, DEFAULT_TOL, DEFAULT_MAX_ITER).is_err());
    }

    #[test]
    fn iteration_budget_exhausted() {
        match remez_solve(0.05, 8, 0.0, 3) {
            Err(Error::Convergence(state)) => {
                assert_eq!(state.iteration, 3);
                assert_eq!(state.reference_points.len(), 9);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }
}
