//! Error, maximum and alternation measurements on sampled grids.
//!
//! All grids are sampled in fixed-size chunks (see [`Execution`]); maxima are
//! reduced in index order with ties going to the lower index, so results do
//! not depend on the execution strategy.

use std::f64::consts::PI;

use crate::cheb::ChebyshevOddSeries;
use crate::exec::Execution;
use crate::optimal::check_a;
use crate::{Error, Result};

pub const DEFAULT_GRID_SIZE: usize = 100_000;
pub const DEFAULT_OVERSAMPLE: usize = 25;
pub const DEFAULT_EQUIOSCILLATION_GRID: usize = 1_000_000;
pub const DEFAULT_EQUIOSCILLATION_TOL: f64 = 1e-6;

/// Maximum of `|p(x) − 1/x|` over an equispaced grid on `[a, 1]`.
///
/// Odd symmetry of `p` and `1/x` makes `[−1, −a]` identical. Being a max over
/// samples, this can only underestimate the true supremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub eps_measured: f64,
    pub grid_size: usize,
    pub a: f64,
    pub argmax_x: f64,
}

/// Sampled and certified maximum of `|p|` on `[−1, 1]`.
///
/// With `N` equispaced samples of a degree-`d` polynomial,
/// `max|p| ≤ max_{D_N}|p| / cos(πd/(2N))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxBound {
    pub sampled_max: f64,
    pub certified_max: f64,
    /// Number of samples `N`.
    pub samples: usize,
    pub degree: usize,
    pub factor: f64,
}

/// Point `i` of `linspace(a, 1, size)`. Grids of size `g` and `2g − 1` nest
/// exactly.
pub fn grid_point(a: f64, size: usize, i: usize) -> f64 {
    if i + 1 == size {
        1.0
    } else {
        a + (1.0 - a) * (i as f64 / (size - 1) as f64)
    }
}

fn check_grid(a: f64, grid_size: usize) -> Result<()> {
    check_a(a)?;
    if grid_size < 2 {
        return Err(Error::InvalidInput(format!("grid needs at least 2 points, got {grid_size}")));
    }
    Ok(())
}

/// Largest value and its lowest index; NaN wins so it can be reported.
fn argmax_chunks(parts: Vec<(f64, usize)>) -> (f64, usize) {
    parts.into_iter().fold((f64::NEG_INFINITY, 0), |best, cur| {
        if cur.0.is_nan() || (!best.0.is_nan() && cur.0 > best.0) {
            cur
        } else {
            best
        }
    })
}

/// `max_{x ∈ linspace(a,1,grid_size)} |p(x) − 1/x|`.
pub fn uniform_error(series: &ChebyshevOddSeries, a: f64, grid_size: usize) -> Result<ErrorReport> {
    uniform_error_with(series, a, grid_size, Execution::default())
}

pub fn uniform_error_with(
    series: &ChebyshevOddSeries,
    a: f64,
    grid_size: usize,
    exec: Execution,
) -> Result<ErrorReport> {
    check_grid(a, grid_size)?;
    let parts = exec.map_chunks(grid_size, |range| {
        let start = range.start;
        let xs: Vec<f64> = range.map(|i| grid_point(a, grid_size, i)).collect();
        let mut ps = vec![0.0; xs.len()];
        series.eval_into(&xs, &mut ps);
        let mut best = (f64::NEG_INFINITY, start);
        for (k, (x, p)) in xs.iter().zip(&ps).enumerate() {
            let e = (p - 1.0 / x).abs();
            if e.is_nan() || e > best.0 {
                best = (e, start + k);
                if e.is_nan() {
                    break;
                }
            }
        }
        best
    });
    report(a, grid_size, argmax_chunks(parts))
}

/// Grid maximum of `|error(x)|` for an arbitrary error curve on `[a, 1]`.
///
/// Lets callers measure a closed-form residual, e.g. one that stays accurate
/// below the roundoff floor of a coefficient representation.
pub fn uniform_error_of<F>(error: F, a: f64, grid_size: usize, exec: Execution) -> Result<ErrorReport>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    check_grid(a, grid_size)?;
    let parts = exec.map_chunks(grid_size, |range| {
        let mut best = (f64::NEG_INFINITY, range.start);
        for i in range {
            let e = error(grid_point(a, grid_size, i)).abs();
            if e.is_nan() {
                return (e, i);
            }
            if e > best.0 {
                best = (e, i);
            }
        }
        best
    });
    report(a, grid_size, argmax_chunks(parts))
}

fn report(a: f64, grid_size: usize, (eps, i): (f64, usize)) -> Result<ErrorReport> {
    if eps.is_nan() {
        return Err(Error::Numerical(format!(
            "error is NaN at x = {}",
            grid_point(a, grid_size, i)
        )));
    }
    Ok(ErrorReport { eps_measured: eps, grid_size, a, argmax_x: grid_point(a, grid_size, i) })
}

/// Samples `|p|` on `D_N = {2i/N − 1 : i = 0..N}` with `N = oversample·d`.
pub fn max_bound(series: &ChebyshevOddSeries, oversample: usize) -> Result<MaxBound> {
    max_bound_with(series, oversample, Execution::default())
}

pub fn max_bound_with(
    series: &ChebyshevOddSeries,
    oversample: usize,
    exec: Execution,
) -> Result<MaxBound> {
    if oversample < 2 {
        return Err(Error::InvalidInput(format!("oversample must be at least 2, got {oversample}")));
    }
    let degree = series.degree();
    let samples = oversample * degree;
    let parts = exec.map_chunks(samples, |range| {
        let xs: Vec<f64> = range.map(|i| 2.0 * i as f64 / samples as f64 - 1.0).collect();
        let mut ps = vec![0.0; xs.len()];
        series.eval_into(&xs, &mut ps);
        (ps.iter().fold(0.0f64, |m, p| m.max(p.abs())), 0)
    });
    let sampled_max = argmax_chunks(parts).0;
    if !sampled_max.is_finite() {
        return Err(Error::Numerical("polynomial maximum is not finite".into()));
    }
    let factor = 1.0 / (0.5 * PI * degree as f64 / samples as f64).cos();
    Ok(MaxBound { sampled_max, certified_max: factor * sampled_max, samples, degree, factor })
}

/// Counts sign-alternating touches of `±eps_ref` by `1/x − p(x)` on `[a, 1]`.
pub fn equioscillation_count(
    series: &ChebyshevOddSeries,
    a: f64,
    eps_ref: f64,
    tol_rel: f64,
    grid_size: usize,
) -> Result<usize> {
    equioscillation_count_of(
        |x| 1.0 / x - series.eval(x),
        a,
        eps_ref,
        tol_rel,
        grid_size,
        Execution::default(),
    )
}

/// Alternation count of an arbitrary curve on `[a, 1]`.
///
/// A touch is a local extremum on the dense grid (endpoints included) whose
/// magnitude reaches `(1 − tol_rel)·eps_ref`; maxima must be positive and
/// minima negative. Interior extrema short of the level are maximized
/// between their grid neighbours before the comparison. Runs of same-signed
/// touches count once.
pub fn equioscillation_count_of<F>(
    curve: F,
    a: f64,
    eps_ref: f64,
    tol_rel: f64,
    grid_size: usize,
    exec: Execution,
) -> Result<usize>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    check_grid(a, grid_size)?;
    if !(eps_ref > 0.0) {
        return Err(Error::InvalidInput(format!("reference error must be positive, got {eps_ref}")));
    }
    let e = exec.map(grid_size, |i| curve(grid_point(a, grid_size, i)));
    let level = (1.0 - tol_rel) * eps_ref;
    let last = grid_size - 1;
    let mut count = 0;
    let mut prev_sign = 0i8;
    for i in 0..grid_size {
        let v = e[i];
        let is_max = (i == 0 || v >= e[i - 1]) && (i == last || v >= e[i + 1]);
        let is_min = (i == 0 || v <= e[i - 1]) && (i == last || v <= e[i + 1]);
        let sign: i8 = match (is_max && v > 0.0, is_min && v < 0.0) {
            (true, _) => 1,
            (_, true) => -1,
            _ => continue,
        };
        let peak = if i == 0 || i == last || v.abs() >= level {
            v.abs()
        } else {
            // the true peak may fall between grid points
            let s = f64::from(sign);
            let (lo, hi) = (grid_point(a, grid_size, i - 1), grid_point(a, grid_size, i + 1));
            let x = golden_max(|x| s * curve(x), lo, hi, grid_point(a, grid_size, i));
            s * curve(x)
        };
        if peak < level {
            continue;
        }
        if sign != prev_sign {
            count += 1;
            prev_sign = sign;
        }
    }
    Ok(count)
}

const GOLDEN_STEPS: usize = 100;

/// Maximizes `f` on `[lo, hi]`; returns `start` if nothing better is found.
pub(crate) fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, start: f64) -> f64 {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..GOLDEN_STEPS {
        if hi - lo <= f64::EPSILON * hi.abs() {
            break;
        }
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = f(d);
        }
    }
    let mid = 0.5 * (lo + hi);
    [lo, mid, hi, start]
        .into_iter()
        .max_by(|p, q| f(*p).total_cmp(&f(*q)))
        .unwrap()
}

/// `p → factor·p`, e.g. `factor = 1/M` to normalize for block encodings.
pub fn scale_series(series: &ChebyshevOddSeries, factor: f64) -> Result<ChebyshevOddSeries> {
    if !factor.is_finite() || factor == 0.0 {
        return Err(Error::Domain(format!("scale factor must be finite and nonzero, got {factor}")));
    }
    Ok(series.scaled(factor))
}
