//! Chebyshev primitives: `T_n`, Clenshaw summation of odd series, first-kind
//! nodes and interpolation by discrete cosine transform.

use std::f64::consts::PI;

use rustdct::DctPlanner;

use crate::exec::Execution;
use crate::{Error, Result};

/// Relative size of even coefficients accepted as roundoff by [`extract_odd`].
pub const PARITY_THRESHOLD: f64 = 1e-8;

/// Largest grid interpolated by direct cosine summation.
pub const DIRECT_INTERPOLATION_MAX: usize = 4096;

/// Lane width for batched series evaluation.
const LANES: usize = 8;

/// `Σ_j c_j T_{2j+1}(x)`, stored as `(c₁, c₃, …, c_d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevOddSeries {
    coeffs: Vec<f64>,
}

impl ChebyshevOddSeries {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("odd series needs at least one coefficient".into()));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidInput(format!("coefficient {i} is not finite")));
        }
        Ok(Self { coeffs })
    }

    /// Polynomial degree `d = 2·len − 1` (trailing zeros included).
    pub fn degree(&self) -> usize {
        2 * self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        clenshaw_eval(self, x)
    }

    /// Evaluates at every point of `xs`, writing into `out`.
    pub fn eval_into(&self, xs: &[f64], out: &mut [f64]) {
        assert_eq!(xs.len(), out.len());
        let mut xc = xs.chunks_exact(LANES);
        let mut oc = out.chunks_exact_mut(LANES);
        for (x, o) in (&mut xc).zip(&mut oc) {
            let lanes: [f64; LANES] = x.try_into().unwrap();
            o.copy_from_slice(&self.eval_lanes(lanes));
        }
        for (x, o) in xc.remainder().iter().zip(oc.into_remainder()) {
            *o = self.eval(*x);
        }
    }

    /// Clenshaw on several abscissae at once; the independent chains keep the
    /// FPU busy where a single chain is latency bound.
    fn eval_lanes(&self, x: [f64; LANES]) -> [f64; LANES] {
        let mut sigma = [0.0; LANES];
        let mut delta = [0.0; LANES];
        for l in 0..LANES {
            (sigma[l], delta[l]) = reinsch_shift(x[l]);
        }
        let mut e = [0.0; LANES];
        let mut b = [0.0; LANES];
        let mut b_prev = [0.0; LANES];
        for &c in self.coeffs.iter().rev() {
            for l in 0..LANES {
                e[l] = c + delta[l] * b[l] + sigma[l] * e[l];
                b_prev[l] = b[l];
                b[l] = e[l] + sigma[l] * b[l];
            }
        }
        let mut out = [0.0; LANES];
        for l in 0..LANES {
            out[l] = x[l] * (e[l] - (1.0 - sigma[l]) * b_prev[l]);
        }
        out
    }

    /// Keeps the first `terms` coefficients (degree `2·terms − 1`).
    pub fn truncated(&self, terms: usize) -> Result<Self> {
        if terms == 0 || terms > self.coeffs.len() {
            return Err(Error::InvalidInput(format!(
                "cannot truncate {} terms to {terms}",
                self.coeffs.len()
            )));
        }
        Ok(Self { coeffs: self.coeffs[..terms].to_vec() })
    }

    /// Coefficients on the full basis `T₀ … T_d`.
    pub fn to_full(&self) -> Vec<f64> {
        let mut full = vec![0.0; self.degree() + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            full[2 * j + 1] = c;
        }
        full
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    /// Sum of absolute coefficients, an upper bound for `max |p|` on `[-1,1]`.
    pub fn abs_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }
}

/// `T_n(x)` by the three-term recurrence; valid for any finite `x`.
pub fn eval_t(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        _ => {
            let (mut t0, mut t1) = (1.0, x);
            for _ in 1..n {
                let t2 = 2.0 * x * t1 - t0;
                t0 = t1;
                t1 = t2;
            }
            t1
        }
    }
}

/// Backward Clenshaw summation in steps of two degrees.
///
/// `u_j = T_{2j+1}(x)` obeys `u_{j+1} = 2T₂(x)·u_j − u_{j−1}`, and the sum
/// collapses to `x·(b₀ − b₁)`.
pub fn clenshaw_eval(series: &ChebyshevOddSeries, x: f64) -> f64 {
    let (sigma, delta) = reinsch_shift(x);
    let (mut e, mut b, mut b_prev) = (0.0, 0.0, 0.0);
    for &c in series.coeffs.iter().rev() {
        e = c + delta * b + sigma * e;
        b_prev = b;
        b = e + sigma * b;
    }
    // b₀ − b₁ = e₀ − (1 − σ)·b₁
    x * (e - (1.0 - sigma) * b_prev)
}

/// `(σ, 2T₂(x) − 2σ)` with `σ = ±1` the nearer endpoint of `T₂`.
///
/// The step-two recurrence `b_k = c_k + 2T₂(x)·b_{k+1} − b_{k+2}` loses
/// accuracy in proportion to the degree as `T₂(x) → ±1`, which happens both
/// at `x = ±1` and at `x = 0`. Carrying `e_k = b_k − σb_{k+1}` instead, with
/// the shift computed without cancellation, avoids that.
fn reinsch_shift(x: f64) -> (f64, f64) {
    if 2.0 * x * x < 1.0 {
        (-1.0, 4.0 * x * x)
    } else {
        let ax = x.abs();
        (1.0, -4.0 * (1.0 - ax) * (1.0 + ax))
    }
}

/// First-kind Chebyshev points `cos((2k+1)π/(2M))`, `k = 0..M`, decreasing.
#[derive(Debug, Clone)]
pub struct ChebNodeGrid {
    nodes: Vec<f64>,
}

impl ChebNodeGrid {
    pub fn first_kind(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidInput("node grid needs at least one point".into()));
        }
        let m = count as f64;
        // sin form is exactly antisymmetric about the middle index
        let nodes = (0..count)
            .map(|k| (PI * (count as f64 - 1.0 - 2.0 * k as f64) / (2.0 * m)).sin())
            .collect();
        Ok(Self { nodes })
    }

    pub fn count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }
}

/// Chebyshev coefficients `c₀ … c_{M−1}` of the polynomial of degree `< M`
/// taking `values[k]` at `grid.nodes()[k]`.
///
/// Uses direct summation up to [`DIRECT_INTERPOLATION_MAX`] nodes and a fast
/// DCT-II above.
pub fn interpolate(grid: &ChebNodeGrid, values: &[f64]) -> Result<Vec<f64>> {
    check_samples(grid, values)?;
    if grid.count() <= DIRECT_INTERPOLATION_MAX {
        interpolate_direct(grid, values, Execution::default())
    } else {
        interpolate_fast(grid, values)
    }
}

fn check_samples(grid: &ChebNodeGrid, values: &[f64]) -> Result<()> {
    if values.len() != grid.count() {
        return Err(Error::InvalidInput(format!(
            "{} samples for a grid of {} nodes",
            values.len(),
            grid.count()
        )));
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(format!("sample {i} is not finite")));
    }
    Ok(())
}

/// `c_j = (2/M) Σ_k f_k cos(jπ(2k+1)/(2M))`, `c₀` halved; O(M²).
pub fn interpolate_direct(
    grid: &ChebNodeGrid,
    values: &[f64],
    exec: Execution,
) -> Result<Vec<f64>> {
    check_samples(grid, values)?;
    let m = grid.count();
    let period = 4 * m;
    // cos(iπ/(2M)) for i in 0..4M; angles reduced exactly in integers.
    let table: Vec<f64> = (0..period).map(|i| (PI * i as f64 / (2 * m) as f64).cos()).collect();
    let scale = 2.0 / m as f64;
    let mut coeffs = exec.map(m, |j| {
        let mut sum = 0.0;
        for (k, &f) in values.iter().enumerate() {
            sum += f * table[(j * (2 * k + 1)) % period];
        }
        sum * scale
    });
    coeffs[0] *= 0.5;
    Ok(coeffs)
}

/// Same coefficients as [`interpolate_direct`] through an O(M log M) DCT-II.
pub fn interpolate_fast(grid: &ChebNodeGrid, values: &[f64]) -> Result<Vec<f64>> {
    check_samples(grid, values)?;
    let m = grid.count();
    let mut buf = values.to_vec();
    DctPlanner::new().plan_dct2(m).process_dct2(&mut buf);
    let scale = 2.0 / m as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf[0] *= 0.5;
    Ok(buf)
}

/// Keeps the odd-index coefficients of a full Chebyshev list, rejecting even
/// content above `threshold` relative to the largest odd coefficient.
pub fn extract_odd(full: &[f64], threshold: f64) -> Result<ChebyshevOddSeries> {
    if full.len() < 2 {
        return Err(Error::InvalidInput("need coefficients up to at least T₁".into()));
    }
    let max_odd = full.iter().skip(1).step_by(2).fold(0.0f64, |m, c| m.max(c.abs()));
    let max_even = full.iter().step_by(2).fold(0.0f64, |m, c| m.max(c.abs()));
    if max_even > threshold * max_odd {
        let ratio = if max_odd > 0.0 { max_even / max_odd } else { f64::INFINITY };
        return Err(Error::ParityViolation { ratio, threshold });
    }
    ChebyshevOddSeries::new(full.iter().skip(1).step_by(2).copied().collect())
}

/// Samples `f` at the first-kind grid of `count` nodes and returns its
/// odd interpolant.
pub(crate) fn odd_interpolant<F>(count: usize, f: F, exec: Execution) -> Result<ChebyshevOddSeries>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    let grid = ChebNodeGrid::first_kind(count)?;
    let nodes = grid.nodes();
    let values = exec.map(count, |k| f(nodes[k]));
    let full = if count <= DIRECT_INTERPOLATION_MAX {
        interpolate_direct(&grid, &values, exec)?
    } else {
        interpolate_fast(&grid, &values)?
    };
    extract_odd(&full, PARITY_THRESHOLD)
}
