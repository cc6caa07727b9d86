//! Method comparison table and the least-squares degree law per method.

use serde::Serialize;

use crate::recipe::{self, Method, Recipe};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub method: Method,
    pub kappa: f64,
    pub eps: f64,
    /// `κ·log(κ/ε)`.
    #[serde(rename = "kappa_log_kappa_over_eps")]
    pub kappa_log: f64,
    pub degree: Option<usize>,
    pub achieved_eps_grid: Option<f64>,
    pub max_certified: Option<f64>,
    pub error: Option<String>,
}

/// `degree ≈ slope·κlog(κ/ε) + intercept`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fit {
    pub method: Method,
    pub slope: f64,
    pub intercept: f64,
    pub points: usize,
}

#[derive(Debug, Clone)]
pub struct Options {
    pub grid_size: usize,
    pub oversample: usize,
    /// Degree rules only: nothing is generated or measured.
    pub degrees_only: bool,
}

/// One row per (method, κ, ε) in that nesting order. A failing cell keeps its
/// message in `error` and the table continues.
pub fn table(methods: &[Method], kappas: &[f64], epss: &[f64], opts: &Options) -> Vec<Row> {
    let mut rows = Vec::new();
    for &method in methods {
        for &kappa in kappas {
            for &eps in epss {
                rows.push(cell(method, kappa, eps, opts));
            }
        }
    }
    rows
}

fn cell(method: Method, kappa: f64, eps: f64, opts: &Options) -> Row {
    let mut row = Row {
        method,
        kappa,
        eps,
        kappa_log: kappa * (kappa / eps).ln(),
        degree: None,
        achieved_eps_grid: None,
        max_certified: None,
        error: None,
    };
    let outcome = if opts.degrees_only {
        recipe::degree_for(method, kappa, eps).map(|d| row.degree = Some(d))
    } else {
        Recipe::new(method, kappa, Some(eps), None)
            .and_then(|r| recipe::generate(&r, opts.grid_size, opts.oversample))
            .map(|f| {
                row.degree = Some(f.degree);
                row.achieved_eps_grid = Some(f.achieved_eps_grid);
                row.max_certified = Some(f.max_certified);
            })
    };
    if let Err(e) = outcome {
        row.error = Some(e.to_string());
    }
    row
}

/// Ordinary least squares of degree against `κ·log(κ/ε)` over the rows of
/// each method that have a degree. Methods with fewer than two distinct
/// abscissae get no fit.
pub fn fits(rows: &[Row]) -> Vec<Fit> {
    let mut methods: Vec<Method> = Vec::new();
    for r in rows {
        if !methods.contains(&r.method) {
            methods.push(r.method);
        }
    }
    methods
        .into_iter()
        .filter_map(|m| {
            let pts: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.method == m)
                .filter_map(|r| r.degree.map(|d| (r.kappa_log, d as f64)))
                .collect();
            let (slope, intercept) = ols(&pts)?;
            Some(Fit { method: m, slope, intercept, points: pts.len() })
        })
        .collect()
}

fn ols(pts: &[(f64, f64)]) -> Option<(f64, f64)> {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if pts.len() < 2 || sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ols_recovers_line() {
        let pts: Vec<_> = (0..5).map(|i| (i as f64, 3.0 * i as f64 - 2.0)).collect();
        let (s, c) = ols(&pts).unwrap();
        assert!((s - 3.0).abs() < 1e-12 && (c + 2.0).abs() < 1e-12);
        assert!(ols(&[(1.0, 2.0)]).is_none());
        assert!(ols(&[(1.0, 2.0), (1.0, 3.0)]).is_none());
    }

    #[test]
    fn failing_cells_are_recorded() {
        let opts = Options { grid_size: 1000, oversample: 25, degrees_only: true };
        let rows = table(&[Method::TaylorMin, Method::Optimal], &[0.5, 10.0], &[1e-3], &opts);
        assert_eq!(rows.len(), 4);
        assert!(rows[0].error.is_some() && rows[1].error.is_some());
        assert!(rows[2].error.is_some(), "kappa below 1");
        assert_eq!(rows[3].degree, Some(2 * invpoly::optimal::degree_for_eps(0.1, 1e-3).unwrap() - 1));
    }
}
