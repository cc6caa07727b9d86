use std::fs;
use std::path::Path;

use invpoly::{analysis, ChebyshevOddSeries, DomainSpec};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::recipe::Method;

pub const BASIS: &str = "chebyshev-odd";

/// A generated polynomial with its measured error and maximum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffFile {
    pub method: Method,
    pub kappa: f64,
    pub a: f64,
    pub target_eps: Option<f64>,
    pub degree: usize,
    pub basis: String,
    /// `c₁, c₃, …, c_d`.
    pub coefficients: Vec<f64>,
    pub achieved_eps_grid: f64,
    pub max_sampled: f64,
    pub max_certified: f64,
    pub generator_version: String,
}

impl CoeffFile {
    pub fn measure(
        method: Method,
        kappa: f64,
        target_eps: Option<f64>,
        series: ChebyshevOddSeries,
        grid_size: usize,
        oversample: usize,
    ) -> Result<Self, CliError> {
        let a = DomainSpec::from_kappa(kappa)?.a;
        let err = analysis::uniform_error(&series, a, grid_size)?;
        let max = analysis::max_bound(&series, oversample)?;
        Ok(Self {
            method,
            kappa,
            a,
            target_eps,
            degree: series.degree(),
            basis: BASIS.to_string(),
            coefficients: series.into_coeffs(),
            achieved_eps_grid: err.eps_measured,
            max_sampled: max.sampled_max,
            max_certified: max.certified_max,
            generator_version: generator_version(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        let file: Self =
            serde_json::from_str(&text).map_err(|source| CliError::BadInput { path: path.into(), source })?;
        file.check()?;
        Ok(file)
    }

    fn check(&self) -> Result<(), CliError> {
        if self.basis != BASIS {
            return Err(CliError::Usage(format!("unsupported basis {:?}", self.basis)));
        }
        if self.coefficients.is_empty() || self.degree != 2 * self.coefficients.len() - 1 {
            return Err(CliError::Usage(format!(
                "degree {} does not match {} coefficients",
                self.degree,
                self.coefficients.len()
            )));
        }
        Ok(())
    }

    pub fn series(&self) -> Result<ChebyshevOddSeries, CliError> {
        Ok(ChebyshevOddSeries::new(self.coefficients.clone())?)
    }
}

pub fn generator_version() -> String {
    format!("invpoly {}", env!("CARGO_PKG_VERSION"))
}
