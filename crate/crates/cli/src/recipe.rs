//! Method dispatch: which construction builds the polynomial, and from which
//! target (error or degree).

use std::fmt;

use clap::ValueEnum;
use invpoly::chebiter::{self, ChebIterPoly};
use invpoly::optimal::{self, DomainSpec};
use invpoly::{remez, taylor, ChebyshevOddSeries, Execution};
use serde::{Deserialize, Serialize};

use crate::coeff_file::CoeffFile;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Optimal,
    Taylor,
    TaylorMin,
    Chebiter,
    Remez,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Optimal => "optimal",
            Method::Taylor => "taylor",
            Method::TaylorMin => "taylor-min",
            Method::Chebiter => "chebiter",
            Method::Remez => "remez",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    Eps(f64),
    /// Odd polynomial degree.
    Degree(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Recipe {
    pub method: Method,
    pub kappa: f64,
    pub target: Target,
}

impl Recipe {
    /// Checks that exactly one of `eps`/`degree` is given and that it is the
    /// one the method is driven by.
    pub fn new(method: Method, kappa: f64, eps: Option<f64>, degree: Option<usize>) -> Result<Self, CliError> {
        let target = match (eps, degree) {
            (Some(_), Some(_)) => return Err(usage("give either --eps or --degree, not both")),
            (None, None) => return Err(usage("one of --eps or --degree is required")),
            (Some(e), None) => Target::Eps(e),
            (None, Some(d)) => {
                if d % 2 == 0 {
                    return Err(usage(format!("--degree must be odd, got {d}")));
                }
                Target::Degree(d)
            }
        };
        match (method, target) {
            (Method::Remez, Target::Eps(_)) => Err(usage("remez requires --degree")),
            (Method::Taylor | Method::TaylorMin, Target::Degree(_)) => {
                Err(usage(format!("{method} requires --eps")))
            }
            _ => Ok(Self { method, kappa, target }),
        }
    }

    pub fn target_eps(&self) -> Option<f64> {
        match self.target {
            Target::Eps(e) => Some(e),
            Target::Degree(_) => None,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Odd degree the method needs for `eps`, from its closed-form rule.
pub fn degree_for(method: Method, kappa: f64, eps: f64) -> Result<usize, CliError> {
    let spec = DomainSpec::from_kappa(kappa)?;
    match method {
        Method::Optimal => Ok(2 * optimal::degree_for_eps(spec.a, eps)? - 1),
        Method::Chebiter => Ok(2 * chebiter::chebiter_degree(kappa, eps)? - 1),
        Method::Taylor => Ok(taylor::taylor_params(kappa, eps)?.degree as usize),
        Method::TaylorMin | Method::Remez => {
            Err(usage(format!("{method} has no degree formula; use gen to build it")))
        }
    }
}

fn half_degree(d: usize) -> usize {
    d.div_ceil(2)
}

/// Builds the series for a recipe.
pub fn build(recipe: &Recipe, grid_size: usize) -> Result<ChebyshevOddSeries, CliError> {
    let kappa = recipe.kappa;
    let a = DomainSpec::from_kappa(kappa)?.a;
    let series = match (recipe.method, recipe.target) {
        (Method::Optimal, Target::Eps(eps)) => optimal::optimal_series(optimal::degree_for_eps(a, eps)?, a)?,
        (Method::Optimal, Target::Degree(d)) => optimal::optimal_series(half_degree(d), a)?,
        (Method::Chebiter, Target::Eps(eps)) => chebiter::chebiter_series(chebiter::chebiter_degree(kappa, eps)?, a)?,
        (Method::Chebiter, Target::Degree(d)) => {
            ChebIterPoly::new(half_degree(d), a)?.series_with(Execution::default())?
        }
        (Method::Taylor, Target::Eps(eps)) => taylor::taylor_series(&taylor::taylor_params(kappa, eps)?)?,
        (Method::TaylorMin, Target::Eps(eps)) => taylor::taylor_min(kappa, eps, grid_size)?.series,
        (Method::Remez, Target::Degree(d)) => {
            remez::remez_solve(a, half_degree(d), remez::DEFAULT_TOL, remez::DEFAULT_MAX_ITER)?.series
        }
        _ => unreachable!("rejected by Recipe::new"),
    };
    Ok(series)
}

/// Builds the series and measures it.
pub fn generate(recipe: &Recipe, grid_size: usize, oversample: usize) -> Result<CoeffFile, CliError> {
    let series = build(recipe, grid_size)?;
    CoeffFile::measure(recipe.method, recipe.kappa, recipe.target_eps(), series, grid_size, oversample)
}
