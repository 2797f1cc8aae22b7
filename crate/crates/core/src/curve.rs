//! Tabulated survival functions and point estimates with provenance.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Where a number came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    ClosedForm,
    LaplaceInverted,
    Asymptotic,
    Empirical,
    Quadrature,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::LaplaceInverted => "laplace-inverted",
            Provenance::Asymptotic => "asymptotic",
            Provenance::Empirical => "empirical",
            Provenance::Quadrature => "quadrature",
        }
    }

    /// Provenances whose value at `t = 0` is the exact atom `exp(-lambda omega_d R^d)`.
    pub fn is_analytic(self) -> bool {
        !matches!(self, Provenance::Empirical)
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "closed-form" => Provenance::ClosedForm,
            "laplace-inverted" => Provenance::LaplaceInverted,
            "asymptotic" => Provenance::Asymptotic,
            "empirical" => Provenance::Empirical,
            "quadrature" => Provenance::Quadrature,
            other => return Err(Error::domain(format!("unknown provenance `{other}`"))),
        })
    }
}

/// A value together with an absolute error estimate (zero for closed forms).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub abs_err: f64,
    pub provenance: Provenance,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate {
            value,
            abs_err: 0.0,
            provenance: Provenance::ClosedForm,
        }
    }

    pub fn with_provenance(value: f64, abs_err: f64, provenance: Provenance) -> Self {
        Estimate {
            value,
            abs_err,
            provenance,
        }
    }
}

/// Slack allowed on monotonicity for curves carrying numerical noise.
const MONOTONE_SLACK: f64 = 1e-9;

/// `P(S > t_i)` on an increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalCurve {
    grid: Vec<f64>,
    values: Vec<f64>,
    provenance: Provenance,
    stderr: Option<Vec<f64>>,
}

impl SurvivalCurve {
    pub fn new(
        grid: Vec<f64>,
        values: Vec<f64>,
        provenance: Provenance,
        stderr: Option<Vec<f64>>,
    ) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::domain("grid and values differ in length"));
        }
        if let Some(se) = &stderr {
            if se.len() != grid.len() {
                return Err(Error::domain("grid and stderr differ in length"));
            }
        }
        validate_grid(&grid)?;
        for (t, p) in grid.iter().zip(&values) {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::domain(format!("survival {p} at t = {t} outside [0, 1]")));
            }
        }
        let slack = MONOTONE_SLACK * values.first().copied().unwrap_or(0.0);
        for w in values.windows(2) {
            if w[1] > w[0] + slack {
                return Err(Error::domain("survival values must be nonincreasing"));
            }
        }
        Ok(SurvivalCurve {
            grid,
            values,
            provenance,
            stderr,
        })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn stderr(&self) -> Option<&[f64]> {
        self.stderr.as_deref()
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

/// Times must be finite, nonnegative and strictly increasing.
pub fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::domain("grid times must be finite and nonnegative"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("grid times must be strictly increasing"));
    }
    Ok(())
}

/// `n` equally spaced points on `[t_min, t_max]` (a single point when `n == 1`).
pub fn linear_grid(t_min: f64, t_max: f64, n: usize) -> Result<Vec<f64>> {
    if n == 0 || !(t_max >= t_min) || t_min < 0.0 || !t_max.is_finite() {
        return Err(Error::domain(format!(
            "need 0 <= tmin <= tmax and points >= 1, got [{t_min}, {t_max}] x {n}"
        )));
    }
    if n == 1 {
        return Ok(vec![t_min]);
    }
    if t_max == t_min {
        return Err(Error::domain("tmin == tmax needs exactly one point"));
    }
    let step = (t_max - t_min) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i + 1 == n { t_max } else { t_min + step * i as f64 })
        .collect())
}
