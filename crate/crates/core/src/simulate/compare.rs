//! Agreement between an empirical and an analytic survival curve.

use crate::curve::SurvivalCurve;
use crate::error::{Error, Result};

use super::SimOutcome;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareOptions {
    /// A point agrees when `|diff| <= z_threshold * SE + relative_bias * analytic`.
    pub z_threshold: f64,
    /// Largest fraction of disagreeing points that still passes.
    pub max_fraction: f64,
    /// Allowance for deterministic bias, relative to the analytic value.
    pub relative_bias: f64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            z_threshold: 3.0,
            max_fraction: 0.1,
            relative_bias: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    /// `(empirical - analytic) / SE`, with `SE` the binomial error at the
    /// analytic value.
    pub z_scores: Vec<f64>,
    pub abs_diffs: Vec<f64>,
    pub max_abs_diff: f64,
    pub max_z: f64,
    /// Fraction of points outside the agreement band.
    pub frac_gt3: f64,
    pub n_outside: usize,
    pub pass: bool,
}

/// Compares a simulation outcome against an analytic curve on the same grid.
pub fn compare(
    empirical: &SimOutcome,
    analytic: &SurvivalCurve,
    options: CompareOptions,
) -> Result<ComparisonReport> {
    compare_curves(&empirical.curve, Some(empirical.n_trials), analytic, options)
}

/// Trial count implied by binomial standard errors, from the first interior point.
fn infer_trials(curve: &SurvivalCurve) -> Option<f64> {
    let se = curve.stderr()?;
    curve
        .values()
        .iter()
        .zip(se)
        .find(|(p, s)| **p > 0.0 && **p < 1.0 && **s > 0.0)
        .map(|(p, s)| (p * (1.0 - p) / (s * s)).round())
}

/// Compares two curves. Without `n_trials` the count is inferred from the
/// empirical standard errors; failing that, those errors are used directly.
pub fn compare_curves(
    empirical: &SurvivalCurve,
    n_trials: Option<u64>,
    analytic: &SurvivalCurve,
    options: CompareOptions,
) -> Result<ComparisonReport> {
    if empirical.len() != analytic.len() {
        return Err(Error::domain(format!(
            "grids differ in length: {} vs {}",
            empirical.len(),
            analytic.len()
        )));
    }
    if empirical.is_empty() {
        return Err(Error::domain("nothing to compare"));
    }
    for (a, b) in empirical.grid().iter().zip(analytic.grid()) {
        if (a - b).abs() > 1e-12 * a.abs().max(b.abs()).max(1.0) {
            return Err(Error::domain(format!("grids differ: {a} vs {b}")));
        }
    }
    let n = n_trials.map(|n| n as f64).or_else(|| infer_trials(empirical));
    let mut z_scores = Vec::with_capacity(empirical.len());
    let mut abs_diffs = Vec::with_capacity(empirical.len());
    let mut n_outside = 0;
    for i in 0..empirical.len() {
        let p_emp = empirical.values()[i];
        let p_an = analytic.values()[i];
        let se = match n {
            Some(n) => (p_an * (1.0 - p_an) / n).sqrt(),
            None => empirical.stderr().map_or(0.0, |s| s[i]),
        };
        let diff = p_emp - p_an;
        let z = if se > 0.0 {
            diff / se
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        };
        if diff.abs() > options.z_threshold * se + options.relative_bias * p_an {
            n_outside += 1;
        }
        z_scores.push(z);
        abs_diffs.push(diff.abs());
    }
    let frac = n_outside as f64 / empirical.len() as f64;
    Ok(ComparisonReport {
        max_abs_diff: abs_diffs.iter().copied().fold(0.0, f64::max),
        max_z: z_scores.iter().map(|z| z.abs()).fold(0.0, f64::max),
        frac_gt3: frac,
        n_outside,
        pass: frac <= options.max_fraction,
        z_scores,
        abs_diffs,
    })
}
