//! Survival function, hazard rate and large-time asymptote of the detection time.

use rayon::prelude::*;

use crate::curve::{Estimate, Provenance, SurvivalCurve};
use crate::error::{Error, Result};

use super::model::{ModelSpec, MotionModel};
use super::volume::{sausage_volume, sausage_volume_rate};

/// Whether Brownian laws without an odd-dimensional representation may be
/// computed by numerical Laplace inversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvenDim {
    #[default]
    Reject,
    Numeric,
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("time must be finite and >= 0, got {t}")))
    }
}

fn check_even(spec: &ModelSpec, even: EvenDim) -> Result<()> {
    if spec.dim().is_odd() || even == EvenDim::Numeric {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "Brownian laws in even dimension {} need numerical inversion to be enabled",
            spec.dim()
        )))
    }
}

/// `log P(S > t)`. For the inertial model with `E|v| = inf` this is `-inf`.
pub fn log_survival(spec: &ModelSpec, t: f64, even: EvenDim) -> Result<Estimate> {
    check_time(t)?;
    let lambda = spec.lambda();
    match spec.motion() {
        MotionModel::Brownian => {
            if t > 0.0 {
                check_even(spec, even)?;
            }
            let v = sausage_volume(spec.dim(), spec.radius(), t)?;
            Ok(Estimate::with_provenance(
                -lambda * v.value,
                lambda * v.abs_err,
                v.provenance,
            ))
        }
        MotionModel::Inertial(law) => {
            if law.is_heavy_tailed() {
                return Ok(Estimate::exact(f64::NEG_INFINITY));
            }
            let rate = spec.inertial_hazard().expect("inertial model");
            Ok(Estimate::exact(-spec.initial_exponent() - rate * t))
        }
    }
}

/// `P(S > t)` with an absolute error estimate.
pub fn survival(spec: &ModelSpec, t: f64, even: EvenDim) -> Result<Estimate> {
    let ln = log_survival(spec, t, even)?;
    let value = ln.value.exp();
    Ok(Estimate::with_provenance(
        value,
        value * ln.abs_err,
        ln.provenance,
    ))
}

/// Survival on a grid, evaluated in parallel. The curve is tagged
/// `laplace-inverted` when any point needed inversion.
pub fn survival_curve(spec: &ModelSpec, grid: &[f64], even: EvenDim) -> Result<SurvivalCurve> {
    let points = grid
        .par_iter()
        .map(|&t| survival(spec, t, even))
        .collect::<Result<Vec<_>>>()?;
    let provenance = if points
        .iter()
        .any(|e| e.provenance == Provenance::LaplaceInverted)
    {
        Provenance::LaplaceInverted
    } else {
        Provenance::ClosedForm
    };
    let values = points.iter().map(|e| e.value.clamp(0.0, 1.0)).collect();
    SurvivalCurve::new(grid.to_vec(), values, provenance, None)
}

/// `h(t) = -d/dt log P(S > t)`, `t > 0`.
pub fn hazard_rate(spec: &ModelSpec, t: f64, even: EvenDim) -> Result<Estimate> {
    check_time(t)?;
    if t == 0.0 {
        return Err(Error::domain("hazard rate needs t > 0"));
    }
    let lambda = spec.lambda();
    match spec.motion() {
        MotionModel::Brownian => {
            check_even(spec, even)?;
            let r = sausage_volume_rate(spec.dim(), spec.radius(), t)?;
            Ok(Estimate::with_provenance(
                lambda * r.value,
                lambda * r.abs_err,
                r.provenance,
            ))
        }
        MotionModel::Inertial(law) => {
            if law.is_heavy_tailed() {
                return Err(Error::domain(
                    "hazard rate is undefined when the mean speed is infinite",
                ));
            }
            Ok(Estimate::exact(spec.inertial_hazard().expect("inertial model")))
        }
    }
}

/// Large-time asymptote of `log P(S > t)` for Brownian particles:
/// `-lambda omega_d d(d-2)/2 R^{d-2} t` for `d >= 3`, `-2 pi lambda t / log(t/R^2)` for `d = 2`.
pub fn survival_asymptotic(spec: &ModelSpec, t: f64) -> Result<f64> {
    check_time(t)?;
    if *spec.motion() != MotionModel::Brownian {
        return Err(Error::domain("the asymptote applies to Brownian particles"));
    }
    let d = spec.dim().get();
    let lambda = spec.lambda();
    let r = spec.radius();
    match d {
        1 => Err(Error::domain(
            "d = 1 has no linear-in-t asymptote; use the exact survival",
        )),
        2 => {
            let z = t / (r * r);
            if z <= 1.0 {
                return Err(Error::domain(format!(
                    "the d = 2 asymptote needs t > R^2, got t = {t}"
                )));
            }
            Ok(-2.0 * std::f64::consts::PI * lambda * t / z.ln())
        }
        _ => {
            let df = f64::from(d);
            let c = spec.ball().omega * df * (df - 2.0) / 2.0;
            Ok(-lambda * c * r.powi(d as i32 - 2) * t)
        }
    }
}
