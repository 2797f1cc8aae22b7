//! Expected detection time and its small-radius scaling.

use std::cell::{Cell, RefCell};
use std::f64::consts::PI;

use crate::curve::{Estimate, Provenance};
use crate::error::{Error, Result};
use crate::quad::integrate;

use super::model::{ModelSpec, MotionModel};
use super::survival::{survival, EvenDim};

/// Survival level below which the integral is truncated.
pub const TAIL_LEVEL: f64 = 1e-12;

const MAX_HORIZON: f64 = 1e15;

/// `E S = int_0^inf P(S > t) dt`.
///
/// Exact for 1-d Brownian motion (`pi/4 e^{-2 lambda R} / lambda^2`) and for
/// the inertial model (`e^{-lambda omega_d R^d} / (lambda omega_{d-1} E|v| R^{d-1})`,
/// zero when `E|v|` is infinite). Otherwise adaptive quadrature of the
/// survival function on `[0, T*]`, `P(S > T*) < 1e-12`, plus a tail bound.
pub fn expected_detection_time(spec: &ModelSpec, even: EvenDim) -> Result<Estimate> {
    let lambda = spec.lambda();
    let r = spec.radius();
    let d = spec.dim().get();
    match spec.motion() {
        MotionModel::Inertial(law) => {
            let mean = law.mean_speed();
            if mean.is_infinite() {
                return Ok(Estimate::exact(0.0));
            }
            if mean == 0.0 {
                return Ok(Estimate::exact(f64::INFINITY));
            }
            let rate = spec.inertial_hazard().expect("inertial model");
            Ok(Estimate::exact(spec.atom_at_zero() / rate))
        }
        MotionModel::Brownian if d == 1 => Ok(Estimate::exact(
            PI / 4.0 * (-2.0 * lambda * r).exp() / (lambda * lambda),
        )),
        MotionModel::Brownian => quadrature_expectation(spec, even),
    }
}

/// `E S` by quadrature of the survival function, whatever the model.
pub fn expected_detection_time_quadrature(spec: &ModelSpec, even: EvenDim) -> Result<Estimate> {
    if let MotionModel::Inertial(law) = spec.motion() {
        if law.mean_speed().is_infinite() {
            return Ok(Estimate::exact(0.0));
        }
        if law.mean_speed() == 0.0 {
            return Ok(Estimate::exact(f64::INFINITY));
        }
    }
    quadrature_expectation(spec, even)
}

fn quadrature_expectation(spec: &ModelSpec, even: EvenDim) -> Result<Estimate> {
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let worst_rel = Cell::new(0.0f64);
    let surv = |t: f64| -> f64 {
        match survival(spec, t, even) {
            Ok(e) => {
                if e.value > 0.0 {
                    worst_rel.set(worst_rel.get().max(e.abs_err / e.value));
                }
                e.value
            }
            Err(err) => {
                failure.borrow_mut().get_or_insert(err);
                f64::NAN
            }
        }
    };

    let mut horizon = 1.0;
    while surv(horizon) >= TAIL_LEVEL {
        if let Some(err) = failure.borrow_mut().take() {
            return Err(err);
        }
        horizon *= 2.0;
        if horizon > MAX_HORIZON {
            return Err(Error::domain(
                "survival does not fall below the truncation level in a finite horizon",
            ));
        }
    }
    if let Some(err) = failure.borrow_mut().take() {
        return Err(err);
    }
    let tail = tail_bound(spec, horizon, surv(horizon));

    // Inverted survival values carry noise near INVERSION_RTOL; asking the
    // quadrature for more than that only exhausts its segment budget.
    let inverted = survival(spec, horizon, even)?.provenance == Provenance::LaplaceInverted;
    let rel_tol = if inverted { 1e-8 } else { 1e-11 };
    // t = u^2 removes the sqrt(t) behaviour of the survival near zero.
    let q = integrate(
        |u| 2.0 * u * surv(u * u),
        0.0,
        horizon.sqrt(),
        1e-15,
        rel_tol,
        4000,
    );
    if let Some(err) = failure.borrow_mut().take() {
        return Err(err);
    }
    let numeric = worst_rel.get() * q.value;
    Ok(Estimate::with_provenance(
        q.value,
        q.abs_err + tail + numeric,
        Provenance::Quadrature,
    ))
}

/// Bound on `int_T^inf P(S > t) dt` from the monotone growth of the sausage.
fn tail_bound(spec: &ModelSpec, horizon: f64, at_horizon: f64) -> f64 {
    let lambda = spec.lambda();
    let r = spec.radius();
    let d = spec.dim().get();
    match spec.motion() {
        MotionModel::Inertial(_) => at_horizon / spec.inertial_hazard().expect("inertial model"),
        MotionModel::Brownian => match d {
            // The d = 1 and d = 2 sausages grow at least like sqrt(t) and
            // t / log t; the rate at the horizon bounds the remaining decay.
            1 | 2 => at_horizon * horizon,
            _ => {
                let df = f64::from(d);
                let rate = lambda * spec.ball().omega * df * (df - 2.0) / 2.0 * r.powi(d as i32 - 2);
                at_horizon / rate
            }
        },
    }
}

/// Least-squares fit of `log E S = log c - p log R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub exponent_stderr: f64,
    /// 95% interval for the exponent.
    pub exponent_ci: (f64, f64),
    pub prefactor: f64,
    /// 95% interval for the prefactor `c`.
    pub prefactor_ci: (f64, f64),
}

fn student_t_975(dof: usize) -> f64 {
    const TABLE: [f64; 10] = [
        12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
    ];
    match dof {
        0 => f64::INFINITY,
        1..=10 => TABLE[dof - 1],
        // Within 0.03 of the exact quantile.
        _ => 1.96 + 2.4 / dof as f64,
    }
}

/// Fits `E S ~ c R^{-p}` over the given radii.
pub fn fit_small_radius_scaling(
    spec: &ModelSpec,
    radii: &[f64],
    even: EvenDim,
) -> Result<PowerLawFit> {
    if radii.len() < 3 {
        return Err(Error::domain("the power-law fit needs at least three radii"));
    }
    let mut xs = Vec::with_capacity(radii.len());
    let mut ys = Vec::with_capacity(radii.len());
    for &r in radii {
        let es = expected_detection_time(&spec.with_radius(r)?, even)?;
        if !(es.value > 0.0 && es.value.is_finite()) {
            return Err(Error::domain(format!("E S = {} at R = {r} cannot be fitted", es.value)));
        }
        xs.push(r.ln());
        ys.push(es.value.ln());
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("the radii must not all be equal"));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let dof = xs.len() - 2;
    let s2 = rss / dof as f64;
    let se_slope = (s2 / sxx).sqrt();
    let se_intercept = (s2 * (1.0 / n + mx * mx / sxx)).sqrt();
    let q = student_t_975(dof);
    Ok(PowerLawFit {
        exponent: -slope,
        exponent_stderr: se_slope,
        exponent_ci: (-slope - q * se_slope, -slope + q * se_slope),
        prefactor: intercept.exp(),
        prefactor_ci: (
            (intercept - q * se_intercept).exp(),
            (intercept + q * se_intercept).exp(),
        ),
    })
}
