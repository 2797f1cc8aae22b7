//! Expected volume of the Wiener sausage and its time derivative.
//!
//! Closed forms for `d = 1, 3, 5`, Gaver-Stehfest inversion otherwise.
//! Radius enters through Brownian scaling, `V^R_d(t) = R^d V_d(t / R^2)`.

use std::f64::consts::PI;

use crate::curve::{Estimate, Provenance};
use crate::error::{Error, Result};
use crate::geometry::{unit_ball_volume, Dimension};
use crate::specfun::erfcx;

use super::laplace::invert_laplace;
use super::transform::{vhat_odd, SausageTransform, MAX_ODD_N};

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("time must be finite and >= 0, got {t}")))
    }
}

/// True when `V_d` has an elementary closed form here.
pub fn has_closed_form(dim: Dimension) -> bool {
    matches!(dim.get(), 1 | 3 | 5)
}

fn closed_volume(d: u32, t: f64) -> Option<f64> {
    let omega = |d| unit_ball_volume(Dimension::new(d).expect("small dimension"));
    match d {
        1 => Some(2.0 + (8.0 * t / PI).sqrt()),
        3 => Some(omega(3) * (1.0 + 3.0 * (2.0 * t / PI).sqrt() + 1.5 * t)),
        5 => Some(omega(5) * (6.0 - 5.0 * erfcx((t / 2.0).sqrt()) + 7.5 * t)),
        _ => None,
    }
}

fn closed_rate(d: u32, t: f64) -> Option<f64> {
    let omega = |d| unit_ball_volume(Dimension::new(d).expect("small dimension"));
    match d {
        1 => Some((2.0 / (PI * t)).sqrt()),
        3 => Some(omega(3) * (3.0 / (2.0 * PI * t).sqrt() + 1.5)),
        5 => {
            let x = (t / 2.0).sqrt();
            Some(omega(5) * (7.5 - 2.5 * erfcx(x) + 2.5 / (PI.sqrt() * x)))
        }
        _ => None,
    }
}

fn inverted_volume(dim: Dimension, t: f64) -> Result<Estimate> {
    let inv = if dim.is_odd() && dim.half_index()? <= MAX_ODD_N {
        let n = dim.half_index()?;
        invert_laplace(|s| vhat_odd(n, s).unwrap_or(f64::NAN), t)?
    } else {
        let tr = SausageTransform::new(dim);
        invert_laplace(|s| tr.eval(s), t)?
    };
    Ok(Estimate::with_provenance(
        inv.value,
        inv.abs_err(),
        Provenance::LaplaceInverted,
    ))
}

/// `V_d(t)` for the unit ball, `t >= 0`.
pub fn unit_sausage_volume(dim: Dimension, t: f64) -> Result<Estimate> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(Estimate::exact(unit_ball_volume(dim)));
    }
    match closed_volume(dim.get(), t) {
        Some(v) => Ok(Estimate::exact(v)),
        None => inverted_volume(dim, t),
    }
}

/// Numerical inversion of the sausage transform regardless of closed forms.
pub fn unit_sausage_volume_inverted(dim: Dimension, t: f64) -> Result<Estimate> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(Estimate::exact(unit_ball_volume(dim)));
    }
    inverted_volume(dim, t)
}

/// `dV_d/dt` for the unit ball, `t > 0`.
pub fn unit_sausage_rate(dim: Dimension, t: f64) -> Result<Estimate> {
    check_time(t)?;
    if t == 0.0 {
        return Err(Error::domain("the sausage growth rate is unbounded at t = 0"));
    }
    if let Some(v) = closed_rate(dim.get(), t) {
        return Ok(Estimate::exact(v));
    }
    let tr = SausageTransform::new(dim);
    let inv = invert_laplace(|s| tr.rate(s), t)?;
    Ok(Estimate::with_provenance(
        inv.value,
        inv.abs_err(),
        Provenance::LaplaceInverted,
    ))
}

fn check_radius(dim: Dimension, radius: f64) -> Result<()> {
    let zero_ok = dim.get() == 1 && radius == 0.0;
    if (radius > 0.0 && radius.is_finite()) || zero_ok {
        Ok(())
    } else {
        Err(Error::domain(format!("radius must be positive and finite, got {radius}")))
    }
}

/// `V^R_d(t)`; `R = 0` is accepted for `d = 1`, where `V = 2R + sqrt(8t/pi)`.
pub fn sausage_volume(dim: Dimension, radius: f64, t: f64) -> Result<Estimate> {
    check_radius(dim, radius)?;
    check_time(t)?;
    if dim.get() == 1 {
        return Ok(Estimate::exact(2.0 * radius + (8.0 * t / PI).sqrt()));
    }
    let scale = radius.powi(dim.get() as i32);
    let unit = unit_sausage_volume(dim, t / (radius * radius))?;
    Ok(Estimate::with_provenance(
        scale * unit.value,
        scale * unit.abs_err,
        unit.provenance,
    ))
}

/// `dV^R_d/dt = R^{d-2} V_d'(t / R^2)`, `t > 0`.
pub fn sausage_volume_rate(dim: Dimension, radius: f64, t: f64) -> Result<Estimate> {
    check_radius(dim, radius)?;
    check_time(t)?;
    if dim.get() == 1 {
        if t == 0.0 {
            return Err(Error::domain("the sausage growth rate is unbounded at t = 0"));
        }
        return Ok(Estimate::exact((2.0 / (PI * t)).sqrt()));
    }
    let scale = radius.powi(dim.get() as i32 - 2);
    let unit = unit_sausage_rate(dim, t / (radius * radius))?;
    Ok(Estimate::with_provenance(
        scale * unit.value,
        scale * unit.abs_err,
        unit.provenance,
    ))
}
