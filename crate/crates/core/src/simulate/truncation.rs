//! Finite simulation window.
//!
//! The miss budget `epsilon` is split evenly over the `N` expected germs of the
//! window (union bound), so each germ outside the window may reach the target
//! by `t_max` with probability at most `epsilon / N`. Since `N` depends on the
//! window, the radius is a fixed point.

use crate::analytic::{ModelSpec, MotionModel};
use crate::error::{Error, Result};

use super::detect::normal_tail_inverse;

/// Expected germ count above which a window is refused.
pub const MAX_EXPECTED_GERMS: f64 = 1e7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    /// `R + displacement`.
    pub radius: f64,
    pub displacement: f64,
    /// Expected germ count in the window, at least one.
    pub expected_germs: f64,
    /// Miss probability allowed per germ, `epsilon / expected_germs`.
    pub per_germ_budget: f64,
    /// Set for speed laws with infinite mean: the window then only gives a
    /// lower bound on the detection probability.
    pub heavy_tail: bool,
}

fn expected_germs(spec: &ModelSpec, radius: f64) -> f64 {
    (spec.lambda() * spec.ball().omega * radius.powi(spec.dim().get() as i32)).max(1.0)
}

fn displacement(spec: &ModelSpec, t_max: f64, budget: f64) -> Result<f64> {
    Ok(match spec.motion() {
        MotionModel::Brownian => {
            let d = f64::from(spec.dim().get());
            normal_tail_inverse(budget / (4.0 * d)) * (d * t_max).sqrt()
        }
        MotionModel::Inertial(law) => law.quantile(1.0 - budget)? * t_max,
    })
}

/// Window radius for the miss budget `epsilon` over `[0, t_max]`.
pub fn truncation_radius(spec: &ModelSpec, t_max: f64, epsilon: f64) -> Result<Truncation> {
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::domain(format!("t_max must be positive, got {t_max}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain(format!("epsilon must be in (0, 1), got {epsilon}")));
    }
    let r = spec.radius();
    let heavy_tail = matches!(spec.motion(), MotionModel::Inertial(law) if law.is_heavy_tailed());
    if heavy_tail {
        // No fixed point exists; spend the whole budget on a single germ.
        let disp = displacement(spec, t_max, epsilon)?;
        let n = expected_germs(spec, r + disp);
        check_size(n)?;
        return Ok(Truncation {
            radius: r + disp,
            displacement: disp,
            expected_germs: n,
            per_germ_budget: epsilon,
            heavy_tail,
        });
    }
    let mut n = expected_germs(spec, r);
    for _ in 0..200 {
        let disp = displacement(spec, t_max, epsilon / n)?;
        let next = expected_germs(spec, r + disp);
        check_size(next)?;
        if (next - n).abs() <= 1e-12 * next {
            let disp = displacement(spec, t_max, epsilon / next)?;
            return Ok(Truncation {
                radius: r + disp,
                displacement: disp,
                expected_germs: next,
                per_germ_budget: epsilon / next,
                heavy_tail,
            });
        }
        n = next;
    }
    Err(Error::domain(
        "truncation window did not settle; the speed law is too heavy-tailed for this budget",
    ))
}

/// Window of a given radius, with the per-germ budget it implies.
pub fn fixed_window(spec: &ModelSpec, radius: f64, epsilon: f64) -> Result<Truncation> {
    if !(radius > spec.radius() && radius.is_finite()) {
        return Err(Error::domain(format!(
            "window radius {radius} must exceed the target radius {}",
            spec.radius()
        )));
    }
    let n = expected_germs(spec, radius);
    check_size(n)?;
    Ok(Truncation {
        radius,
        displacement: radius - spec.radius(),
        expected_germs: n,
        per_germ_budget: epsilon / n,
        heavy_tail: matches!(spec.motion(), MotionModel::Inertial(law) if law.is_heavy_tailed()),
    })
}

fn check_size(n: f64) -> Result<()> {
    if n > MAX_EXPECTED_GERMS {
        return Err(Error::domain(format!(
            "truncation window holds {n:.3e} germs on average; pass a smaller window"
        )));
    }
    Ok(())
}
