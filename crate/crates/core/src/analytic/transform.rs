//! Laplace transforms of the expected sausage volume and of Bessel hitting times.

use crate::error::{Error, Result};
use crate::geometry::{unit_ball_volume, BallConstants, Dimension};
use crate::specfun::{bessel_k_ratio, bessel_k_scaled, bessel_poly_coeffs, eval_poly};

/// Largest `n` accepted by the odd-dimension transform routines.
pub const MAX_ODD_N: u32 = 16;

/// `s -> V^_d(s)`, the transform of the unit-radius expected sausage volume:
/// `omega_d / s + sigma_{d-1} / sqrt(2 s^3) * K_{d/2}(a) / K_{d/2-1}(a)`, `a = sqrt(2s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SausageTransform {
    dim: Dimension,
    ball: BallConstants,
}

impl SausageTransform {
    pub fn new(dim: Dimension) -> Self {
        SausageTransform {
            dim,
            ball: BallConstants::new(dim),
        }
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    /// NaN outside `s > 0`.
    pub fn eval(&self, s: f64) -> f64 {
        if !(s > 0.0) {
            return f64::NAN;
        }
        self.ball.omega / s + self.ball.omega * self.excess(s)
    }

    /// `g^_d(s) = V^_d(s) / omega_d - 1/s`, the transform of `V_d(t)/omega_d - 1`.
    pub fn excess(&self, s: f64) -> f64 {
        if !(s > 0.0) {
            return f64::NAN;
        }
        let a = (2.0 * s).sqrt();
        let nu = self.dim.as_f64() / 2.0;
        match bessel_k_ratio(nu, nu - 1.0, a) {
            Ok(ratio) => self.dim.as_f64() * ratio / (a * s),
            Err(_) => f64::NAN,
        }
    }

    /// Transform of `dV/dt`, namely `s V^(s) - omega_d`.
    pub fn rate(&self, s: f64) -> f64 {
        s * self.ball.omega * self.excess(s)
    }
}

pub fn sausage_transform(dim: Dimension) -> SausageTransform {
    SausageTransform::new(dim)
}

fn check_odd_args(n: u32, s: f64) -> Result<()> {
    if n > MAX_ODD_N {
        return Err(Error::domain(format!("n must be in 0..={MAX_ODD_N}, got {n}")));
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("s must be positive and finite, got {s}")));
    }
    Ok(())
}

fn omega_odd(n: u32) -> f64 {
    unit_ball_volume(Dimension::new(2 * n + 1).expect("odd dimension in range"))
}

/// `V^_{2n+1}(s)` through the Bessel polynomial ratio `y_n(u) / y_{n-1}(u)`, `u = 1/sqrt(2s)`.
pub fn vhat_odd(n: u32, s: f64) -> Result<f64> {
    check_odd_args(n, s)?;
    let root = (2.0 * s).sqrt();
    let u = 1.0 / root;
    let hi = bessel_poly_coeffs(n as i32)?;
    let lo = bessel_poly_coeffs(n as i32 - 1)?;
    let (yh, yl) = (eval_poly(hi, u), eval_poly(lo, u));
    let ratio = if yh.is_finite() && yl.is_finite() {
        yh / yl
    } else {
        // Divide through by u^n so the leading coefficients dominate.
        let inv = root;
        let rev = |c: &[f64]| c.iter().fold(0.0, |acc, x| acc * inv + x);
        u * rev(hi) / rev(lo)
    };
    let k = f64::from(2 * n + 1);
    Ok(omega_odd(n) / s * (1.0 + k / root * ratio))
}

/// `V^_{2n+1}(s)` through the continued fraction `H_k = (2k-1)/sqrt(2s) + 1/H_{k-1}`, `H_0 = 1`.
pub fn vhat_odd_cf(n: u32, s: f64) -> Result<f64> {
    check_odd_args(n, s)?;
    let root = (2.0 * s).sqrt();
    let h = (1..=n).fold(1.0, |h, k| f64::from(2 * k - 1) / root + 1.0 / h);
    let k = f64::from(2 * n + 1);
    Ok(omega_odd(n) / s * (1.0 + k / root * h))
}

/// `E exp(-s T)` for the hitting time `T` of the radius-`R` ball by Brownian
/// motion started at distance `rho >= R`:
/// `(rho/R)^{-b} K_b(rho a) / K_b(R a)`, `b = d/2 - 1`, `a = sqrt(2s)`.
pub fn bessel_hitting_laplace(rho: f64, radius: f64, dim: Dimension, s: f64) -> Result<f64> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::domain(format!("radius must be positive, got {radius}")));
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("s must be positive and finite, got {s}")));
    }
    if !(rho >= radius) {
        return Err(Error::domain(format!(
            "start distance {rho} is inside the target radius {radius}"
        )));
    }
    if rho == radius {
        return Ok(1.0);
    }
    if rho.is_infinite() {
        return Ok(0.0);
    }
    let b = dim.bessel_order();
    let a = (2.0 * s).sqrt();
    let ln = -b * (rho / radius).ln() + bessel_k_scaled(b, rho * a)?.ln()
        - bessel_k_scaled(b, radius * a)?.ln()
        - (rho - radius) * a;
    Ok(ln.exp())
}
