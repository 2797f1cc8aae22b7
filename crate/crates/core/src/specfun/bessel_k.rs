//! `K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt` for real `nu` and `x > 0`.
//!
//! The integrand is entire and decays double-exponentially, so the trapezoidal
//! rule on its even extension converges exponentially in the step size. The
//! integrand is shifted by its peak exponent, which keeps scaled and log-scale
//! values finite far outside the range of a plain `f64` result.

use std::f64::consts::PI;

use super::{bessel_poly_coeffs, ln_eval_coeffs};
use crate::error::{Error, Result};

/// Relative size below which the integrand tail is dropped (e^-50).
const TAIL_LOG_CUTOFF: f64 = 50.0;
const MAX_HALVINGS: usize = 14;
const REL_TOL: f64 = 1e-15;

/// `e^x K_nu(x) = exp(log_peak) * integral`.
#[derive(Debug, Clone, Copy)]
struct ScaledK {
    log_peak: f64,
    integral: f64,
}

impl ScaledK {
    fn ln_scaled(self) -> f64 {
        self.log_peak + self.integral.ln()
    }
}

fn check_args(nu: f64, x: f64) -> Result<()> {
    if !nu.is_finite() {
        return Err(Error::domain(format!("Bessel order must be finite, got {nu}")));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!(
            "Bessel argument must be positive and finite, got {x}"
        )));
    }
    Ok(())
}

/// `x (cosh t - 1)` without cancellation near `t = 0`.
#[inline]
fn x_cosh_m1(x: f64, t: f64) -> f64 {
    let s = (0.5 * t).sinh();
    2.0 * x * s * s
}

fn scaled_k(nu: f64, x: f64) -> ScaledK {
    // K_nu = K_{-nu}
    let nu = nu.abs();
    let log_f = |t: f64| -x_cosh_m1(x, t) + nu * t;
    let t_peak = if nu > 0.0 { (nu / x).asinh() } else { 0.0 };
    let g_peak = log_f(t_peak);

    // Upper limit: past the peak, where the integrand is e^-50 of its maximum.
    let mut step = 1.0;
    let mut upper = t_peak + step;
    while log_f(upper) > g_peak - TAIL_LOG_CUTOFF {
        step *= 2.0;
        upper = t_peak + step;
    }
    let mut lo = t_peak;
    for _ in 0..60 {
        let mid = 0.5 * (lo + upper);
        if log_f(mid) > g_peak - TAIL_LOG_CUTOFF {
            lo = mid;
        } else {
            upper = mid;
        }
    }

    // exp(-x cosh t) cosh(nu t) shifted by the peak; symmetric about t = 0.
    let f = |t: f64| {
        let g = log_f(t) - g_peak;
        0.5 * (g.exp() + (g - 2.0 * nu * t).exp())
    };

    let mut h = (upper / 8.0).min(0.5);
    let mut n = (upper / h).ceil() as usize;
    h = upper / n as f64;
    let mut sum = 0.5 * f(0.0) + (1..=n).map(|k| f(k as f64 * h)).sum::<f64>();
    let mut estimate = h * sum;
    for _ in 0..MAX_HALVINGS {
        let half = 0.5 * h;
        let odd: f64 = (0..n).map(|k| f((2 * k + 1) as f64 * half)).sum();
        sum += odd;
        h = half;
        n *= 2;
        let refined = h * sum;
        let converged = (refined - estimate).abs() <= REL_TOL * refined.abs();
        estimate = refined;
        if converged {
            break;
        }
    }

    ScaledK {
        log_peak: g_peak,
        integral: estimate,
    }
}

/// `ln K_nu(x)`; never under- or overflows.
pub fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    check_args(nu, x)?;
    Ok(scaled_k(nu, x).ln_scaled() - x)
}

/// Exponentially scaled `e^x K_nu(x)`.
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<f64> {
    check_args(nu, x)?;
    finite_from_ln(scaled_k(nu, x).ln_scaled())
}

/// `K_nu(x)`. Results below the smallest normal double are reported as
/// [`Error::Underflow`] carrying `ln K_nu(x)`.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    check_args(nu, x)?;
    finite_from_ln(scaled_k(nu, x).ln_scaled() - x)
}

/// `K_mu(x) / K_nu(x)`, computed without forming either factor.
pub fn bessel_k_ratio(mu: f64, nu: f64, x: f64) -> Result<f64> {
    check_args(mu, x)?;
    check_args(nu, x)?;
    let a = scaled_k(mu, x);
    let b = scaled_k(nu, x);
    Ok((a.log_peak - b.log_peak).exp() * a.integral / b.integral)
}

/// Half-integer order through the Bessel polynomial:
/// `K_{n+1/2}(x) = sqrt(pi/2) e^{-x} x^{-1/2} y_n(1/x)`.
pub fn bessel_k_half(n: u32, x: f64) -> Result<f64> {
    let coeffs = bessel_poly_coeffs(i32::try_from(n).unwrap_or(i32::MAX))?;
    check_args(f64::from(n) + 0.5, x)?;
    let ln = 0.5 * (PI / 2.0).ln() - x - 0.5 * x.ln() + ln_eval_coeffs(coeffs, 1.0 / x);
    finite_from_ln(ln)
}

fn finite_from_ln(ln: f64) -> Result<f64> {
    if ln < f64::MIN_POSITIVE.ln() {
        Err(Error::Underflow { ln_value: ln })
    } else if ln > f64::MAX.ln() {
        Err(Error::Overflow(format!("ln(value) = {ln}")))
    } else {
        Ok(ln.exp())
    }
}
