//! Gaver-Stehfest inversion on the real axis.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Number of Stehfest terms used for the reported estimate.
pub const STEHFEST_TERMS: usize = 16;
/// Number of terms of the check estimate.
pub const STEHFEST_CHECK_TERMS: usize = 14;
/// Relative disagreement between the two estimates that counts as converged.
pub const INVERSION_RTOL: f64 = 1e-6;

/// Stehfest weights `V_k`, `k = 1..=n`, for even `n`.
pub fn stehfest_weights(n: usize) -> Result<Vec<f64>> {
    if n < 2 || n % 2 == 1 || n > 30 {
        return Err(Error::domain(format!(
            "Stehfest order must be even and in 2..=30, got {n}"
        )));
    }
    let fact = |m: usize| (1..=m).fold(1.0, |acc, i| acc * i as f64);
    let half = n / 2;
    Ok((1..=n)
        .map(|k| {
            let lo = k.div_ceil(2);
            let hi = k.min(half);
            let sum: f64 = (lo..=hi)
                .map(|j| {
                    let jf = j as f64;
                    jf.powi(half as i32) * fact(2 * j)
                        / (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k))
                })
                .sum();
            let sign = if (k + half) % 2 == 0 { 1.0 } else { -1.0 };
            sign * sum
        })
        .collect())
}

fn cached_weights(n: usize) -> &'static [f64] {
    static W16: OnceLock<Vec<f64>> = OnceLock::new();
    static W14: OnceLock<Vec<f64>> = OnceLock::new();
    let cell = match n {
        STEHFEST_TERMS => &W16,
        STEHFEST_CHECK_TERMS => &W14,
        _ => unreachable!("only the two working orders are cached"),
    };
    cell.get_or_init(|| stehfest_weights(n).expect("valid order"))
}

/// Estimate `f(t)` from its transform with `n` terms.
pub fn gaver_stehfest<F: FnMut(f64) -> f64>(mut transform: F, t: f64, n: usize) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("inversion time must be positive, got {t}")));
    }
    let weights = stehfest_weights(n)?;
    let step = std::f64::consts::LN_2 / t;
    let sum: f64 = weights
        .iter()
        .enumerate()
        .map(|(i, w)| w * transform((i + 1) as f64 * step))
        .sum();
    Ok(step * sum)
}

/// A converged inversion: the 16-term value and the 14-term check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion {
    pub value: f64,
    pub check: f64,
}

impl Inversion {
    pub fn abs_err(&self) -> f64 {
        (self.value - self.check).abs()
    }
}

/// Inverts `transform` at `t`, failing with [`Error::NonConvergence`] when the
/// 14- and 16-term estimates disagree by more than [`INVERSION_RTOL`].
///
/// Both estimates sample the same abscissae `k ln2 / t`, so the transform is
/// evaluated 16 times.
pub fn invert_laplace<F: FnMut(f64) -> f64>(mut transform: F, t: f64) -> Result<Inversion> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("inversion time must be positive, got {t}")));
    }
    let step = std::f64::consts::LN_2 / t;
    let samples: Vec<f64> = (1..=STEHFEST_TERMS)
        .map(|k| transform(k as f64 * step))
        .collect();
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain(format!(
            "transform is not finite at the abscissae for t = {t}"
        )));
    }
    let estimate = |n: usize| {
        step * cached_weights(n)
            .iter()
            .zip(&samples)
            .map(|(w, f)| w * f)
            .sum::<f64>()
    };
    let value = estimate(STEHFEST_TERMS);
    let check = estimate(STEHFEST_CHECK_TERMS);
    let scale = value.abs().max(check.abs());
    if (value - check).abs() > INVERSION_RTOL * scale {
        return Err(Error::NonConvergence {
            estimate: value,
            check,
            tolerance: INVERSION_RTOL,
        });
    }
    Ok(Inversion { value, check })
}
