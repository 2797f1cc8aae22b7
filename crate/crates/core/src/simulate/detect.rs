//! Per-germ detection times.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::specfun::erfc;

/// First `s >= 0` with `|x + s v| <= R`, for a start point outside the ball.
///
/// `None` when the line misses the ball or moves away from it.
pub fn detect_inertial(position: &[f64], velocity: &[f64], radius: f64) -> Option<f64> {
    let xx: f64 = position.iter().map(|x| x * x).sum();
    let xv: f64 = position.iter().zip(velocity).map(|(x, v)| x * v).sum();
    let vv: f64 = velocity.iter().map(|v| v * v).sum();
    let c = xx - radius * radius;
    if c <= 0.0 {
        return Some(0.0);
    }
    if vv == 0.0 || xv >= 0.0 {
        return None;
    }
    let disc = xv * xv - vv * c;
    if disc < 0.0 {
        return None;
    }
    // Smaller root of vv s^2 + 2 xv s + c, written without cancellation.
    Some(c / (-xv + disc.sqrt()))
}

/// `P(Z > x)` for a standard normal `Z`.
pub fn normal_tail(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// `x` with `normal_tail(x) = p`, `0 < p < 1`.
pub fn normal_tail_inverse(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "tail probability {p} outside (0, 1)");
    let (mut lo, mut hi) = (-40.0f64, 40.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if normal_tail(mid) > p {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * mid.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Bound on the probability that a d-dimensional Brownian motion leaves the
/// ball of radius `gap` before `horizon`: each coordinate must exceed
/// `gap / sqrt(d)` in absolute value, and the reflection principle gives
/// `4 d P(Z > gap / sqrt(d horizon))`.
pub fn brownian_reach_bound(d: u32, gap: f64, horizon: f64) -> f64 {
    if gap <= 0.0 {
        return 1.0;
    }
    let df = f64::from(d);
    (4.0 * df * normal_tail(gap / (df * horizon).sqrt())).min(1.0)
}

/// Walks a Brownian path from `position` on the grid `dt, 2dt, ...` up to
/// `horizon`, returning the first grid time at which the ball was reached.
///
/// Between grid points a crossing is accepted with the bridge probability
/// `exp(-2 (a - R)(b - R) / dt)` for the half-space tangent to the ball; in
/// one dimension a sign change is a certain crossing.
pub fn detect_brownian<R: Rng + ?Sized>(
    position: &[f64],
    radius: f64,
    horizon: f64,
    dt: f64,
    rng: &mut R,
) -> Option<f64> {
    let mut x = position.to_vec();
    let mut r = norm(&x);
    if r <= radius {
        return Some(0.0);
    }
    let sd = dt.sqrt();
    let limit = horizon * (1.0 + 1e-12);
    let mut k: u64 = 0;
    loop {
        k += 1;
        let t = k as f64 * dt;
        if t > limit {
            return None;
        }
        let before = x[0];
        for xi in x.iter_mut() {
            let z: f64 = rng.sample(StandardNormal);
            *xi += sd * z;
        }
        let r_new = norm(&x);
        if r_new <= radius {
            return Some(t);
        }
        if x.len() == 1 && (before > 0.0) != (x[0] > 0.0) {
            return Some(t);
        }
        let u: f64 = rng.random();
        let arg = 2.0 * (r - radius) * (r_new - radius) / dt;
        if u < (-arg).exp() {
            return Some(t);
        }
        r = r_new;
    }
}

#[inline]
fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}
