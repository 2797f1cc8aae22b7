use std::f64::consts::PI;

/// Complementary error function (standard convention).
#[inline]
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Above this, `exp(x^2) * erfc(x)` loses accuracy to the rounding of `x^2`.
const ERFCX_CF_THRESHOLD: f64 = 8.0;
const ERFCX_CF_DEPTH: u32 = 80;

/// Scaled complementary error function `erfcx(x) = exp(x^2) erfc(x)`.
pub fn erfcx(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 * (x * x).exp() - erfcx(-x);
    }
    if x <= ERFCX_CF_THRESHOLD {
        return (x * x).exp() * erfc(x);
    }
    if x.is_infinite() {
        return 0.0;
    }
    // sqrt(pi) erfcx(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    let mut tail = x;
    for k in (1..=ERFCX_CF_DEPTH).rev() {
        tail = x + 0.5 * f64::from(k) / tail;
    }
    1.0 / (PI.sqrt() * tail)
}
