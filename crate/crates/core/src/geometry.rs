//! Constants of Euclidean unit balls and spheres.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Largest supported dimension.
pub const MAX_DIM: u32 = 64;

/// Largest `n` accepted by [`odd_double_factorial`] and the Bessel polynomials.
pub const MAX_FACTORIAL_N: u32 = 33;

/// Ambient dimension `d`, `1 <= d <= 64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 || d > MAX_DIM {
            return Err(Error::domain(format!(
                "dimension must be in 1..={MAX_DIM}, got {d}"
            )));
        }
        Ok(Dimension(d))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        f64::from(self.0)
    }

    #[inline]
    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }

    /// For odd `d = 2n + 1`, returns `n`; even dimensions are rejected.
    pub fn half_index(self) -> Result<u32> {
        if self.is_odd() {
            Ok((self.0 - 1) / 2)
        } else {
            Err(Error::domain(format!(
                "operation needs an odd dimension, got {}",
                self.0
            )))
        }
    }

    /// Order `d/2 - 1` of the Bessel function driving the radial hitting time.
    #[inline]
    pub fn bessel_order(self) -> f64 {
        self.as_f64() / 2.0 - 1.0
    }
}

impl TryFrom<u32> for Dimension {
    type Error = Error;

    fn try_from(d: u32) -> Result<Self> {
        Dimension::new(d)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `omega_d = vol(B)` and `sigma_{d-1} = d * omega_d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallConstants {
    pub omega: f64,
    pub sigma: f64,
}

impl BallConstants {
    pub fn new(d: Dimension) -> Self {
        let omega = unit_ball_volume(d);
        BallConstants {
            omega,
            sigma: d.as_f64() * omega,
        }
    }
}

/// Volume of the unit ball, from the parity-split closed forms
/// `omega_{2n} = pi^n / n!` and `omega_{2n+1} = 2^{n+1} pi^n / (2n+1)!!`.
pub fn unit_ball_volume(d: Dimension) -> f64 {
    let d = d.get();
    let n = d / 2;
    if d % 2 == 0 {
        (1..=n).fold(1.0, |acc, k| acc * PI / f64::from(k))
    } else {
        (1..=n).fold(2.0, |acc, k| acc * 2.0 * PI / f64::from(2 * k + 1))
    }
}

/// Volume of the unit ball from `pi^{d/2} / Gamma(d/2 + 1)`.
pub fn unit_ball_volume_gamma(d: Dimension) -> f64 {
    let half = d.as_f64() / 2.0;
    PI.powf(half) / gamma(half + 1.0)
}

/// Surface measure `sigma_{d-1} = d * omega_d` of the unit sphere.
pub fn sphere_surface(d: Dimension) -> f64 {
    d.as_f64() * unit_ball_volume(d)
}

/// `omega_{d-1}`, the volume of a central cross-section of the unit ball
/// (`omega_0 = 1`). A ball of radius `R` moved a distance `L` sweeps
/// `omega_d R^d + omega_{d-1} R^{d-1} L`.
pub fn cross_section_volume(d: Dimension) -> f64 {
    match d.get() {
        1 => 1.0,
        k => unit_ball_volume(Dimension(k - 1)),
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function (Lanczos, g = 7), with reflection below 1/2.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    // Split the power so t^(x+1/2) does not overflow before e^-t tames it.
    let half_pow = t.powf((x + 0.5) / 2.0);
    (2.0 * PI).sqrt() * half_pow * (half_pow * (-t).exp()) * acc
}

/// `(2n+1)!! = 1 * 3 * ... * (2n+1)`, exact, for `n <= 33`.
pub fn odd_double_factorial(n: u32) -> Result<BigUint> {
    if n > MAX_FACTORIAL_N {
        return Err(Error::Overflow(format!(
            "(2n+1)!! supported for n <= {MAX_FACTORIAL_N}, got n = {n}"
        )));
    }
    Ok((0..=n).fold(BigUint::from(1u32), |acc, k| acc * (2 * k + 1)))
}
