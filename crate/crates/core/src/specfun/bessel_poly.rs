//! Bessel polynomials `y_n(x) = sum_k (n+k)! / ((n-k)! k!) (x/2)^k`, with
//! the convention `y_{-1} = 1`.

use std::fmt::Write as _;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::geometry::MAX_FACTORIAL_N;

/// Bessel polynomial with exact integer coefficients `c_0, ..., c_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselPolynomial {
    degree: i32,
    coeffs: Vec<BigUint>,
    coeffs_f64: Vec<f64>,
}

impl BesselPolynomial {
    fn from_coeffs(degree: i32, coeffs: Vec<BigUint>) -> Self {
        let coeffs_f64 = coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
            .collect();
        BesselPolynomial {
            degree,
            coeffs,
            coeffs_f64,
        }
    }

    /// `n`; `-1` for the constant convention polynomial.
    pub fn degree(&self) -> i32 {
        self.degree
    }

    /// `c_0, ..., c_n` in increasing powers of `x`.
    pub fn coefficients(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        eval_coeffs(&self.coeffs_f64, x)
    }

    /// `ln y_n(x)` for `x > 0`, stable when `y_n(x)` would overflow.
    pub fn ln_eval(&self, x: f64) -> f64 {
        ln_eval_coeffs(&self.coeffs_f64, x)
    }

    /// The matching half-integer Bessel function, written as
    /// `K_{n+1/2}(x) = sqrt(pi/2) e^{-x} / x^{n+1/2} * (x^n y_n(1/x))`.
    pub fn closed_form_k(&self) -> String {
        let n = self.degree.max(0);
        let mut out = format!("K_{{{}/2}}(x) = sqrt(pi/2) * exp(-x) / x^({}/2)", 2 * n + 1, 2 * n + 1);
        if n == 0 {
            return out;
        }
        // x^n y_n(1/x) = sum_k c_k x^{n-k}
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            let power = n as usize - k;
            let coeff = if c.is_one() && power > 0 {
                String::new()
            } else {
                c.to_string()
            };
            let term = match power {
                0 => coeff,
                1 => format!("{coeff}x"),
                p => format!("{coeff}x^{p}"),
            };
            terms.push(term);
        }
        let _ = write!(out, " * ({})", terms.join(" + "));
        out
    }
}

fn check_degree(n: i32) -> Result<()> {
    if n < -1 {
        return Err(Error::domain(format!("Bessel polynomial degree must be >= -1, got {n}")));
    }
    if n > MAX_FACTORIAL_N as i32 {
        return Err(Error::Overflow(format!(
            "Bessel polynomial degree supported up to {MAX_FACTORIAL_N}, got {n}"
        )));
    }
    Ok(())
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `y_n` from the explicit sum, `c_k = (n+k)! / ((n-k)! k! 2^k)`.
pub fn bessel_poly(n: i32) -> Result<BesselPolynomial> {
    check_degree(n)?;
    if n < 0 {
        return Ok(BesselPolynomial::from_coeffs(-1, vec![BigUint::one()]));
    }
    let n = n as u32;
    let coeffs = (0..=n)
        .map(|k| factorial(n + k) / (factorial(n - k) * factorial(k) * (BigUint::one() << k)))
        .collect();
    Ok(BesselPolynomial::from_coeffs(n as i32, coeffs))
}

/// `y_n` from `y_n = (2n-1) x y_{n-1} + y_{n-2}`, `y_{-1} = y_0 = 1`.
pub fn bessel_poly_recursive(n: i32) -> Result<BesselPolynomial> {
    check_degree(n)?;
    let mut older = vec![BigUint::one()]; // y_{-1}
    if n < 0 {
        return Ok(BesselPolynomial::from_coeffs(-1, older));
    }
    let mut prev = vec![BigUint::one()]; // y_0
    for m in 1..=n as u32 {
        let mut next = vec![BigUint::default(); prev.len() + 1];
        for (k, c) in prev.iter().enumerate() {
            next[k + 1] += c * (2 * m - 1);
        }
        for (k, c) in older.iter().enumerate() {
            next[k] += c;
        }
        older = std::mem::replace(&mut prev, next);
    }
    Ok(BesselPolynomial::from_coeffs(n, prev))
}

/// Floating-point coefficients of `y_n` for `-1 <= n <= 33`, built once.
pub(crate) fn coeffs_f64(n: i32) -> Result<&'static [f64]> {
    static TABLE: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    check_degree(n)?;
    let table = TABLE.get_or_init(|| {
        (-1..=MAX_FACTORIAL_N as i32)
            .map(|m| bessel_poly_recursive(m).expect("degree in range").coeffs_f64)
            .collect()
    });
    Ok(&table[(n + 1) as usize])
}

/// `ln y(x)` for `x > 0` and positive coefficients in increasing powers.
pub(crate) fn ln_eval_coeffs(coeffs: &[f64], x: f64) -> f64 {
    if x <= 1.0 {
        return eval_coeffs(coeffs, x).ln();
    }
    // y(x) = x^n * sum_k c_k x^{k-n}
    let inv = 1.0 / x;
    let tail = coeffs.iter().fold(0.0, |acc, c| acc * inv + c);
    let top = coeffs.len() as f64 - 1.0;
    top * x.ln() + tail.ln()
}

/// `y(x)` for coefficients in increasing powers.
pub(crate) fn eval_coeffs(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}
