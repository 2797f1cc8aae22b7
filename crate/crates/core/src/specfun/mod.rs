//! Special functions for the Brownian analysis.
//!
//! `erfc` follows the standard convention, `erfc(x) = (2/sqrt(pi)) int_x^inf e^{-u^2} du`.

mod bessel_k;
mod bessel_poly;
mod erf;

pub use bessel_k::{bessel_k, bessel_k_half, bessel_k_ratio, bessel_k_scaled, ln_bessel_k};
pub use bessel_poly::{bessel_poly, bessel_poly_recursive, BesselPolynomial};
pub(crate) use bessel_poly::{
    coeffs_f64 as bessel_poly_coeffs, eval_coeffs as eval_poly, ln_eval_coeffs,
};
pub use erf::{erfc, erfcx};
