//! Exact and asymptotic laws of the detection time.
//!
//! With Brownian particles `P(S > t) = exp(-lambda V^R(t))`, where `V^R` is
//! the expected volume of the Wiener sausage of radius `R`. With inertial
//! particles `P(S > t) = exp(-lambda omega_d R^d - lambda omega_{d-1} R^{d-1} E|v| t)`,
//! the second term being the volume swept by the ball's central cross-section.

mod expectation;
mod laplace;
mod model;
mod survival;
mod transform;
mod volume;

pub use expectation::{
    expected_detection_time, expected_detection_time_quadrature, fit_small_radius_scaling,
    PowerLawFit, TAIL_LEVEL,
};
pub use laplace::{
    gaver_stehfest, invert_laplace, stehfest_weights, Inversion, INVERSION_RTOL,
    STEHFEST_CHECK_TERMS, STEHFEST_TERMS,
};
pub use model::{ModelSpec, MotionModel, SpeedLaw};
pub use survival::{hazard_rate, log_survival, survival, survival_asymptotic, survival_curve, EvenDim};
pub use transform::{
    bessel_hitting_laplace, sausage_transform, vhat_odd, vhat_odd_cf, SausageTransform, MAX_ODD_N,
};
pub use volume::{
    has_closed_form, sausage_volume, sausage_volume_rate, unit_sausage_rate, unit_sausage_volume,
    unit_sausage_volume_inverted,
};
