//! Detection-time laws of the mobile Boolean model.
//!
//! Particles start at the points of a homogeneous Poisson process in
//! `R^d`, each carries a ball, and they move independently (straight lines
//! with random speed, or standard Brownian motion). The detection time `S`
//! of a centered ball is the first time any particle's ball touches it.
//!
//! * [`geometry`]: ball volumes, sphere surfaces, double factorials.
//! * [`specfun`]: `K_nu`, Bessel polynomials, `erfc`/`erfcx`.
//! * [`analytic`]: sausage-volume transforms, closed-form and inverted
//!   survival functions, hazards, asymptotics and expectations.
//! * [`simulate`]: Monte Carlo realization of the model itself and
//!   comparison against the analytic curves.

pub mod analytic;
pub mod curve;
pub mod error;
pub mod geometry;
pub mod quad;
pub mod simulate;
pub mod specfun;

pub use analytic::{
    expected_detection_time, hazard_rate, invert_laplace, sausage_transform, sausage_volume,
    survival, survival_asymptotic, survival_curve, EvenDim, ModelSpec, MotionModel,
    SausageTransform, SpeedLaw,
};
pub use curve::{Estimate, Provenance, SurvivalCurve};
pub use error::{Error, Result};
pub use geometry::{BallConstants, Dimension};
pub use simulate::{compare, empirical_survival, SimConfig, SimOutcome};
