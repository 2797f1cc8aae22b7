//! Monte Carlo realization of the mobile Boolean model.
//!
//! Each trial places Poisson germs around the target, moves them, and records
//! the first time one of them comes within `R` of the origin, censored at
//! `t_max`. Trials run in parallel on independent random streams and are
//! collected in trial order, so results do not depend on the thread count.

mod compare;
mod detect;
mod germs;
mod rng;
mod truncation;

use rayon::prelude::*;

use crate::analytic::{ModelSpec, MotionModel};
use crate::curve::{validate_grid, Provenance, SurvivalCurve};
use crate::error::{Error, Result};

pub use compare::{compare, compare_curves, CompareOptions, ComparisonReport};
pub use detect::{
    brownian_reach_bound, detect_brownian, detect_inertial, normal_tail, normal_tail_inverse,
};
pub use germs::{random_direction, sample_germs, Germ, GermMotion, GermStream};
pub use rng::trial_rng;
pub use truncation::{fixed_window, truncation_radius, Truncation, MAX_EXPECTED_GERMS};

/// Largest accepted truncation budget.
pub const MAX_EPSILON: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub spec: ModelSpec,
    /// Censoring horizon.
    pub t_max: f64,
    /// Brownian time step, at most `t_max / 100`.
    pub dt: f64,
    pub n_trials: u64,
    /// Probability budget for germs outside the window reaching the target.
    pub epsilon: f64,
    pub seed: u64,
    /// Explicit window radius, overriding the budget-derived one.
    pub window: Option<f64>,
}

impl SimConfig {
    pub fn new(
        spec: ModelSpec,
        t_max: f64,
        dt: f64,
        n_trials: u64,
        epsilon: f64,
        seed: u64,
    ) -> Result<Self> {
        let cfg = SimConfig {
            spec,
            t_max,
            dt,
            n_trials,
            epsilon,
            seed,
            window: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_window(mut self, radius: f64) -> Result<Self> {
        self.window = Some(radius);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::domain(format!("t_max must be positive, got {}", self.t_max)));
        }
        if !(self.dt > 0.0 && self.dt <= self.t_max / 100.0) {
            return Err(Error::domain(format!(
                "dt must be in (0, t_max/100], got {} with t_max = {}",
                self.dt, self.t_max
            )));
        }
        if self.n_trials == 0 {
            return Err(Error::domain("need at least one trial"));
        }
        if !(self.epsilon > 0.0 && self.epsilon <= MAX_EPSILON) {
            return Err(Error::domain(format!(
                "epsilon must be in (0, {MAX_EPSILON}], got {}",
                self.epsilon
            )));
        }
        if self.spec.radius() <= 0.0 {
            return Err(Error::domain("simulation needs a positive radius"));
        }
        if let Some(w) = self.window {
            if !(w > self.spec.radius() && w.is_finite()) {
                return Err(Error::domain(format!(
                    "window {w} must exceed the radius {}",
                    self.spec.radius()
                )));
            }
        }
        Ok(())
    }

    pub fn truncation(&self) -> Result<Truncation> {
        match self.window {
            Some(w) => fixed_window(&self.spec, w, self.epsilon),
            None => truncation_radius(&self.spec, self.t_max, self.epsilon),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DetectionTime {
    Detected(f64),
    /// No detection up to `t_max`.
    Censored,
}

impl DetectionTime {
    /// True when the target is still undetected at `t`.
    pub fn survives(self, t: f64) -> bool {
        match self {
            DetectionTime::Detected(s) => s > t,
            DetectionTime::Censored => true,
        }
    }
}

/// Mean detection time over trials, with censored trials counted at `t_max`;
/// a lower bound on `E S` unless nothing was censored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CensoredMean {
    pub mean: f64,
    pub stderr: f64,
    pub censored_fraction: f64,
    pub t_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimOutcome {
    pub times: Vec<DetectionTime>,
    pub curve: SurvivalCurve,
    pub n_trials: u64,
    pub n_censored: u64,
    pub truncation: Truncation,
    pub t_max: f64,
}

impl SimOutcome {
    /// Fraction of trials detected at time zero.
    pub fn atom_at_zero(&self) -> f64 {
        let n = self
            .times
            .iter()
            .filter(|s| **s == DetectionTime::Detected(0.0))
            .count();
        n as f64 / self.n_trials as f64
    }

    pub fn mean_detection_time(&self) -> CensoredMean {
        let n = self.n_trials as f64;
        let values: Vec<f64> = self
            .times
            .iter()
            .map(|s| match s {
                DetectionTime::Detected(t) => *t,
                DetectionTime::Censored => self.t_max,
            })
            .collect();
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
        CensoredMean {
            mean,
            stderr: (var / n).sqrt(),
            censored_fraction: self.n_censored as f64 / n,
            t_max: self.t_max,
        }
    }
}

/// Detection time of one trial.
pub fn run_trial(config: &SimConfig, truncation: &Truncation, trial: u64) -> DetectionTime {
    let spec = &config.spec;
    let radius = spec.radius();
    let d = spec.dim().get();
    let cap = match spec.motion() {
        MotionModel::Inertial(law) => law.max_speed(),
        MotionModel::Brownian => None,
    };
    let germs = GermStream::new(spec, trial_rng(config.seed, trial, 0));
    let mut horizon = config.t_max;
    let mut best: Option<f64> = None;
    for germ in germs {
        if germ.distance > truncation.radius {
            break;
        }
        if germ.distance <= radius {
            return DetectionTime::Detected(0.0);
        }
        let gap = germ.distance - radius;
        match germ.motion {
            GermMotion::Inertial { velocity } => {
                if let Some(c) = cap {
                    if gap > c * horizon {
                        break;
                    }
                }
                if let Some(s) = detect_inertial(&germ.position, &velocity, radius) {
                    if s <= horizon {
                        horizon = s;
                        best = Some(s);
                    }
                }
            }
            GermMotion::Brownian { stream } => {
                // Germs are sorted, so every later germ is pruned as well.
                if brownian_reach_bound(d, gap, horizon) < truncation.per_germ_budget {
                    break;
                }
                let mut rng = trial_rng(config.seed, trial, stream);
                if let Some(s) =
                    detect_brownian(&germ.position, radius, horizon, config.dt, &mut rng)
                {
                    if best.map_or(true, |b| s < b) {
                        horizon = s;
                        best = Some(s);
                    }
                }
            }
        }
    }
    best.map_or(DetectionTime::Censored, DetectionTime::Detected)
}

/// Per-trial detection times, in trial order.
pub fn simulate_trials(config: &SimConfig) -> Result<(Vec<DetectionTime>, Truncation)> {
    config.validate()?;
    let truncation = config.truncation()?;
    let times = (0..config.n_trials)
        .into_par_iter()
        .map(|k| run_trial(config, &truncation, k))
        .collect();
    Ok((times, truncation))
}

/// Empirical survival on `grid` (all points within `[0, t_max]`) with
/// binomial standard errors.
pub fn empirical_survival(config: &SimConfig, grid: &[f64]) -> Result<SimOutcome> {
    validate_grid(grid)?;
    if grid.iter().any(|t| *t > config.t_max) {
        return Err(Error::domain(format!(
            "grid extends past the censoring horizon {}",
            config.t_max
        )));
    }
    let (times, truncation) = simulate_trials(config)?;
    Ok(outcome_from_times(config, grid, times, truncation))
}

fn outcome_from_times(
    config: &SimConfig,
    grid: &[f64],
    times: Vec<DetectionTime>,
    truncation: Truncation,
) -> SimOutcome {
    let n = config.n_trials as f64;
    let mut detected: Vec<f64> = times
        .iter()
        .filter_map(|s| match s {
            DetectionTime::Detected(t) => Some(*t),
            DetectionTime::Censored => None,
        })
        .collect();
    detected.sort_by(f64::total_cmp);
    let n_censored = config.n_trials - detected.len() as u64;
    let (values, stderr): (Vec<f64>, Vec<f64>) = grid
        .iter()
        .map(|&t| {
            let le = detected.partition_point(|s| *s <= t);
            let p = (config.n_trials as usize - le) as f64 / n;
            (p, (p * (1.0 - p) / n).sqrt())
        })
        .unzip();
    let curve = SurvivalCurve::new(grid.to_vec(), values, Provenance::Empirical, Some(stderr))
        .expect("empirical survival is a valid curve");
    SimOutcome {
        times,
        curve,
        n_trials: config.n_trials,
        n_censored,
        truncation,
        t_max: config.t_max,
    }
}
