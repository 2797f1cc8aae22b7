//! Poisson germs in a ball, generated in order of increasing distance.
//!
//! With `V_k = omega_d rho_k^d` the ball volume out to the k-th nearest germ,
//! the increments `V_k - V_{k-1}` are i.i.d. exponential with mean `1/lambda`.
//! Walking outward lets a trial stop as soon as the remaining germs are too
//! far away to matter.

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};
use rand_chacha::ChaCha8Rng;

use crate::analytic::{ModelSpec, MotionModel, SpeedLaw};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum GermMotion {
    Inertial { velocity: Vec<f64> },
    /// The path of the germ is drawn from this stream of the trial's key.
    Brownian { stream: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Germ {
    pub position: Vec<f64>,
    /// `|position|`.
    pub distance: f64,
    pub motion: GermMotion,
}

/// Uniform direction on the unit sphere from a normalized Gaussian vector.
pub fn random_direction<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Endless sequence of germs sorted by distance from the origin.
pub struct GermStream<'a, R> {
    rng: R,
    d: usize,
    lambda: f64,
    omega: f64,
    speed: Option<&'a SpeedLaw>,
    volume: f64,
    index: u64,
}

impl<'a, R: Rng> GermStream<'a, R> {
    pub fn new(spec: &'a ModelSpec, rng: R) -> Self {
        let speed = match spec.motion() {
            MotionModel::Inertial(law) => Some(law),
            MotionModel::Brownian => None,
        };
        GermStream {
            rng,
            d: spec.dim().get() as usize,
            lambda: spec.lambda(),
            omega: spec.ball().omega,
            speed,
            volume: 0.0,
            index: 0,
        }
    }
}

impl<R: Rng> Iterator for GermStream<'_, R> {
    type Item = Germ;

    fn next(&mut self) -> Option<Germ> {
        let e: f64 = self.rng.sample(Exp1);
        self.volume += e / self.lambda;
        let distance = (self.volume / self.omega).powf(1.0 / self.d as f64);
        let dir = random_direction(self.d, &mut self.rng);
        let position = dir.iter().map(|x| x * distance).collect();
        let motion = match self.speed {
            Some(law) => {
                let dir = random_direction(self.d, &mut self.rng);
                let speed = law.sample(&mut self.rng);
                GermMotion::Inertial {
                    velocity: dir.into_iter().map(|x| x * speed).collect(),
                }
            }
            None => GermMotion::Brownian {
                stream: self.index + 1,
            },
        };
        self.index += 1;
        Some(Germ {
            position,
            distance,
            motion,
        })
    }
}

/// All germs within `window_radius`, nearest first. The count is Poisson with
/// mean `lambda omega_d window_radius^d`.
pub fn sample_germs(
    spec: &ModelSpec,
    window_radius: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Germ>> {
    if !(window_radius > 0.0 && window_radius.is_finite()) {
        return Err(Error::domain(format!(
            "window radius must be positive and finite, got {window_radius}"
        )));
    }
    Ok(GermStream::new(spec, rng)
        .take_while(|g| g.distance <= window_radius)
        .collect())
}
