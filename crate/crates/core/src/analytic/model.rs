//! Model parameters: dimension, intensity, radius and particle motion.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{Error, Result};
use crate::geometry::{cross_section_volume, BallConstants, Dimension};

/// Law of the particle speed `|v|` in the inertial model.
#[derive(Debug, Clone, PartialEq)]
pub enum SpeedLaw {
    Constant(f64),
    Exponential { mean: f64 },
    /// Density `alpha x_m^alpha / x^{alpha + 1}` on `x >= x_m`.
    Pareto { shape: f64, scale: f64 },
    /// Uniform draw from a list of observed speeds.
    Empirical(Vec<f64>),
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Error::domain(format!("{name} must be positive and finite, got {x}")))
    }
}

impl SpeedLaw {
    pub fn constant(c: f64) -> Result<Self> {
        if c >= 0.0 && c.is_finite() {
            Ok(SpeedLaw::Constant(c))
        } else {
            Err(Error::domain(format!("constant speed must be >= 0, got {c}")))
        }
    }

    pub fn exponential(mean: f64) -> Result<Self> {
        Ok(SpeedLaw::Exponential {
            mean: positive("exponential mean", mean)?,
        })
    }

    pub fn pareto(shape: f64, scale: f64) -> Result<Self> {
        Ok(SpeedLaw::Pareto {
            shape: positive("pareto shape", shape)?,
            scale: positive("pareto scale", scale)?,
        })
    }

    pub fn empirical(speeds: Vec<f64>) -> Result<Self> {
        if speeds.is_empty() {
            return Err(Error::domain("empirical speed list is empty"));
        }
        if speeds.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
            return Err(Error::domain("empirical speeds must be finite and >= 0"));
        }
        Ok(SpeedLaw::Empirical(speeds))
    }

    /// `E|v|`, infinite for Pareto laws with `shape <= 1`.
    pub fn mean_speed(&self) -> f64 {
        match self {
            SpeedLaw::Constant(c) => *c,
            SpeedLaw::Exponential { mean } => *mean,
            SpeedLaw::Pareto { shape, scale } => {
                if *shape <= 1.0 {
                    f64::INFINITY
                } else {
                    shape * scale / (shape - 1.0)
                }
            }
            SpeedLaw::Empirical(v) => v.iter().sum::<f64>() / v.len() as f64,
        }
    }

    /// True when the mean speed is infinite.
    pub fn is_heavy_tailed(&self) -> bool {
        self.mean_speed().is_infinite()
    }

    /// Essential supremum of the speed, if finite.
    pub fn max_speed(&self) -> Option<f64> {
        match self {
            SpeedLaw::Constant(c) => Some(*c),
            SpeedLaw::Empirical(v) => Some(v.iter().copied().fold(0.0, f64::max)),
            _ => None,
        }
    }

    /// Smallest `x` with `P(|v| <= x) >= p`, for `p` in `[0, 1)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&p) {
            return Err(Error::domain(format!("quantile level must be in [0, 1), got {p}")));
        }
        let tail = 1.0 - p;
        Ok(match self {
            SpeedLaw::Constant(c) => *c,
            SpeedLaw::Exponential { mean } => -mean * tail.ln(),
            SpeedLaw::Pareto { shape, scale } => scale * tail.powf(-1.0 / shape),
            SpeedLaw::Empirical(v) => {
                let mut sorted = v.clone();
                sorted.sort_by(f64::total_cmp);
                let k = (p * sorted.len() as f64).ceil() as usize;
                sorted[k.clamp(1, sorted.len()) - 1]
            }
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            SpeedLaw::Constant(c) => *c,
            SpeedLaw::Exponential { mean } => {
                let e: f64 = Exp1.sample(rng);
                mean * e
            }
            SpeedLaw::Pareto { shape, scale } => {
                // 1 - U lies in (0, 1], so the power stays finite.
                let u: f64 = 1.0 - rng.random::<f64>();
                scale * u.powf(-1.0 / shape)
            }
            SpeedLaw::Empirical(v) => v[rng.random_range(0..v.len())],
        }
    }
}

impl fmt::Display for SpeedLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpeedLaw::Constant(c) => write!(f, "const:{c}"),
            SpeedLaw::Exponential { mean } => write!(f, "exp:{mean}"),
            SpeedLaw::Pareto { shape, scale } => write!(f, "pareto:{shape},{scale}"),
            SpeedLaw::Empirical(v) => {
                write!(f, "empirical:")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses `const:c`, `exp:m`, `pareto:alpha,x_m` or `empirical:v1,v2,...`.
impl FromStr for SpeedLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::domain(format!("speed law `{s}` is not of the form kind:args")))?;
        let nums = args
            .split(',')
            .map(|a| {
                a.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::domain(format!("bad number `{a}` in speed law `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let expect = |n: usize| {
            if nums.len() == n {
                Ok(())
            } else {
                Err(Error::domain(format!("speed law `{kind}` takes {n} argument(s)")))
            }
        };
        match kind.trim() {
            "const" => {
                expect(1)?;
                SpeedLaw::constant(nums[0])
            }
            "exp" => {
                expect(1)?;
                SpeedLaw::exponential(nums[0])
            }
            "pareto" => {
                expect(2)?;
                SpeedLaw::pareto(nums[0], nums[1])
            }
            "empirical" => SpeedLaw::empirical(nums),
            other => Err(Error::domain(format!("unknown speed law `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MotionModel {
    /// Standard Brownian motion, variance `t` per coordinate.
    Brownian,
    /// Straight lines `x + t v`, direction uniform, speed from the law.
    Inertial(SpeedLaw),
}

/// Dimension, intensity `lambda`, combined radius `R = r + r0` and motion.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    dim: Dimension,
    lambda: f64,
    radius: f64,
    motion: MotionModel,
}

impl ModelSpec {
    /// `R = 0` is accepted only for 1-d Brownian motion, where the law stays
    /// nondegenerate.
    pub fn new(dim: Dimension, lambda: f64, radius: f64, motion: MotionModel) -> Result<Self> {
        positive("intensity", lambda)?;
        let zero_ok = dim.get() == 1 && motion == MotionModel::Brownian;
        if !(radius.is_finite() && (radius > 0.0 || (zero_ok && radius == 0.0))) {
            return Err(Error::domain(format!("radius must be positive and finite, got {radius}")));
        }
        Ok(ModelSpec {
            dim,
            lambda,
            radius,
            motion,
        })
    }

    pub fn brownian(d: u32, lambda: f64, radius: f64) -> Result<Self> {
        ModelSpec::new(Dimension::new(d)?, lambda, radius, MotionModel::Brownian)
    }

    pub fn inertial(d: u32, lambda: f64, radius: f64, speed: SpeedLaw) -> Result<Self> {
        ModelSpec::new(Dimension::new(d)?, lambda, radius, MotionModel::Inertial(speed))
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn motion(&self) -> &MotionModel {
        &self.motion
    }

    pub fn ball(&self) -> BallConstants {
        BallConstants::new(self.dim)
    }

    pub fn with_radius(&self, radius: f64) -> Result<Self> {
        ModelSpec::new(self.dim, self.lambda, radius, self.motion.clone())
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        ModelSpec::new(self.dim, lambda, self.radius, self.motion.clone())
    }

    /// `lambda omega_d R^d`, minus the log of `P(S = 0)`.
    pub fn initial_exponent(&self) -> f64 {
        self.lambda * self.ball().omega * self.radius.powi(self.dim.get() as i32)
    }

    /// `lambda omega_{d-1} R^{d-1} E|v|`, the constant hazard of the inertial
    /// model; `None` for Brownian motion.
    pub fn inertial_hazard(&self) -> Option<f64> {
        match &self.motion {
            MotionModel::Inertial(law) => {
                let d = self.dim.get() as i32;
                Some(
                    self.lambda
                        * cross_section_volume(self.dim)
                        * self.radius.powi(d - 1)
                        * law.mean_speed(),
                )
            }
            MotionModel::Brownian => None,
        }
    }

    /// `P(S = 0) = exp(-lambda omega_d R^d)`.
    pub fn atom_at_zero(&self) -> f64 {
        (-self.initial_exponent()).exp()
    }
}
