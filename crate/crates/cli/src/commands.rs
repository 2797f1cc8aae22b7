//! Subcommand implementations.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use mbm_core::analytic::{
    expected_detection_time, fit_small_radius_scaling, hazard_rate, has_closed_form,
    survival, survival_asymptotic, unit_sausage_volume, unit_sausage_volume_inverted,
};
use mbm_core::curve::linear_grid;
use mbm_core::simulate::{compare_curves, empirical_survival, CompareOptions};
use mbm_core::specfun::bessel_poly;
use mbm_core::{Dimension, EvenDim, ModelSpec, MotionModel, SimConfig, SpeedLaw};

use crate::args::{
    AnalyticArgs, AsymptoteArgs, BesselPolyArgs, Command, CompareArgs, ExpectationArgs,
    InvertArgs, ModelArgs, Motion, SimulateArgs,
};
use crate::table::{emit, num, read_curve, Table};
use crate::{CliError, CliResult};

pub(crate) fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Analytic(a) => analytic(a, out),
        Command::Asymptote(a) => asymptote(a, out),
        Command::Invert(a) => invert(a, out),
        Command::Besselpoly(a) => besselpoly(a, out, err),
        Command::Simulate(a) => simulate(a, out, err),
        Command::Compare(a) => compare(a, out),
        Command::Expectation(a) => expectation(a, out),
    }
}

fn build_spec(m: &ModelArgs) -> CliResult<ModelSpec> {
    let dim = Dimension::new(m.dim)?;
    let motion = match m.model {
        Motion::Brownian => {
            if m.mean_speed.is_some() || m.speed_law.is_some() {
                return Err(CliError::Usage(
                    "--mean-speed and --speed-law apply to the inertial model".into(),
                ));
            }
            MotionModel::Brownian
        }
        Motion::Inertial => {
            let law = match (&m.speed_law, m.mean_speed) {
                (Some(law), _) => law.clone(),
                (None, Some(c)) => SpeedLaw::constant(c)?,
                (None, None) => {
                    return Err(CliError::Usage(
                        "the inertial model needs --mean-speed or --speed-law".into(),
                    ))
                }
            };
            MotionModel::Inertial(law)
        }
    };
    Ok(ModelSpec::new(dim, m.lambda, m.radius, motion)?)
}

fn even_mode(flag: bool) -> EvenDim {
    if flag {
        EvenDim::Numeric
    } else {
        EvenDim::Reject
    }
}

fn analytic(a: AnalyticArgs, out: &mut dyn Write) -> CliResult<()> {
    let spec = build_spec(&a.model)?;
    let grid = linear_grid(a.grid.tmin, a.grid.tmax, a.grid.points)?;
    let even = even_mode(a.even_numeric);
    let rows = grid
        .par_iter()
        .map(|&t| -> CliResult<[String; 4]> {
            let s = survival(&spec, t, even)?;
            let h = hazard_at(&spec, t, even)?;
            Ok([num(t), num(s.value.clamp(0.0, 1.0)), num(h), s.provenance.to_string()])
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut table = Table::new(&["t", "survival", "hazard", "provenance"])?;
    for row in rows {
        table.row(row)?;
    }
    emit(&a.out.output, &table.into_bytes()?, out)
}

/// The hazard is continued to `t = 0` by its right limit: infinite for
/// Brownian particles, constant for inertial ones. It is NaN when the mean
/// speed is infinite.
fn hazard_at(spec: &ModelSpec, t: f64, even: EvenDim) -> CliResult<f64> {
    match spec.motion() {
        MotionModel::Inertial(law) if law.is_heavy_tailed() => Ok(f64::NAN),
        MotionModel::Inertial(_) => Ok(spec.inertial_hazard().expect("inertial model")),
        MotionModel::Brownian if t == 0.0 => Ok(f64::INFINITY),
        MotionModel::Brownian => Ok(hazard_rate(spec, t, even)?.value),
    }
}

fn asymptote(a: AsymptoteArgs, out: &mut dyn Write) -> CliResult<()> {
    let spec = ModelSpec::brownian(a.dim, a.lambda, a.radius)?;
    let grid = linear_grid(a.grid.tmin, a.grid.tmax, a.grid.points)?;
    let mut table = Table::new(&["t", "log_survival_asymptotic"])?;
    for t in grid {
        table.row([num(t), num(survival_asymptotic(&spec, t)?)])?;
    }
    emit(&a.out.output, &table.into_bytes()?, out)
}

fn invert(a: InvertArgs, out: &mut dyn Write) -> CliResult<()> {
    let dim = Dimension::new(a.dim)?;
    let closed = has_closed_form(dim);
    let header: &[&str] = if closed {
        &["t", "V1_d_numeric", "V1_d_closed", "rel_err"]
    } else {
        &["t", "V1_d_numeric"]
    };
    let rows = a
        .t
        .par_iter()
        .map(|&t| -> CliResult<Vec<String>> {
            let numeric = unit_sausage_volume_inverted(dim, t)?.value;
            let mut row = vec![num(t), num(numeric)];
            if closed {
                let exact = unit_sausage_volume(dim, t)?.value;
                row.push(num(exact));
                row.push(num(((numeric - exact) / exact).abs()));
            }
            Ok(row)
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut table = Table::new(header)?;
    for row in rows {
        table.row(row)?;
    }
    emit(&a.out.output, &table.into_bytes()?, out)
}

fn besselpoly(a: BesselPolyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let poly = bessel_poly(a.n)?;
    let mut fields = vec![a.n.to_string()];
    fields.extend(poly.coefficients().iter().map(|c| c.to_string()));
    let mut line = fields.join(",");
    line.push('\n');
    emit(&a.out.output, line.as_bytes(), out)?;
    writeln!(err, "{}", poly.closed_form_k())?;
    Ok(())
}

fn simulate(a: SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let spec = build_spec(&a.model)?;
    let dt = match (a.dt, a.model.model) {
        (Some(dt), _) => dt,
        (None, Motion::Inertial) => a.tmax / 100.0,
        (None, Motion::Brownian) => {
            return Err(CliError::Usage("Brownian simulation needs --dt".into()))
        }
    };
    let mut config = SimConfig::new(spec, a.tmax, dt, a.trials, a.eps, a.seed)?;
    if let Some(w) = a.window {
        config = config.with_window(w)?;
    }
    let grid = linear_grid(0.0, a.tmax, a.points)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {:?} threads: {e}", a.threads)))?;
    let outcome = pool.install(|| empirical_survival(&config, &grid))?;

    let tr = &outcome.truncation;
    writeln!(
        err,
        "window radius {} ({} expected germs), {} of {} trials censored",
        tr.radius, tr.expected_germs, outcome.n_censored, outcome.n_trials
    )?;
    if tr.heavy_tail {
        writeln!(
            err,
            "warning: heavy-tailed speed law; the window cannot contain every particle that \
             could reach the target, so the survival estimates are upper bounds"
        )?;
    }

    let se = outcome.curve.stderr().expect("empirical curves carry standard errors");
    let mut table = Table::new(&["t", "survival", "stderr", "n_censored"])?;
    for ((t, p), s) in outcome.curve.grid().iter().zip(outcome.curve.values()).zip(se) {
        table.row([num(*t), num(*p), num(*s), outcome.n_censored.to_string()])?;
    }
    emit(&a.out.output, &table.into_bytes()?, out)
}

#[derive(Serialize)]
struct CompareJson {
    max_abs_diff: f64,
    max_z: f64,
    frac_gt3: f64,
    pass: bool,
}

fn compare(a: CompareArgs, out: &mut dyn Write) -> CliResult<()> {
    let empirical = read_curve(&a.empirical)?;
    let analytic = read_curve(&a.analytic)?;
    let options = CompareOptions {
        z_threshold: a.z_threshold,
        max_fraction: a.max_fraction,
        relative_bias: a.bias,
    };
    let report = compare_curves(&empirical, a.trials, &analytic, options)?;
    let json = CompareJson {
        max_abs_diff: report.max_abs_diff,
        max_z: report.max_z,
        frac_gt3: report.frac_gt3,
        pass: report.pass,
    };
    let mut text = serde_json::to_string(&json).map_err(|e| CliError::Usage(e.to_string()))?;
    text.push('\n');
    emit(&a.out.output, text.as_bytes(), out)
}

fn expectation(a: ExpectationArgs, out: &mut dyn Write) -> CliResult<()> {
    let spec = build_spec(&a.model)?;
    let even = even_mode(a.even_numeric);
    let bytes = match &a.fit_radii {
        None => {
            let e = expected_detection_time(&spec, even)?;
            let mut table = Table::new(&["expected_detection_time", "abs_err", "provenance"])?;
            table.row([num(e.value), num(e.abs_err), e.provenance.to_string()])?;
            table.into_bytes()?
        }
        Some(radii) => {
            let fit = fit_small_radius_scaling(&spec, radii, even)?;
            let mut table = Table::new(&[
                "exponent",
                "exponent_stderr",
                "exponent_ci_low",
                "exponent_ci_high",
                "prefactor",
                "prefactor_ci_low",
                "prefactor_ci_high",
            ])?;
            table.row([
                num(fit.exponent),
                num(fit.exponent_stderr),
                num(fit.exponent_ci.0),
                num(fit.exponent_ci.1),
                num(fit.prefactor),
                num(fit.prefactor_ci.0),
                num(fit.prefactor_ci.1),
            ])?;
            table.into_bytes()?
        }
    };
    emit(&a.out.output, &bytes, out)
}
