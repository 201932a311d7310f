//! Batch driver for the edgecone verification suites.

pub mod config;
pub mod report;

use std::time::Instant;

use edgecone::geometry_catalog::{
    calibration_constants, cone_profile, exact_prediction, make_metric, smoothed_cone_total_curvature,
    FamilyDescriptor, FamilyKind, Invariant, Representative,
};
use edgecone::metric_engine::curvature_at;
use edgecone::quadrature::{boundary_term, gauss_bonnet_with_boundary, integrate_invariant, pool, QuadratureSpec};
use edgecone::topology::{
    csc_sum, defect, hitchin_thorpe_check, instanton_table_up_to, instanton_total, Asymptotics, Instanton, Sign,
};
use thiserror::Error;

pub use config::{Format, JobConfig, JobKind};
pub use report::{Provenance, Report, Row};

#[derive(Debug, Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(#[from] ConfigError),
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) | CliError::Output(_) => 3,
        }
    }
}

fn compute(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(e.to_string())
}

const DEFAULT_EINSTEIN_SAMPLES: usize = 200;
const DEFAULT_TABLE_K_MAX: u32 = 8;

/// Validate and execute a job. The report's `pass` is false when any row misses its tolerance.
pub fn run(config: &JobConfig) -> Result<Report, CliError> {
    config.validate()?;
    let start = Instant::now();
    let rows = match config.job {
        JobKind::VerifyGb => integrals(config, Invariant::GaussBonnet)?,
        JobKind::VerifySig => integrals(config, Invariant::Signature)?,
        JobKind::VerifyEinstein => einstein(config)?,
        JobKind::BoundaryGb => boundary(config)?,
        JobKind::Cone2d => cone(config)?,
        JobKind::Instanton => {
            let i = config.instanton.expect("validated");
            let total = instanton_total(&i).map_err(compute)?;
            vec![Row::Instanton { label: instanton_label(&i), coefficient: total.coefficient, value: total.value }]
        }
        JobKind::HtCheck => config
            .topology_points()?
            .into_iter()
            .map(|(parameter, t)| Row::HtCheck {
                parameter,
                defect_plus: defect(&t, Sign::Plus),
                defect_minus: defect(&t, Sign::Minus),
                verdict: hitchin_thorpe_check(&t),
            })
            .collect(),
        JobKind::CscSum => {
            let result = csc_sum(config.p.expect("validated")).map_err(compute)?;
            let tolerance = config.tolerance();
            vec![Row::CscSum { tolerance, pass: result.rel_error <= tolerance, result }]
        }
        JobKind::Table => instanton_table_up_to(config.k_max.unwrap_or(DEFAULT_TABLE_K_MAX)).into_iter().map(Row::Table).collect(),
    };
    let pass = rows.iter().all(|r| r.pass() != Some(false));
    let provenance = Provenance {
        tool: "edgecone".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        workers: pool().current_num_threads(),
        wall_time_s: start.elapsed().as_secs_f64(),
        calibration: calibration_constants().into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
    };
    Ok(Report { job: config.clone(), rows, pass, provenance })
}

fn instanton_label(i: &Instanton) -> String {
    match i {
        Instanton::Table(d) => {
            let a = match d.asymptotics {
                Asymptotics::Ale => "ALE",
                Asymptotics::Alf => "ALF",
            };
            format!("{} {a}", d.dynkin)
        }
        Instanton::Named(n) => serde_json::to_value(n).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default(),
    }
}

fn integrals(config: &JobConfig, which: Invariant) -> Result<Vec<Row>, CliError> {
    let tolerance = config.tolerance();
    config
        .family_points()?
        .into_iter()
        .map(|(parameter, d)| {
            let m = make_metric(&d).map_err(compute)?;
            let spec = config.quadrature_spec(QuadratureSpec::for_metric(&m));
            let report = integrate_invariant(&m, which, &spec).map_err(compute)?.with_prediction(exact_prediction(&d, which));
            let pass = report.predicted.and_then(|p| report.passes(tolerance * p.abs().max(1.0)));
            let invariant = serde_json::to_value(which).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
            Ok(Row::Integral { parameter, invariant, tolerance, report, pass })
        })
        .collect()
}

fn boundary(config: &JobConfig) -> Result<Vec<Row>, CliError> {
    let tolerance = config.tolerance();
    let d = config.family_points()?.remove(0).1;
    let m = make_metric(&d).map_err(compute)?;
    let spec = config.quadrature_spec(QuadratureSpec::for_metric(&m));
    let radii = config.radii().map(<[f64]>::to_vec).unwrap_or_else(|| vec![config.radius.expect("validated")]);
    radii
        .into_iter()
        .map(|radius| {
            let report = gauss_bonnet_with_boundary(&m, radius, &spec).map_err(compute)?;
            let boundary = boundary_term(&m, radius, &spec).map_err(compute)?.value;
            let pass = report.predicted.and_then(|p| report.passes(tolerance * p.abs().max(1.0)));
            Ok(Row::BoundaryGb { radius, tolerance, interior: report.value - boundary, boundary, report, pass })
        })
        .collect()
}

/// Einstein scalar curvature `4λ` of the catalog's Einstein edge family.
fn einstein_scalar(d: &FamilyDescriptor) -> Option<f64> {
    match (d.family, d.representative, d.beta) {
        (FamilyKind::PedersenAbreu, Representative::Standard, Some(b)) => Some(6.0 * b * b * (2.0 - b)),
        _ => None,
    }
}

fn einstein(config: &JobConfig) -> Result<Vec<Row>, CliError> {
    let tolerance = config.tolerance();
    let samples = config.samples.unwrap_or(DEFAULT_EINSTEIN_SAMPLES);
    config
        .family_points()?
        .into_iter()
        .map(|(parameter, d)| {
            let m = make_metric(&d).map_err(compute)?;
            let (mut r0, mut lo, mut hi) = (0.0f64, f64::INFINITY, f64::NEG_INFINITY);
            for x in m.sample_points(samples) {
                let c = curvature_at(&m, &x).map_err(compute)?;
                r0 = r0.max(c.densities.ricci0_sq.sqrt());
                lo = lo.min(c.densities.s);
                hi = hi.max(c.densities.s);
            }
            let scalar_expected = einstein_scalar(&d);
            let scalar_rel_error = scalar_expected.map(|s| {
                let worst = (lo - s).abs().max((hi - s).abs());
                worst / s.abs().max(f64::MIN_POSITIVE)
            });
            let mut row = Row::Einstein {
                parameter,
                samples,
                tolerance,
                max_traceless_ricci: r0,
                scalar_min: lo,
                scalar_max: hi,
                scalar_expected,
                scalar_rel_error,
                pass: false,
            };
            let ok = row.recompute_pass() == Some(true);
            if let Row::Einstein { pass, .. } = &mut row {
                *pass = ok;
            }
            Ok(row)
        })
        .collect()
}

fn cone(config: &JobConfig) -> Result<Vec<Row>, CliError> {
    let tolerance = config.tolerance();
    let rel_tol = config.quadrature.rel_tol.unwrap_or(1e-10);
    config
        .family_points()?
        .into_iter()
        .map(|(_, d)| {
            let beta = d.beta.expect("validated");
            let inner_integral = cone_profile(beta).map_err(compute)?.integral(1.0);
            let (total_curvature, abs_error_estimate) = smoothed_cone_total_curvature(beta, rel_tol).map_err(compute)?;
            let mut row = Row::Cone2d {
                beta,
                tolerance,
                inner_integral,
                inner_expected: 1.0 / beta,
                total_curvature,
                abs_error_estimate,
                curvature_expected: 2.0 * std::f64::consts::PI * (1.0 - beta),
                pass: false,
            };
            let ok = row.recompute_pass() == Some(true);
            if let Row::Cone2d { pass, .. } = &mut row {
                *pass = ok;
            }
            Ok(row)
        })
        .collect()
}
