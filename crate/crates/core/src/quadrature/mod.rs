//! Symmetry-reduced adaptive integration of curvature invariants.
//!
//! A cohomogeneity-one metric reduces to a radial integral; an axisymmetric
//! one to a nested integral over the radial and polar coordinates. Improper
//! ends are handled by substitutions: an exponential map at cone edges, and
//! algebraic or tangent maps with a certified tail bound at asymptotically
//! flat ends.

pub mod gk;

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::geometry_catalog::Invariant;
use crate::metric_engine::{curvature_at, hypersurface_at, DecayClass, MetricError, MetricField, RadialEnd, Symmetry};
use crate::tensor_core::InvariantDensities;

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "EDGECONE_WORKERS";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("evaluation budget exhausted; partial value {} ± {:.3e}", .partial.value, .partial.abs_error_estimate)]
    BudgetExceeded { partial: Box<IntegralReport> },
    #[error("no tail bound: {0} declares no decay class")]
    TailBoundUnavailable(String),
    #[error("{0} declares no symmetry reduction")]
    NoReduction(String),
    #[error("invalid quadrature settings: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// Substitution applied on the improper part of the radial range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndpointMap {
    /// `r = a + L·u/(1 − u)`.
    AleInverse,
    /// `r = a + L·tan(πu/2)`.
    AlfTangent,
    /// `r = r₀ − ln(u)/m` with `m = min(1, β)`, so that `ρ ∝ u^{1/m}`.
    EdgeLog,
}

impl EndpointMap {
    fn label(self) -> &'static str {
        match self {
            EndpointMap::AleInverse => "ale_inverse",
            EndpointMap::AlfTangent => "alf_tangent",
            EndpointMap::EdgeLog => "edge_log",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    #[serde(default = "default_abs_tol")]
    pub abs_tol: f64,
    pub max_evals: usize,
    /// Override of the substitution on the improper end; chosen from the layout when absent.
    #[serde(default)]
    pub endpoint_map: Option<EndpointMap>,
    /// Smallest distance to a cone edge that is sampled.
    #[serde(default = "default_edge_guard")]
    pub edge_guard: f64,
}

fn default_abs_tol() -> f64 {
    1e-12
}

fn default_edge_guard() -> f64 {
    crate::metric_engine::HARD_GUARD
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec::one_d()
    }
}

impl QuadratureSpec {
    pub fn one_d() -> Self {
        QuadratureSpec { rel_tol: 1e-7, abs_tol: default_abs_tol(), max_evals: 1_000_000, endpoint_map: None, edge_guard: default_edge_guard() }
    }
    pub fn two_d() -> Self {
        QuadratureSpec { rel_tol: 1e-5, max_evals: 50_000_000, ..Self::one_d() }
    }
    /// Defaults matching the dimension of the metric's reduction.
    pub fn for_metric(m: &MetricField) -> Self {
        match m.symmetry {
            Symmetry::Axisymmetric { .. } => Self::two_d(),
            _ => Self::one_d(),
        }
    }
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }
    pub fn with_max_evals(mut self, max_evals: usize) -> Self {
        self.max_evals = max_evals;
        self
    }
    pub fn with_edge_guard(mut self, guard: f64) -> Self {
        self.edge_guard = guard;
        self
    }
    pub fn validate(&self) -> Result<(), QuadratureError> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol >= 0.0) || self.max_evals == 0 || !(self.edge_guard > 0.0) {
            return Err(QuadratureError::InvalidSpec(format!("{self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralReport {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub predicted: Option<f64>,
    pub residual: Option<f64>,
    pub n_evals: usize,
    pub substitutions_used: Vec<String>,
    pub converged: bool,
}

impl IntegralReport {
    fn new(value: f64, abs_error_estimate: f64, n_evals: usize, substitutions_used: Vec<String>, converged: bool) -> Self {
        IntegralReport { value, abs_error_estimate, predicted: None, residual: None, n_evals, substitutions_used, converged }
    }

    pub fn with_prediction(mut self, predicted: Option<f64>) -> Self {
        self.predicted = predicted;
        self.residual = predicted.map(|p| self.value - p);
        self
    }

    /// `|residual| ≤ max(tol, 10·error estimate)`; `None` without a prediction.
    pub fn passes(&self, tol: f64) -> Option<bool> {
        self.residual.map(|r| r.abs() <= tol.max(10.0 * self.abs_error_estimate))
    }

    fn check_budget(self) -> Result<Self, QuadratureError> {
        if self.converged {
            Ok(self)
        } else {
            Err(QuadratureError::BudgetExceeded { partial: Box::new(self) })
        }
    }
}

/// Worker pool sized by [`WORKERS_ENV`] or the available parallelism.
pub fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let n = std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|n| *n > 0)
            .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
        rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("worker pool")
    })
}

/// Pointwise integrand of an invariant, per unit volume.
pub fn density(which: Invariant, d: &InvariantDensities) -> f64 {
    match which {
        Invariant::GaussBonnet => d.gauss_bonnet_density() / (8.0 * PI * PI),
        Invariant::Signature => d.signature_density() / (12.0 * PI * PI),
        Invariant::WplusTotal => d.wplus_sq,
        Invariant::WminusTotal => d.wminus_sq,
        Invariant::RiemTotal => d.curvature_norm_sq(),
        Invariant::Volume => 1.0,
    }
}

/// Reduced radial integrand: the invariant integrated over the orbit through radius `r`.
struct Reduced<'a> {
    m: &'a MetricField,
    which: Invariant,
    inner_rel_tol: f64,
    inner_max_evals: usize,
}

impl Reduced<'_> {
    fn eval(&self, r: f64) -> Result<(f64, usize), MetricError> {
        match self.m.symmetry {
            Symmetry::CohomogeneityOne { orbit_factor, .. } => {
                let c = curvature_at(self.m, &self.m.lift(&[r]))?;
                Ok((density(self.which, &c.densities) * c.densities.vol_density * orbit_factor, 1))
            }
            Symmetry::Axisymmetric { fiber_factor, .. } => {
                let (lo, hi) = self.m.layout.polar.unwrap_or((0.0, PI));
                let f = |t: f64| -> Result<f64, MetricError> {
                    let c = curvature_at(self.m, &self.m.lift(&[r, t]))?;
                    Ok(density(self.which, &c.densities) * c.densities.vol_density * fiber_factor)
                };
                let res = gk::integrate(&f, &[lo, hi], self.inner_rel_tol, 0.0, self.inner_max_evals, false)?;
                Ok((res.value, res.n_evals))
            }
            Symmetry::None => unreachable!("checked by caller"),
        }
    }
}

/// Radial integral over `[a, b]` (finite), optionally through a substitution on
/// `[split, b]`, with breakpoints from the layout.
struct RadialJob<'a> {
    reduced: Reduced<'a>,
    spec: &'a QuadratureSpec,
    abs_tol: f64,
}

struct Piece {
    value: f64,
    error: f64,
    n_evals: usize,
    converged: bool,
}

impl RadialJob<'_> {
    fn breaks_in(&self, a: f64, b: f64) -> Vec<f64> {
        let mut v = vec![a];
        v.extend(self.reduced.m.layout.breakpoints.iter().copied().filter(|&x| x > a && x < b));
        v.push(b);
        v
    }

    fn run<F: Fn(f64) -> Result<f64, MetricError> + Sync>(&self, g: &F, breaks: &[f64]) -> Result<Piece, MetricError> {
        let res = gk::integrate(g, breaks, self.spec.rel_tol, self.abs_tol, self.spec.max_evals, true)?;
        Ok(Piece { value: res.value, error: res.abs_error, n_evals: res.n_evals, converged: res.converged })
    }

    fn plain(&self, a: f64, b: f64) -> Result<Piece, MetricError> {
        let evals = std::sync::atomic::AtomicUsize::new(0);
        let g = |r: f64| {
            let (v, n) = self.reduced.eval(r)?;
            evals.fetch_add(n, std::sync::atomic::Ordering::Relaxed);
            Ok(v)
        };
        let mut p = self.run(&g, &self.breaks_in(a, b))?;
        p.n_evals = evals.into_inner().max(p.n_evals);
        Ok(p)
    }

    /// `∫_a^b` through `r = a + L·φ(u)`.
    fn mapped(&self, map: EndpointMap, a: f64, b: f64, scale: f64, edge_rate: f64) -> Result<Piece, MetricError> {
        let to_r = |u: f64| -> (f64, f64) {
            match map {
                EndpointMap::AleInverse => (a + scale * u / (1.0 - u), scale / ((1.0 - u) * (1.0 - u))),
                EndpointMap::AlfTangent => {
                    let t = 0.5 * PI * u;
                    (a + scale * t.tan(), scale * 0.5 * PI / t.cos().powi(2))
                }
                // r = a − ln(u)/m; dr = −du/(m u); orientation flipped by the u-range below
                EndpointMap::EdgeLog => (a - u.ln() / edge_rate, 1.0 / (edge_rate * u)),
            }
        };
        let to_u = |r: f64| -> f64 {
            match map {
                EndpointMap::AleInverse => (r - a) / (scale + r - a),
                EndpointMap::AlfTangent => 2.0 / PI * ((r - a) / scale).atan(),
                EndpointMap::EdgeLog => (-(r - a) * edge_rate).exp(),
            }
        };
        let evals = std::sync::atomic::AtomicUsize::new(0);
        let g = |u: f64| {
            let (r, jac) = to_r(u);
            let (v, n) = self.reduced.eval(r)?;
            evals.fetch_add(n, std::sync::atomic::Ordering::Relaxed);
            Ok(v * jac)
        };
        let mut breaks: Vec<f64> = self.breaks_in(a, b).into_iter().map(to_u).collect();
        breaks.sort_by(f64::total_cmp);
        let mut p = self.run(&g, &breaks)?;
        p.n_evals = evals.into_inner().max(p.n_evals);
        Ok(p)
    }
}

fn reduced<'a>(m: &'a MetricField, which: Invariant, spec: &QuadratureSpec) -> Result<Reduced<'a>, QuadratureError> {
    if m.symmetry == Symmetry::None {
        return Err(QuadratureError::NoReduction(m.name.clone()));
    }
    Ok(Reduced { m, which, inner_rel_tol: spec.rel_tol * 0.1, inner_max_evals: 20_000 })
}

/// Integral of an invariant over the region `{lo < x⁰ < hi}`, where `hi` is finite
/// or a cone edge.
fn integrate_region(m: &MetricField, which: Invariant, hi: Option<f64>, spec: &QuadratureSpec) -> Result<IntegralReport, QuadratureError> {
    spec.validate()?;
    let red = reduced(m, which, spec)?;
    let job = RadialJob { reduced: red, spec, abs_tol: spec.abs_tol };
    let lo = m.layout.radial_lo;
    pool().install(|| {
        let mut subs = Vec::new();
        let edge = match (hi, m.layout.upper) {
            (None, RadialEnd::Edge { beta, .. }) => Some(beta),
            _ => None,
        };
        let pieces = if let Some(beta) = edge {
            let cut = m.edge_cutoff(spec.edge_guard).expect("edge layout");
            let last_break = m.layout.breakpoints.iter().cloned().fold(lo, f64::max);
            let split = (lo + 2.0).max(last_break + 1.0).min(0.5 * (lo + cut));
            let map = spec.endpoint_map.unwrap_or(EndpointMap::EdgeLog);
            subs.push(format!("{} on [{split:.3}, {cut:.3}]", map.label()));
            let rate = beta.min(1.0);
            let inner = job.plain(lo, split)?;
            let outer = job.mapped(map, split, cut, 1.0, rate)?;
            vec![inner, outer]
        } else {
            let b = hi.unwrap_or(m.layout.radial_hi);
            if !b.is_finite() {
                return Err(QuadratureError::TailBoundUnavailable(m.name.clone()));
            }
            vec![job.plain(lo, b)?]
        };
        let value = gk::neumaier(pieces.iter().map(|p| p.value));
        let error = gk::neumaier(pieces.iter().map(|p| p.error));
        let n = pieces.iter().map(|p| p.n_evals).sum();
        let ok = pieces.iter().all(|p| p.converged);
        IntegralReport::new(value, error, n, subs, ok).check_budget()
    })
}

/// `∫_M` of an invariant over a compact or edge-cone metric.
///
/// Metrics with an asymptotically flat end are passed on to [`integrate_noncompact`].
pub fn integrate_invariant(m: &MetricField, which: Invariant, spec: &QuadratureSpec) -> Result<IntegralReport, QuadratureError> {
    if let RadialEnd::Asymptotic(_) = m.layout.upper {
        return integrate_noncompact(m, which, spec);
    }
    integrate_region(m, which, None, spec)
}

/// `∫_M` over an ALE or ALF end: adaptive integral up to a cutoff `C` plus a
/// tail bound `10·|F(C)|·C/(p − 1)` from the decay class, with `C` grown until
/// the bound is below `0.1·rel_tol·|value|`.
pub fn integrate_noncompact(m: &MetricField, which: Invariant, spec: &QuadratureSpec) -> Result<IntegralReport, QuadratureError> {
    spec.validate()?;
    let decay = match m.layout.upper {
        RadialEnd::Asymptotic(d) => d,
        _ => return Err(QuadratureError::TailBoundUnavailable(m.name.clone())),
    };
    let red = reduced(m, which, spec)?;
    let lo = m.layout.radial_lo;
    let map = spec.endpoint_map.unwrap_or(match decay {
        DecayClass::Ale => EndpointMap::AleInverse,
        DecayClass::Alf => EndpointMap::AlfTangent,
    });
    let p = decay.integrand_exponent();
    let last_break = m.layout.breakpoints.iter().cloned().fold(lo, f64::max);
    let mut c = (lo + 8.0).max(4.0 * last_break);
    let mut job = RadialJob { reduced: red, spec, abs_tol: spec.abs_tol };
    pool().install(|| {
        let mut pieces = vec![job.mapped(map, lo, c, 1.0, 1.0)?];
        let mut subs = vec![format!("{} on [{lo}, {c}]", map.label())];
        loop {
            let value = gk::neumaier(pieces.iter().map(|q| q.value));
            let (fc, _) = job.reduced.eval(c)?;
            let tail = 10.0 * fc.abs() * c / (p - 1.0);
            let n: usize = pieces.iter().map(|q| q.n_evals).sum::<usize>() + 1;
            let done = tail <= 0.1 * spec.rel_tol * value.abs() || tail <= spec.abs_tol;
            if done || n >= spec.max_evals || c > 1e12 {
                let error = gk::neumaier(pieces.iter().map(|q| q.error)) + tail;
                subs.push(format!("tail bound r^-{p} beyond {c:.4e}"));
                let ok = done && pieces.iter().all(|q| q.converged);
                return IntegralReport::new(value, error, n, subs, ok).check_budget();
            }
            let next = 4.0 * c;
            // later pieces only need to resolve their share of the total
            job.abs_tol = spec.abs_tol.max(0.1 * spec.rel_tol * value.abs());
            pieces.push(job.mapped(map, c, next, c, 1.0)?);
            c = next;
        }
    })
}

/// `(1/4π²)∫_{x⁰ = radius} [2 det II + ⟨II, R̂⟩] d𝖆`.
pub fn boundary_term(m: &MetricField, radius: f64, spec: &QuadratureSpec) -> Result<IntegralReport, QuadratureError> {
    spec.validate()?;
    let norm = 1.0 / (4.0 * PI * PI);
    match m.symmetry {
        Symmetry::CohomogeneityOne { sample, orbit_factor } => {
            let h = hypersurface_at(m, radius, &sample)?;
            let v = h.boundary_density() * h.area_density * orbit_factor * norm;
            Ok(IntegralReport::new(v, 64.0 * f64::EPSILON * v.abs(), 1, vec![], true))
        }
        Symmetry::Axisymmetric { sample, fiber_factor } => {
            let (lo, hi) = m.layout.polar.unwrap_or((0.0, PI));
            let f = |t: f64| -> Result<f64, MetricError> {
                let h = hypersurface_at(m, radius, &[t, sample[0], sample[1]])?;
                Ok(h.boundary_density() * h.area_density * fiber_factor * norm)
            };
            let r = pool().install(|| gk::integrate(&f, &[lo, hi], spec.rel_tol, spec.abs_tol, spec.max_evals, true))?;
            IntegralReport::new(r.value, r.abs_error, r.n_evals, vec![], r.converged).check_budget()
        }
        Symmetry::None => Err(QuadratureError::NoReduction(m.name.clone())),
    }
}

/// Interior Gauss–Bonnet integral over `{x⁰ ≤ radius}` plus the boundary term.
/// The prediction is the region's Euler characteristic when the metric declares it.
pub fn gauss_bonnet_with_boundary(m: &MetricField, radius: f64, spec: &QuadratureSpec) -> Result<IntegralReport, QuadratureError> {
    let interior = integrate_region(m, Invariant::GaussBonnet, Some(radius), spec)?;
    let boundary = boundary_term(m, radius, spec)?;
    let mut subs = interior.substitutions_used.clone();
    subs.push(format!("boundary at {radius}"));
    Ok(IntegralReport::new(
        interior.value + boundary.value,
        interior.abs_error_estimate + boundary.abs_error_estimate,
        interior.n_evals + boundary.n_evals,
        subs,
        interior.converged && boundary.converged,
    )
    .with_prediction(m.region_euler))
}
