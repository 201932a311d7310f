//! From chart metrics to pointwise curvature.
//!
//! A [`MetricField`] wraps the component functions of a catalog metric together
//! with its chart domain, symmetry reduction and the layout quadrature needs.
//! [`curvature_at`] runs the Levi-Civita pipeline (metric derivatives,
//! Christoffel symbols, lowered Riemann tensor, Ricci tensor) and hands the
//! result to [`crate::tensor_core`] for the irreducible decomposition.

pub mod fd;
pub mod jet;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{inverse4, max_abs4, max_abs_tensor, Mat3, Mat4, Tensor4, Vec4, ZERO_TENSOR4};
use crate::tensor_core::{
    self, boundary_rhat, curvature_operator, invariant_densities, orthonormal_frame, BoundaryFrame, CurvatureOperator,
    Frame4, InvariantDensities, TensorError,
};
pub use jet::{Jet, Scalar};

/// Radial band around chart degeneracies and cone edges that is never sampled.
pub const HARD_GUARD: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("point {point:?} lies outside the chart domain of {metric}: {reason}")]
    DomainViolation { metric: String, point: [f64; 4], reason: String },
    #[error("derivative noise at {point:?}: estimated relative error {relative:.3e}")]
    DerivativeNoise { point: [f64; 4], relative: f64 },
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Component functions of a chart metric, written once for any [`Scalar`].
pub trait MetricFormula: Send + Sync + fmt::Debug {
    fn eval<S: Scalar>(&self, x: &[S; 4]) -> [[S; 4]; 4];
}

/// Object-safe view of a [`MetricFormula`].
pub trait ChartMetric: Send + Sync + fmt::Debug {
    fn components(&self, x: &[f64; 4]) -> Mat4;
    fn components_jet(&self, x: &[Jet; 4]) -> [[Jet; 4]; 4];
}

impl<T: MetricFormula> ChartMetric for T {
    fn components(&self, x: &[f64; 4]) -> Mat4 {
        self.eval(x)
    }
    fn components_jet(&self, x: &[Jet; 4]) -> [[Jet; 4]; 4] {
        self.eval(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DerivMode {
    /// Exact derivatives by forward-mode differentiation of the closed form.
    Analytic,
    /// Richardson-extrapolated central differences with the given base step.
    NumericFd { base_step: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoordRange {
    pub lo: f64,
    pub hi: f64,
    pub periodic: bool,
}

impl CoordRange {
    pub fn open(lo: f64, hi: f64) -> Self {
        CoordRange { lo, hi, periodic: false }
    }
    pub fn periodic(period: f64) -> Self {
        CoordRange { lo: 0.0, hi: period, periodic: true }
    }
}

/// How the reduced radial coordinate ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RadialEnd {
    /// A smooth point, bolt, or finite chart boundary.
    Regular,
    /// A cone edge at `r → ∞` with distance to the edge `ρ ≈ rho_scale·e^{−r}`.
    Edge { beta: f64, rho_scale: f64 },
    /// An asymptotically flat end at `r → ∞`.
    Asymptotic(DecayClass),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecayClass {
    /// `|ℛ| = O(r⁻⁴)`, volume growth `r⁴`.
    Ale,
    /// `|ℛ| = O(r⁻³)`, volume growth `r³`.
    Alf,
}

impl DecayClass {
    /// Decay exponent of the reduced integrand `|ℛ|² dμ/dr`.
    pub fn integrand_exponent(self) -> f64 {
        match self {
            DecayClass::Ale => 5.0,
            DecayClass::Alf => 4.0,
        }
    }
    pub fn curvature_exponent(self) -> f64 {
        match self {
            DecayClass::Ale => 4.0,
            DecayClass::Alf => 3.0,
        }
    }
}

/// Isometry reduction used by quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Symmetry {
    /// Coordinate 0 is radial; coordinates 1..3 sweep the orbits. `sample` holds
    /// the orbit coordinates used for evaluation, and `orbit_factor` converts
    /// `√det g` at the sample into the integral over the whole orbit.
    CohomogeneityOne { sample: [f64; 3], orbit_factor: f64 },
    /// Coordinates 0 and 1 span the reduced half-plane; coordinates 2..3 are
    /// Killing directions with total measure `fiber_factor`.
    Axisymmetric { sample: [f64; 2], fiber_factor: f64 },
    None,
}

/// Reduced domain in the radial (and, when axisymmetric, polar) coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layout {
    pub radial_lo: f64,
    pub radial_hi: f64,
    pub lower: RadialEnd,
    pub upper: RadialEnd,
    /// Interior radial values where the integrand loses smoothness.
    pub breakpoints: Vec<f64>,
    /// Range of the second reduced coordinate for axisymmetric metrics.
    pub polar: Option<(f64, f64)>,
}

/// A closed-form chart metric with everything needed to evaluate and integrate its curvature.
#[derive(Clone)]
pub struct MetricField {
    pub name: String,
    formula: Arc<dyn ChartMetric>,
    pub deriv_mode: DerivMode,
    pub domain: [CoordRange; 4],
    pub symmetry: Symmetry,
    pub layout: Layout,
    /// Orientation of the chart relative to the manifold orientation.
    pub orientation: i8,
    /// Typical coordinate scale; sets the finite-difference step.
    pub scale: f64,
    /// Euler characteristic (with edge corrections) of every region `{x⁰ ≤ c}`, when known.
    pub region_euler: Option<f64>,
}

impl fmt::Debug for MetricField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricField")
            .field("name", &self.name)
            .field("deriv_mode", &self.deriv_mode)
            .field("symmetry", &self.symmetry)
            .field("layout", &self.layout)
            .field("orientation", &self.orientation)
            .finish()
    }
}

impl MetricField {
    pub fn new<F: MetricFormula + 'static>(
        name: impl Into<String>,
        formula: F,
        domain: [CoordRange; 4],
        symmetry: Symmetry,
        layout: Layout,
    ) -> Self {
        MetricField {
            name: name.into(),
            formula: Arc::new(formula),
            deriv_mode: DerivMode::Analytic,
            domain,
            symmetry,
            layout,
            orientation: 1,
            scale: 1.0,
            region_euler: None,
        }
    }

    pub fn with_orientation(mut self, orientation: i8) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn with_deriv_mode(mut self, mode: DerivMode) -> Self {
        self.deriv_mode = mode;
        self
    }

    pub fn with_region_euler(mut self, chi: Option<f64>) -> Self {
        self.region_euler = chi;
        self
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    /// The same metric with the opposite orientation.
    pub fn reversed(&self) -> Self {
        let mut m = self.clone();
        m.orientation = -m.orientation;
        m
    }

    /// Metric components at a point.
    pub fn eval(&self, x: &[f64; 4]) -> Mat4 {
        self.formula.components(x)
    }

    pub fn eval_jet(&self, x: &[f64; 4]) -> [[Jet; 4]; 4] {
        self.formula.components_jet(&Jet::seed(x))
    }

    /// Largest radial coordinate allowed by a cone-edge guard band `delta`.
    pub fn edge_cutoff(&self, delta: f64) -> Option<f64> {
        match self.layout.upper {
            RadialEnd::Edge { rho_scale, .. } => Some((rho_scale / delta.max(HARD_GUARD)).ln()),
            _ => None,
        }
    }

    /// Full chart point from reduced coordinates.
    pub fn lift(&self, reduced: &[f64]) -> [f64; 4] {
        match self.symmetry {
            Symmetry::CohomogeneityOne { sample, .. } => [reduced[0], sample[0], sample[1], sample[2]],
            Symmetry::Axisymmetric { sample, .. } => [reduced[0], reduced[1], sample[0], sample[1]],
            Symmetry::None => {
                let mut x = [0.0; 4];
                x[..reduced.len().min(4)].copy_from_slice(&reduced[..reduced.len().min(4)]);
                x
            }
        }
    }

    /// Interior chart point for unit-cube coordinates `u`, kept at least 1e-2
    /// from the inner end, 1e-3 (in distance) from a cone edge, and within 20
    /// of the inner end on an unbounded end.
    pub fn sample_point(&self, u: [f64; 4]) -> [f64; 4] {
        let lo = self.layout.radial_lo + 1e-2;
        let hi = match self.layout.upper {
            RadialEnd::Edge { .. } => self.edge_cutoff(1e-3).expect("edge layout"),
            RadialEnd::Asymptotic(_) => self.layout.radial_lo + 20.0,
            RadialEnd::Regular if self.layout.radial_hi.is_finite() => self.layout.radial_hi - 1e-2,
            RadialEnd::Regular => self.layout.radial_lo + 20.0,
        };
        let mut x = [lo + u[0] * (hi - lo), 0.0, 0.0, 0.0];
        for i in 1..4 {
            let r = &self.domain[i];
            x[i] = if r.periodic {
                r.lo + u[i] * (r.hi - r.lo)
            } else {
                let margin = 0.02 * (r.hi - r.lo);
                r.lo + margin + u[i] * (r.hi - r.lo - 2.0 * margin)
            };
        }
        x
    }

    /// `n` deterministic sample points from the Halton sequence in bases 2, 3, 5, 7.
    pub fn sample_points(&self, n: usize) -> Vec<[f64; 4]> {
        (1..=n).map(|k| self.sample_point([2, 3, 5, 7].map(|b| halton(k, b)))).collect()
    }

    pub fn check_domain(&self, x: &[f64; 4]) -> Result<(), MetricError> {
        let violation = |reason: String| MetricError::DomainViolation { metric: self.name.clone(), point: *x, reason };
        for (i, (c, r)) in x.iter().zip(&self.domain).enumerate() {
            if !c.is_finite() {
                return Err(violation(format!("coordinate {i} is not finite")));
            }
            if !r.periodic && !(*c > r.lo && *c < r.hi) {
                return Err(violation(format!("coordinate {i} = {c} outside ({}, {})", r.lo, r.hi)));
            }
        }
        if x[0] < self.layout.radial_lo + HARD_GUARD {
            return Err(violation(format!("radial coordinate {} inside the guard band", x[0])));
        }
        if let Some(cut) = self.edge_cutoff(HARD_GUARD) {
            if x[0] > cut {
                return Err(violation(format!("radial coordinate {} within {HARD_GUARD:e} of the cone edge", x[0])));
            }
        }
        Ok(())
    }
}

fn halton(mut k: usize, base: usize) -> f64 {
    let (mut f, mut r) = (1.0, 0.0);
    while k > 0 {
        f /= base as f64;
        r += f * (k % base) as f64;
        k /= base;
    }
    r
}

/// Pointwise curvature at one chart point.
#[derive(Debug, Clone)]
pub struct CurvatureData {
    pub point: [f64; 4],
    pub g: Mat4,
    pub g_inv: Mat4,
    /// `gamma[k][i][j] = Γᵏᵢⱼ`.
    pub gamma: [[[f64; 4]; 4]; 4],
    /// Lowered `R_{ijkl}`, with `R_{ijij} > 0` on a round sphere.
    pub riemann: Tensor4,
    pub ricci: Mat4,
    pub frame: Frame4,
    pub operator: CurvatureOperator,
    pub densities: InvariantDensities,
    /// Estimated absolute error on the Riemann entries (zero in analytic mode up to rounding).
    pub deriv_error: f64,
    /// Pair-symmetry and Bianchi residual of the Riemann tensor before symmetrization,
    /// relative to the size of the terms it is built from.
    pub symmetry_residual: f64,
}

/// Metric with its first and second coordinate derivatives: `dg[k][i][j] = ∂ₖ g_ij`.
#[derive(Debug, Clone, Copy)]
pub struct MetricDerivatives {
    pub g: Mat4,
    pub dg: [Mat4; 4],
    pub ddg: [[Mat4; 4]; 4],
    pub error_first: f64,
    pub error_second: f64,
}

pub fn metric_derivatives(m: &MetricField, x: &[f64; 4]) -> MetricDerivatives {
    match m.deriv_mode {
        DerivMode::Analytic => {
            let j = m.eval_jet(x);
            let mut out = MetricDerivatives {
                g: [[0.0; 4]; 4],
                dg: [[[0.0; 4]; 4]; 4],
                ddg: [[[[0.0; 4]; 4]; 4]; 4],
                error_first: 0.0,
                error_second: 0.0,
            };
            for i in 0..4 {
                for k in 0..4 {
                    let c = &j[i][k];
                    out.g[i][k] = 0.5 * (c.v + j[k][i].v);
                    for a in 0..4 {
                        out.dg[a][i][k] = c.d[a];
                        for b in 0..4 {
                            out.ddg[a][b][i][k] = c.dd[a][b];
                        }
                    }
                }
            }
            out
        }
        DerivMode::NumericFd { base_step } => fd::richardson_derivatives(&|y| m.eval(y), x, base_step * m.scale),
    }
}

/// Christoffel symbols, Riemann and Ricci tensors from a metric and its derivatives.
pub fn levi_civita(d: &MetricDerivatives, g_inv: &Mat4) -> ([[[f64; 4]; 4]; 4], Tensor4, Mat4) {
    // first kind: Γ_{l,ij} = ½(∂_i g_jl + ∂_j g_il − ∂_l g_ij)
    let mut first = [[[0.0; 4]; 4]; 4];
    for l in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                first[l][i][j] = 0.5 * (d.dg[i][j][l] + d.dg[j][i][l] - d.dg[l][i][j]);
            }
        }
    }
    let mut gamma = [[[0.0; 4]; 4]; 4];
    for k in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                gamma[k][i][j] = (0..4).map(|l| g_inv[k][l] * first[l][i][j]).sum();
            }
        }
    }
    // R_{iklm} = ½(∂k∂l g_im + ∂i∂m g_kl − ∂k∂m g_il − ∂i∂l g_km) + g_np(Γⁿ_kl Γᵖ_im − Γⁿ_km Γᵖ_il)
    // and g_np Γⁿ_ab Γᵖ_cd = Γ_{p,ab} Γᵖ_cd.
    let mut r = ZERO_TENSOR4;
    for i in 0..4 {
        for k in 0..4 {
            for l in 0..4 {
                for m in 0..4 {
                    let second =
                        0.5 * (d.ddg[k][l][i][m] + d.ddg[i][m][k][l] - d.ddg[k][m][i][l] - d.ddg[i][l][k][m]);
                    let mut quad = 0.0;
                    for p in 0..4 {
                        quad += first[p][k][l] * gamma[p][i][m] - first[p][k][m] * gamma[p][i][l];
                    }
                    r[i][k][l][m] = second + quad;
                }
            }
        }
    }
    let mut ricci = [[0.0; 4]; 4];
    for k in 0..4 {
        for m in 0..4 {
            let mut acc = 0.0;
            for i in 0..4 {
                for l in 0..4 {
                    acc += g_inv[i][l] * r[i][k][l][m];
                }
            }
            ricci[k][m] = acc;
        }
    }
    for k in 0..4 {
        for m in k + 1..4 {
            let s = 0.5 * (ricci[k][m] + ricci[m][k]);
            ricci[k][m] = s;
            ricci[m][k] = s;
        }
    }
    (gamma, r, ricci)
}

/// Average over the antisymmetries and the pair exchange, removing rounding-level asymmetry.
fn project_pair_symmetric(r: &Tensor4) -> Tensor4 {
    let mut out = ZERO_TENSOR4;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let a = r[i][j][k][l] - r[j][i][k][l] - r[i][j][l][k] + r[j][i][l][k];
                    let b = r[k][l][i][j] - r[l][k][i][j] - r[k][l][j][i] + r[l][k][j][i];
                    out[i][j][k][l] = (a + b) / 8.0;
                }
            }
        }
    }
    out
}

/// Full curvature data at `x`.
pub fn curvature_at(m: &MetricField, x: &[f64; 4]) -> Result<CurvatureData, MetricError> {
    m.check_domain(x)?;
    let mut derivs = metric_derivatives(m, x);
    if let DerivMode::NumericFd { base_step } = m.deriv_mode {
        derivs = fd::adapt_step(&|y| m.eval(y), x, base_step * m.scale, derivs);
    }
    let g = derivs.g;
    let g_inv = inverse4(&g).ok_or(TensorError::NonPositiveDefinite { ratio: 0.0 })?;
    let frame = orthonormal_frame(&g, m.orientation)?;
    let (gamma, riemann, ricci) = levi_civita(&derivs, &g_inv);

    // residuals are measured against the size of the terms that build R
    let gamma_scale = gamma.iter().flatten().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
    let ddg_scale = derivs.ddg.iter().flatten().map(max_abs4).fold(0.0, f64::max);
    let r_scale = max_abs_tensor(&riemann);
    let term_scale = r_scale.max(ddg_scale).max(gamma_scale * gamma_scale * max_abs4(&g));
    let residual = tensor_core::pair_symmetry_residual(&riemann).max(tensor_core::bianchi_residual(&riemann)) * r_scale;
    let symmetry_residual = residual / term_scale.max(f64::MIN_POSITIVE);
    if symmetry_residual > 1e-7 {
        return Err(MetricError::DerivativeNoise { point: *x, relative: symmetry_residual });
    }
    // R = ½∂²g + Γ_{p,kl}Γᵖ_im − …; an error δ in Γ_{p,kl} moves each product by |Γᵖ|·δ
    let deriv_error = 2.0 * derivs.error_second + 16.0 * gamma_scale * derivs.error_first;
    if let DerivMode::NumericFd { .. } = m.deriv_mode {
        let relative = deriv_error / term_scale.max(f64::MIN_POSITIVE);
        if relative > 1e-6 {
            return Err(MetricError::DerivativeNoise { point: *x, relative });
        }
    }

    let riemann = project_pair_symmetric(&riemann);
    let operator = curvature_operator(&riemann, &frame)?;
    let vol = crate::linalg::det4(&g).abs().sqrt();
    let densities = invariant_densities(&operator, &ricci, &g, &g_inv, vol);
    Ok(CurvatureData { point: *x, g, g_inv, gamma, riemann, ricci, frame, operator, densities, deriv_error, symmetry_residual })
}

/// Extrinsic data of the level set `x⁰ = radial_coord` at the given orbit point.
#[derive(Debug, Clone, Copy)]
pub struct HypersurfaceData {
    /// Second fundamental form in the boundary orthonormal frame, outward normal.
    pub second_fundamental_form: Mat3,
    /// `√det` of the induced 3-metric in chart coordinates 1..3.
    pub area_density: f64,
    pub rhat: Mat3,
    pub frame: [Vec4; 3],
    pub normal: Vec4,
}

impl HypersurfaceData {
    /// `2 det(II) + ⟨II, R̂⟩`.
    pub fn boundary_density(&self) -> f64 {
        let ii = &self.second_fundamental_form;
        let mut pairing = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                pairing += ii[a][b] * self.rhat[a][b];
            }
        }
        2.0 * crate::linalg::det3(ii) + pairing
    }
}

pub fn hypersurface_at(m: &MetricField, radial_coord: f64, angular_point: &[f64; 3]) -> Result<HypersurfaceData, MetricError> {
    let x = [radial_coord, angular_point[0], angular_point[1], angular_point[2]];
    let c = curvature_at(m, &x)?;
    let g = &c.g;
    let g00 = c.g_inv[0][0];
    let lapse = g00.sqrt();
    let mut normal = [0.0; 4];
    for (i, n) in normal.iter_mut().enumerate() {
        *n = c.g_inv[i][0] / lapse;
    }
    // tangent frame: Gram–Schmidt on ∂₁, ∂₂, ∂₃
    let mut legs = [[0.0; 4]; 3];
    for a in 0..3 {
        let mut v = [0.0; 4];
        v[a + 1] = 1.0;
        for _ in 0..2 {
            for b in 0..a {
                let p = crate::linalg::bilinear4(g, &legs[b], &v);
                for i in 0..4 {
                    v[i] -= p * legs[b][i];
                }
            }
        }
        let n = crate::linalg::bilinear4(g, &v, &v).sqrt();
        for vi in &mut v {
            *vi /= n;
        }
        legs[a] = v;
    }
    // II(∂α, ∂β) = −n_k Γᵏ_αβ with n_k = δ⁰_k / √g⁰⁰
    let mut ii_coord = [[0.0; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            ii_coord[a][b] = -c.gamma[0][a + 1][b + 1] / lapse;
        }
    }
    let mut ii = [[0.0; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            let mut acc = 0.0;
            for p in 0..3 {
                for q in 0..3 {
                    acc += legs[a][p + 1] * legs[b][q + 1] * ii_coord[p][q];
                }
            }
            ii[a][b] = acc;
        }
    }
    for a in 0..3 {
        for b in a + 1..3 {
            let s = 0.5 * (ii[a][b] + ii[b][a]);
            ii[a][b] = s;
            ii[b][a] = s;
        }
    }
    let induced = [
        [g[1][1], g[1][2], g[1][3]],
        [g[2][1], g[2][2], g[2][3]],
        [g[3][1], g[3][2], g[3][3]],
    ];
    let area_density = crate::linalg::det3(&induced).abs().sqrt();
    let bframe = BoundaryFrame { tangent: legs, normal };
    let rhat = boundary_rhat(&c.riemann, &bframe);
    Ok(HypersurfaceData { second_fundamental_form: ii, area_density, rhat, frame: legs, normal })
}
