//! Closed-form metric families with their charts, symmetry reductions and exact targets.
//!
//! Coframe calibration: the Euler-angle forms satisfy `∫σ₁∧σ₂∧σ₃ = 16π²` over
//! `ψ ∈ [0, 4π)`, and the unit round 3-sphere is `¼Σσᵢ²`. Published component
//! functions written in a unit-sphere-orthonormal coframe `σ̂` are therefore
//! entered with `σ̂ = σ/2`. This constant is fixed by smoothness: with it the
//! nut of Taub-NUT, the bolt of Eguchi–Hanson (`ψ`-period 2π) and the centre
//! of the hyperbolic ansatz at `β = 1` are all regular. The circle-bundle
//! charts use a fibre coordinate `τ = ψ/2` of period 2π.

mod cone;
pub mod formulas;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cone::{cone_profile, smoothed_cone_total_curvature, ConeProfile};
use formulas::*;

use crate::metric_engine::{CoordRange, DecayClass, Layout, MetricField, RadialEnd, Symmetry};
use crate::quadrature::QuadratureError;

/// Orbit coordinates at which cohomogeneity-one integrands are evaluated.
pub const SAMPLE_ANGLES: [f64; 3] = [1.0, 0.3, 0.7];

/// Chart orientations for which the Gibbons–Hawking-type members have `W₋ = 0`.
const EULER_ORIENTATION: i8 = -1;
const BUNDLE_ORIENTATION: i8 = -1;

/// Named constants fixing the coframe and chart normalizations described above.
pub fn calibration_constants() -> Vec<(&'static str, f64)> {
    vec![
        ("coframe_volume", 16.0 * PI * PI),
        ("unit_sphere_coframe_scale", 0.5),
        ("fibre_coordinate_scale", 0.5),
        ("sample_orbit_coordinate_1", SAMPLE_ANGLES[0]),
        ("sample_orbit_coordinate_2", SAMPLE_ANGLES[1]),
        ("sample_orbit_coordinate_3", SAMPLE_ANGLES[2]),
    ]
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    EdgeS4,
    LebrunGibbonsHawking,
    PedersenAbreu,
    EguchiHanson,
    TaubNut,
    MultiTaubNut,
    FubiniStudy,
    /// Flat ℝ⁴ in polar form; anchors boundary-term conventions.
    Flat,
    #[serde(rename = "smoothed_cone_2d")]
    SmoothedCone2d,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::EdgeS4 => "edge_s4",
            FamilyKind::LebrunGibbonsHawking => "lebrun_gibbons_hawking",
            FamilyKind::PedersenAbreu => "pedersen_abreu",
            FamilyKind::EguchiHanson => "eguchi_hanson",
            FamilyKind::TaubNut => "taub_nut",
            FamilyKind::MultiTaubNut => "multi_taub_nut",
            FamilyKind::FubiniStudy => "fubini_study",
            FamilyKind::Flat => "flat",
            FamilyKind::SmoothedCone2d => "smoothed_cone_2d",
        }
    }
}

/// Period of the Hopf fibre coordinate `ψ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PsiPeriod {
    #[default]
    TwoPi,
    FourPi,
}

impl PsiPeriod {
    pub fn value(self) -> f64 {
        match self {
            PsiPeriod::TwoPi => 2.0 * PI,
            PsiPeriod::FourPi => 4.0 * PI,
        }
    }
}

/// Which metric in a conformal class is returned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representative {
    /// The family's named metric: Einstein for pedersen_abreu, the edge-cone
    /// rescaling `β sech²я g₀` for the hyperbolic ansatz.
    #[default]
    Standard,
    /// The hyperbolic-ansatz metric `g₀` itself.
    Background,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDescriptor {
    pub family: FamilyKind,
    #[serde(default)]
    pub beta: Option<f64>,
    /// Poincaré-ball points for the hyperbolic ansatz, Euclidean points for multi-Taub-NUT.
    #[serde(default)]
    pub centers: Vec<[f64; 3]>,
    #[serde(default)]
    pub psi_period: PsiPeriod,
    #[serde(default)]
    pub representative: Representative,
}

impl FamilyDescriptor {
    pub fn new(family: FamilyKind) -> Self {
        FamilyDescriptor {
            family,
            beta: None,
            centers: Vec::new(),
            psi_period: PsiPeriod::default(),
            representative: Representative::default(),
        }
    }
    pub fn edge_s4(beta: f64) -> Self {
        FamilyDescriptor { beta: Some(beta), ..Self::new(FamilyKind::EdgeS4) }
    }
    pub fn pedersen_abreu(beta: f64) -> Self {
        FamilyDescriptor { beta: Some(beta), ..Self::new(FamilyKind::PedersenAbreu) }
    }
    pub fn lebrun_gibbons_hawking(beta: f64, centers: Vec<[f64; 3]>) -> Self {
        FamilyDescriptor { beta: Some(beta), centers, ..Self::new(FamilyKind::LebrunGibbonsHawking) }
    }
    pub fn eguchi_hanson(psi_period: PsiPeriod) -> Self {
        FamilyDescriptor { psi_period, ..Self::new(FamilyKind::EguchiHanson) }
    }
    pub fn taub_nut() -> Self {
        Self::new(FamilyKind::TaubNut)
    }
    pub fn multi_taub_nut(centers: Vec<[f64; 3]>) -> Self {
        FamilyDescriptor { centers, ..Self::new(FamilyKind::MultiTaubNut) }
    }
    pub fn fubini_study() -> Self {
        Self::new(FamilyKind::FubiniStudy)
    }
    pub fn flat() -> Self {
        Self::new(FamilyKind::Flat)
    }
    pub fn with_representative(mut self, r: Representative) -> Self {
        self.representative = r;
        self
    }

    fn require_beta(&self) -> Result<f64, CatalogError> {
        match self.beta {
            Some(b) if b > 0.0 && b.is_finite() => Ok(b),
            Some(b) => Err(CatalogError::UnsupportedParameters(format!("beta must be positive, got {b}"))),
            None => Err(CatalogError::UnsupportedParameters(format!("{} needs beta", self.family.name()))),
        }
    }

    /// Check the descriptor invariants without building anything.
    pub fn validate(&self) -> Result<(), CatalogError> {
        match self.family {
            FamilyKind::EdgeS4 | FamilyKind::SmoothedCone2d => self.require_beta().map(|_| ()),
            FamilyKind::PedersenAbreu => {
                let b = self.require_beta()?;
                if b >= 2.0 {
                    return Err(CatalogError::UnsupportedParameters(format!(
                        "pedersen_abreu needs 0 < beta < 2, got {b}"
                    )));
                }
                Ok(())
            }
            FamilyKind::LebrunGibbonsHawking => {
                self.require_beta()?;
                hyperbolic_axis(&self.centers).map(|_| ())
            }
            FamilyKind::MultiTaubNut => euclidean_axis(&self.centers).map(|_| ()),
            _ => Ok(()),
        }
    }

    /// Number of centers, counting the single nut of Taub-NUT.
    pub fn center_count(&self) -> usize {
        match self.family {
            FamilyKind::TaubNut => 1,
            _ => self.centers.len(),
        }
    }
}

fn unsupported(msg: impl Into<String>) -> CatalogError {
    CatalogError::UnsupportedParameters(msg.into())
}

fn sub3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm3(a: &[f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Signed coordinates of collinear points along their common line, relative to
/// the midpoint of the extreme points.
fn euclidean_axis(centers: &[[f64; 3]]) -> Result<Vec<f64>, CatalogError> {
    if centers.is_empty() {
        return Err(unsupported("multi_taub_nut needs at least one center"));
    }
    for (i, a) in centers.iter().enumerate() {
        if a.iter().any(|v| !v.is_finite()) {
            return Err(unsupported("center coordinates must be finite"));
        }
        for b in &centers[i + 1..] {
            if norm3(&sub3(a, b)) < 1e-9 {
                return Err(unsupported("centers must be pairwise distinct"));
            }
        }
    }
    if centers.len() == 1 {
        return Ok(vec![0.0]);
    }
    let dir = sub3(&centers[1], &centers[0]);
    let len = norm3(&dir);
    let u = [dir[0] / len, dir[1] / len, dir[2] / len];
    let mut along = Vec::with_capacity(centers.len());
    for c in centers {
        let d = sub3(c, &centers[0]);
        let off = norm3(&cross3(&d, &u));
        if off > 1e-9 * len.max(norm3(&d)) {
            return Err(unsupported("non-collinear centers are not supported"));
        }
        along.push(dot3(&d, &u));
    }
    let lo = along.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = along.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mid = 0.5 * (lo + hi);
    Ok(along.into_iter().map(|z| z - mid).collect())
}

/// Signed hyperbolic distances from the base point (ball origin) along a common axis.
fn hyperbolic_axis(centers: &[[f64; 3]]) -> Result<Vec<f64>, CatalogError> {
    if centers.is_empty() {
        return Err(unsupported("lebrun_gibbons_hawking needs at least one center"));
    }
    let mut axis: Option<[f64; 3]> = None;
    let mut out = Vec::with_capacity(centers.len());
    for (i, c) in centers.iter().enumerate() {
        let r = norm3(c);
        if !(r < 1.0) || !r.is_finite() {
            return Err(unsupported("hyperbolic centers must lie inside the unit ball"));
        }
        for b in &centers[i + 1..] {
            if norm3(&sub3(c, b)) < 1e-9 {
                return Err(unsupported("centers must be pairwise distinct"));
            }
        }
        if r < 1e-12 {
            out.push(0.0);
            continue;
        }
        let u = [c[0] / r, c[1] / r, c[2] / r];
        let sign = match axis {
            None => {
                axis = Some(u);
                1.0
            }
            Some(a) => {
                let d = dot3(&a, &u);
                if (d.abs() - 1.0).abs() > 1e-9 {
                    return Err(unsupported("centers must lie on one line through the base point"));
                }
                d.signum()
            }
        };
        out.push(sign * 2.0 * r.atanh());
    }
    Ok(out)
}

fn euler_domain(lo: f64, hi: f64, psi_period: f64) -> [CoordRange; 4] {
    [
        CoordRange::open(lo, hi),
        CoordRange::open(0.0, PI),
        CoordRange::periodic(2.0 * PI),
        CoordRange::periodic(psi_period),
    ]
}

fn euler_symmetry(psi_period: f64) -> Symmetry {
    Symmetry::CohomogeneityOne {
        sample: SAMPLE_ANGLES,
        orbit_factor: 2.0 * 2.0 * PI * psi_period / SAMPLE_ANGLES[0].sin(),
    }
}

fn layout(lo: f64, hi: f64, lower: RadialEnd, upper: RadialEnd) -> Layout {
    Layout { radial_lo: lo, radial_hi: hi, lower, upper, breakpoints: vec![], polar: None }
}

/// Build the chart metric for a descriptor.
pub fn make_metric(d: &FamilyDescriptor) -> Result<MetricField, CatalogError> {
    d.validate()?;
    let inf = f64::INFINITY;
    let m = match d.family {
        FamilyKind::EdgeS4 => {
            let beta = d.require_beta()?;
            let domain = [
                CoordRange::open(0.0, inf),
                CoordRange::open(0.0, PI),
                CoordRange::periodic(2.0 * PI),
                CoordRange::periodic(2.0 * PI),
            ];
            let sym = Symmetry::CohomogeneityOne {
                sample: SAMPLE_ANGLES,
                orbit_factor: 8.0 * PI * PI / SAMPLE_ANGLES[0].sin(),
            };
            let lay = layout(0.0, inf, RadialEnd::Regular, RadialEnd::Edge { beta, rho_scale: 2.0 });
            MetricField::new("edge_s4", EdgeS4 { beta }, domain, sym, lay)
        }
        FamilyKind::PedersenAbreu => {
            let beta = d.require_beta()?;
            let einstein = d.representative == Representative::Standard;
            let lay = layout(0.0, inf, RadialEnd::Regular, RadialEnd::Edge { beta, rho_scale: 2.0 / beta });
            MetricField::new(
                "pedersen_abreu",
                PedersenAbreu { beta, einstein },
                euler_domain(0.0, inf, 4.0 * PI),
                euler_symmetry(4.0 * PI),
                lay,
            )
            .with_orientation(EULER_ORIENTATION)
        }
        FamilyKind::LebrunGibbonsHawking => {
            let beta = d.require_beta()?;
            let centers = hyperbolic_axis(&d.centers)?;
            let edge = d.representative == Representative::Standard;
            let domain = [
                CoordRange::open(0.0, inf),
                CoordRange::open(0.0, PI),
                CoordRange::periodic(2.0 * PI),
                CoordRange::periodic(2.0 * PI),
            ];
            let mut lay = layout(0.0, inf, RadialEnd::Regular, RadialEnd::Edge { beta, rho_scale: 2.0 });
            let sym = if centers.iter().all(|c| *c == 0.0) {
                Symmetry::CohomogeneityOne {
                    sample: SAMPLE_ANGLES,
                    orbit_factor: 8.0 * PI * PI / SAMPLE_ANGLES[0].sin(),
                }
            } else {
                lay.polar = Some((0.0, PI));
                lay.breakpoints = breakpoints(&centers);
                Symmetry::Axisymmetric { sample: [SAMPLE_ANGLES[1], SAMPLE_ANGLES[2]], fiber_factor: 4.0 * PI * PI }
            };
            MetricField::new("lebrun_gibbons_hawking", HyperbolicAnsatz { beta, centers, edge }, domain, sym, lay)
                .with_orientation(BUNDLE_ORIENTATION)
        }
        FamilyKind::EguchiHanson => {
            let p = d.psi_period.value();
            let lay = layout(1.0, inf, RadialEnd::Regular, RadialEnd::Asymptotic(DecayClass::Ale));
            MetricField::new("eguchi_hanson", EguchiHanson, euler_domain(1.0, inf, p), euler_symmetry(p), lay)
                .with_orientation(-EULER_ORIENTATION)
        }
        FamilyKind::TaubNut => taub_nut_field(),
        FamilyKind::MultiTaubNut => {
            let centers = euclidean_axis(&d.centers)?;
            if centers.len() == 1 {
                let mut m = taub_nut_field();
                m.name = "multi_taub_nut".into();
                m
            } else {
                let domain = [
                    CoordRange::open(0.0, inf),
                    CoordRange::open(0.0, PI),
                    CoordRange::periodic(2.0 * PI),
                    CoordRange::periodic(2.0 * PI),
                ];
                let mut lay = layout(0.0, inf, RadialEnd::Regular, RadialEnd::Asymptotic(DecayClass::Alf));
                lay.polar = Some((0.0, PI));
                lay.breakpoints = breakpoints(&centers);
                let sym =
                    Symmetry::Axisymmetric { sample: [SAMPLE_ANGLES[1], SAMPLE_ANGLES[2]], fiber_factor: 4.0 * PI * PI };
                MetricField::new("multi_taub_nut", MultiTaubNut { centers }, domain, sym, lay)
                    .with_orientation(BUNDLE_ORIENTATION)
            }
        }
        FamilyKind::FubiniStudy => {
            let lay = layout(0.0, PI / 2.0, RadialEnd::Regular, RadialEnd::Regular);
            MetricField::new(
                "fubini_study",
                FubiniStudy,
                euler_domain(0.0, PI / 2.0, 4.0 * PI),
                euler_symmetry(4.0 * PI),
                lay,
            )
            .with_orientation(EULER_ORIENTATION)
        }
        FamilyKind::Flat => {
            let lay = layout(0.0, inf, RadialEnd::Regular, RadialEnd::Regular);
            MetricField::new("flat", FlatPolar, euler_domain(0.0, inf, 4.0 * PI), euler_symmetry(4.0 * PI), lay)
        }
        FamilyKind::SmoothedCone2d => {
            return Err(unsupported("smoothed_cone_2d is a surface; use smoothed_cone_total_curvature"))
        }
    };
    Ok(m.with_region_euler(region_euler_characteristic(d)))
}

fn taub_nut_field() -> MetricField {
    let inf = f64::INFINITY;
    let lay = layout(0.0, inf, RadialEnd::Regular, RadialEnd::Asymptotic(DecayClass::Alf));
    MetricField::new("taub_nut", TaubNut, euler_domain(0.0, inf, 4.0 * PI), euler_symmetry(4.0 * PI), lay)
        .with_orientation(EULER_ORIENTATION)
}

fn breakpoints(centers: &[f64]) -> Vec<f64> {
    let mut b: Vec<f64> = centers.iter().map(|c| c.abs()).filter(|c| *c > 0.0).collect();
    b.sort_by(f64::total_cmp);
    b.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    b
}

/// Integral selected for quadrature and prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    /// `(1/8π²)∫(s²/24 + |W|² − |r̊|²/2) dμ`.
    GaussBonnet,
    /// `(1/12π²)∫(|W₊|² − |W₋|²) dμ`.
    Signature,
    /// `∫|W₊|² dμ`.
    WplusTotal,
    /// `∫|W₋|² dμ`.
    WminusTotal,
    /// `∫|ℛ|² dμ`.
    RiemTotal,
    Volume,
}

/// Closed-form target for a family and invariant, when one is known.
pub fn exact_prediction(d: &FamilyDescriptor, which: Invariant) -> Option<f64> {
    let pi2 = PI * PI;
    let beta = d.beta.unwrap_or(1.0);
    use Invariant::*;
    match (d.family, which) {
        (FamilyKind::EdgeS4, GaussBonnet) => Some(2.0 * beta),
        (FamilyKind::EdgeS4, Signature | WplusTotal | WminusTotal) => Some(0.0),
        (FamilyKind::EdgeS4, RiemTotal) => Some(16.0 * pi2 * beta),
        (FamilyKind::EdgeS4, Volume) => Some(8.0 * pi2 * beta / 3.0),
        (FamilyKind::PedersenAbreu | FamilyKind::LebrunGibbonsHawking, Signature | WplusTotal | WminusTotal) => {
            let n = if d.family == FamilyKind::PedersenAbreu { 1.0 } else { d.centers.len() as f64 };
            let sig = n * (2.0 + beta * beta) / 3.0;
            Some(match which {
                Signature => sig,
                WplusTotal => 12.0 * pi2 * sig,
                _ => 0.0,
            })
        }
        (FamilyKind::PedersenAbreu, GaussBonnet) if d.representative == Representative::Standard => {
            Some(1.0 + 2.0 * beta)
        }
        (FamilyKind::PedersenAbreu, RiemTotal) if d.representative == Representative::Standard => {
            Some(8.0 * pi2 * (1.0 + 2.0 * beta))
        }
        (FamilyKind::LebrunGibbonsHawking, GaussBonnet) if d.representative == Representative::Standard => {
            Some(d.centers.len() as f64 + 2.0 * beta)
        }
        (FamilyKind::EguchiHanson, _) => {
            let cover = if d.psi_period == PsiPeriod::FourPi { 2.0 } else { 1.0 };
            match which {
                RiemTotal | WplusTotal => Some(12.0 * pi2 * cover),
                WminusTotal => Some(0.0),
                Signature => Some(cover),
                GaussBonnet => Some(1.5 * cover),
                Volume => None,
            }
        }
        (FamilyKind::TaubNut | FamilyKind::MultiTaubNut, _) => {
            let n = d.center_count() as f64;
            match which {
                RiemTotal | WplusTotal => Some(8.0 * pi2 * n),
                WminusTotal => Some(0.0),
                Signature => Some(2.0 * n / 3.0),
                GaussBonnet => Some(n),
                Volume => None,
            }
        }
        (FamilyKind::FubiniStudy, _) => match which {
            GaussBonnet => Some(3.0),
            Signature => Some(1.0),
            WplusTotal => Some(12.0 * pi2),
            WminusTotal => Some(0.0),
            RiemTotal => Some(24.0 * pi2),
            Volume => Some(pi2 / 2.0),
        },
        (FamilyKind::Flat, Volume) => None,
        (FamilyKind::Flat, _) => Some(0.0),
        _ => None,
    }
}

/// Euler characteristic of the region inside a radial level set, for
/// Gauss–Bonnet with boundary. Edge-cone corrections are included.
pub fn region_euler_characteristic(d: &FamilyDescriptor) -> Option<f64> {
    match d.family {
        FamilyKind::Flat | FamilyKind::TaubNut => Some(1.0),
        FamilyKind::MultiTaubNut => Some(d.centers.len() as f64),
        // the ψ-period 4π chart is a cone of angle 4π along the bolt
        FamilyKind::EguchiHanson => Some(match d.psi_period {
            PsiPeriod::TwoPi => 2.0,
            PsiPeriod::FourPi => 4.0,
        }),
        // the complement of a tubular neighbourhood of the edge is B³ × S¹
        FamilyKind::EdgeS4 => Some(0.0),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pedersen_abreu_rejects_large_beta() {
        let err = make_metric(&FamilyDescriptor::pedersen_abreu(2.0)).unwrap_err();
        assert!(matches!(err, CatalogError::UnsupportedParameters(_)));
    }

    #[test]
    fn non_collinear_centers_are_rejected() {
        let d = FamilyDescriptor::multi_taub_nut(vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]);
        assert!(make_metric(&d).is_err());
        let d = FamilyDescriptor::multi_taub_nut(vec![[0.0, 0.0, 1.0], [0.0, 0.0, 1.0]]);
        assert!(make_metric(&d).is_err());
    }

    #[test]
    fn collinear_centers_are_projected_to_the_axis() {
        let z = euclidean_axis(&[[1.0, 1.0, 1.0], [3.0, 3.0, 3.0], [2.0, 2.0, 2.0]]).unwrap();
        let s = 3f64.sqrt();
        assert!((z[0] + s).abs() < 1e-12 && (z[1] - s).abs() < 1e-12 && z[2].abs() < 1e-12);
        let a = hyperbolic_axis(&[[0.0, 0.0, 0.5], [0.0, 0.0, -0.5]]).unwrap();
        assert!((a[0] - 2.0 * 0.5f64.atanh()).abs() < 1e-14 && (a[0] + a[1]).abs() < 1e-14);
        assert!(hyperbolic_axis(&[[0.0, 0.5, 0.0], [0.5, 0.0, 0.0]]).is_err());
    }

    #[test]
    fn predictions_match_closed_forms() {
        let pi2 = PI * PI;
        let pa = FamilyDescriptor::pedersen_abreu(0.5);
        assert!((exact_prediction(&pa, Invariant::WplusTotal).unwrap() - 9.0 * pi2).abs() < 1e-12);
        assert_eq!(exact_prediction(&FamilyDescriptor::taub_nut(), Invariant::RiemTotal), Some(8.0 * pi2));
        let mtn = FamilyDescriptor::multi_taub_nut(vec![[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]);
        assert_eq!(exact_prediction(&mtn, Invariant::RiemTotal), Some(16.0 * pi2));
        assert_eq!(exact_prediction(&FamilyDescriptor::edge_s4(0.3), Invariant::GaussBonnet), Some(0.6));
    }
}
