//! Exact evaluation of the discrete side: edge-cone defects, Hitchin–Thorpe
//! inequalities with edges, orbifold signatures, and instanton curvature totals.
//!
//! Every formula is evaluated in rational arithmetic while its inputs are
//! rational; a float cone angle turns the results into [`Number::Approx`].

mod instantons;
mod number;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use instantons::{
    hyperbolic_ansatz_wplus_coefficient, instanton_table, instanton_table_up_to, instanton_total, Asymptotics,
    CurvatureTotal, Dynkin, Instanton, InstantonDescriptor, NamedInstanton, TableRow,
};
pub use number::{Number, ParseNumberError, Q};

use crate::quadrature::gk::neumaier;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TopologyError {
    #[error("E-type diagram {0} has no ALF partner")]
    NoAlfForEType(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Relative tolerance for comparisons once the cone angle is a float.
pub const FLOAT_COMPARISON_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn apply(self, x: Number) -> Number {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

/// Topological data of a pair `(M, Σ)` with cone angle `2πβ` along `Σ`.
///
/// For non-orientable `Σ`, `sigma_sq` is the Euler number of the normal bundle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeConeTopology {
    pub chi_m: i64,
    pub tau_m: i64,
    pub chi_sigma: i64,
    pub sigma_sq: i64,
    pub beta: Number,
    /// `Σ` totally real for an almost-complex structure inducing the orientation.
    #[serde(default)]
    pub totally_real: bool,
}

impl EdgeConeTopology {
    pub fn new(chi_m: i64, tau_m: i64, chi_sigma: i64, sigma_sq: i64, beta: Number) -> Self {
        EdgeConeTopology { chi_m, tau_m, chi_sigma, sigma_sq, beta, totally_real: false }
    }

    pub fn validate(&self) -> Result<(), TopologyError> {
        if self.beta.to_f64() > 0.0 && self.beta.to_f64().is_finite() {
            Ok(())
        } else {
            Err(TopologyError::InvalidInput(format!("beta must be positive, got {}", self.beta)))
        }
    }

    fn one_minus_beta(&self) -> Number {
        Number::int(1) - self.beta
    }

    fn one_minus_beta_sq(&self) -> Number {
        Number::int(1) - self.beta * self.beta
    }
}

/// `2(1−β)χ(Σ) ± (1−β²)[Σ]²`.
pub fn defect(t: &EdgeConeTopology, sign: Sign) -> Number {
    Number::int(2) * t.one_minus_beta() * t.chi_sigma.into() + sign.apply(t.one_minus_beta_sq() * t.sigma_sq.into())
}

/// `χ(M) − (1−β)χ(Σ)`, the value of `(1/8π²)∫(s²/24 + |W|² − |r̊|²/2) dμ`.
pub fn predicted_gauss_bonnet(t: &EdgeConeTopology) -> Number {
    Number::int(t.chi_m) - t.one_minus_beta() * t.chi_sigma.into()
}

/// `τ(M) − (1−β²)[Σ]²/3`, the value of `(1/12π²)∫(|W₊|² − |W₋|²) dμ`;
/// `τ(M) + (1−β²)χ(Σ)/3` when `Σ` is totally real.
pub fn predicted_signature(t: &EdgeConeTopology) -> Number {
    if t.totally_real {
        predicted_signature_totally_real(t)
    } else {
        Number::int(t.tau_m) - t.one_minus_beta_sq() * t.sigma_sq.into() * Number::ratio(1, 3)
    }
}

pub fn predicted_signature_totally_real(t: &EdgeConeTopology) -> Number {
    Number::int(t.tau_m) + t.one_minus_beta_sq() * t.chi_sigma.into() * Number::ratio(1, 3)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HTVerdict {
    pub lhs_plus: Number,
    pub rhs_plus: Number,
    pub lhs_minus: Number,
    pub rhs_minus: Number,
    pub holds_plus: bool,
    pub holds_minus: bool,
    pub equality_plus: bool,
    pub equality_minus: bool,
    pub exact: bool,
    pub note: Option<String>,
}

fn compare(lhs: Number, rhs: Number) -> (bool, bool) {
    match (lhs, rhs) {
        (Number::Exact(a), Number::Exact(b)) => (a >= b, a == b),
        _ => {
            let (a, b) = (lhs.to_f64(), rhs.to_f64());
            let tol = FLOAT_COMPARISON_TOL * a.abs().max(b.abs()).max(1.0);
            (a >= b - tol, (a - b).abs() <= tol)
        }
    }
}

/// `(2χ ± 3τ)(M) ≥ (1−β)[2χ(Σ) ± (1+β)[Σ]²]`, both signs.
pub fn hitchin_thorpe_check(t: &EdgeConeTopology) -> HTVerdict {
    let lhs = |s: Sign| Number::int(2 * t.chi_m) + s.apply(Number::int(3 * t.tau_m));
    let rhs = |s: Sign| {
        t.one_minus_beta()
            * (Number::int(2 * t.chi_sigma) + s.apply((Number::int(1) + t.beta) * t.sigma_sq.into()))
    };
    let (lhs_plus, rhs_plus, lhs_minus, rhs_minus) = (lhs(Sign::Plus), rhs(Sign::Plus), lhs(Sign::Minus), rhs(Sign::Minus));
    let (holds_plus, equality_plus) = compare(lhs_plus, rhs_plus);
    let (holds_minus, equality_minus) = compare(lhs_minus, rhs_minus);
    let exact = [lhs_plus, rhs_plus, lhs_minus, rhs_minus].iter().all(|n| n.is_exact());
    let note = (!exact).then(|| {
        format!("beta is not rational; comparisons use relative tolerance {FLOAT_COMPARISON_TOL:e}, so equality flags are approximate")
    });
    HTVerdict { lhs_plus, rhs_plus, lhs_minus, rhs_minus, holds_plus, holds_minus, equality_plus, equality_minus, exact, note }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LargeBetaVerdict {
    pub obstructed_for_large_beta: bool,
    pub reason: String,
}

/// Einstein edge-cone metrics of large cone angle are ruled out unless
/// `[Σ]² = 0` and `χ(Σ) ≥ 0`.
pub fn large_beta_obstruction(chi_sigma: i64, sigma_sq: i64) -> LargeBetaVerdict {
    let (obstructed_for_large_beta, reason) = if sigma_sq != 0 {
        (true, format!("self-intersection {sigma_sq} is non-zero; the β² terms force 0 ≥ ±[Σ]²"))
    } else if chi_sigma < 0 {
        (true, format!("χ(Σ) = {chi_sigma} is negative; the linear terms force 0 ≥ −χ(Σ)"))
    } else {
        (false, "[Σ]² = 0 and χ(Σ) ≥ 0; the large-β limits impose no condition".to_string())
    };
    LargeBetaVerdict { obstructed_for_large_beta, reason }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CscSum {
    pub p: u64,
    pub direct: f64,
    pub closed_form: Number,
    pub rel_error: f64,
}

/// `Σ_{k=1}^{p−1} csc²(kπ/p)` summed directly, against `(p² − 1)/3`.
pub fn csc_sum(p: u64) -> Result<CscSum, TopologyError> {
    if p < 2 {
        return Err(TopologyError::InvalidInput(format!("csc_sum needs p >= 2, got {p}")));
    }
    let pf = p as f64;
    // sin(kπ/p) = sin((p−k)π/p); the smaller argument is the more accurate one
    let direct = neumaier((1..p).map(|k| {
        let j = k.min(p - k) as f64;
        (j * PI / pf).sin().powi(-2)
    }));
    let p = p as i128;
    let closed_form = Number::Exact(Q::new(p * p - 1, 3));
    let c = closed_form.to_f64();
    Ok(CscSum { p: p as u64, direct, closed_form, rel_error: ((direct - c) / c).abs() })
}

fn check_angle(a: f64) -> Result<(), TopologyError> {
    if a > 0.0 && a < 2.0 * PI {
        Ok(())
    } else {
        Err(TopologyError::InvalidInput(format!("rotation angle {a} not in (0, 2π)")))
    }
}

fn cot_half(a: f64) -> f64 {
    if a == PI {
        0.0
    } else {
        1.0 / (0.5 * a).tan()
    }
}

fn csc_sq_half(a: f64) -> f64 {
    if a == PI {
        1.0
    } else {
        (0.5 * a).sin().powi(-2)
    }
}

/// `τ(g, X) = −Σ cot(αⱼ/2)cot(βⱼ/2) + Σ csc²(θₖ/2)[Σ̂ₖ]²` for an isometry with
/// isolated fixed points rotating by `(αⱼ, βⱼ)` and fixed surfaces with normal
/// rotation `θₖ`.
pub fn g_signature_contribution(isolated: &[(f64, f64)], surfaces: &[(f64, f64)]) -> Result<f64, TopologyError> {
    for &(a, b) in isolated {
        check_angle(a)?;
        check_angle(b)?;
    }
    for &(t, _) in surfaces {
        check_angle(t)?;
    }
    let points = isolated.iter().map(|&(a, b)| -cot_half(a) * cot_half(b));
    let surf = surfaces.iter().map(|&(t, s)| csc_sq_half(t) * s);
    Ok(neumaier(points.chain(surf)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbifoldSignature {
    pub p: u64,
    pub tau_x: i64,
    pub sigma_hat_sq: Number,
    /// `[Σ]² = p[Σ̂]²`.
    pub sigma_sq: Number,
    pub tau_m: Number,
    /// `τ(M) − (1 − p⁻²)[Σ]²/3`.
    pub lhs: Number,
    /// `τ(X)/p`.
    pub rhs: Number,
    pub warning: Option<String>,
}

/// Signature of `M = X/ℤ_p` when `ℤ_p` fixes only the surface `Σ̂`:
/// `τ(M) = (1/p)[τ(X) + ((p² − 1)/3)[Σ̂]²]`.
pub fn orbifold_signature(tau_x: i64, sigma_hat_sq: Number, p: u64) -> Result<OrbifoldSignature, TopologyError> {
    if p == 0 {
        return Err(TopologyError::InvalidInput("group order p must be at least 1".into()));
    }
    let pn = Number::int(p as i64);
    let inv_p = Number::ratio(1, p as i64);
    let csc = Number::Exact(Q::new((p as i128).pow(2) - 1, 3));
    let tau_m = inv_p * (Number::int(tau_x) + csc * sigma_hat_sq);
    let sigma_sq = pn * sigma_hat_sq;
    let lhs = tau_m - (Number::int(1) - inv_p * inv_p) * sigma_sq * Number::ratio(1, 3);
    let rhs = inv_p * Number::int(tau_x);
    let integral = match tau_m {
        Number::Exact(q) => q.is_integer(),
        Number::Approx(x) => (x - x.round()).abs() <= FLOAT_COMPARISON_TOL * x.abs().max(1.0),
    };
    let warning = (!integral).then(|| format!("NonIntegralSignature: τ(M) = {tau_m} is not an integer; the input data are inconsistent"));
    Ok(OrbifoldSignature { p, tau_x, sigma_hat_sq, sigma_sq, tau_m, lhs, rhs, warning })
}
