//! Rotationally symmetric surface metrics interpolating a flat disc and a cone.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::CatalogError;
use crate::metric_engine::{Jet, Scalar};
use crate::quadrature::{gk, QuadratureError};

/// `∫₀¹ s³(1 − s)³ ds`.
const BUMP_MASS: f64 = 1.0 / 140.0;

/// Profile `f(t)` of the Kähler form `i f(|ζ|²) dζ∧dζ̄` on the ζ-plane.
///
/// `f = 1/β` for `t ≤ 1/2` and `f = t^{β−1}` for `t ≥ 1`. On `[1/2, 1]` the two
/// regimes are joined by the quintic smoothstep `S(s) = 6s⁵ − 15s⁴ + 10s³`,
/// `s = 2t − 1`, plus a multiple `c·s³(1 − s)³` chosen so that `∫₀¹ f = 1/β`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeProfile {
    pub beta: f64,
    pub bump: f64,
}

impl ConeProfile {
    fn blend<S: Scalar>(&self, t: S) -> S {
        let b = self.beta;
        let s = t * 2.0 - 1.0;
        let s3 = s * s * s;
        let step = s3 * (s * (s * 6.0 - 15.0) + 10.0);
        let one = S::cst(1.0);
        (one - step) * (1.0 / b) + step * t.powf(b - 1.0) + s3 * (one - s).powi(3) * self.bump
    }

    /// `f(t)` for any scalar type, so derivatives come from [`Jet`].
    pub fn f_generic<S: Scalar>(&self, t: S) -> S {
        let tv = t.value();
        if tv <= 0.5 {
            S::cst(1.0 / self.beta)
        } else if tv >= 1.0 {
            t.powf(self.beta - 1.0)
        } else {
            self.blend(t)
        }
    }

    pub fn f(&self, t: f64) -> f64 {
        self.f_generic(t)
    }

    /// `(f, f′, f″)` at `t`.
    pub fn f_derivs(&self, t: f64) -> (f64, f64, f64) {
        let j = self.f_generic(Jet::variable(t, 0));
        (j.v, j.d[0], j.dd[0][0])
    }

    /// `∫₀ᵗ f`.
    pub fn integral(&self, t: f64) -> f64 {
        let b = self.beta;
        if t <= 0.5 {
            return t / b;
        }
        let head = 0.5 / b;
        let mid_end = t.min(1.0);
        let mid = gk::integrate(&|x| Ok::<_, ()>(self.blend(x)), &[0.5, mid_end], 1e-14, 1e-16, 100_000, false)
            .map(|r| r.value)
            .unwrap_or(f64::NAN);
        let tail = if t > 1.0 { (t.powf(b) - 1.0) / b } else { 0.0 };
        head + mid + tail
    }

    /// `F′(t) = (1/t)∫₀ᵗ f`.
    pub fn f_prime_potential(&self, t: f64) -> f64 {
        if t <= 0.5 {
            1.0 / self.beta
        } else {
            self.integral(t) / t
        }
    }

    /// Potential `F` normalized by `F(t) = t^β/β²` for `t ≥ 1`.
    pub fn potential(&self, t: f64) -> f64 {
        let b = self.beta;
        if t >= 1.0 {
            return t.powf(b) / (b * b);
        }
        let f1 = 1.0 / (b * b);
        let lo = t.max(0.5);
        let mid = gk::integrate(&|x| Ok::<_, ()>(self.f_prime_potential(x)), &[lo, 1.0], 1e-13, 1e-16, 100_000, false)
            .map(|r| r.value)
            .unwrap_or(f64::NAN);
        let head = if t < 0.5 { (0.5 - t) / b } else { 0.0 };
        f1 - mid - head
    }
}

/// The blended profile for cone angle `2πβ`.
pub fn cone_profile(beta: f64) -> Result<ConeProfile, CatalogError> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(CatalogError::UnsupportedParameters(format!("cone profile needs beta > 0, got {beta}")));
    }
    let plain = ConeProfile { beta, bump: 0.0 };
    let j = gk::integrate(&|x| Ok::<_, ()>(plain.blend(x)), &[0.5, 1.0], 1e-15, 1e-17, 100_000, false)
        .map_err(|_| CatalogError::UnsupportedParameters("profile quadrature failed".into()))?
        .value;
    // the bump lives on t ∈ [1/2, 1], where dt = ds/2
    let bump = (0.5 / beta - j) / (0.5 * BUMP_MASS);
    let p = ConeProfile { beta, bump };
    let grid = (0..=2000).map(|i| 0.5 + 0.5 * i as f64 / 2000.0);
    if grid.clone().any(|t| !(p.f(t) > 0.0)) {
        return Err(CatalogError::UnsupportedParameters(format!("blended profile is not positive for beta = {beta}")));
    }
    Ok(p)
}

/// Gaussian curvature of `2f(r²)|dζ|²` at radius `r`, with the area element `2f(r²)·r`.
fn curvature_and_area(p: &ConeProfile, r: f64) -> (f64, f64) {
    let t = r * r;
    let (f, f1, f2) = p.f_derivs(t);
    // u = ½ ln 2f(r²); Δu = 2f′/f + 2t(f″/f − (f′/f)²)
    let lap = 2.0 * f1 / f + 2.0 * t * (f2 / f - (f1 / f).powi(2));
    let k = -lap / (2.0 * f);
    (k, 2.0 * f * r)
}

/// `∫K dA` over the plane, as `2π∫₀¹ K(r)·2f(r²)·r dr` (the metric is flat for `r ≥ 1`).
pub fn smoothed_cone_total_curvature(beta: f64, tol: f64) -> Result<(f64, f64), CatalogError> {
    let p = cone_profile(beta)?;
    let g = |r: f64| -> Result<f64, QuadratureError> {
        let (k, da) = curvature_and_area(&p, r);
        Ok(2.0 * PI * k * da)
    };
    let res = gk::integrate(&g, &[0.0, 0.5f64.sqrt(), 1.0], tol, tol * 1e-3, 1_000_000, false)?;
    if !res.converged {
        return Err(CatalogError::Quadrature(QuadratureError::InvalidSpec(format!(
            "smoothed cone curvature did not reach {tol:e}"
        ))));
    }
    Ok((res.value, res.abs_error))
}
