//! Component functions of the catalog metrics.
//!
//! Euler-angle charts use `x = (r, θ, φ, ψ)` with
//! `σ₁² + σ₂² = dθ² + sin²θ dφ²` and `σ₃ = dψ + cosθ dφ`. With this realization
//! the round unit 3-sphere is `¼(σ₁² + σ₂² + σ₃²)`, so a coframe that is
//! orthonormal for the unit sphere is `σ/2`.

use crate::metric_engine::{MetricFormula, Scalar};

/// `a dr² + b(σ₁² + σ₂²) + c σ₃²` in Euler-angle coordinates.
fn biaxial<S: Scalar>(x: &[S; 4], a: S, b: S, c: S) -> [[S; 4]; 4] {
    let z = S::cst(0.0);
    let (s, co) = (x[1].sin(), x[1].cos());
    [
        [a, z, z, z],
        [z, b, z, z],
        [z, z, b * s * s + c * co * co, c * co],
        [z, z, c * co, c],
    ]
}

/// `Ω[V(h_rr dr² + h_tt dϑ² + h_pp dφ²) + V⁻¹(dτ + A dφ)²]` in the chart `(r, ϑ, φ, τ)`.
#[allow(clippy::too_many_arguments)]
fn circle_bundle<S: Scalar>(omega: S, v: S, h_rr: S, h_tt: S, h_pp: S, a: S) -> [[S; 4]; 4] {
    let z = S::cst(0.0);
    let vi = v.recip();
    [
        [omega * v * h_rr, z, z, z],
        [z, omega * v * h_tt, z, z],
        [z, z, omega * (v * h_pp + a * a * vi), omega * a * vi],
        [z, z, omega * a * vi, omega * vi],
    ]
}

/// Conformally flat edge metric on S⁴, chart `(я, ϑ, φ, θ)`.
#[derive(Debug, Clone, Copy)]
pub struct EdgeS4 {
    pub beta: f64,
}

impl MetricFormula for EdgeS4 {
    fn eval<S: Scalar>(&self, x: &[S; 4]) -> [[S; 4]; 4] {
        let z = S::cst(0.0);
        let w = x[0].sech().powi(2);
        let sh2 = x[0].sinh().powi(2);
        let st2 = x[1].sin().powi(2);
        [
            [w, z, z, z],
            [z, w * sh2, z, z],
            [z, z, w * sh2 * st2, z],
            [z, z, z, w * (self.beta * self.beta)],
        ]
    }
}

/// Hyperbolic-ansatz metric with one center at the base point, Euler-angle chart.
///
/// `g₀ = V[dя² + sinh²я(σ₁² + σ₂²)] + V⁻¹σ₃²/4` with `V = 1/β + 1/(e^{2я} − 1)`;
/// the Einstein representative multiplies by `4β⁻¹[(2−β)cosh я + β sinh я]⁻²`.
#[derive(Debug, Clone, Copy)]
pub struct PedersenAbreu {
    pub beta: f64,
    pub einstein: bool,
}

impl MetricFormula for PedersenAbreu {
    fn eval<S: Scalar>(&self, x: &[S; 4]) -> [[S; 4]; 4] {
        let b = self.beta;
        let ya = x[0];
        let v = ((ya * 2.0).exp() - 1.0).recip() + 1.0 / b;
        let omega = if self.einstein {
            ((ya.cosh() * (2.0 - b) + ya.sinh() * b).powi(2) * (b / 4.0)).recip()
        } else {
            S::cst(1.0)
        };
        let sh2 = ya.sinh().powi(2);
        biaxial(x, omega * v, omega * v * sh2, omega * v.recip() * 0.25)
    }
}

/// `dr²/(1 − r⁻⁴) + (r²/4)[σ₁² + σ₂² + (1 − r⁻⁴)σ₃²]` for `r > 1`.
#[derive(Debug, Clone, Copy)]
pub struct EguchiHanson;

impl MetricFormula for EguchiHanson {
    fn eval<S: Scalar>(&self, x: &[S; 4]) -> [[S; 4]; 4] {
        let r = x[0];
        let f = S::cst(1.0) - r.powi(-4);
        let q = r * r * 0.25;
        biaxial(x, f.recip(), q, q * f)
    }
}

/// Fubini–Study in the chart `dt² + (sin²t/4)(σ₁² + σ₂²) + (sin²t cos²t/4)σ₃²`, `t ∈ (0, π/2)`.
#[derive(Debug, Clone, Copy)]
pub struct FubiniStudy;

impl MetricFormula for FubiniStudy {
    fn eval<S: Scalar>(&self, x: &[S; 4]) -> [[S; 4]; 4] {
        let s2 = x[0].sin().powi(2);
        let c2 = x[0].cos().powi(2);
        biaxial(x, S::cst(1.0), s2 * 0.25, s2 * c2 * 0.25)
    }
}

/// `dr² + (r²/4)(σ₁² + σ₂² + σ₃²)`.
#[derive(Debug, Clone, Copy)]
pub struct FlatPolar;

impl MetricFormula for FlatPolar {
    fn eval<S: Scalar>(&self, x: &[S; 4]) -> [[S; 4]; 4] {
        let q = x[0] * x[0] * 0.25;
        biaxial(x, S::cst(1.0), q, q)
    }
}

/// Taub-NUT, `V[dr² + r²(σ₁² + σ₂²)] + V⁻¹σ₃²/4` with `V = 1 + 1/(2r)`.
#[derive(Debug, Clone, Copy)]
pub struct TaubNut;

impl MetricFormula for TaubNut {
    fn eval<S: Scalar>(&self, x: &[S; 4]) -> [[S; 4]; 4] {
        let r = x[0];
        let v = (r * 2.0).recip() + 1.0;
        biaxial(x, v, v * r * r, v.recip() * 0.25)
    }
}

/// Gibbons–Hawking metric over ℝ³ with centers on the z-axis, chart `(R, ϑ, φ, τ)`.
#[derive(Debug, Clone)]
pub struct MultiTaubNut {
    pub centers: Vec<f64>,
}

impl MetricFormula for MultiTaubNut {
    fn eval<S: Scalar>(&self, x: &[S; 4]) -> [[S; 4]; 4] {
        let (r, t) = (x[0], x[1]);
        let (st, ct) = (t.sin(), t.cos());
        let z = r * ct;
        let rho2 = (r * st).powi(2);
        let mut v = S::cst(1.0);
        let mut a = S::cst(0.0);
        for &zj in &self.centers {
            let dz = z - zj;
            let rj = (dz * dz + rho2).sqrt();
            v = v + (rj * 2.0).recip();
            a = a + dz / rj * 0.5;
        }
        circle_bundle(S::cst(1.0), v, S::cst(1.0), r * r, r * r * st * st, a)
    }
}

/// Hyperbolic ansatz over ℍ³ with centers on an axis through the base point,
/// chart `(я, ϑ, φ, τ)` in geodesic polar coordinates about the base point.
/// `centers` are signed hyperbolic distances along the axis.
#[derive(Debug, Clone)]
pub struct HyperbolicAnsatz {
    pub beta: f64,
    pub centers: Vec<f64>,
    /// Multiply by `β sech²я`, giving the edge-cone representative.
    pub edge: bool,
}

impl MetricFormula for HyperbolicAnsatz {
    fn eval<S: Scalar>(&self, x: &[S; 4]) -> [[S; 4]; 4] {
        let (ya, t) = (x[0], x[1]);
        let (ch, sh) = (ya.cosh(), ya.sinh());
        let (st, ct) = (t.sin(), t.cos());
        let mut v = S::cst(1.0 / self.beta);
        let mut a = S::cst(0.0);
        for &aj in &self.centers {
            // boost the center to the origin in the hyperboloid model
            let (cb, sb) = (aj.cosh(), aj.sinh());
            let x0 = ch * cb - sh * ct * sb;
            let x3 = sh * ct * cb - ch * sb;
            let shd = (x0 * x0 - 1.0).sqrt();
            // 1/(e^{2d} − 1) = e^{−d}/(2 sinh d), with e^{−d} = 1/(cosh d + sinh d)
            v = v + ((x0 + shd) * shd * 2.0).recip();
            a = a + x3 / shd * 0.5;
        }
        let omega = if self.edge { ya.sech().powi(2) * self.beta } else { S::cst(1.0) };
        let sh2 = sh * sh;
        circle_bundle(omega, v, S::cst(1.0), sh2, sh2 * st * st, a)
    }
}
