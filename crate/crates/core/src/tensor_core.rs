//! Pointwise linear algebra of four-dimensional curvature.
//!
//! The curvature tensor is viewed as a symmetric operator on the six-dimensional
//! space of 2-forms, split into self-dual and anti-self-dual halves with the
//! oriented basis
//!
//! ```text
//! (e⁰∧e¹ ± e²∧e³)/√2,  (e⁰∧e² ± e³∧e¹)/√2,  (e⁰∧e³ ± e¹∧e²)/√2
//! ```
//!
//! so that the operator is the block matrix `[[A, B], [Bᵀ, D]]`. Norms follow the
//! convention in which a 2-form `e^a∧e^b` has unit length, so `|W₊|²` is the
//! Frobenius norm of the trace-free part of `A`. In that normalization a unit
//! round S⁴ has `A = D = Id₃` and a Kähler metric has `|W₊|² = s²/24`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{frobenius_sq3, identity3, max_abs_tensor, tensor_in_frame, trace3, Mat3, Mat4, Tensor4, Vec4};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("metric is not positive definite (smallest pivot ratio {ratio:.3e})")]
    NonPositiveDefinite { ratio: f64 },
    #[error("Riemann tensor violates its pair symmetries (relative residual {residual:.3e})")]
    AsymmetryExceeded { residual: f64 },
}

/// An oriented g-orthonormal frame, legs given by their chart components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame4 {
    pub vectors: [Vec4; 4],
    pub orientation_sign: i8,
}

/// Curvature operator on Λ² in the self-dual/anti-self-dual basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureOperator {
    pub a: Mat3,
    pub b: Mat3,
    pub d: Mat3,
    pub scalar: f64,
}

/// Quadratic curvature invariants at a point.
///
/// `riem_sq` is the full contraction `R_{ijkl}R^{ijkl}`; the operator norm used
/// in the integral formulas is a quarter of it (see [`curvature_norm_sq`]).
///
/// [`curvature_norm_sq`]: InvariantDensities::curvature_norm_sq
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantDensities {
    pub s: f64,
    pub ricci0_sq: f64,
    pub wplus_sq: f64,
    pub wminus_sq: f64,
    pub riem_sq: f64,
    pub vol_density: f64,
}

impl InvariantDensities {
    /// `|ℛ|²` with ℛ regarded as an element of Λ²⊗Λ², i.e. `¼ R_{ijkl}R^{ijkl}`.
    pub fn curvature_norm_sq(&self) -> f64 {
        0.25 * self.riem_sq
    }

    pub fn weyl_sq(&self) -> f64 {
        self.wplus_sq + self.wminus_sq
    }

    /// `s²/24 + |W|² − |r̊|²/2`, whose integral over `8π²` is the Euler characteristic.
    pub fn gauss_bonnet_density(&self) -> f64 {
        self.s * self.s / 24.0 + self.weyl_sq() - 0.5 * self.ricci0_sq
    }

    /// `|W₊|² − |W₋|²`, whose integral over `12π²` is the signature.
    pub fn signature_density(&self) -> f64 {
        self.wplus_sq - self.wminus_sq
    }

    /// Relative defect of `|R|² = s²/6 + 2|r̊|² + 4(|W₊|² + |W₋|²)`.
    pub fn decomposition_residual(&self) -> f64 {
        let rhs = self.s * self.s / 6.0 + 2.0 * self.ricci0_sq + 4.0 * self.weyl_sq();
        (self.riem_sq - rhs).abs() / self.riem_sq.abs().max(rhs.abs()).max(f64::MIN_POSITIVE)
    }
}

/// Three orthonormal tangent legs of a hypersurface plus its outward unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryFrame {
    pub tangent: [Vec4; 3],
    pub normal: Vec4,
}

fn g_dot(g: &Mat4, u: &Vec4, v: &Vec4) -> f64 {
    crate::linalg::bilinear4(g, u, v)
}

/// Smallest Cholesky pivot of `D^{-1/2} g D^{-1/2}`, `D = diag(g)`, so the
/// test does not depend on how the coordinates are scaled.
fn cholesky_min_pivot_ratio(g0: &Mat4) -> Option<f64> {
    let mut l = [[0.0; 4]; 4];
    if (0..4).any(|i| !(g0[i][i] > 0.0) || !g0[i][i].is_finite()) {
        return None;
    }
    let mut g = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            g[i][j] = g0[i][j] / (g0[i][i] * g0[j][j]).sqrt();
        }
    }
    let scale = 1.0;
    let mut min_ratio = f64::INFINITY;
    for j in 0..4 {
        let mut d = g[j][j];
        for k in 0..j {
            d -= l[j][k] * l[j][k];
        }
        if !(d > 0.0) {
            return None;
        }
        min_ratio = min_ratio.min(d / scale);
        l[j][j] = d.sqrt();
        for i in j + 1..4 {
            let mut s = g[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            l[i][j] = s / l[j][j];
        }
    }
    Some(min_ratio)
}

/// Gram–Schmidt on the coordinate basis in order `∂₀, ∂₁, ∂₂, ∂₃`; if the chart
/// orientation is negative the last two legs are swapped so the frame is
/// always positively oriented.
pub fn orthonormal_frame(g: &Mat4, chart_orientation: i8) -> Result<Frame4, TensorError> {
    let ratio = cholesky_min_pivot_ratio(g).ok_or(TensorError::NonPositiveDefinite { ratio: 0.0 })?;
    if ratio <= 1e-13 {
        return Err(TensorError::NonPositiveDefinite { ratio });
    }
    let mut legs = [[0.0; 4]; 4];
    for a in 0..4 {
        let mut v = [0.0; 4];
        v[a] = 1.0;
        // two passes of modified Gram–Schmidt keep the frame orthonormal to ~1e-15
        for _ in 0..2 {
            for b in 0..a {
                let p = g_dot(g, &legs[b], &v);
                for i in 0..4 {
                    v[i] -= p * legs[b][i];
                }
            }
        }
        let n = g_dot(g, &v, &v).sqrt();
        for i in 0..4 {
            v[i] /= n;
        }
        legs[a] = v;
    }
    // the Gram–Schmidt frame is upper triangular with positive diagonal, so it
    // agrees with the chart orientation
    if chart_orientation < 0 {
        legs.swap(2, 3);
    }
    Ok(Frame4 { vectors: legs, orientation_sign: 1 })
}

/// Largest violation of `R_{ijkl} = −R_{jikl} = −R_{ijlk} = R_{klij}`, relative to `max|R|`.
pub fn pair_symmetry_residual(r: &Tensor4) -> f64 {
    let scale = max_abs_tensor(r);
    if scale == 0.0 {
        return 0.0;
    }
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let v = r[i][j][k][l];
                    worst = worst
                        .max((v + r[j][i][k][l]).abs())
                        .max((v + r[i][j][l][k]).abs())
                        .max((v - r[k][l][i][j]).abs());
                }
            }
        }
    }
    worst / scale
}

/// Largest violation of the first Bianchi identity `R_{i[jkl]} = 0`, relative to `max|R|`.
pub fn bianchi_residual(r: &Tensor4) -> f64 {
    let scale = max_abs_tensor(r);
    if scale == 0.0 {
        return 0.0;
    }
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    worst = worst.max((r[i][j][k][l] + r[i][k][l][j] + r[i][l][j][k]).abs());
                }
            }
        }
    }
    worst / scale
}

// 2-form basis: e01, e02, e03, e23, e31, e12
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

/// Curvature operator of a lowered Riemann tensor in the given oriented frame.
pub fn curvature_operator(riemann_lowered: &Tensor4, frame: &Frame4) -> Result<CurvatureOperator, TensorError> {
    let residual = pair_symmetry_residual(riemann_lowered);
    if residual > 1e-9 {
        return Err(TensorError::AsymmetryExceeded { residual });
    }
    let rf = tensor_in_frame(riemann_lowered, &frame.vectors);
    let mut op = [[0.0; 6]; 6];
    for (p, &(a, b)) in PAIRS.iter().enumerate() {
        for (q, &(c, d)) in PAIRS.iter().enumerate() {
            op[p][q] = rf[a][b][c][d];
        }
    }
    let mut a = [[0.0; 3]; 3];
    let mut bm = [[0.0; 3]; 3];
    let mut d = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (pp, pm, mp, mm) = (op[i][j], op[i][j + 3], op[i + 3][j], op[i + 3][j + 3]);
            a[i][j] = 0.5 * (pp + pm + mp + mm);
            bm[i][j] = 0.5 * (pp - pm + mp - mm);
            d[i][j] = 0.5 * (pp - pm - mp + mm);
        }
    }
    let scalar = 2.0 * (trace3(&a) + trace3(&d));
    Ok(CurvatureOperator { a, b: bm, d, scalar })
}

/// Quadratic invariants from the operator blocks, the coordinate Ricci tensor and the metric.
pub fn invariant_densities(op: &CurvatureOperator, ricci: &Mat4, g: &Mat4, g_inv: &Mat4, vol_density: f64) -> InvariantDensities {
    let s = op.scalar;
    let id = identity3();
    let mut wp = op.a;
    let mut wm = op.d;
    for i in 0..3 {
        for j in 0..3 {
            wp[i][j] -= s / 12.0 * id[i][j];
            wm[i][j] -= s / 12.0 * id[i][j];
        }
    }
    let mut r0 = *ricci;
    for i in 0..4 {
        for j in 0..4 {
            r0[i][j] -= 0.25 * s * g[i][j];
        }
    }
    // r̊_ij r̊_kl g^ik g^jl
    let mut mixed = [[0.0; 4]; 4];
    for i in 0..4 {
        for l in 0..4 {
            mixed[i][l] = (0..4).map(|j| r0[i][j] * g_inv[j][l]).sum();
        }
    }
    let ricci0_sq: f64 = (0..4).flat_map(|i| (0..4).map(move |k| (i, k))).map(|(i, k)| mixed[i][k] * mixed[k][i]).sum();
    let op_norm_sq = frobenius_sq3(&op.a) + frobenius_sq3(&op.d) + 2.0 * frobenius_sq3(&op.b);
    InvariantDensities {
        s,
        ricci0_sq: ricci0_sq.max(0.0),
        wplus_sq: frobenius_sq3(&wp),
        wminus_sq: frobenius_sq3(&wm),
        riem_sq: 4.0 * op_norm_sq,
        vol_density,
    }
}

const EPS3: [[[f64; 3]; 3]; 3] = {
    let mut e = [[[0.0; 3]; 3]; 3];
    e[0][1][2] = 1.0;
    e[1][2][0] = 1.0;
    e[2][0][1] = 1.0;
    e[0][2][1] = -1.0;
    e[2][1][0] = -1.0;
    e[1][0][2] = -1.0;
    e
};

/// `R̂_ab = ¼ ε_acd ε_bef R_cdef` with all indices in the tangent legs of the boundary frame.
pub fn boundary_rhat(riemann_lowered: &Tensor4, frame: &BoundaryFrame) -> Mat3 {
    let rt = tensor_in_frame(riemann_lowered, &frame.tangent);
    let mut out = [[0.0; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            let mut acc = 0.0;
            for c in 0..3 {
                for d in 0..3 {
                    let e1 = EPS3[a][c][d];
                    if e1 == 0.0 {
                        continue;
                    }
                    for e in 0..3 {
                        for f in 0..3 {
                            let e2 = EPS3[b][e][f];
                            if e2 != 0.0 {
                                acc += e1 * e2 * rt[c][d][e][f];
                            }
                        }
                    }
                }
            }
            out[a][b] = 0.25 * acc;
        }
    }
    out
}

/// Constant-curvature tensor `K (g_ik g_jl − g_il g_jk)`.
pub fn constant_curvature_tensor(g: &Mat4, k: f64) -> Tensor4 {
    let mut r = crate::linalg::ZERO_TENSOR4;
    for i in 0..4 {
        for j in 0..4 {
            for l in 0..4 {
                for m in 0..4 {
                    r[i][j][l][m] = k * (g[i][l] * g[j][m] - g[i][m] * g[j][l]);
                }
            }
        }
    }
    r
}
