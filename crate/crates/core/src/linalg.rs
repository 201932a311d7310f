//! Fixed-size dense helpers for 3×3 and 4×4 work.

pub type Mat3 = [[f64; 3]; 3];
pub type Mat4 = [[f64; 4]; 4];
pub type Vec4 = [f64; 4];

/// Lowered four-index tensor `t[i][j][k][l]`.
pub type Tensor4 = [[[[f64; 4]; 4]; 4]; 4];

pub const ZERO_TENSOR4: Tensor4 = [[[[0.0; 4]; 4]; 4]; 4];

pub fn identity4() -> Mat4 {
    let mut m = [[0.0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

pub fn identity3() -> Mat3 {
    let mut m = [[0.0; 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

pub fn max_abs4(m: &Mat4) -> f64 {
    m.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

pub fn max_abs_tensor(t: &Tensor4) -> f64 {
    t.iter().flatten().flatten().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

pub fn frobenius_sq3(m: &Mat3) -> f64 {
    m.iter().flatten().map(|v| v * v).sum()
}

pub fn trace3(m: &Mat3) -> f64 {
    m[0][0] + m[1][1] + m[2][2]
}

pub fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn det4(m: &Mat4) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for c in 0..4 {
        let p = (c..4).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).unwrap();
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..4 {
            let f = a[r][c] / a[c][c];
            for k in c..4 {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    det
}

/// Gauss–Jordan inverse with partial pivoting. `None` if singular.
pub fn inverse4(m: &Mat4) -> Option<Mat4> {
    let mut a = *m;
    let mut inv = identity4();
    for c in 0..4 {
        let p = (c..4).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs()))?;
        if a[p][c] == 0.0 || !a[p][c].is_finite() {
            return None;
        }
        a.swap(p, c);
        inv.swap(p, c);
        let d = 1.0 / a[c][c];
        for k in 0..4 {
            a[c][k] *= d;
            inv[c][k] *= d;
        }
        for r in 0..4 {
            if r != c {
                let f = a[r][c];
                if f != 0.0 {
                    for k in 0..4 {
                        a[r][k] -= f * a[c][k];
                        inv[r][k] -= f * inv[c][k];
                    }
                }
            }
        }
    }
    Some(inv)
}

/// Quadratic form `u^T m v`.
pub fn bilinear4(m: &Mat4, u: &Vec4, v: &Vec4) -> f64 {
    let mut acc = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            acc += m[i][j] * u[i] * v[j];
        }
    }
    acc
}

/// Components of a lowered four-tensor in the basis `legs` (each leg a vector of chart components).
pub fn tensor_in_frame<const N: usize>(t: &Tensor4, legs: &[Vec4; N]) -> [[[[f64; N]; N]; N]; N] {
    // contract one slot at a time
    let mut s1 = [[[[0.0; 4]; 4]; 4]; N];
    for a in 0..N {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let mut acc = 0.0;
                    for i in 0..4 {
                        acc += legs[a][i] * t[i][j][k][l];
                    }
                    s1[a][j][k][l] = acc;
                }
            }
        }
    }
    let mut s2 = [[[[0.0; 4]; 4]; N]; N];
    for a in 0..N {
        for b in 0..N {
            for k in 0..4 {
                for l in 0..4 {
                    let mut acc = 0.0;
                    for j in 0..4 {
                        acc += legs[b][j] * s1[a][j][k][l];
                    }
                    s2[a][b][k][l] = acc;
                }
            }
        }
    }
    let mut s3 = [[[[0.0; 4]; N]; N]; N];
    for a in 0..N {
        for b in 0..N {
            for c in 0..N {
                for l in 0..4 {
                    let mut acc = 0.0;
                    for k in 0..4 {
                        acc += legs[c][k] * s2[a][b][k][l];
                    }
                    s3[a][b][c][l] = acc;
                }
            }
        }
    }
    let mut out = [[[[0.0; N]; N]; N]; N];
    for a in 0..N {
        for b in 0..N {
            for c in 0..N {
                for d in 0..N {
                    let mut acc = 0.0;
                    for l in 0..4 {
                        acc += legs[d][l] * s3[a][b][c][l];
                    }
                    out[a][b][c][d] = acc;
                }
            }
        }
    }
    out
}
