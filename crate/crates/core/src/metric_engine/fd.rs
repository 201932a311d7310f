//! Richardson-extrapolated central differences of metric components.

use super::MetricDerivatives;
use crate::linalg::Mat4;

fn axpy(x: &[f64; 4], i: usize, hi: f64, k: usize, hk: f64) -> [f64; 4] {
    let mut y = *x;
    y[i] += hi;
    y[k] += hk;
    y
}

fn combine(a: &Mat4, b: &Mat4, f: impl Fn(f64, f64) -> f64) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = f(a[i][j], b[i][j]);
        }
    }
    out
}

/// Central first and second differences at a single step.
fn central(g: &dyn Fn(&[f64; 4]) -> Mat4, x: &[f64; 4], g0: &Mat4, h: f64) -> ([Mat4; 4], [[Mat4; 4]; 4]) {
    let mut d1 = [[[0.0; 4]; 4]; 4];
    let mut d2 = [[[[0.0; 4]; 4]; 4]; 4];
    for i in 0..4 {
        let p = g(&axpy(x, i, h, i, 0.0));
        let m = g(&axpy(x, i, -h, i, 0.0));
        d1[i] = combine(&p, &m, |a, b| (a - b) / (2.0 * h));
        let pm = combine(&p, &m, |a, b| a + b);
        d2[i][i] = combine(&pm, g0, |s, c| (s - 2.0 * c) / (h * h));
    }
    for i in 0..4 {
        for k in i + 1..4 {
            let pp = g(&axpy(x, i, h, k, h));
            let pm = g(&axpy(x, i, h, k, -h));
            let mp = g(&axpy(x, i, -h, k, h));
            let mm = g(&axpy(x, i, -h, k, -h));
            let mut out = [[0.0; 4]; 4];
            for a in 0..4 {
                for b in 0..4 {
                    out[a][b] = (pp[a][b] - pm[a][b] - mp[a][b] + mm[a][b]) / (4.0 * h * h);
                }
            }
            d2[i][k] = out;
            d2[k][i] = out;
        }
    }
    (d1, d2)
}

/// Two Richardson levels on steps `h, h/2, h/4`. The error estimate is the
/// larger of the change between the last two columns and a rounding model.
pub fn richardson_derivatives(g: &dyn Fn(&[f64; 4]) -> Mat4, x: &[f64; 4], h: f64) -> MetricDerivatives {
    let g0 = g(x);
    let levels: Vec<_> = [h, h / 2.0, h / 4.0].iter().map(|&s| central(g, x, &g0, s)).collect();
    let mut out = MetricDerivatives {
        g: g0,
        dg: [[[0.0; 4]; 4]; 4],
        ddg: [[[[0.0; 4]; 4]; 4]; 4],
        error_first: 0.0,
        error_second: 0.0,
    };
    let extrapolate = |a: f64, b: f64, c: f64| {
        let r1 = (4.0 * b - a) / 3.0;
        let r1b = (4.0 * c - b) / 3.0;
        let r2 = (16.0 * r1b - r1) / 15.0;
        (r2, (r2 - r1b).abs())
    };
    // rounding in the differences, amplified by the extrapolation weights
    let g_scale = g0.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
    out.error_first = f64::EPSILON * g_scale * 8.0 / h;
    out.error_second = f64::EPSILON * g_scale * 64.0 / (h * h);
    for k in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                let (v, e) = extrapolate(levels[0].0[k][i][j], levels[1].0[k][i][j], levels[2].0[k][i][j]);
                out.dg[k][i][j] = v;
                out.error_first = out.error_first.max(e);
                for l in 0..4 {
                    let (v, e) =
                        extrapolate(levels[0].1[k][l][i][j], levels[1].1[k][l][i][j], levels[2].1[k][l][i][j]);
                    out.ddg[k][l][i][j] = v;
                    out.error_second = out.error_second.max(e);
                }
            }
        }
    }
    out
}

/// Retry with larger and smaller steps and keep the estimate with the smallest error.
pub fn adapt_step(
    g: &dyn Fn(&[f64; 4]) -> Mat4,
    x: &[f64; 4],
    h: f64,
    first: MetricDerivatives,
) -> MetricDerivatives {
    let score = |d: &MetricDerivatives| d.error_second + d.error_first;
    let mut best = first;
    for factor in [4.0, 16.0, 0.25] {
        let cand = richardson_derivatives(g, x, h * factor);
        if cand.error_second.is_finite() && score(&cand) < score(&best) {
            best = cand;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_metric_is_exact() {
        let g = |x: &[f64; 4]| {
            let mut m = [[0.0; 4]; 4];
            for i in 0..4 {
                m[i][i] = 1.0 + x[0] * x[1] + x[i] * x[i];
            }
            m
        };
        let d = richardson_derivatives(&g, &[0.3, 0.5, 0.7, 0.9], 1e-3);
        assert!((d.ddg[0][1][2][2] - 1.0).abs() < 1e-6);
        assert!((d.ddg[3][3][3][3] - 2.0).abs() < 1e-6);
        assert!((d.dg[0][1][1] - 0.5).abs() < 1e-9);
    }
}
