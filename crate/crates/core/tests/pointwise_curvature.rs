#![allow(clippy::needless_range_loop)]

mod common;

use common::{catalog, rel, self_dual_members};
use edgecone::geometry_catalog::{make_metric, FamilyDescriptor, PsiPeriod, Representative};
use edgecone::metric_engine::{curvature_at, hypersurface_at, metric_derivatives, DerivMode, MetricField};
use edgecone::tensor_core::{
    bianchi_residual, boundary_rhat, constant_curvature_tensor, curvature_operator, invariant_densities,
    orthonormal_frame, BoundaryFrame,
};
use proptest::prelude::*;

fn max_abs(t: &edgecone::Tensor4) -> f64 {
    t.iter().flatten().flatten().flatten().fold(0.0f64, |a, v| a.max(v.abs()))
}

#[test]
fn symmetries_and_decomposition_hold_across_the_catalog() {
    for (_, m) in catalog() {
        for x in m.sample_points(100) {
            let c = curvature_at(&m, &x).unwrap_or_else(|e| panic!("{}: {e}", m.name));
            assert!(c.symmetry_residual < 1e-7, "{} at {x:?}: {}", m.name, c.symmetry_residual);
            let r = max_abs(&c.riemann);
            if r > 1e-12 {
                assert!(bianchi_residual(&c.riemann) < 1e-7, "{} at {x:?}", m.name);
                assert!(c.densities.decomposition_residual() < 1e-8, "{} at {x:?}", m.name);
            }
            let d = &c.densities;
            for v in [d.wplus_sq, d.wminus_sq, d.ricci0_sq, d.riem_sq] {
                assert!(v >= 0.0);
            }
            let op = &c.operator;
            let scale = r.max(1.0);
            for i in 0..3 {
                for j in 0..3 {
                    assert!((op.a[i][j] - op.a[j][i]).abs() < 1e-10 * scale);
                    assert!((op.d[i][j] - op.d[j][i]).abs() < 1e-10 * scale);
                }
            }
            let (ta, td) = (op.a[0][0] + op.a[1][1] + op.a[2][2], op.d[0][0] + op.d[1][1] + op.d[2][2]);
            assert!((ta - op.scalar / 4.0).abs() < 1e-10 * scale, "{}: {ta} vs {}", m.name, op.scalar);
            assert!((td - op.scalar / 4.0).abs() < 1e-10 * scale);
        }
    }
}

#[test]
fn ricci_is_the_contraction_of_riemann() {
    for (_, m) in catalog() {
        let x = m.sample_points(3)[2];
        let c = curvature_at(&m, &x).unwrap();
        let scale = max_abs(&c.riemann).max(1e-300) * c.g_inv.iter().flatten().fold(1.0f64, |a, v| a.max(v.abs()));
        for j in 0..4 {
            for k in 0..4 {
                let mut acc = 0.0;
                for i in 0..4 {
                    for l in 0..4 {
                        acc += c.g_inv[i][l] * c.riemann[i][j][l][k];
                    }
                }
                assert!((acc - c.ricci[j][k]).abs() < 1e-10 * scale, "{} ricci[{j}][{k}]", m.name);
            }
        }
    }
}

#[test]
fn orientation_reversal_swaps_the_weyl_halves() {
    for (_, m) in catalog() {
        let rev = m.reversed();
        for x in m.sample_points(10) {
            let (a, b) = (curvature_at(&m, &x).unwrap(), curvature_at(&rev, &x).unwrap());
            let tol = 1e-12 * a.densities.riem_sq;
            assert!((a.densities.wplus_sq - b.densities.wminus_sq).abs() <= tol, "{}", m.name);
            assert!((a.densities.wminus_sq - b.densities.wplus_sq).abs() <= tol, "{}", m.name);
            assert!((a.densities.riem_sq - b.densities.riem_sq).abs() <= tol);
        }
    }
}

#[test]
fn fubini_study_is_kahler_einstein() {
    let m = make_metric(&FamilyDescriptor::fubini_study()).unwrap();
    for x in m.sample_points(100) {
        let d = curvature_at(&m, &x).unwrap().densities;
        assert!(rel(d.wplus_sq, d.s * d.s / 24.0) < 1e-9);
        assert!(d.wminus_sq < 1e-12 * d.wplus_sq && d.ricci0_sq < 1e-12 * d.riem_sq);
    }
}

#[test]
fn edge_sphere_is_locally_round() {
    for b in [0.3, 1.0, 1.7] {
        let m = make_metric(&FamilyDescriptor::edge_s4(b)).unwrap();
        for x in m.sample_points(100) {
            let d = curvature_at(&m, &x).unwrap().densities;
            assert!(d.weyl_sq() + d.ricci0_sq < 1e-8, "β = {b}: {d:?}");
            assert!(rel(d.s, 12.0) < 1e-8, "β = {b}: s = {}", d.s);
        }
    }
}

#[test]
fn gibbons_hawking_type_metrics_are_self_dual() {
    for m in self_dual_members() {
        for x in m.sample_points(100) {
            let d = curvature_at(&m, &x).unwrap().densities;
            assert!(d.wminus_sq < 1e-8 * d.wplus_sq, "{} at {x:?}: {d:?}", m.name);
        }
    }
}

#[test]
fn hyperkahler_members_are_ricci_flat() {
    for d in [
        FamilyDescriptor::taub_nut(),
        FamilyDescriptor::multi_taub_nut(common::two_nuts()),
        FamilyDescriptor::eguchi_hanson(PsiPeriod::TwoPi),
    ] {
        let m = make_metric(&d).unwrap();
        for x in m.sample_points(100) {
            let d = curvature_at(&m, &x).unwrap().densities;
            assert!(d.ricci0_sq < 1e-8 * d.riem_sq && d.s * d.s < 1e-8 * d.riem_sq, "{}: {d:?}", m.name);
        }
    }
}

#[test]
fn einstein_residual_of_the_edge_family() {
    for b in [0.25, 0.5, 1.0, 1.5, 1.9] {
        let m = make_metric(&FamilyDescriptor::pedersen_abreu(b)).unwrap();
        let s_expected = 6.0 * b * b * (2.0 - b);
        let mut worst = 0.0f64;
        for x in m.sample_points(100) {
            let d = curvature_at(&m, &x).unwrap().densities;
            worst = worst.max(d.ricci0_sq.sqrt());
            assert!(rel(d.s, s_expected) < 1e-5, "β = {b}: s = {}", d.s);
        }
        assert!(worst < 1e-6, "β = {b}: |r̊| = {worst}");
    }
}

#[test]
fn conformal_pair_has_equal_weyl_densities() {
    for b in [0.5, 1.3] {
        let g0 = make_metric(&FamilyDescriptor::pedersen_abreu(b).with_representative(Representative::Background)).unwrap();
        let gt = make_metric(&FamilyDescriptor::pedersen_abreu(b)).unwrap();
        for x in g0.sample_points(50) {
            let (a, c) = (curvature_at(&g0, &x).unwrap().densities, curvature_at(&gt, &x).unwrap().densities);
            assert!(rel(a.wplus_sq * a.vol_density, c.wplus_sq * c.vol_density) < 1e-6);
            assert!((a.wminus_sq * a.vol_density - c.wminus_sq * c.vol_density).abs() < 1e-6 * a.wplus_sq * a.vol_density);
            assert!(rel(a.s, c.s) > 1e-3, "the two representatives should differ");
        }
    }
}

/// Size of the terms the Riemann tensor is assembled from.
fn term_scale(m: &MetricField, x: &[f64; 4], r: &edgecone::Tensor4) -> f64 {
    let d = metric_derivatives(m, x);
    d.ddg.iter().flatten().flatten().flatten().fold(max_abs(r), |a, v| a.max(v.abs()))
}

fn numeric(m: &MetricField) -> MetricField {
    m.clone().with_deriv_mode(DerivMode::NumericFd { base_step: 1e-3 })
}

#[test]
fn finite_differences_agree_with_exact_derivatives() {
    for (_, m) in catalog() {
        let fd = numeric(&m);
        for x in m.sample_points(50) {
            let (a, b) = (curvature_at(&m, &x).unwrap(), curvature_at(&fd, &x).unwrap_or_else(|e| panic!("{}: {e}", m.name)));
            let scale = term_scale(&m, &x, &a.riemann);
            for (p, q) in a.riemann.iter().flatten().flatten().flatten().zip(b.riemann.iter().flatten().flatten().flatten()) {
                assert!((p - q).abs() < 1e-6 * scale, "{} at {x:?}: {p} vs {q}", m.name);
            }
        }
    }
}

#[test]
fn frames_are_orthonormal() {
    let m = make_metric(&FamilyDescriptor::fubini_study()).unwrap();
    let g = m.eval(&[0.7, 1.1, 0.4, 2.0]);
    let f = orthonormal_frame(&g, 1).unwrap();
    assert_eq!(f.orientation_sign, 1);
    for a in 0..4 {
        for b in 0..4 {
            let mut acc = 0.0;
            for i in 0..4 {
                for j in 0..4 {
                    acc += g[i][j] * f.vectors[a][i] * f.vectors[b][j];
                }
            }
            assert!((acc - if a == b { 1.0 } else { 0.0 }).abs() < 1e-12);
        }
    }
    let mut diag = [[0.0; 4]; 4];
    for (i, row) in diag.iter_mut().enumerate() {
        row[i] = if i == 0 { 4.0 } else { 1.0 };
    }
    assert_eq!(orthonormal_frame(&diag, 1).unwrap().vectors[0], [0.5, 0.0, 0.0, 0.0]);
}

#[test]
fn unit_sphere_operator_and_densities() {
    let g = {
        let mut g = [[0.0; 4]; 4];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = 1.0 + 0.3 * i as f64;
        }
        g
    };
    let r = constant_curvature_tensor(&g, 1.0);
    let frame = orthonormal_frame(&g, 1).unwrap();
    let op = curvature_operator(&r, &frame).unwrap();
    assert!((op.scalar - 12.0).abs() < 1e-12);
    for i in 0..3 {
        for j in 0..3 {
            let id = if i == j { 1.0 } else { 0.0 };
            assert!((op.a[i][j] - id).abs() < 1e-12 && (op.d[i][j] - id).abs() < 1e-12 && op.b[i][j].abs() < 1e-12);
        }
    }
    // Ric = 3g on the unit sphere
    let mut ricci = g;
    let mut g_inv = [[0.0; 4]; 4];
    for i in 0..4 {
        ricci[i][i] *= 3.0;
        g_inv[i][i] = 1.0 / g[i][i];
    }
    let vol = 8.0 * std::f64::consts::PI.powi(2) / 3.0;
    let d = invariant_densities(&op, &ricci, &g, &g_inv, 1.0);
    assert!(d.weyl_sq() < 1e-24 && d.ricci0_sq < 1e-24);
    let chi = d.gauss_bonnet_density() * vol / (8.0 * std::f64::consts::PI.powi(2));
    assert!((chi - 2.0).abs() < 1e-12);
    let bf = BoundaryFrame {
        tangent: [frame.vectors[1], frame.vectors[2], frame.vectors[3]],
        normal: frame.vectors[0],
    };
    let rhat = boundary_rhat(&r, &bf);
    for i in 0..3 {
        for j in 0..3 {
            assert!((rhat[i][j] - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
        }
    }
}

#[test]
fn eguchi_hanson_level_sets() {
    let m = make_metric(&FamilyDescriptor::eguchi_hanson(PsiPeriod::TwoPi)).unwrap();
    let h = hypersurface_at(&m, 2.0, &[1.0, 0.3, 0.7]).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert!((h.rhat[i][j] - h.rhat[j][i]).abs() < 1e-10);
        }
    }
    let h = hypersurface_at(&m, 3.0, &[1.0, 0.3, 0.7]).unwrap();
    let ii = h.second_fundamental_form;
    for i in 0..3 {
        assert!(ii[i][i] > 0.0 && ii[i][i] < 3.0 / 3.0, "{ii:?}");
        for j in 0..3 {
            assert!((ii[i][j] - ii[j][i]).abs() < 1e-12);
        }
    }
}

fn decay_slope(m: &MetricField) -> f64 {
    let rs: Vec<f64> = (0..=20).map(|k| 10f64 * 10f64.powf(k as f64 / 20.0)).collect();
    let pts: Vec<(f64, f64)> = rs
        .iter()
        .map(|&r| {
            let d = curvature_at(m, &m.lift(&[r])).unwrap().densities;
            (r.ln(), d.curvature_norm_sq().sqrt().ln())
        })
        .collect();
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn taub_nut_curvature_decays_like_the_cube() {
    let m = make_metric(&FamilyDescriptor::taub_nut()).unwrap();
    let s = decay_slope(&m);
    assert!((s + 3.0).abs() < 0.1, "{s}");
}

#[test]
fn eguchi_hanson_curvature_decays_like_the_sixth_power() {
    let m = make_metric(&FamilyDescriptor::eguchi_hanson(PsiPeriod::TwoPi)).unwrap();
    let s = decay_slope(&m);
    assert!((s + 6.0).abs() < 0.1, "{s}");
}

fn catalog_strategy() -> impl Strategy<Value = (usize, [f64; 4])> {
    let n = catalog().len();
    (0..n, prop::array::uniform4(0.0f64..1.0))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn bianchi_identity_at_random_points((k, u) in catalog_strategy()) {
        let (_, m) = catalog().swap_remove(k);
        let x = m.sample_point(u);
        let c = curvature_at(&m, &x).unwrap();
        prop_assert!(c.symmetry_residual < 1e-7);
        if max_abs(&c.riemann) > 1e-12 {
            prop_assert!(bianchi_residual(&c.riemann) < 1e-7);
            prop_assert!(c.densities.decomposition_residual() < 1e-8);
        }
    }

    #[test]
    fn reversal_swaps_at_random_points((k, u) in catalog_strategy()) {
        let (_, m) = catalog().swap_remove(k);
        let x = m.sample_point(u);
        let (a, b) = (curvature_at(&m, &x).unwrap(), curvature_at(&m.reversed(), &x).unwrap());
        let tol = 1e-12 * a.densities.riem_sq;
        prop_assert!((a.densities.wplus_sq - b.densities.wminus_sq).abs() <= tol);
        prop_assert!((a.densities.wminus_sq - b.densities.wplus_sq).abs() <= tol);
        prop_assert!((a.densities.riem_sq - b.densities.riem_sq).abs() <= tol);
    }

    #[test]
    fn numeric_derivatives_at_random_points((k, u) in catalog_strategy()) {
        let (_, m) = catalog().swap_remove(k);
        let x = m.sample_point(u);
        let a = curvature_at(&m, &x).unwrap();
        let b = curvature_at(&numeric(&m), &x).unwrap();
        let scale = term_scale(&m, &x, &a.riemann);
        for (p, q) in a.riemann.iter().flatten().flatten().flatten().zip(b.riemann.iter().flatten().flatten().flatten()) {
            prop_assert!((p - q).abs() < 1e-6 * scale);
        }
    }
}
