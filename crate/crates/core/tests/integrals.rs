mod common;

use std::f64::consts::PI;

use common::{rel, two_hyperbolic_centers, two_nuts};
use edgecone::geometry_catalog::{
    cone_profile, exact_prediction, make_metric, smoothed_cone_total_curvature, FamilyDescriptor, Invariant, PsiPeriod,
    Representative,
};
use edgecone::metric_engine::MetricField;
use edgecone::quadrature::{
    boundary_term, gauss_bonnet_with_boundary, integrate_invariant, integrate_noncompact, IntegralReport,
    QuadratureError, QuadratureSpec,
};

const PI2: f64 = PI * PI;

fn metric(d: &FamilyDescriptor) -> MetricField {
    make_metric(d).unwrap()
}

fn total(d: &FamilyDescriptor, which: Invariant) -> IntegralReport {
    let m = metric(d);
    integrate_invariant(&m, which, &QuadratureSpec::for_metric(&m))
        .unwrap()
        .with_prediction(exact_prediction(d, which))
}

#[test]
fn edge_sphere_gauss_bonnet_is_two_beta() {
    for b in [0.5, 1.0, 1.5] {
        let r = total(&FamilyDescriptor::edge_s4(b), Invariant::GaussBonnet);
        assert!((r.value - 2.0 * b).abs() < 1e-6, "β = {b}: {}", r.value);
        assert!(r.passes(1e-6).unwrap());
    }
}

#[test]
fn smooth_complex_projective_plane() {
    let r = total(&FamilyDescriptor::pedersen_abreu(1.0), Invariant::Signature);
    assert!((r.value - 1.0).abs() < 1e-7);
    let r = total(&FamilyDescriptor::pedersen_abreu(1.0), Invariant::WplusTotal);
    assert!(rel(r.value, 12.0 * PI2) < 1e-7);
}

#[test]
fn self_dual_weyl_total_at_half_angle() {
    let r = total(&FamilyDescriptor::pedersen_abreu(0.5), Invariant::WplusTotal);
    assert!(rel(r.value, 9.0 * PI2) < 1e-4, "{}", r.value);
}

#[test]
fn eguchi_hanson_and_its_double_cover() {
    let r = total(&FamilyDescriptor::eguchi_hanson(PsiPeriod::TwoPi), Invariant::RiemTotal);
    assert!(rel(r.value, 12.0 * PI2) < 1e-4);
    let r = total(&FamilyDescriptor::eguchi_hanson(PsiPeriod::FourPi), Invariant::RiemTotal);
    assert!(rel(r.value, 24.0 * PI2) < 1e-4);
}

#[test]
fn taub_nut_families() {
    let r = total(&FamilyDescriptor::taub_nut(), Invariant::RiemTotal);
    assert!(rel(r.value, 8.0 * PI2) < 1e-4);
    let r = total(&FamilyDescriptor::multi_taub_nut(two_nuts()), Invariant::RiemTotal);
    assert!(rel(r.value, 16.0 * PI2) < 1e-3);
    assert!(r.substitutions_used.iter().any(|s| s.contains("tail bound")));
}

#[test]
fn hyperbolic_ansatz_with_two_centers() {
    let d = FamilyDescriptor::lebrun_gibbons_hawking(0.5, two_hyperbolic_centers());
    let sig = total(&d, Invariant::Signature);
    assert!(rel(sig.value, 2.0 * 2.25 / 3.0) < 1e-4, "{}", sig.value);
    let gb = total(&d, Invariant::GaussBonnet);
    assert!(rel(gb.value, 2.0 + 2.0 * 0.5) < 1e-4, "{}", gb.value);
}

#[test]
fn different_edge_metrics_with_equal_angle_agree() {
    for b in [0.4, 1.3] {
        let einstein = FamilyDescriptor::pedersen_abreu(b);
        let ansatz = FamilyDescriptor::lebrun_gibbons_hawking(b, vec![[0.0, 0.0, 0.0]]);
        for which in [Invariant::Signature, Invariant::GaussBonnet] {
            let (x, y) = (total(&einstein, which), total(&ansatz, which));
            assert!((x.value - y.value).abs() < 1e-6, "β = {b} {which:?}: {} vs {}", x.value, y.value);
        }
    }
}

#[test]
fn conformal_representatives_give_the_same_weyl_total() {
    for b in [0.5, 1.5] {
        let a = total(&FamilyDescriptor::pedersen_abreu(b), Invariant::WplusTotal);
        let c = total(
            &FamilyDescriptor::pedersen_abreu(b).with_representative(Representative::Background),
            Invariant::WplusTotal,
        );
        assert!((a.value - c.value).abs() <= a.abs_error_estimate + c.abs_error_estimate + 1e-12 * a.value);
    }
}

#[test]
fn orbit_factor_is_exact() {
    let r = total(&FamilyDescriptor::edge_s4(1.0), Invariant::Volume);
    assert!(rel(r.value, 8.0 * PI2 / 3.0) < 1e-9, "{}", r.value);
    let r = total(&FamilyDescriptor::fubini_study(), Invariant::Volume);
    assert!(rel(r.value, PI2 / 2.0) < 1e-9, "{}", r.value);
}

#[test]
fn edge_guard_band_does_not_move_the_value() {
    let m = metric(&FamilyDescriptor::edge_s4(0.3));
    let spec = QuadratureSpec::one_d();
    let a = integrate_invariant(&m, Invariant::GaussBonnet, &spec).unwrap();
    let b = integrate_invariant(&m, Invariant::GaussBonnet, &spec.clone().with_edge_guard(1e-5)).unwrap();
    assert!(rel(a.value, b.value) < spec.rel_tol, "{} vs {}", a.value, b.value);
}

#[test]
fn refinement_moves_values_within_their_error_estimates() {
    for (d, which) in [
        (FamilyDescriptor::pedersen_abreu(0.7), Invariant::Signature),
        (FamilyDescriptor::taub_nut(), Invariant::RiemTotal),
        (FamilyDescriptor::edge_s4(0.6), Invariant::GaussBonnet),
    ] {
        let m = metric(&d);
        let coarse = integrate_invariant(&m, which, &QuadratureSpec::one_d().with_rel_tol(1e-5)).unwrap();
        let fine = integrate_invariant(&m, which, &QuadratureSpec::one_d().with_rel_tol(5e-6)).unwrap();
        assert!((fine.value - coarse.value).abs() <= coarse.abs_error_estimate, "{}", m.name);
    }
}

#[test]
fn boundary_terms() {
    let flat = metric(&FamilyDescriptor::flat());
    for r in [0.5, 1.0, 7.0] {
        let b = boundary_term(&flat, r, &QuadratureSpec::one_d()).unwrap();
        assert!((b.value - 1.0).abs() < 1e-12, "{}", b.value);
    }
    let eh = metric(&FamilyDescriptor::eguchi_hanson(PsiPeriod::TwoPi));
    let b = boundary_term(&eh, 500.0, &QuadratureSpec::one_d()).unwrap();
    assert!((b.value - 0.5).abs() < 1e-6, "{}", b.value);
    let tn = metric(&FamilyDescriptor::taub_nut());
    let b = boundary_term(&tn, 1e4, &QuadratureSpec::one_d()).unwrap();
    assert!(b.value.abs() < 1e-6, "{}", b.value);
}

#[test]
fn gauss_bonnet_with_boundary_recovers_euler_characteristics() {
    for (d, r, chi) in [
        (FamilyDescriptor::flat(), 1.0, 1.0),
        (FamilyDescriptor::eguchi_hanson(PsiPeriod::TwoPi), 20.0, 2.0),
        (FamilyDescriptor::eguchi_hanson(PsiPeriod::TwoPi), 3.0, 2.0),
        (FamilyDescriptor::taub_nut(), 50.0, 1.0),
        (FamilyDescriptor::taub_nut(), 2.0, 1.0),
    ] {
        let m = metric(&d);
        let rep = gauss_bonnet_with_boundary(&m, r, &QuadratureSpec::one_d()).unwrap();
        assert_eq!(rep.predicted, Some(chi));
        assert!((rep.value - chi).abs() < 1e-6, "{} at {r}: {}", m.name, rep.value);
    }
}

#[test]
fn multi_center_gauss_bonnet_with_boundary() {
    let m = metric(&FamilyDescriptor::multi_taub_nut(two_nuts()));
    let rep = gauss_bonnet_with_boundary(&m, 30.0, &QuadratureSpec::two_d()).unwrap();
    assert!((rep.value - 2.0).abs() < 1e-3, "{}", rep.value);
}

#[test]
fn budget_exhaustion_returns_the_partial_result() {
    let m = metric(&FamilyDescriptor::pedersen_abreu(0.3));
    let spec = QuadratureSpec::one_d().with_rel_tol(1e-13).with_max_evals(60);
    match integrate_invariant(&m, Invariant::Signature, &spec) {
        Err(QuadratureError::BudgetExceeded { partial }) => {
            assert!(!partial.converged && partial.n_evals <= 90 && partial.value.is_finite());
        }
        other => panic!("expected budget exhaustion, got {other:?}"),
    }
}

#[test]
fn compact_metrics_have_no_tail_bound() {
    let m = metric(&FamilyDescriptor::edge_s4(0.5));
    assert!(matches!(
        integrate_noncompact(&m, Invariant::GaussBonnet, &QuadratureSpec::one_d()),
        Err(QuadratureError::TailBoundUnavailable(_))
    ));
}

#[test]
fn invalid_specs_are_rejected() {
    let m = metric(&FamilyDescriptor::edge_s4(0.5));
    let spec = QuadratureSpec::one_d().with_rel_tol(0.0);
    assert!(matches!(integrate_invariant(&m, Invariant::GaussBonnet, &spec), Err(QuadratureError::InvalidSpec(_))));
}

#[test]
fn cone_profile_regimes() {
    for b in [0.5, 1.0, 2.0, 0.2] {
        let p = cone_profile(b).unwrap();
        assert!((p.integral(1.0) - 1.0 / b).abs() < 1e-10, "β = {b}");
        assert_eq!(p.f(0.3), 1.0 / b);
        assert!((p.f(3.0) - 3f64.powf(b - 1.0)).abs() < 1e-15);
        assert!((p.potential(4.0) - 4f64.powf(b) / (b * b)).abs() < 1e-12);
        // F′ is continuous across t = 1, where F = t^β/β² takes over
        assert!((p.f_prime_potential(1.0) - 1.0 / b).abs() < 1e-10);
    }
    assert!((cone_profile(0.5).unwrap().potential(4.0) - 8.0).abs() < 1e-12);
    let flat = cone_profile(1.0).unwrap();
    assert!((flat.potential(0.7) - 0.7).abs() < 1e-12);
}

#[test]
fn smoothed_cone_total_curvature_matches_the_cone_deficit() {
    for b in [0.5, 1.0, 2.0, 0.3, 1.4] {
        let (v, err) = smoothed_cone_total_curvature(b, 1e-10).unwrap();
        assert!((v - 2.0 * PI * (1.0 - b)).abs() < 1e-6, "β = {b}: {v}");
        assert!(err < 1e-6);
    }
}
