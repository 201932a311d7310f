#![allow(dead_code)]

use edgecone::geometry_catalog::{make_metric, FamilyDescriptor, PsiPeriod, Representative};
use edgecone::metric_engine::MetricField;

pub fn two_nuts() -> Vec<[f64; 3]> {
    vec![[0.0, 0.0, -1.0], [0.0, 0.0, 1.0]]
}

pub fn two_hyperbolic_centers() -> Vec<[f64; 3]> {
    vec![[0.0, 0.0, -0.3], [0.0, 0.0, 0.4]]
}

/// One representative of every catalog family, plus parameter variants.
pub fn catalog() -> Vec<(FamilyDescriptor, MetricField)> {
    let mut ds = vec![
        FamilyDescriptor::flat(),
        FamilyDescriptor::fubini_study(),
        FamilyDescriptor::eguchi_hanson(PsiPeriod::TwoPi),
        FamilyDescriptor::eguchi_hanson(PsiPeriod::FourPi),
        FamilyDescriptor::taub_nut(),
        FamilyDescriptor::multi_taub_nut(two_nuts()),
        FamilyDescriptor::lebrun_gibbons_hawking(0.5, vec![[0.0, 0.0, 0.0]]),
        FamilyDescriptor::lebrun_gibbons_hawking(0.7, two_hyperbolic_centers()),
        FamilyDescriptor::pedersen_abreu(0.5).with_representative(Representative::Background),
    ];
    for b in [0.3, 1.0, 1.7] {
        ds.push(FamilyDescriptor::edge_s4(b));
    }
    for b in [0.25, 0.5, 1.0, 1.5, 1.9] {
        ds.push(FamilyDescriptor::pedersen_abreu(b));
    }
    ds.into_iter().map(|d| {
        let m = make_metric(&d).unwrap();
        (d, m)
    }).collect()
}

/// Gibbons–Hawking-type members, which have `W₋ = 0`.
pub fn self_dual_members() -> Vec<MetricField> {
    [
        FamilyDescriptor::eguchi_hanson(PsiPeriod::TwoPi),
        FamilyDescriptor::taub_nut(),
        FamilyDescriptor::multi_taub_nut(two_nuts()),
        FamilyDescriptor::lebrun_gibbons_hawking(0.5, vec![[0.0, 0.0, 0.0]]),
        FamilyDescriptor::lebrun_gibbons_hawking(0.7, two_hyperbolic_centers()),
        FamilyDescriptor::pedersen_abreu(0.8),
    ]
    .iter()
    .map(|d| make_metric(d).unwrap())
    .collect()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
