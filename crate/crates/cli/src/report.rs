//! Job reports: JSON is the canonical form, CSV flattens the rows.

use std::collections::BTreeMap;

use edgecone::quadrature::IntegralReport;
use edgecone::topology::{CscSum, HTVerdict, Number, TableRow};
use serde::{Deserialize, Serialize};

use crate::config::JobConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Row {
    Integral {
        parameter: Option<f64>,
        invariant: String,
        tolerance: f64,
        report: IntegralReport,
        pass: Option<bool>,
    },
    BoundaryGb {
        radius: f64,
        tolerance: f64,
        interior: f64,
        boundary: f64,
        report: IntegralReport,
        pass: Option<bool>,
    },
    Einstein {
        parameter: Option<f64>,
        samples: usize,
        tolerance: f64,
        max_traceless_ricci: f64,
        scalar_min: f64,
        scalar_max: f64,
        scalar_expected: Option<f64>,
        scalar_rel_error: Option<f64>,
        pass: bool,
    },
    Instanton {
        label: String,
        coefficient: Number,
        value: f64,
    },
    HtCheck {
        parameter: Option<Number>,
        defect_plus: Number,
        defect_minus: Number,
        verdict: HTVerdict,
    },
    CscSum {
        tolerance: f64,
        result: CscSum,
        pass: bool,
    },
    Cone2d {
        beta: f64,
        tolerance: f64,
        inner_integral: f64,
        inner_expected: f64,
        total_curvature: f64,
        abs_error_estimate: f64,
        curvature_expected: f64,
        pass: bool,
    },
    Table(TableRow),
}

impl Row {
    /// `None` for rows without an acceptance tolerance.
    pub fn pass(&self) -> Option<bool> {
        match self {
            Row::Integral { pass, .. } | Row::BoundaryGb { pass, .. } => *pass,
            Row::Einstein { pass, .. } | Row::CscSum { pass, .. } | Row::Cone2d { pass, .. } => Some(*pass),
            Row::Instanton { .. } | Row::HtCheck { .. } | Row::Table(_) => None,
        }
    }

    /// Re-derive the pass flag from the recorded numbers.
    pub fn recompute_pass(&self) -> Option<bool> {
        match self {
            Row::Integral { tolerance, report, .. } | Row::BoundaryGb { tolerance, report, .. } => {
                report.predicted.and_then(|p| report.passes(tolerance * p.abs().max(1.0)))
            }
            Row::Einstein { tolerance, max_traceless_ricci, scalar_min, scalar_max, scalar_rel_error, .. } => {
                let spread = scalar_max - scalar_min;
                let scale = scalar_max.abs().max(scalar_min.abs()).max(1.0);
                Some(
                    *max_traceless_ricci <= *tolerance
                        && spread <= 1e-5 * scale
                        && scalar_rel_error.is_none_or(|e| e <= 1e-5),
                )
            }
            Row::CscSum { tolerance, result, .. } => Some(result.rel_error <= *tolerance),
            Row::Cone2d { tolerance, inner_integral, inner_expected, total_curvature, curvature_expected, .. } => {
                Some((inner_integral - inner_expected).abs() <= 1e-10 && (total_curvature - curvature_expected).abs() <= *tolerance)
            }
            Row::Instanton { .. } | Row::HtCheck { .. } | Row::Table(_) => None,
        }
    }

    fn fields(&self) -> Vec<(&'static str, String)> {
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        let optb = |x: Option<bool>| x.map(|v| v.to_string()).unwrap_or_default();
        let num = |n: &Number| n.to_string();
        match self {
            Row::Integral { parameter, invariant, tolerance, report, pass } => vec![
                ("parameter", opt(*parameter)),
                ("invariant", invariant.clone()),
                ("value", report.value.to_string()),
                ("abs_error_estimate", report.abs_error_estimate.to_string()),
                ("predicted", opt(report.predicted)),
                ("residual", opt(report.residual)),
                ("tolerance", tolerance.to_string()),
                ("n_evals", report.n_evals.to_string()),
                ("pass", optb(*pass)),
            ],
            Row::BoundaryGb { radius, tolerance, interior, boundary, report, pass } => vec![
                ("radius", radius.to_string()),
                ("interior", interior.to_string()),
                ("boundary", boundary.to_string()),
                ("value", report.value.to_string()),
                ("abs_error_estimate", report.abs_error_estimate.to_string()),
                ("predicted", opt(report.predicted)),
                ("residual", opt(report.residual)),
                ("tolerance", tolerance.to_string()),
                ("n_evals", report.n_evals.to_string()),
                ("pass", optb(*pass)),
            ],
            Row::Einstein {
                parameter,
                samples,
                tolerance,
                max_traceless_ricci,
                scalar_min,
                scalar_max,
                scalar_expected,
                scalar_rel_error,
                pass,
            } => vec![
                ("parameter", opt(*parameter)),
                ("samples", samples.to_string()),
                ("max_traceless_ricci", max_traceless_ricci.to_string()),
                ("scalar_min", scalar_min.to_string()),
                ("scalar_max", scalar_max.to_string()),
                ("scalar_expected", opt(*scalar_expected)),
                ("scalar_rel_error", opt(*scalar_rel_error)),
                ("tolerance", tolerance.to_string()),
                ("pass", pass.to_string()),
            ],
            Row::Instanton { label, coefficient, value } => vec![
                ("instanton", label.clone()),
                ("coefficient_of_8pi2", num(coefficient)),
                ("value", value.to_string()),
                ("abs_error_estimate", "0".into()),
            ],
            Row::HtCheck { parameter, defect_plus, defect_minus, verdict: v } => vec![
                ("parameter", parameter.as_ref().map(num).unwrap_or_default()),
                ("defect_plus", num(defect_plus)),
                ("defect_minus", num(defect_minus)),
                ("lhs_plus", num(&v.lhs_plus)),
                ("rhs_plus", num(&v.rhs_plus)),
                ("holds_plus", v.holds_plus.to_string()),
                ("equality_plus", v.equality_plus.to_string()),
                ("lhs_minus", num(&v.lhs_minus)),
                ("rhs_minus", num(&v.rhs_minus)),
                ("holds_minus", v.holds_minus.to_string()),
                ("equality_minus", v.equality_minus.to_string()),
                ("exact", v.exact.to_string()),
            ],
            Row::CscSum { tolerance, result, pass } => vec![
                ("p", result.p.to_string()),
                ("direct", result.direct.to_string()),
                ("closed_form", num(&result.closed_form)),
                ("rel_error", result.rel_error.to_string()),
                ("tolerance", tolerance.to_string()),
                ("pass", pass.to_string()),
            ],
            Row::Cone2d {
                beta,
                tolerance,
                inner_integral,
                inner_expected,
                total_curvature,
                abs_error_estimate,
                curvature_expected,
                pass,
            } => vec![
                ("beta", beta.to_string()),
                ("inner_integral", inner_integral.to_string()),
                ("inner_expected", inner_expected.to_string()),
                ("total_curvature", total_curvature.to_string()),
                ("abs_error_estimate", abs_error_estimate.to_string()),
                ("curvature_expected", curvature_expected.to_string()),
                ("tolerance", tolerance.to_string()),
                ("pass", pass.to_string()),
            ],
            Row::Table(t) => vec![
                ("dynkin", t.dynkin.clone()),
                ("group", t.group_name.clone()),
                ("group_order", t.group_order.to_string()),
                ("chi", t.chi.to_string()),
                ("ale_coefficient_of_8pi2", num(&t.ale.coefficient)),
                ("ale_value", t.ale.value.to_string()),
                ("alf_coefficient_of_8pi2", t.alf.map(|a| num(&a.coefficient)).unwrap_or_default()),
                ("alf_value", t.alf.map(|a| a.value.to_string()).unwrap_or_default()),
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub workers: usize,
    pub wall_time_s: f64,
    pub calibration: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub job: JobConfig,
    pub rows: Vec<Row>,
    pub pass: bool,
    pub provenance: Provenance,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One header line and one record per row; jobs produce rows of a single kind.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(vec![]);
        if let Some(first) = self.rows.first() {
            w.write_record(first.fields().iter().map(|f| f.0))?;
        }
        for r in &self.rows {
            w.write_record(r.fields().iter().map(|f| f.1.as_str()))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}
