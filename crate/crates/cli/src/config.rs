//! Job configuration files (TOML).

use std::fmt;
use std::path::{Path, PathBuf};

use edgecone::geometry_catalog::{FamilyDescriptor, FamilyKind};
use edgecone::quadrature::QuadratureSpec;
use edgecone::topology::{EdgeConeTopology, Instanton, Number};
use serde::{Deserialize, Serialize};

use crate::ConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JobKind {
    VerifyGb,
    VerifySig,
    VerifyEinstein,
    Instanton,
    BoundaryGb,
    HtCheck,
    CscSum,
    Cone2d,
    Table,
}

impl JobKind {
    /// Default pass tolerance, relative to `max(1, |predicted|)`.
    pub fn default_tolerance(self) -> f64 {
        match self {
            JobKind::VerifyGb => 1e-6,
            JobKind::VerifySig => 1e-4,
            JobKind::VerifyEinstein => 1e-6,
            JobKind::BoundaryGb => 1e-3,
            JobKind::CscSum => 1e-9,
            JobKind::Cone2d => 1e-6,
            JobKind::Instanton | JobKind::HtCheck | JobKind::Table => 0.0,
        }
    }
}

impl fmt::Display for JobKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        f.write_str(&s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureOverrides {
    pub rel_tol: Option<f64>,
    pub max_evals: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    /// Cone-angle parameters; applied to `family.beta` or `topology.beta`.
    pub beta: Option<Vec<Number>>,
    /// Level-set radii for `boundary-gb`.
    pub radius: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub job: JobKind,
    pub family: Option<FamilyDescriptor>,
    pub topology: Option<EdgeConeTopology>,
    pub instanton: Option<Instanton>,
    /// Group order for `csc-sum`.
    pub p: Option<u64>,
    /// Level-set radius for `boundary-gb`.
    pub radius: Option<f64>,
    /// Sample count for `verify-einstein`.
    pub samples: Option<usize>,
    /// Largest Dynkin index listed by `table`.
    pub k_max: Option<u32>,
    /// Pass tolerance, relative to `max(1, |predicted|)`.
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub quadrature: QuadratureOverrides,
    pub sweep: Option<Sweep>,
    #[serde(default)]
    pub output: Output,
}

impl JobConfig {
    pub fn new(job: JobKind) -> Self {
        JobConfig {
            job,
            family: None,
            topology: None,
            instanton: None,
            p: None,
            radius: None,
            samples: None,
            k_max: None,
            tolerance: None,
            quadrature: QuadratureOverrides::default(),
            sweep: None,
            output: Output::default(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let c: JobConfig = toml::from_str(text).map_err(|e| ConfigError(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| ConfigError(format!("{}: {}", path.display(), e.0)))
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance.unwrap_or(self.job.default_tolerance())
    }

    pub fn quadrature_spec(&self, base: QuadratureSpec) -> QuadratureSpec {
        let mut s = base;
        if let Some(t) = self.quadrature.rel_tol {
            s = s.with_rel_tol(t);
        }
        if let Some(n) = self.quadrature.max_evals {
            s = s.with_max_evals(n);
        }
        s
    }

    pub fn betas(&self) -> Option<&[Number]> {
        self.sweep.as_ref().and_then(|s| s.beta.as_deref())
    }

    pub fn radii(&self) -> Option<&[f64]> {
        self.sweep.as_ref().and_then(|s| s.radius.as_deref())
    }

    fn family(&self) -> Result<&FamilyDescriptor, ConfigError> {
        self.family.as_ref().ok_or_else(|| ConfigError(format!("job {} needs a [family] table", self.job)))
    }

    /// Family descriptors for each sweep point (or the single configured one).
    pub fn family_points(&self) -> Result<Vec<(Option<f64>, FamilyDescriptor)>, ConfigError> {
        let base = self.family()?;
        Ok(match self.betas() {
            None => vec![(None, base.clone())],
            Some(bs) => bs
                .iter()
                .map(|b| (Some(b.to_f64()), FamilyDescriptor { beta: Some(b.to_f64()), ..base.clone() }))
                .collect(),
        })
    }

    pub fn topology_points(&self) -> Result<Vec<(Option<Number>, EdgeConeTopology)>, ConfigError> {
        let base = self.topology.as_ref().ok_or_else(|| ConfigError("job ht-check needs a [topology] table".into()))?;
        Ok(match self.betas() {
            None => vec![(None, base.clone())],
            Some(bs) => bs.iter().map(|b| (Some(*b), EdgeConeTopology { beta: *b, ..base.clone() })).collect(),
        })
    }

    /// Check everything that can be checked without computing.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |msg: String| Err(ConfigError(msg));
        if let Some(t) = self.tolerance {
            if !(t >= 0.0 && t.is_finite()) {
                return bad(format!("tolerance must be non-negative, got {t}"));
            }
        }
        if let Some(t) = self.quadrature.rel_tol {
            if !(t > 0.0 && t < 1.0) {
                return bad(format!("quadrature.rel_tol must lie in (0, 1), got {t}"));
            }
        }
        if self.quadrature.max_evals == Some(0) {
            return bad("quadrature.max_evals must be positive".into());
        }
        let job = self.job;
        let uses_family = matches!(job, JobKind::VerifyGb | JobKind::VerifySig | JobKind::VerifyEinstein | JobKind::BoundaryGb | JobKind::Cone2d);
        let extra = [
            ("family", self.family.is_some() && !uses_family),
            ("topology", self.topology.is_some() && job != JobKind::HtCheck),
            ("instanton", self.instanton.is_some() && job != JobKind::Instanton),
            ("p", self.p.is_some() && job != JobKind::CscSum),
            ("radius", self.radius.is_some() && job != JobKind::BoundaryGb),
            ("samples", self.samples.is_some() && job != JobKind::VerifyEinstein),
            ("k_max", self.k_max.is_some() && job != JobKind::Table),
        ];
        if let Some((key, _)) = extra.iter().find(|e| e.1) {
            return bad(format!("key `{key}` does not apply to job {job}"));
        }
        if let Some(s) = &self.sweep {
            if s.beta.is_some() && s.radius.is_some() {
                return bad("sweep over beta or radius, not both".into());
            }
            if s.beta.as_ref().is_some_and(|v| v.is_empty()) || s.radius.as_ref().is_some_and(|v| v.is_empty()) {
                return bad("sweep grid is empty".into());
            }
            if s.beta.is_some() && !(uses_family && job != JobKind::BoundaryGb || job == JobKind::HtCheck) {
                return bad(format!("job {job} cannot sweep over beta"));
            }
            if s.radius.is_some() && job != JobKind::BoundaryGb {
                return bad(format!("job {job} cannot sweep over radius"));
            }
        }
        let invalid = |e: &dyn fmt::Display| ConfigError(e.to_string());
        if uses_family {
            for (_, d) in self.family_points()? {
                d.validate().map_err(|e| invalid(&e))?;
                let cone = d.family == FamilyKind::SmoothedCone2d;
                if cone != (job == JobKind::Cone2d) {
                    return bad(format!("job {job} cannot use family {}", d.family.name()));
                }
            }
        }
        match job {
            JobKind::HtCheck => {
                for (_, t) in self.topology_points()? {
                    t.validate().map_err(|e| invalid(&e))?;
                }
            }
            JobKind::Instanton => match &self.instanton {
                None => return bad("job instanton needs an `instanton` entry".into()),
                Some(Instanton::Table(d)) => d.dynkin.validate().map_err(|e| invalid(&e))?,
                Some(Instanton::Named(_)) => {}
            },
            JobKind::CscSum => match self.p {
                Some(p) if p >= 2 => {}
                Some(p) => return bad(format!("p must be at least 2, got {p}")),
                None => return bad("job csc-sum needs `p`".into()),
            },
            JobKind::BoundaryGb => {
                let radii = match (self.radius, self.radii()) {
                    (Some(_), Some(_)) => return bad("give `radius` or `sweep.radius`, not both".into()),
                    (Some(r), None) => vec![r],
                    (None, Some(rs)) => rs.to_vec(),
                    (None, None) => return bad("job boundary-gb needs `radius` or `sweep.radius`".into()),
                };
                if let Some(r) = radii.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
                    return bad(format!("radius must be positive, got {r}"));
                }
            }
            JobKind::VerifyEinstein if self.samples == Some(0) => return bad("samples must be positive".into()),
            _ => {}
        }
        Ok(())
    }
}
