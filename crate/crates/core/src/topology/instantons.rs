//! Total squared curvature of ALE and ALF gravitational instantons.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Number, TopologyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "k")]
pub enum Dynkin {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
}

impl fmt::Display for Dynkin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dynkin::A(k) => write!(f, "A_{k}"),
            Dynkin::D(k) => write!(f, "D_{k}"),
            Dynkin::E6 => f.write_str("E_6"),
            Dynkin::E7 => f.write_str("E_7"),
            Dynkin::E8 => f.write_str("E_8"),
        }
    }
}

impl Dynkin {
    pub fn validate(self) -> Result<(), TopologyError> {
        match self {
            Dynkin::A(0) => Err(TopologyError::InvalidInput("A_k needs k >= 1".into())),
            Dynkin::D(k) if k < 3 => Err(TopologyError::InvalidInput("D_k needs k >= 3".into())),
            _ => Ok(()),
        }
    }

    /// Number of nodes, equal to `b₂` of the instanton.
    pub fn nodes(self) -> u32 {
        match self {
            Dynkin::A(k) | Dynkin::D(k) => k,
            Dynkin::E6 => 6,
            Dynkin::E7 => 7,
            Dynkin::E8 => 8,
        }
    }

    pub fn euler_characteristic(self) -> i64 {
        self.nodes() as i64 + 1
    }

    /// Order of the finite subgroup of SU(2).
    pub fn group_order(self) -> u64 {
        match self {
            Dynkin::A(k) => k as u64 + 1,
            Dynkin::D(k) => 4 * k as u64 - 8,
            Dynkin::E6 => 24,
            Dynkin::E7 => 48,
            Dynkin::E8 => 120,
        }
    }

    pub fn group_name(self) -> &'static str {
        match self {
            Dynkin::A(_) => "cyclic",
            Dynkin::D(_) => "binary dihedral",
            Dynkin::E6 => "binary tetrahedral",
            Dynkin::E7 => "binary octahedral",
            Dynkin::E8 => "binary icosahedral",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Asymptotics {
    Ale,
    Alf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstantonDescriptor {
    pub dynkin: Dynkin,
    pub asymptotics: Asymptotics,
}

/// Instantons outside the ADE table whose totals follow from `χ` alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedInstanton {
    TaubNut,
    AtiyahHitchin,
    /// The double cover of Atiyah–Hitchin.
    AtiyahHitchinCover,
}

impl NamedInstanton {
    pub fn euler_characteristic(self) -> i64 {
        match self {
            NamedInstanton::TaubNut | NamedInstanton::AtiyahHitchin => 1,
            NamedInstanton::AtiyahHitchinCover => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", untagged)]
pub enum Instanton {
    Table(InstantonDescriptor),
    Named(NamedInstanton),
}

/// `∫|ℛ|² dμ = 8π²·coefficient`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureTotal {
    pub coefficient: Number,
    pub value: f64,
}

impl CurvatureTotal {
    fn of(coefficient: Number) -> Self {
        CurvatureTotal { coefficient, value: 8.0 * PI * PI * coefficient.to_f64() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub dynkin: String,
    pub group_name: String,
    pub group_order: u64,
    pub chi: i64,
    pub ale: CurvatureTotal,
    pub alf: Option<CurvatureTotal>,
}

/// `∫|ℛ|² dμ` for an instanton: `8π²(χ − 1/|Γ|)` (ALE) or `8π²χ` (ALF).
pub fn instanton_total(i: &Instanton) -> Result<CurvatureTotal, TopologyError> {
    match *i {
        Instanton::Named(n) => Ok(CurvatureTotal::of(Number::int(n.euler_characteristic()))),
        Instanton::Table(d) => {
            d.dynkin.validate()?;
            let chi = Number::int(d.dynkin.euler_characteristic());
            match (d.asymptotics, d.dynkin) {
                (Asymptotics::Ale, g) => Ok(CurvatureTotal::of(chi - Number::ratio(1, g.group_order() as i64))),
                (Asymptotics::Alf, Dynkin::E6 | Dynkin::E7 | Dynkin::E8) => Err(TopologyError::NoAlfForEType(d.dynkin.to_string())),
                (Asymptotics::Alf, _) => Ok(CurvatureTotal::of(chi)),
            }
        }
    }
}

/// Rows for `A_1..A_k_max`, `D_4..D_k_max` and the three exceptional diagrams.
pub fn instanton_table_up_to(k_max: u32) -> Vec<TableRow> {
    let diagrams = (1..=k_max)
        .map(Dynkin::A)
        .chain((4..=k_max).map(Dynkin::D))
        .chain([Dynkin::E6, Dynkin::E7, Dynkin::E8]);
    diagrams
        .map(|dynkin| {
            let total = |asymptotics| instanton_total(&Instanton::Table(InstantonDescriptor { dynkin, asymptotics })).ok();
            TableRow {
                dynkin: dynkin.to_string(),
                group_name: dynkin.group_name().to_string(),
                group_order: dynkin.group_order(),
                chi: dynkin.euler_characteristic(),
                ale: total(Asymptotics::Ale).expect("every diagram has an ALE total"),
                alf: total(Asymptotics::Alf),
            }
        })
        .collect()
}

pub fn instanton_table() -> Vec<TableRow> {
    instanton_table_up_to(8)
}

/// `∫|W₊|² dμ` of the `n`-center hyperbolic-ansatz edge metric, as a multiple of `8π²`:
/// `12π²·n(2 + β²)/3 = 8π²·n(2 + β²)/2`.
pub fn hyperbolic_ansatz_wplus_coefficient(n: u32, beta: Number) -> Number {
    Number::int(n as i64) * (Number::int(2) + beta * beta) * Number::ratio(1, 2)
}
