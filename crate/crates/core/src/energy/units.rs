//! Unit registry for energy, power, time and flux conversions.
//!
//! Two constant sets are kept apart: [`ConstantSet::Exact`] uses defined or
//! precisely stated constants, [`ConstantSet::PaperApproximate`] the rounded
//! rules of thumb used in back-of-envelope budgets. A conversion always draws
//! both of its units from one set.

use std::fmt;

use crate::error::{Error, Result};

/// Julian year, used for every per-year flux.
pub const YEAR_SECONDS: f64 = 3.1557e7;
pub const DAY_SECONDS: f64 = 86_400.0;
/// International Table btu, rounded.
pub const BTU_JOULES: f64 = 1055.0;
/// Energy content of one barrel of crude oil.
pub const BARREL_JOULES: f64 = 5.5e9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstantSet {
    Exact,
    PaperApproximate,
}

impl ConstantSet {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstantSet::Exact => "exact",
            ConstantSet::PaperApproximate => "paper-approximate",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "exact" => Some(ConstantSet::Exact),
            "paper-approximate" => Some(ConstantSet::PaperApproximate),
            _ => None,
        }
    }
}

impl fmt::Display for ConstantSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    Energy,
    Power,
    Time,
    VolumeFlux,
    Velocity,
}

/// Whether a registered factor is exact or a rounded approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Exact,
    PaperApproximate,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::PaperApproximate => "paper-approximate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitDef {
    pub name: &'static str,
    pub dimension: Dimension,
    /// Value of one unit in the SI unit of its dimension (J, W, s, m³/s, m/s).
    pub si_factor: f64,
    pub provenance: Provenance,
    pub citation: &'static str,
}

const fn si(
    name: &'static str,
    dimension: Dimension,
    si_factor: f64,
    citation: &'static str,
) -> UnitDef {
    UnitDef {
        name,
        dimension,
        si_factor,
        provenance: Provenance::Exact,
        citation,
    }
}

const fn approx(
    name: &'static str,
    dimension: Dimension,
    si_factor: f64,
    citation: &'static str,
) -> UnitDef {
    UnitDef {
        name,
        dimension,
        si_factor,
        provenance: Provenance::PaperApproximate,
        citation,
    }
}

use Dimension::*;

/// SI multiples and calendar units, valid in both sets.
const COMMON: &[UnitDef] = &[
    si("J", Energy, 1.0, "SI"),
    si("kJ", Energy, 1e3, "SI"),
    si("MJ", Energy, 1e6, "SI"),
    si("GJ", Energy, 1e9, "SI"),
    si("kWh", Energy, 3.6e6, "SI: 1 kWh = 3.6 MJ"),
    si("W", Power, 1.0, "SI"),
    si("kW", Power, 1e3, "SI"),
    si("MW", Power, 1e6, "SI"),
    si("GW", Power, 1e9, "SI"),
    si("TW", Power, 1e12, "SI"),
    si("s", Time, 1.0, "SI"),
    si("day", Time, DAY_SECONDS, "86400 s"),
    si("year", Time, YEAR_SECONDS, "Julian year, 3.1557e7 s"),
    si("m3_per_s", VolumeFlux, 1.0, "SI"),
    si("m3_per_year", VolumeFlux, 1.0 / YEAR_SECONDS, "Julian year"),
    si("m_per_s", Velocity, 1.0, "SI"),
    si("mm_per_s", Velocity, 1e-3, "SI"),
    si("m_per_year", Velocity, 1.0 / YEAR_SECONDS, "Julian year"),
];

const EXACT: &[UnitDef] = &[
    si("btu", Energy, BTU_JOULES, "1 btu = 1055 J"),
    si("quad", Energy, 1e15 * BTU_JOULES, "10^15 btu at 1055 J"),
    si(
        "barrel",
        Energy,
        BARREL_JOULES,
        "crude oil, 5.5 GJ per barrel",
    ),
    si(
        "btu_per_year",
        Power,
        BTU_JOULES / YEAR_SECONDS,
        "1055 J per Julian year",
    ),
    si(
        "quad_per_year",
        Power,
        1e15 * BTU_JOULES / YEAR_SECONDS,
        "10^15 btu per Julian year",
    ),
    si(
        "kWh_per_year",
        Power,
        3.6e6 / YEAR_SECONDS,
        "3.6 MJ per Julian year",
    ),
    si(
        "barrel_per_day",
        Power,
        BARREL_JOULES / DAY_SECONDS,
        "5.5 GJ per 86400 s",
    ),
    si("GJ_per_year", Power, 1e9 / YEAR_SECONDS, "Julian year"),
];

const APPROXIMATE: &[UnitDef] = &[
    approx("btu", Energy, 1e3, "rule of thumb: 1 btu = 1 kJ"),
    approx("quad", Energy, 1e18, "rule of thumb: 1 btu = 1 kJ"),
    approx("g_oil", Energy, 5e4, "rule of thumb: 1 g oil = 50 kJ"),
    approx(
        "btu_per_year",
        Power,
        3.3e-5,
        "rule of thumb: 10^5 btu/year = 3.3 W",
    ),
    approx(
        "quad_per_year",
        Power,
        3.3e10,
        "rule of thumb: 10^5 btu/year = 3.3 W",
    ),
    approx(
        "kWh_per_year",
        Power,
        0.1,
        "rule of thumb: 1 kWh/year = 0.1 W",
    ),
    approx(
        "barrel_per_day",
        Power,
        6e4,
        "rule of thumb: 1 barrel/day = 60 kW",
    ),
];

/// All units available under `set`, common units first.
pub fn registry(set: ConstantSet) -> Vec<UnitDef> {
    let specific = match set {
        ConstantSet::Exact => EXACT,
        ConstantSet::PaperApproximate => APPROXIMATE,
    };
    COMMON.iter().chain(specific).copied().collect()
}

pub fn lookup(name: &str, set: ConstantSet) -> Option<UnitDef> {
    let specific = match set {
        ConstantSet::Exact => EXACT,
        ConstantSet::PaperApproximate => APPROXIMATE,
    };
    COMMON
        .iter()
        .chain(specific)
        .find(|u| u.name == name)
        .copied()
}

/// Converts `value` from one unit to another of the same dimension.
pub fn convert(value: f64, from: &str, to: &str, set: ConstantSet) -> Result<f64> {
    let unknown = || Error::UnknownConversion {
        from: from.to_string(),
        to: to.to_string(),
        set: set.as_str(),
        known: registry(set)
            .iter()
            .map(|u| u.name)
            .collect::<Vec<_>>()
            .join(", "),
    };
    let a = lookup(from, set).ok_or_else(unknown)?;
    let b = lookup(to, set).ok_or_else(unknown)?;
    if a.dimension != b.dimension {
        return Err(unknown());
    }
    if from == to {
        return Ok(value);
    }
    Ok(value * (a.si_factor / b.si_factor))
}
