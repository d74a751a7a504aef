//! Order-of-magnitude estimators for the large natural energy fluxes and for
//! how much of a country's consumption is actually usable.
//!
//! All estimators return watts and are multilinear in their physical inputs.

mod tables;
pub mod units;

pub use tables::{budget_table, parse_budget_csv, BudgetEntry, BudgetTables, BUDGET_COLUMNS};
pub use units::{convert, ConstantSet};

use crate::error::{ensure_fraction, ensure_non_negative, ensure_positive, Error, Result};

pub const WATER_DENSITY: f64 = 1e3;
pub const GRAVITY: f64 = 9.8;
/// Fraction of gross hydropower that is economically available.
pub const ECONOMIC_HYDRO_FRACTION: f64 = 0.2;
/// Upper bound on the electric efficiency of a nuclear plant.
pub const NUCLEAR_EFFICIENCY: f64 = 0.30;
/// Atmospheric circulation power the dissipation estimate is meant to match.
pub const CLAIMED_CIRCULATION_POWER: f64 = 1e15;
/// Tolerance on a shares-sum-to-one check; published shares are rounded.
pub const SHARE_SUM_TOLERANCE: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermohalineInput {
    /// Polar sinking flux F, m³/s.
    pub sink_flux: f64,
    /// Ocean area over which the water upwells, m².
    pub upwelling_area: f64,
    /// Warming of the upwelled water, K.
    pub delta_t: f64,
    pub water_density: f64,
    /// kJ/(kg·K).
    pub heat_capacity: f64,
}

impl ThermohalineInput {
    /// 10^15 m³/yr of polar sinking, taken as 3e7 m³/s; 4 °C deep water
    /// warmed to the 15 °C surface.
    pub fn reference() -> Self {
        ThermohalineInput {
            sink_flux: 3e7,
            upwelling_area: 3.6e14,
            delta_t: 11.0,
            water_density: WATER_DENSITY,
            heat_capacity: 4.2,
        }
    }

    fn validate(&self) -> Result<()> {
        ensure_positive("sink_flux", self.sink_flux)?;
        ensure_positive("upwelling_area", self.upwelling_area)?;
        ensure_non_negative("delta_t", self.delta_t)?;
        ensure_positive("water_density", self.water_density)?;
        ensure_positive("heat_capacity", self.heat_capacity)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermohalinePower {
    /// u = F/S, m/s.
    pub upwelling_velocity: f64,
    pub upwelling_m_per_year: f64,
    pub power: f64,
}

/// Heat taken up by upwelling deep water: `ρ c ΔT F`.
pub fn thermohaline_power(input: &ThermohalineInput) -> Result<ThermohalinePower> {
    input.validate()?;
    let u = input.sink_flux / input.upwelling_area;
    Ok(ThermohalinePower {
        upwelling_velocity: u,
        upwelling_m_per_year: u * units::YEAR_SECONDS,
        power: input.water_density * input.heat_capacity * 1e3 * input.delta_t * input.sink_flux,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindCirculationInput {
    /// Compression coefficient of the water vapour profile.
    pub beta: f64,
    /// Relative saturated vapour content near the surface.
    pub gamma: f64,
    pub air_density: f64,
    pub g: f64,
    /// Upwelling velocity, m/s.
    pub w: f64,
    /// Scale height of water vapour, m.
    pub h_vapor: f64,
    pub surface_area: f64,
    /// Global precipitation, mol/(m²·s).
    pub precipitation: f64,
    /// Near-surface vapour concentration, mol/m³.
    pub vapor_concentration: f64,
    /// Eddy viscosity ν, m²/s.
    pub eddy_viscosity: f64,
    /// Horizontal wind speed, m/s.
    pub wind_speed: f64,
    /// Vertical scale of wind shear, m.
    pub shear_scale: f64,
}

impl WindCirculationInput {
    /// Global means; `w` is 1 mm/s as commonly quoted rather than the
    /// precipitation-derived value.
    pub fn reference() -> Self {
        WindCirculationInput {
            beta: 3.0,
            gamma: 0.02,
            air_density: 1.0,
            g: GRAVITY,
            w: 1e-3,
            h_vapor: 2400.0,
            surface_area: 5e14,
            precipitation: 1.7e-3,
            vapor_concentration: 0.7,
            eddy_viscosity: 3.0,
            wind_speed: 7.0,
            shear_scale: 100.0,
        }
    }

    fn validate(&self) -> Result<()> {
        ensure_positive("beta", self.beta)?;
        ensure_non_negative("gamma", self.gamma)?;
        ensure_positive("air_density", self.air_density)?;
        ensure_positive("g", self.g)?;
        ensure_non_negative("w", self.w)?;
        ensure_positive("h_vapor", self.h_vapor)?;
        ensure_positive("surface_area", self.surface_area)?;
        ensure_non_negative("precipitation", self.precipitation)?;
        ensure_positive("vapor_concentration", self.vapor_concentration)?;
        ensure_positive("eddy_viscosity", self.eddy_viscosity)?;
        ensure_non_negative("wind_speed", self.wind_speed)?;
        ensure_positive("shear_scale", self.shear_scale)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindUpwelling {
    /// f_E = β γ ρ g, N/m³.
    pub force_density: f64,
    pub power: f64,
    /// Precipitation over vapour concentration, m/s; reported for
    /// comparison with the `w` actually used.
    pub w_from_precip: f64,
}

pub fn wind_upwelling_power(input: &WindCirculationInput) -> Result<WindUpwelling> {
    input.validate()?;
    let f_e = input.beta * input.gamma * input.air_density * input.g;
    Ok(WindUpwelling {
        force_density: f_e,
        power: f_e * input.w * input.h_vapor * input.surface_area,
        w_from_precip: input.precipitation / input.vapor_concentration,
    })
}

/// Two readings of the frictional dissipation estimate. They differ by a
/// factor ν/l and neither reaches [`CLAIMED_CIRCULATION_POWER`]; both are
/// returned with a consistency flag rather than picking one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindDissipation {
    /// From the friction force ρνu/l²: ρ ν u² S / l².
    pub literal: f64,
    /// From the power expression ρ u² S / l.
    pub printed_variant: f64,
    pub claimed: f64,
    /// Within a factor 2 of `claimed`.
    pub literal_matches_claim: bool,
    pub printed_variant_matches_claim: bool,
}

pub fn wind_dissipation_power(input: &WindCirculationInput) -> Result<WindDissipation> {
    input.validate()?;
    let rho_u2_s = input.air_density * input.wind_speed * input.wind_speed * input.surface_area;
    let literal = rho_u2_s * input.eddy_viscosity / (input.shear_scale * input.shear_scale);
    let printed_variant = rho_u2_s / input.shear_scale;
    Ok(WindDissipation {
        literal,
        printed_variant,
        claimed: CLAIMED_CIRCULATION_POWER,
        literal_matches_claim: within_factor(literal, CLAIMED_CIRCULATION_POWER, 2.0),
        printed_variant_matches_claim: within_factor(
            printed_variant,
            CLAIMED_CIRCULATION_POWER,
            2.0,
        ),
    })
}

/// True when `a` and `b` are positive and differ by at most `factor`.
pub fn within_factor(a: f64, b: f64, factor: f64) -> bool {
    a > 0.0 && b > 0.0 && a / b <= factor && b / a <= factor
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HydroOsmoticInput {
    /// Global river runoff, m³/s.
    pub runoff: f64,
    /// Mean height of the continents, m.
    pub mean_height: f64,
    /// Osmotic pressure of seawater, atm.
    pub osmotic_pressure: f64,
    pub water_column_per_atm: f64,
}

impl HydroOsmoticInput {
    pub fn reference() -> Self {
        HydroOsmoticInput {
            runoff: 1.5e6,
            mean_height: 200.0,
            osmotic_pressure: 28.0,
            water_column_per_atm: 10.0,
        }
    }

    fn validate(&self) -> Result<()> {
        ensure_positive("runoff", self.runoff)?;
        ensure_non_negative("mean_height", self.mean_height)?;
        ensure_non_negative("osmotic_pressure", self.osmotic_pressure)?;
        ensure_positive("water_column_per_atm", self.water_column_per_atm)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hydropower {
    pub gross: f64,
    pub economically_available: f64,
}

/// Runoff falling from the mean continental height: `R ρ g H`.
pub fn hydropower(input: &HydroOsmoticInput) -> Result<Hydropower> {
    input.validate()?;
    let gross = input.runoff * WATER_DENSITY * GRAVITY * input.mean_height;
    Ok(Hydropower {
        gross,
        economically_available: ECONOMIC_HYDRO_FRACTION * gross,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OsmoticPower {
    /// Equivalent water column of the osmotic pressure, m.
    pub head: f64,
    pub power: f64,
}

/// Runoff dropping through the osmotic head at river mouths.
pub fn osmotic_power(input: &HydroOsmoticInput) -> Result<OsmoticPower> {
    input.validate()?;
    let head = input.osmotic_pressure * input.water_column_per_atm;
    Ok(OsmoticPower {
        head,
        power: input.runoff * WATER_DENSITY * GRAVITY * head,
    })
}

/// Fractions of total primary consumption by source.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SourceShares {
    pub oil: f64,
    pub coal: f64,
    pub gas: f64,
    pub nuclear: f64,
    pub hydro: f64,
    pub other: f64,
}

impl SourceShares {
    pub fn sum(&self) -> f64 {
        self.oil + self.coal + self.gas + self.nuclear + self.hydro + self.other
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectricMix {
    /// Electric power produced, W.
    pub total: f64,
    pub thermal: f64,
    pub nuclear: f64,
    pub hydro: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyMix {
    /// Total primary consumption, W.
    pub total: f64,
    pub shares: SourceShares,
    pub electric: Option<ElectricMix>,
    /// Used when `electric` is absent to estimate usable nuclear output.
    pub nuclear_usable_efficiency: f64,
}

impl EnergyMix {
    pub fn new(total: f64, shares: SourceShares, electric: Option<ElectricMix>) -> Result<Self> {
        let mix = EnergyMix {
            total,
            shares,
            electric,
            nuclear_usable_efficiency: NUCLEAR_EFFICIENCY,
        };
        mix.validate()?;
        Ok(mix)
    }

    pub fn with_efficiency(mut self, efficiency: f64) -> Result<Self> {
        self.nuclear_usable_efficiency = efficiency;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        ensure_positive("total", self.total)?;
        let s = &self.shares;
        for (field, v) in [
            ("shares.oil", s.oil),
            ("shares.coal", s.coal),
            ("shares.gas", s.gas),
            ("shares.nuclear", s.nuclear),
            ("shares.hydro", s.hydro),
            ("shares.other", s.other),
        ] {
            ensure_fraction(field, v)?;
        }
        check_sum("shares", s.sum())?;
        if let Some(e) = &self.electric {
            ensure_positive("electric.total", e.total)?;
            ensure_fraction("electric.thermal", e.thermal)?;
            ensure_fraction("electric.nuclear", e.nuclear)?;
            ensure_fraction("electric.hydro", e.hydro)?;
            check_sum("electric", e.thermal + e.nuclear + e.hydro)?;
        }
        let eff = self.nuclear_usable_efficiency;
        if !(eff > 0.0 && eff <= 1.0) {
            return Err(Error::domain(
                "nuclear_usable_efficiency",
                "must lie in (0, 1]",
                eff,
            ));
        }
        Ok(())
    }

    /// Builds a region's mix from the consumption and electricity tables.
    /// A share printed as "<1" is taken at its bound.
    pub fn from_tables(tables: &BudgetTables, region: &str) -> Option<Self> {
        let a2 = |q: &str| tables.a2_entry(q, region);
        let share = |q: &str| a2(q).and_then(|e| e.fraction());
        let other = share("other").or_else(|| share("other_upper_bound"))?;
        let shares = SourceShares {
            oil: share("oil")?,
            coal: share("coal")?,
            gas: share("gas")?,
            nuclear: share("nuclear")?,
            hydro: share("hydro")?,
            other,
        };
        let a3 = |q: &str| tables.a3_entry(q, region);
        let electric = (|| {
            Some(ElectricMix {
                total: a3("electric_total")?.watts()?,
                thermal: a3("thermal")?.fraction()?,
                nuclear: a3("nuclear")?.fraction()?,
                hydro: a3("hydro")?.fraction()?,
            })
        })();
        EnergyMix::new(a2("total")?.watts()?, shares, electric).ok()
    }
}

fn check_sum(field: &'static str, sum: f64) -> Result<()> {
    if (sum - 1.0).abs() <= SHARE_SUM_TOLERANCE + 1e-12 {
        Ok(())
    } else {
        Err(Error::domain(field, "must sum to 1 +/- 0.02", sum))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuclearUsable {
    pub nuclear_total: f64,
    pub usable_nuclear: f64,
    /// Total minus the nuclear heat that never becomes electricity.
    pub usable_total: f64,
    pub share_of_usable: f64,
    pub share_of_total: f64,
    pub waste_heat: f64,
    /// usable_nuclear / nuclear_total.
    pub efficiency: f64,
    /// Whether the usable figure comes from electricity data or from the
    /// assumed efficiency.
    pub from_electric_data: bool,
}

pub fn nuclear_usable(mix: &EnergyMix) -> Result<NuclearUsable> {
    mix.validate()?;
    let nuclear_total = mix.total * mix.shares.nuclear;
    let (usable_nuclear, from_electric_data) = match &mix.electric {
        Some(e) => (e.total * e.nuclear, true),
        None => (nuclear_total * mix.nuclear_usable_efficiency, false),
    };
    if usable_nuclear > nuclear_total {
        return Err(Error::domain(
            "electric.nuclear",
            "nuclear electricity exceeds nuclear primary power",
            usable_nuclear,
        ));
    }
    let usable_total = mix.total - nuclear_total + usable_nuclear;
    Ok(NuclearUsable {
        nuclear_total,
        usable_nuclear,
        usable_total,
        share_of_usable: usable_nuclear / usable_total,
        share_of_total: usable_nuclear / mix.total,
        waste_heat: nuclear_total - usable_nuclear,
        efficiency: if nuclear_total > 0.0 {
            usable_nuclear / nuclear_total
        } else {
            f64::NAN
        },
        from_electric_data,
    })
}

/// Biotic power lost on disturbed land, in the unit of `total_biota_power`.
pub fn biotic_disturbance(
    total_biota_power: f64,
    land_fraction: f64,
    disturbed_fraction: f64,
) -> Result<f64> {
    let p = ensure_non_negative("total_biota_power", total_biota_power)?;
    let land = ensure_fraction("land_fraction", land_fraction)?;
    let disturbed = ensure_fraction("disturbed_fraction", disturbed_fraction)?;
    // Combine the fractions first: 2/3 * 0.6 rounds to exactly 0.4.
    Ok(p * (land * disturbed))
}

pub fn efficiency(p_useful: f64, p_total: f64) -> Result<f64> {
    let u = ensure_positive("p_useful", p_useful)?;
    let t = ensure_positive("p_total", p_total)?;
    if u > t {
        return Err(Error::domain("p_useful", "must not exceed p_total", u));
    }
    Ok(u / t)
}
