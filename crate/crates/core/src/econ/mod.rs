//! Sector accounting: the two-sector markup, wage and money/energy
//! conversions, and the three-sector (industrial, energy, vacant) economy.

mod table;

pub use table::{
    energy_sector_split, food_sector_groups, ingest_str, ingest_table, write_table, Aggregates,
    CountryRecord, EnergySplit, FoodGroups, GroupStats, IngestReport, Sector, SectorShares,
    DEFAULT_ENERGY_FRACTION_OF_MINING, DEFAULT_FOOD_THRESHOLD, TABLE_COLUMNS,
};

use crate::error::{ensure_positive, Error, Result};

/// Share of GDP spent on energy beyond which the economy destabilises.
pub const ENERGY_EXPENDITURE_THRESHOLD: f64 = 0.10;

/// Days in a working week and years in a working lifetime, used to express
/// a GDP share as time off.
pub const WORKWEEK_DAYS: f64 = 5.0;
pub const CAREER_YEARS: f64 = 40.0;

/// An economy split into a cost-price sector (1) and a marked-up sector (2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSectorEconomy {
    pub gdp: f64,
    pub n1: f64,
    pub n2: f64,
    pub sector2_revenue: f64,
}

impl TwoSectorEconomy {
    pub fn new(gdp: f64, n1: f64, n2: f64, sector2_revenue: f64) -> Result<Self> {
        let gdp = ensure_positive("gdp", gdp)?;
        let n1 = ensure_positive("n1", n1)?;
        let n2 = ensure_positive("n2", n2)?;
        let sector2_revenue = ensure_positive("sector2_revenue", sector2_revenue)?;
        if sector2_revenue >= gdp {
            return Err(Error::domain(
                "sector2_revenue",
                "must be < gdp (degenerate economy)",
                sector2_revenue,
            ));
        }
        Ok(TwoSectorEconomy {
            gdp,
            n1,
            n2,
            sector2_revenue,
        })
    }

    /// Only the head-count ratio matters for the markup; `n2` is set to 1.
    pub fn from_ratio(gdp: f64, n1_over_n2: f64, sector2_revenue: f64) -> Result<Self> {
        Self::new(gdp, n1_over_n2, 1.0, sector2_revenue)
    }

    /// Cost price of one worker-year of output, `(gdp - sector2_revenue) / n1`.
    pub fn cost_price_per_worker(&self) -> f64 {
        (self.gdp - self.sector2_revenue) / self.n1
    }

    /// Market price of one worker-year of sector-2 output.
    pub fn market_price_per_worker(&self) -> f64 {
        self.sector2_revenue / self.n2
    }

    /// `G_t / G_s = (n1 / n2) * revenue / (gdp - revenue)`.
    pub fn markup_ratio(&self) -> f64 {
        (self.n1 / self.n2) * self.sector2_revenue / (self.gdp - self.sector2_revenue)
    }
}

/// Annual revenue of selling `consumption` GJ at `unit_price` per GJ.
pub fn energy_revenue(consumption_gj: f64, unit_price: f64) -> Result<f64> {
    Ok(
        ensure_positive("consumption", consumption_gj)?
            * ensure_positive("unit_price", unit_price)?,
    )
}

/// Price per GJ of a fuel sold per barrel.
pub fn price_per_gj(price_per_barrel: f64, gj_per_barrel: f64) -> Result<f64> {
    Ok(ensure_positive("price_per_barrel", price_per_barrel)?
        / ensure_positive("gj_per_barrel", gj_per_barrel)?)
}

/// Mean hourly wage if all of GDP is paid out as wages.
pub fn mean_wage(
    gdp: f64,
    population: f64,
    working_fraction: f64,
    hours_per_year: f64,
) -> Result<f64> {
    let gdp = ensure_positive("gdp", gdp)?;
    let population = ensure_positive("population", population)?;
    let frac = ensure_positive("working_fraction", working_fraction)?;
    if frac > 1.0 {
        return Err(Error::domain("working_fraction", "must be <= 1", frac));
    }
    let hours = ensure_positive("hours_per_year", hours_per_year)?;
    Ok(gdp / (population * frac * hours))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoneyEnergy {
    pub joules_per_currency: f64,
    pub currency_per_gj: f64,
}

/// Dimensional conversion between money and energy obtained by equating a
/// year's production value with a year's energy consumption.
pub fn money_energy_factor(
    production_value: f64,
    energy_consumption_j: f64,
) -> Result<MoneyEnergy> {
    let value = ensure_positive("production_value", production_value)?;
    let energy = ensure_positive("energy_consumption", energy_consumption_j)?;
    Ok(MoneyEnergy {
        joules_per_currency: energy / value,
        currency_per_gj: value / (energy / 1e9),
    })
}

/// World economy with an energy sector selling at `markup` times cost price.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeSectorEconomy {
    pub gdp: f64,
    pub energy_revenue_share: f64,
    pub energy_employment_share: f64,
    pub markup: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeSectorReport {
    /// GDP share paid to the energy sector beyond its own labour content.
    pub vacant_share: f64,
    /// GDP share paying the energy sector's labour at cost price.
    pub cost_labor_share: f64,
    pub vacant_gdp: f64,
    /// Employment share the energy sector needs once its cost price has
    /// risen to today's market price (no vacant sector left).
    pub expensive_energy_employment_share: f64,
    /// GDP share freed when energy is sold at cost price.
    pub green_share: f64,
    pub workweek_reduction_days: f64,
    pub retirement_reduction_years: f64,
    /// `energy_revenue_share / energy_employment_share`: the markup implied by
    /// head-counts alone.
    pub implied_markup: f64,
}

impl ThreeSectorEconomy {
    pub fn new(
        gdp: f64,
        energy_revenue_share: f64,
        energy_employment_share: f64,
        markup: f64,
    ) -> Result<Self> {
        let gdp = ensure_positive("gdp", gdp)?;
        let share = open_unit("energy_revenue_share", energy_revenue_share)?;
        let emp = open_unit("energy_employment_share", energy_employment_share)?;
        if !(markup.is_finite() && markup >= 1.0) {
            return Err(Error::domain("markup", "must be finite and >= 1", markup));
        }
        Ok(ThreeSectorEconomy {
            gdp,
            energy_revenue_share: share,
            energy_employment_share: emp,
            markup,
        })
    }

    pub fn report(&self) -> ThreeSectorReport {
        let share = self.energy_revenue_share;
        let cost_labor_share = share / self.markup;
        let vacant_share = share - cost_labor_share;
        ThreeSectorReport {
            vacant_share,
            cost_labor_share,
            vacant_gdp: vacant_share * self.gdp,
            expensive_energy_employment_share: share,
            green_share: vacant_share,
            workweek_reduction_days: vacant_share * WORKWEEK_DAYS,
            retirement_reduction_years: vacant_share * CAREER_YEARS,
            implied_markup: share / self.energy_employment_share,
        }
    }
}

fn open_unit(field: &'static str, v: f64) -> Result<f64> {
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(Error::domain(field, "must lie in (0, 1)", v))
    }
}
