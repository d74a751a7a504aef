//! Named parameter sets for the worked configurations, and curve sampling
//! for plotting them. Sampling delegates to the owning module; nothing here
//! does arithmetic on the sampled values.

use crate::dynamics::PiecewiseSystem;
use crate::econ::{ThreeSectorEconomy, TwoSectorEconomy};
use crate::energy::{HydroOsmoticInput, ThermohalineInput, WindCirculationInput};
use crate::error::{ensure_positive, Error, Result};
use crate::price::{build_price_system, PriceSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetKind {
    Ecosystem,
    Price,
    Economy,
    EnergyBudget,
}

impl PresetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PresetKind::Ecosystem => "Ecosystem",
            PresetKind::Price => "Price",
            PresetKind::Economy => "Economy",
            PresetKind::EnergyBudget => "EnergyBudget",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EcosystemParams {
    pub p_plus: f64,
    pub p_minus: f64,
    pub t_plus: f64,
    pub t_minus: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriceParams {
    pub d_s: f64,
    pub d_u: f64,
    pub d_max: f64,
    pub t_plus: f64,
    pub t_minus: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OilMarkupParams {
    pub gdp: f64,
    pub n1_over_n2: f64,
    pub sector2_revenue: f64,
    /// Annual world energy consumption, GJ.
    pub energy_consumption_gj: f64,
    pub price_per_gj: f64,
    pub price_per_barrel: f64,
    pub gj_per_barrel: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeSectorParams {
    pub gdp: f64,
    pub energy_revenue_share: f64,
    pub energy_employment_share: f64,
    pub markup: f64,
    /// Inputs for the money/energy conversion: world production value and
    /// annual energy consumption in joules.
    pub production_value: f64,
    pub energy_consumption_j: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BudgetParams {
    pub thermohaline: ThermohalineInput,
    pub wind: WindCirculationInput,
    pub hydro: HydroOsmoticInput,
    /// Total biota power (TW), land fraction, disturbed fraction of land.
    pub biota: (f64, f64, f64),
    pub nuclear_region: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PresetParams {
    Ecosystem(EcosystemParams),
    Price(PriceParams),
    OilMarkup(OilMarkupParams),
    ThreeSector(ThreeSectorParams),
    Budget(BudgetParams),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub id: &'static str,
    pub kind: PresetKind,
    pub params: PresetParams,
    pub stock_unit: &'static str,
    pub time_unit: &'static str,
    pub citation: &'static str,
    pub notes: &'static str,
    /// The source states parameters that contradict each other; `notes`
    /// says which were used.
    pub inconsistent: bool,
}

pub const PRESET_IDS: [&str; 8] = [
    "fig1a",
    "fig1b_forestry",
    "fig1b_agriculture",
    "fig1c",
    "fig2_relative",
    "sec5_oil_markup",
    "sec6_three_sector",
    "appendix_budget",
];

const CARBON: &str = "t C/ha";
const YEAR: &str = "year";

fn ecosystem(
    id: &'static str,
    p: (f64, f64, f64, f64),
    citation: &'static str,
    notes: &'static str,
    inconsistent: bool,
) -> Preset {
    Preset {
        id,
        kind: PresetKind::Ecosystem,
        params: PresetParams::Ecosystem(EcosystemParams {
            p_plus: p.0,
            p_minus: p.1,
            t_plus: p.2,
            t_minus: p.3,
        }),
        stock_unit: CARBON,
        time_unit: YEAR,
        citation,
        notes,
        inconsistent,
    }
}

pub fn preset(id: &str) -> Result<Preset> {
    Ok(match id {
        "fig1a" => ecosystem(
            "fig1a",
            (8.0, 4.0, 4.0, 19.0),
            "Stable natural forest and unstable grassland: P+ = 8 t C/(ha yr), T- = 19 yr, P- = 4 t C/(ha yr), T+ = 4 yr",
            "Exact stocks are M_s = 152 and M_u = 16; the legend rounds them to 150 and 17.",
            false,
        ),
        "fig1b_forestry" => ecosystem(
            "fig1b_forestry",
            (8.0, 8.0, 9.0, 9.0),
            "Exploited forest periodically cut: P- = P+ = 8 t C/(ha yr), T+ = T- = 9 yr, alpha = 1",
            "Exact stock is 72 t C/ha; the legend quotes 70 (half of the rounded 150).",
            false,
        ),
        "fig1b_agriculture" => ecosystem(
            "fig1b_agriculture",
            (4.0, 4.0, 1.0, 1.0),
            "Unstable agriculture on clear-cut areas: P- = P+ = 4 t C/(ha yr), T+ = T- = 1 yr, M_s = M_u = 4 t C/ha",
            "",
            false,
        ),
        "fig1c" => ecosystem(
            "fig1c",
            (4.0, 8.0, 2.0, 2.0),
            "Alien herbivores in an island ecosystem: M_uc = 16, M_sc = 8 t C/ha, T+ = T- = 2 yr, alpha = 2",
            "The legend states both \"P_c^- = 5 t C (ha year)^-1\" and \"P_c^- = 2 P_a^- = 2 P_a^+ = 8\", and never prints P_c^+. \
             Rates are back-derived from the printed stocks: P+ = M_sc/T- = 4, P- = M_uc/T+ = 8.",
            true,
        ),
        "fig2_relative" => Preset {
            id: "fig2_relative",
            kind: PresetKind::Price,
            params: PresetParams::Price(PriceParams {
                d_s: 1.0,
                d_u: 4.0,
                d_max: 40.0,
                t_plus: 1.0,
                t_minus: 1.0,
            }),
            stock_unit: "D_s",
            time_unit: YEAR,
            citation: "Free-market price landscape: D_u ~ 4 D_s, D_t = 40 D_s",
            notes: "Prices are in units of the cost price D_s. Only price ratios are given, so both turnover times are set to 1 year.",
            inconsistent: false,
        },
        "sec5_oil_markup" => Preset {
            id: "sec5_oil_markup",
            kind: PresetKind::Economy,
            params: PresetParams::OilMarkup(OilMarkupParams {
                gdp: 45e12,
                n1_over_n2: 300.0,
                sector2_revenue: 5e12,
                energy_consumption_gj: 4.7e11,
                price_per_gj: 10.0,
                price_per_barrel: 55.0,
                gj_per_barrel: 5.5,
            }),
            stock_unit: "USD",
            time_unit: YEAR,
            citation: "Oil markup: GDP 45e12 USD/yr, N1/N2 ~ 300, energy revenue ~5e12 USD/yr (4.7e11 GJ at 10 USD/GJ; 55 USD/barrel, 5.5 GJ/barrel)",
            notes: "Revenue 5e12 gives a markup of 37.5; the unrounded 4.7e12 gives 300*4.7/40.3 = 34.99.",
            inconsistent: false,
        },
        "sec6_three_sector" => Preset {
            id: "sec6_three_sector",
            kind: PresetKind::Economy,
            params: PresetParams::ThreeSector(ThreeSectorParams {
                gdp: 45e12,
                energy_revenue_share: 0.10,
                energy_employment_share: 0.001,
                markup: 100.0,
                production_value: 35e12,
                energy_consumption_j: 4.7e20,
            }),
            stock_unit: "USD",
            time_unit: YEAR,
            citation: "Three-sector economy: 0.1% of the population in energy production is paid 10% of world GDP",
            notes: "Employment share is a parameter: estimates between 0.1% and 0.2% are quoted. \
                    Vacant share = revenue share * (1 - 1/markup).",
            inconsistent: false,
        },
        "appendix_budget" => Preset {
            id: "appendix_budget",
            kind: PresetKind::EnergyBudget,
            params: PresetParams::Budget(BudgetParams {
                thermohaline: ThermohalineInput::reference(),
                wind: WindCirculationInput::reference(),
                hydro: HydroOsmoticInput::reference(),
                biota: (100.0, 2.0 / 3.0, 0.6),
                nuclear_region: "France",
            }),
            stock_unit: "W",
            time_unit: "s",
            citation: "Earth surface energy budget estimators: thermohaline, wind, hydro and osmotic power, usable nuclear energy, biotic disturbance",
            notes: "Sink flux F = 3e7 m3/s as stated; 1e15 m3/yr is 3.17e7 m3/s exactly. \
                    Upwelling velocity F/S = 8.3e-8 m/s (2.6 m/yr), not the quoted 5e-8 m/s (2 m/yr). \
                    w = 1 mm/s as stated, although precipitation/vapour concentration gives 2.4 mm/s. \
                    The two wind dissipation formulas give 7.35e12 W and 2.45e14 W, neither near the claimed 1e15 W.",
            inconsistent: true,
        },
        _ => {
            return Err(Error::UnknownPreset {
                id: id.to_string(),
                available: PRESET_IDS.join(", "),
            })
        }
    })
}

pub fn all_presets() -> Vec<Preset> {
    PRESET_IDS
        .iter()
        .map(|id| preset(id).expect("registered preset"))
        .collect()
}

impl Preset {
    pub fn system(&self) -> Result<PiecewiseSystem> {
        match &self.params {
            PresetParams::Ecosystem(p) => Ok(PiecewiseSystem::new(
                p.p_plus, p.p_minus, p.t_plus, p.t_minus,
            )?
            .with_units(self.stock_unit, self.time_unit)),
            PresetParams::Price(p) => {
                PiecewiseSystem::from_stocks(1.0 / p.d_s, 1.0 / p.d_u, p.t_plus, p.t_minus)
            }
            _ => Err(Error::NoCurve {
                preset: self.id.to_string(),
                curve: "stock",
            }),
        }
    }

    /// Price landscape with `c = 1`, so stocks are reciprocal prices.
    pub fn price_system(&self) -> Result<PriceSystem> {
        match &self.params {
            PresetParams::Price(p) => build_price_system(&self.system()?, 1.0, Some(p.d_max)),
            _ => Err(Error::NoCurve {
                preset: self.id.to_string(),
                curve: "price",
            }),
        }
    }

    /// Runs the owning module's validation.
    pub fn validate(&self) -> Result<()> {
        match &self.params {
            PresetParams::Ecosystem(_) => self.system().map(drop),
            PresetParams::Price(_) => self.price_system().map(drop),
            PresetParams::OilMarkup(p) => {
                TwoSectorEconomy::from_ratio(p.gdp, p.n1_over_n2, p.sector2_revenue)?;
                let revenue = crate::econ::energy_revenue(p.energy_consumption_gj, p.price_per_gj)?;
                TwoSectorEconomy::from_ratio(p.gdp, p.n1_over_n2, revenue)?;
                crate::econ::price_per_gj(p.price_per_barrel, p.gj_per_barrel).map(drop)
            }
            PresetParams::ThreeSector(p) => {
                ThreeSectorEconomy::new(
                    p.gdp,
                    p.energy_revenue_share,
                    p.energy_employment_share,
                    p.markup,
                )?;
                crate::econ::money_energy_factor(p.production_value, p.energy_consumption_j)
                    .map(drop)
            }
            PresetParams::Budget(p) => {
                crate::energy::thermohaline_power(&p.thermohaline)?;
                crate::energy::wind_upwelling_power(&p.wind)?;
                crate::energy::hydropower(&p.hydro)?;
                crate::energy::biotic_disturbance(p.biota.0, p.biota.1, p.biota.2).map(drop)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Potential,
    Flux,
    Trajectory,
}

impl CurveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveKind::Potential => "potential",
            CurveKind::Flux => "flux",
            CurveKind::Trajectory => "trajectory",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "potential" => Some(CurveKind::Potential),
            "flux" => Some(CurveKind::Flux),
            "trajectory" => Some(CurveKind::Trajectory),
            _ => None,
        }
    }
}

const MAX_GRID_POINTS: usize = 10_000_000;

/// Evenly spaced points from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite()) || stop < start {
            return Err(Error::Grid(format!(
                "need finite start <= stop, got {start}..{stop}"
            )));
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::Grid(format!(
                "step must be finite and > 0, got {step}"
            )));
        }
        let grid = Grid { start, stop, step };
        if grid.len() > MAX_GRID_POINTS {
            return Err(Error::Grid(format!(
                "{} points exceeds the limit of {MAX_GRID_POINTS}",
                grid.len()
            )));
        }
        Ok(grid)
    }

    /// Grid with `n >= 2` points spanning `start..=stop`.
    pub fn with_points(start: f64, stop: f64, n: usize) -> Result<Self> {
        if n < 2 || stop <= start {
            return Err(Error::Grid(format!(
                "need n >= 2 and start < stop, got n = {n}, {start}..{stop}"
            )));
        }
        Self::new(start, stop, (stop - start) / (n - 1) as f64)
    }

    pub fn len(&self) -> usize {
        // Tolerate rounding so that 0..200 step 1 has 201 points.
        ((self.stop - self.start) / self.step * (1.0 + 1e-12)).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| self.start + i as f64 * self.step)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveRequest {
    Potential(Grid),
    Flux(Grid),
    Trajectory { x0: f64, dt: f64, n_steps: usize },
}

impl CurveRequest {
    pub fn kind(&self) -> CurveKind {
        match self {
            CurveRequest::Potential(_) => CurveKind::Potential,
            CurveRequest::Flux(_) => CurveKind::Flux,
            CurveRequest::Trajectory { .. } => CurveKind::Trajectory,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSeries {
    pub x: Vec<f64>,
    pub x_unit: String,
    pub y: Vec<f64>,
    pub y_unit: String,
    pub label: String,
}

impl CurveSeries {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// Samples a curve of an ecosystem or price preset. Grids that reach into
/// the invalid domain (negative stock, non-positive price) are rejected
/// before anything is evaluated. A zero-step trajectory is empty.
pub fn emit_curve(preset: &Preset, request: CurveRequest) -> Result<CurveSeries> {
    let kind = request.kind();
    let label = format!("{} {}", preset.id, kind.as_str());
    let (x_unit, y_unit) = units_for(preset, kind);
    let mut series = CurveSeries {
        x: Vec::new(),
        x_unit,
        y: Vec::new(),
        y_unit,
        label,
    };
    match &preset.params {
        PresetParams::Ecosystem(_) => {
            let sys = preset.system()?;
            match request {
                CurveRequest::Potential(g) | CurveRequest::Flux(g) => {
                    if g.start < 0.0 {
                        return Err(Error::Grid(format!(
                            "stock grid starts at {} but the stock must be >= 0",
                            g.start
                        )));
                    }
                    series.x = g.points();
                    series.y = series
                        .x
                        .iter()
                        .map(|&m| match kind {
                            CurveKind::Potential => sys.potential(m),
                            _ => sys.flux(m),
                        })
                        .collect::<Result<_>>()?;
                }
                CurveRequest::Trajectory { x0, dt, n_steps } => {
                    ensure_positive("dt", dt)?;
                    if n_steps > 0 {
                        let traj = sys.integrate(x0, dt, n_steps)?;
                        (series.x, series.y) = traj.samples.iter().map(|s| (s.t, s.m)).unzip();
                    } else if !(x0.is_finite() && x0 >= 0.0) {
                        return Err(Error::Domain {
                            field: "m0",
                            constraint: "must be finite and >= 0",
                            value: x0,
                        });
                    }
                }
            }
        }
        PresetParams::Price(_) => {
            let ps = preset.price_system()?;
            match request {
                CurveRequest::Potential(g) | CurveRequest::Flux(g) => {
                    if g.start <= 0.0 {
                        return Err(Error::Grid(format!(
                            "price grid starts at {} but prices must be > 0",
                            g.start
                        )));
                    }
                    series.x = g.points();
                    series.y = series
                        .x
                        .iter()
                        .map(|&d| match kind {
                            CurveKind::Potential => ps.potential(d),
                            _ => ps.flux(d).map(|f| f.rate),
                        })
                        .collect::<Result<_>>()?;
                }
                CurveRequest::Trajectory { x0, dt, n_steps } => {
                    ensure_positive("dt", dt)?;
                    if n_steps > 0 {
                        let traj = ps.integrate(x0, dt, n_steps)?;
                        (series.x, series.y) = traj.samples.iter().map(|s| (s.t, s.m)).unzip();
                    } else {
                        ensure_positive("d0", x0)?;
                    }
                }
            }
        }
        _ => {
            return Err(Error::NoCurve {
                preset: preset.id.to_string(),
                curve: kind.as_str(),
            })
        }
    }
    Ok(series)
}

fn units_for(preset: &Preset, kind: CurveKind) -> (String, String) {
    let (x, t) = (preset.stock_unit, preset.time_unit);
    match kind {
        CurveKind::Potential => (x.to_string(), format!("({x})^2/{t}")),
        CurveKind::Flux => (x.to_string(), format!("{x}/{t}")),
        CurveKind::Trajectory => (t.to_string(), x.to_string()),
    }
}
