//! Browser bindings for the demo page in `www/`.
//!
//! Three operations: the stock potential of a system, the market-price
//! landscape built from it, and an RK4 trajectory. Each has a plain Rust
//! function (tested natively) and a thin `#[wasm_bindgen]` wrapper.

use potdyn::dynamics::{Event, PiecewiseSystem, StationaryPoint};
use potdyn::price::build_price_system;
use potdyn::scenarios::{preset, Grid, PresetParams};
use wasm_bindgen::prelude::*;

/// A sampled curve with its stationary points.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Landscape {
    regime: String,
    alpha: f64,
    x: Vec<f64>,
    potential: Vec<f64>,
    flux: Vec<f64>,
    points: Vec<StationaryPoint>,
}

#[wasm_bindgen]
impl Landscape {
    #[wasm_bindgen(getter)]
    pub fn regime(&self) -> String {
        self.regime.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn potential(&self) -> Vec<f64> {
        self.potential.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn flux(&self) -> Vec<f64> {
        self.flux.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn stationary_x(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.location).collect()
    }

    /// Comma-separated kinds, parallel to `stationary_x`.
    #[wasm_bindgen(getter)]
    pub fn stationary_kinds(&self) -> String {
        self.points
            .iter()
            .map(|p| p.kind.as_str())
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Path {
    t: Vec<f64>,
    m: Vec<f64>,
    events: Vec<String>,
}

#[wasm_bindgen]
impl Path {
    #[wasm_bindgen(getter)]
    pub fn t(&self) -> Vec<f64> {
        self.t.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn m(&self) -> Vec<f64> {
        self.m.clone()
    }

    /// One line per event, e.g. `junction up at t=3.21`.
    #[wasm_bindgen(getter)]
    pub fn events(&self) -> String {
        self.events.join("\n")
    }
}

/// `[P+, P-, T+, T-]` of an ecosystem preset, `[D_s, D_u, D_max, T+, T-]`
/// of a price preset.
pub fn preset_values(id: &str) -> potdyn::Result<Vec<f64>> {
    Ok(match preset(id)?.params {
        PresetParams::Ecosystem(p) => vec![p.p_plus, p.p_minus, p.t_plus, p.t_minus],
        PresetParams::Price(p) => vec![p.d_s, p.d_u, p.d_max, p.t_plus, p.t_minus],
        _ => Vec::new(),
    })
}

pub fn stock_landscape(
    p_plus: f64,
    p_minus: f64,
    t_plus: f64,
    t_minus: f64,
    n: usize,
) -> potdyn::Result<Landscape> {
    let sys = PiecewiseSystem::new(p_plus, p_minus, t_plus, t_minus)?;
    let d = sys.derive();
    let x = Grid::with_points(0.0, 1.25 * d.m_s.max(d.m_u), n.max(2))?.points();
    let potential = x
        .iter()
        .map(|&m| sys.potential(m))
        .collect::<Result<_, _>>()?;
    let flux = x.iter().map(|&m| sys.flux(m)).collect::<Result<_, _>>()?;
    Ok(Landscape {
        regime: sys.classify().regime.as_str().to_string(),
        alpha: d.alpha,
        x,
        potential,
        flux,
        points: sys.stationary_points(),
    })
}

/// Price landscape with `C = 1`, so `D = 1/M`; prices run from a tenth of
/// the cost price to just past the cap.
pub fn price_landscape(
    d_s: f64,
    d_u: f64,
    d_max: f64,
    t_plus: f64,
    t_minus: f64,
    n: usize,
) -> potdyn::Result<Landscape> {
    let sys = PiecewiseSystem::from_stocks(1.0 / d_s, 1.0 / d_u, t_plus, t_minus)?;
    let ps = build_price_system(&sys, 1.0, Some(d_max))?;
    let x = Grid::with_points(0.1 * d_s, 1.05 * d_max.max(d_u), n.max(2))?.points();
    let potential = x
        .iter()
        .map(|&p| ps.potential(p))
        .collect::<Result<_, _>>()?;
    let flux = x
        .iter()
        .map(|&p| ps.flux(p).map(|f| f.rate))
        .collect::<Result<_, _>>()?;
    Ok(Landscape {
        regime: ps.regime().as_str().to_string(),
        alpha: d_s / d_u,
        x,
        potential,
        flux,
        points: ps.stationary_points(),
    })
}

pub fn stock_trajectory(
    p_plus: f64,
    p_minus: f64,
    t_plus: f64,
    t_minus: f64,
    m0: f64,
    dt: f64,
    steps: usize,
) -> potdyn::Result<Path> {
    let sys = PiecewiseSystem::new(p_plus, p_minus, t_plus, t_minus)?;
    if steps == 0 {
        return Ok(Path {
            t: vec![0.0],
            m: vec![m0],
            events: Vec::new(),
        });
    }
    let traj = sys.integrate(m0, dt, steps)?;
    let events = traj
        .events
        .iter()
        .map(|e| match e {
            Event::JunctionCross { t, direction } => {
                format!("junction {} at t={t:.4}", direction.as_str())
            }
            Event::Absorbed { t } => format!("absorbed at t={t:.4}"),
        })
        .collect();
    Ok(Path {
        t: traj.samples.iter().map(|s| s.t).collect(),
        m: traj.samples.iter().map(|s| s.m).collect(),
        events,
    })
}

fn js(e: potdyn::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = presetValues)]
pub fn preset_values_js(id: &str) -> Result<Vec<f64>, JsError> {
    preset_values(id).map_err(js)
}

#[wasm_bindgen(js_name = stockLandscape)]
pub fn stock_landscape_js(
    p_plus: f64,
    p_minus: f64,
    t_plus: f64,
    t_minus: f64,
    n: usize,
) -> Result<Landscape, JsError> {
    stock_landscape(p_plus, p_minus, t_plus, t_minus, n).map_err(js)
}

#[wasm_bindgen(js_name = priceLandscape)]
pub fn price_landscape_js(
    d_s: f64,
    d_u: f64,
    d_max: f64,
    t_plus: f64,
    t_minus: f64,
    n: usize,
) -> Result<Landscape, JsError> {
    price_landscape(d_s, d_u, d_max, t_plus, t_minus, n).map_err(js)
}

#[wasm_bindgen(js_name = stockTrajectory)]
pub fn stock_trajectory_js(
    p_plus: f64,
    p_minus: f64,
    t_plus: f64,
    t_minus: f64,
    m0: f64,
    dt: f64,
    steps: usize,
) -> Result<Path, JsError> {
    stock_trajectory(p_plus, p_minus, t_plus, t_minus, m0, dt, steps).map_err(js)
}
