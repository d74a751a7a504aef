use std::path::Path;

use potdyn::dynamics::{Event, PiecewiseSystem, StationaryPoint};
use potdyn::econ::{self, ThreeSectorEconomy, TwoSectorEconomy};
use potdyn::energy::{self, units, BudgetTables, ConstantSet, EnergyMix};
use potdyn::price::{build_price_system, PriceEvent, PriceSystem};
use potdyn::scenarios::{
    self, emit_curve, CurveKind, CurveRequest, Grid, Preset, PresetKind, PresetParams,
};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::output::{num, opt_num, Cell, Format, Report, Table};
use crate::{
    BudgetArgs, CalibrateArgs, Cli, CliError, Command, ConvertArgs, EmitArgs, EvalArgs, GridArgs,
    IngestArgs, MarkupArgs, PriceArgs, SimulateArgs, SystemArgs, ThreeSectorArgs,
};

type Res<T> = Result<T, CliError>;

pub const DATA_DIR_VAR: &str = "POTDYN_DATA_DIR";

pub fn dispatch(cli: &Cli) -> Res<(Report, Format)> {
    let constants = ConstantSet::parse(&cli.constants).expect("validated by clap");
    let ctx = Ctx { constants };
    Ok(match &cli.command {
        Command::Classify(a) => (ctx.classify(&a.system, a.tol)?, Format::Json),
        Command::Potential(a) => (ctx.evaluate(a, CurveKind::Potential)?, Format::Csv),
        Command::Flux(a) => (ctx.evaluate(a, CurveKind::Flux)?, Format::Csv),
        Command::Simulate(a) => (ctx.simulate(a)?, Format::Csv),
        Command::Price(a) => (ctx.price(a)?, Format::Json),
        Command::Calibrate(a) => (ctx.calibrate(a)?, Format::Json),
        Command::Markup(a) => (ctx.markup(a)?, Format::Json),
        Command::ThreeSector(a) => (ctx.three_sector(a)?, Format::Json),
        Command::Ingest(a) => (ctx.ingest(a)?, Format::Json),
        Command::Budget(a) => (ctx.budget(a)?, Format::Json),
        Command::Convert(a) => (ctx.convert(a)?, Format::Json),
        Command::PresetList => (ctx.preset_list(), Format::Json),
        Command::Emit(a) => (ctx.emit(a)?, Format::Csv),
    })
}

struct Ctx {
    constants: ConstantSet,
}

fn load_preset(id: &str) -> Res<Preset> {
    scenarios::preset(id).map_err(|e| CliError::usage(e.to_string()))
}

fn object(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn points_json(points: &[StationaryPoint]) -> Value {
    Value::Array(
        points
            .iter()
            .map(|p| {
                json!({
                    "location": num(p.location),
                    "kind": p.kind.as_str(),
                    "boundary": p.boundary,
                })
            })
            .collect(),
    )
}

fn require(v: Option<f64>, flag: &str) -> Res<f64> {
    v.ok_or_else(|| CliError::usage(format!("missing required flag --{flag}")))
}

fn parse_sweep(spec: &str) -> Res<Vec<f64>> {
    let bad = |what: &str| CliError::usage(format!("invalid --sweep `{spec}`: {what}"));
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected start:stop:step"));
        }
        let nums = parts
            .iter()
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad("not a number")))
            .collect::<Res<Vec<_>>>()?;
        Ok(Grid::new(nums[0], nums[1], nums[2])?.points())
    } else {
        spec.split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad("not a number")))
            .collect()
    }
}

fn grid_from(args: &GridArgs) -> Res<Grid> {
    match (args.from, args.to, args.step) {
        (Some(a), Some(b), Some(s)) => Ok(Grid::new(a, b, s)?),
        _ => Err(CliError::usage("need --from, --to and --step")),
    }
}

/// Reads a data file from `POTDYN_DATA_DIR` when set, else the bundled copy.
fn data_file(name: &str) -> Res<(String, String)> {
    match std::env::var_os(DATA_DIR_VAR) {
        Some(dir) => {
            let path = Path::new(&dir).join(name);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
            Ok((text, path.display().to_string()))
        }
        None => {
            let text = potdyn::data::FILES
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, t)| t.to_string())
                .expect("bundled file");
            Ok((text, format!("bundled:{name}")))
        }
    }
}

impl Ctx {
    fn provenance(&self, preset: Option<&str>, input: Option<String>) -> Value {
        json!({
            "tool": "potdyn",
            "version": env!("CARGO_PKG_VERSION"),
            "preset": preset,
            "input": input,
            "constants": self.constants.as_str(),
        })
    }

    fn header(&self, command: &str, source: &Option<Preset>) -> Vec<(&'static str, Value)> {
        vec![
            ("command", Value::from(command)),
            (
                "provenance",
                self.provenance(source.as_ref().map(|p| p.id), None),
            ),
        ]
    }

    fn system(&self, args: &SystemArgs) -> Res<(PiecewiseSystem, Option<Preset>)> {
        let any_flag = [
            args.p_plus,
            args.p_minus,
            args.t_plus,
            args.t_minus,
            args.m_s,
            args.m_u,
        ]
        .iter()
        .any(Option::is_some);
        if let Some(id) = &args.preset {
            if any_flag {
                return Err(CliError::usage(
                    "--preset cannot be combined with explicit parameters",
                ));
            }
            let p = load_preset(id)?;
            if !matches!(p.kind, PresetKind::Ecosystem | PresetKind::Price) {
                return Err(CliError::usage(format!(
                    "preset `{id}` is a {} preset, not a stock or price system",
                    p.kind.as_str()
                )));
            }
            return Ok((p.system()?, Some(p)));
        }
        let t_plus = require(args.t_plus, "t-plus")?;
        let t_minus = require(args.t_minus, "t-minus")?;
        let sys = if args.m_s.is_some() || args.m_u.is_some() {
            if args.p_plus.is_some() || args.p_minus.is_some() {
                return Err(CliError::usage(
                    "give either --p-plus/--p-minus or --m-s/--m-u",
                ));
            }
            PiecewiseSystem::from_stocks(
                require(args.m_s, "m-s")?,
                require(args.m_u, "m-u")?,
                t_plus,
                t_minus,
            )?
        } else {
            PiecewiseSystem::new(
                require(args.p_plus, "p-plus")?,
                require(args.p_minus, "p-minus")?,
                t_plus,
                t_minus,
            )?
        };
        Ok((sys, None))
    }

    fn classify(&self, args: &SystemArgs, tol: f64) -> Res<Report> {
        let (sys, source) = self.system(args)?;
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(CliError::usage("--tol must be finite and >= 0"));
        }
        let d = sys.derive();
        let class = sys.classify_with_tol(tol);
        let mut out = self.header("classify", &source);
        out.extend([
            ("alpha", num(class.alpha)),
            ("regime", Value::from(class.regime.as_str())),
            ("m_s", num(d.m_s)),
            ("m_u", num(d.m_u)),
            ("m_r", num(d.m_r)),
            ("r", num(d.r)),
            ("stationary_points", points_json(&sys.stationary_points())),
            (
                "parameters",
                json!({
                    "p_plus": num(sys.p_plus()),
                    "p_minus": num(sys.p_minus()),
                    "t_plus": num(sys.t_plus()),
                    "t_minus": num(sys.t_minus()),
                    "stock_unit": sys.units().stock,
                    "time_unit": sys.units().time,
                }),
            ),
        ]);
        if let Some(p) = source.as_ref() {
            out.push(("notes", Value::from(p.notes)));
        }
        Ok(Report::Object(object(out)))
    }

    fn evaluate(&self, args: &EvalArgs, kind: CurveKind) -> Res<Report> {
        let (sys, source) = self.system(&args.system)?;
        let xs = if !args.at.is_empty() {
            if args.grid.from.is_some() || args.grid.to.is_some() || args.grid.step.is_some() {
                return Err(CliError::usage("--at cannot be combined with a grid"));
            }
            args.at.clone()
        } else {
            grid_from(&args.grid)?.points()
        };
        let price = match source.as_ref() {
            Some(p) if p.kind == PresetKind::Price => Some(p.price_system()?),
            _ => None,
        };
        let ys = xs
            .iter()
            .map(|&x| match (&price, kind) {
                (Some(ps), CurveKind::Potential) => ps.potential(x),
                (Some(ps), _) => ps.flux(x).map(|f| f.rate),
                (None, CurveKind::Potential) => sys.potential(x),
                (None, _) => sys.flux(x),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut meta = self.header(kind.as_str(), &source);
        let (x_unit, t_unit) = match source.as_ref() {
            Some(p) => (p.stock_unit.to_string(), p.time_unit.to_string()),
            None => (sys.units().stock.clone(), sys.units().time.clone()),
        };
        let y_unit = match kind {
            CurveKind::Potential => format!("({x_unit})^2/{t_unit}"),
            _ => format!("{x_unit}/{t_unit}"),
        };
        meta.push(("x_unit", Value::from(x_unit)));
        meta.push(("y_unit", Value::from(y_unit)));
        let table = Table {
            columns: vec!["x", "y"],
            rows: xs
                .into_iter()
                .zip(ys)
                .map(|(x, y)| vec![Cell::from(x), Cell::from(y)])
                .collect(),
        };
        Ok(Report::Table(object(meta), table))
    }

    fn simulate(&self, args: &SimulateArgs) -> Res<Report> {
        let (sys, source) = self.system(&args.system)?;
        let starts = match (&args.sweep, args.m0) {
            (Some(_), Some(_)) => return Err(CliError::usage("give --m0 or --sweep, not both")),
            (Some(spec), None) => parse_sweep(spec)?,
            (None, Some(m0)) => vec![m0],
            (None, None) => return Err(CliError::usage("missing required flag --m0 or --sweep")),
        };
        let price = match source.as_ref() {
            Some(p) if p.kind == PresetKind::Price => Some(p.price_system()?),
            _ => None,
        };
        if args.compare && price.is_some() {
            return Err(CliError::usage(
                "--compare is only available for stock systems",
            ));
        }
        let runs: Vec<Run> = starts
            .par_iter()
            .map(|&x0| run_one(&sys, price.as_ref(), x0, args.dt, args.steps, args.compare))
            .collect::<Result<_, _>>()?;

        let mut columns = vec!["x0", "t", "m"];
        if args.compare {
            columns.push("m_exact");
        }
        let mut rows = Vec::new();
        for run in &runs {
            for (i, &(t, m)) in run.samples.iter().enumerate() {
                let mut row = vec![Cell::from(run.x0), Cell::from(t), Cell::from(m)];
                if let Some(exact) = &run.exact {
                    row.push(Cell::from(exact[i]));
                }
                rows.push(row);
            }
        }
        let mut meta = self.header("simulate", &source);
        meta.push(("dt", num(args.dt)));
        meta.push(("steps", Value::from(args.steps)));
        meta.push((
            "runs",
            Value::Array(
                runs.iter()
                    .map(|r| {
                        json!({
                            "x0": num(r.x0),
                            "coarse_step": r.coarse_step,
                            "events": r.events,
                        })
                    })
                    .collect(),
            ),
        ));
        Ok(Report::Table(object(meta), Table { columns, rows }))
    }

    fn price(&self, args: &PriceArgs) -> Res<Report> {
        let (sys, source) = self.system(&args.system)?;
        let ps: PriceSystem = match source.as_ref() {
            Some(p) if p.kind == PresetKind::Price => {
                if args.c.is_some() || args.d_max.is_some() {
                    return Err(CliError::usage("price presets fix --c and --d-max"));
                }
                p.price_system()?
            }
            _ => build_price_system(&sys, args.c.unwrap_or(1.0), args.d_max)?,
        };
        let evaluations = args
            .at
            .iter()
            .map(|&d| {
                let f = ps.flux(d)?;
                Ok(json!({
                    "d": num(d),
                    "potential": num(ps.potential(d)?),
                    "flux": num(f.rate),
                    "breakdown": f.breakdown,
                }))
            })
            .collect::<Result<Vec<_>, potdyn::Error>>()?;
        let mut out = self.header("price", &source);
        out.extend([
            ("regime", Value::from(ps.regime().as_str())),
            ("c", num(ps.c())),
            ("d_s", num(ps.d_s())),
            ("d_u", num(ps.d_u())),
            ("d_r", num(ps.d_r())),
            ("r_d", num(ps.r_d())),
            ("d_max", opt_num(ps.d_max())),
            ("t_plus", num(ps.t_plus())),
            ("t_minus", num(ps.t_minus())),
            ("stationary_points", points_json(&ps.stationary_points())),
            ("evaluations", Value::Array(evaluations)),
        ]);
        Ok(Report::Object(object(out)))
    }

    fn calibrate(&self, a: &CalibrateArgs) -> Res<Report> {
        let cal = potdyn::price::calibrate(a.d_s, a.n_s, a.p_s_minus, a.t_minus)?;
        let mut out = self.header("calibrate", &None);
        out.push(("c", num(cal.c)));
        out.push(("a", num(cal.a)));
        let wage = [a.gdp, a.population, a.working_fraction, a.hours];
        if wage.iter().any(Option::is_some) {
            let w = econ::mean_wage(
                require(a.gdp, "gdp")?,
                require(a.population, "population")?,
                require(a.working_fraction, "working-fraction")?,
                require(a.hours, "hours")?,
            )?;
            out.push(("mean_wage_per_hour", num(w)));
        }
        Ok(Report::Object(object(out)))
    }

    fn markup(&self, a: &MarkupArgs) -> Res<Report> {
        if let Some(id) = &a.preset {
            let explicit = [
                a.gdp,
                a.n1_over_n2,
                a.n1,
                a.n2,
                a.sector2_revenue,
                a.energy_gj,
                a.price_per_gj,
            ];
            if explicit.iter().any(Option::is_some) {
                return Err(CliError::usage(
                    "--preset cannot be combined with explicit parameters",
                ));
            }
            let p = load_preset(id)?;
            let PresetParams::OilMarkup(m) = p.params else {
                return Err(CliError::usage(format!(
                    "preset `{id}` has no markup parameters"
                )));
            };
            let stated = TwoSectorEconomy::from_ratio(m.gdp, m.n1_over_n2, m.sector2_revenue)?;
            let revenue = econ::energy_revenue(m.energy_consumption_gj, m.price_per_gj)?;
            let computed = TwoSectorEconomy::from_ratio(m.gdp, m.n1_over_n2, revenue)?;
            let mut out = self.header("markup", &Some(p.clone()));
            out.extend([
                ("markup_ratio", num(stated.markup_ratio())),
                ("gdp", num(m.gdp)),
                ("n1_over_n2", num(m.n1_over_n2)),
                ("sector2_revenue", num(m.sector2_revenue)),
                (
                    "from_energy_revenue",
                    json!({
                        "energy_gj": num(m.energy_consumption_gj),
                        "price_per_gj": num(m.price_per_gj),
                        "sector2_revenue": num(revenue),
                        "markup_ratio": num(computed.markup_ratio()),
                    }),
                ),
                (
                    "price_per_gj_from_barrel",
                    num(econ::price_per_gj(m.price_per_barrel, m.gj_per_barrel)?),
                ),
                ("notes", Value::from(p.notes)),
            ]);
            return Ok(Report::Object(object(out)));
        }

        let gdp = require(a.gdp, "gdp")?;
        let revenue = match (a.sector2_revenue, a.energy_gj, a.price_per_gj) {
            (Some(r), None, None) => r,
            (None, Some(e), Some(p)) => econ::energy_revenue(e, p)?,
            _ => {
                return Err(CliError::usage(
                    "give --sector2-revenue, or --energy-gj with --price-per-gj",
                ))
            }
        };
        let economy = match (a.n1_over_n2, a.n1, a.n2) {
            (Some(ratio), None, None) => TwoSectorEconomy::from_ratio(gdp, ratio, revenue)?,
            (None, Some(n1), Some(n2)) => TwoSectorEconomy::new(gdp, n1, n2, revenue)?,
            _ => return Err(CliError::usage("give --n1-over-n2, or both --n1 and --n2")),
        };
        let mut out = self.header("markup", &None);
        out.extend([
            ("markup_ratio", num(economy.markup_ratio())),
            ("gdp", num(gdp)),
            ("n1_over_n2", num(economy.n1 / economy.n2)),
            ("sector2_revenue", num(revenue)),
        ]);
        if a.n1.is_some() {
            out.push((
                "cost_price_per_worker",
                num(economy.cost_price_per_worker()),
            ));
            out.push((
                "market_price_per_worker",
                num(economy.market_price_per_worker()),
            ));
        }
        Ok(Report::Object(object(out)))
    }

    fn three_sector(&self, a: &ThreeSectorArgs) -> Res<Report> {
        let (params, source) = match &a.preset {
            Some(id) => {
                let p = load_preset(id)?;
                let PresetParams::ThreeSector(t) = p.params else {
                    return Err(CliError::usage(format!(
                        "preset `{id}` has no three-sector parameters"
                    )));
                };
                let merged = scenarios::ThreeSectorParams {
                    gdp: a.gdp.unwrap_or(t.gdp),
                    energy_revenue_share: a.share.unwrap_or(t.energy_revenue_share),
                    energy_employment_share: a
                        .employment_share
                        .unwrap_or(t.energy_employment_share),
                    markup: a.markup.unwrap_or(t.markup),
                    production_value: a.production_value.unwrap_or(t.production_value),
                    energy_consumption_j: a.energy_j.unwrap_or(t.energy_consumption_j),
                };
                (merged, Some(p))
            }
            None => (
                scenarios::ThreeSectorParams {
                    gdp: require(a.gdp, "gdp")?,
                    energy_revenue_share: require(a.share, "share")?,
                    energy_employment_share: require(a.employment_share, "employment-share")?,
                    markup: require(a.markup, "markup")?,
                    production_value: a.production_value.unwrap_or(f64::NAN),
                    energy_consumption_j: a.energy_j.unwrap_or(f64::NAN),
                },
                None,
            ),
        };
        let r = ThreeSectorEconomy::new(
            params.gdp,
            params.energy_revenue_share,
            params.energy_employment_share,
            params.markup,
        )?
        .report();
        let mut out = self.header("three-sector", &source);
        out.extend([
            ("vacant_share", num(r.vacant_share)),
            ("cost_labor_share", num(r.cost_labor_share)),
            ("vacant_gdp", num(r.vacant_gdp)),
            (
                "expensive_energy_employment_share",
                num(r.expensive_energy_employment_share),
            ),
            ("green_share", num(r.green_share)),
            ("workweek_reduction_days", num(r.workweek_reduction_days)),
            (
                "retirement_reduction_years",
                num(r.retirement_reduction_years),
            ),
            ("implied_markup", num(r.implied_markup)),
            (
                "energy_expenditure_threshold",
                num(econ::ENERGY_EXPENDITURE_THRESHOLD),
            ),
            (
                "decomposition",
                Value::from("vacant = share * (1 - 1/markup); cost-price labour = share / markup"),
            ),
        ]);
        let has_money =
            params.production_value.is_finite() || params.energy_consumption_j.is_finite();
        if has_money {
            let f =
                econ::money_energy_factor(params.production_value, params.energy_consumption_j)?;
            out.push((
                "money_energy",
                json!({
                    "joules_per_currency": num(f.joules_per_currency),
                    "currency_per_gj": num(f.currency_per_gj),
                }),
            ));
        }
        Ok(Report::Object(object(out)))
    }

    fn ingest(&self, a: &IngestArgs) -> Res<Report> {
        let (text, input) = match &a.input {
            Some(path) => (
                std::fs::read_to_string(path)
                    .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?,
                path.display().to_string(),
            ),
            None => data_file("table1_2005.csv")?,
        };
        let rep = econ::ingest_str(&text)?;
        for w in &rep.warnings {
            eprintln!("warning: {w}");
        }
        let agg = &rep.aggregates;
        let mut csv_text = Vec::new();
        econ::write_table(&rep.records, &mut csv_text)?;
        let csv_text = String::from_utf8(csv_text).expect("utf-8 table");

        let shares = agg.weighted_shares.map(|s| {
            Value::Object(
                econ::Sector::ALL
                    .iter()
                    .map(|&sec| (sec.as_str().to_string(), num(s.get(sec))))
                    .collect(),
            )
        });
        let split = if agg.weighted_shares.is_some() {
            let s = econ::energy_sector_split(agg, a.energy_fraction)?;
            json!({
                "energy_fraction_of_mining": num(a.energy_fraction),
                "n1": num(s.n1),
                "n2": num(s.n2),
                "n1_over_n2": num(s.n1_over_n2),
            })
        } else {
            Value::Null
        };
        let g = econ::food_sector_groups(&rep.records, a.food_threshold)?;
        let group = |s: &econ::GroupStats| {
            json!({
                "count": s.count,
                "mean": num(s.mean),
                "min": num(s.min),
                "max": num(s.max),
                "members": s.members,
            })
        };
        let out = vec![
            ("command", Value::from("ingest")),
            ("provenance", self.provenance(None, Some(input))),
            ("countries", Value::from(agg.countries)),
            ("total_consumption_1e15btu", num(agg.total_consumption)),
            ("total_production_1e15btu", num(agg.total_production)),
            ("total_population_1e3", num(agg.total_population)),
            ("total_working_1e3", num(agg.total_working)),
            ("weighted_shares_pct", shares.unwrap_or(Value::Null)),
            ("energy_split", split),
            (
                "food_groups",
                json!({
                    "threshold_pct": num(g.threshold),
                    "below": group(&g.below),
                    "at_or_above": group(&g.at_or_above),
                }),
            ),
            ("warnings", json!(rep.warnings)),
        ];
        Ok(Report::Text(object(out), csv_text))
    }

    fn budget(&self, a: &BudgetArgs) -> Res<Report> {
        let p = load_preset(&a.preset)?;
        let PresetParams::Budget(b) = &p.params else {
            return Err(CliError::usage(format!(
                "preset `{}` is not an energy budget",
                a.preset
            )));
        };
        let (a1, src1) = data_file("tableA1.csv")?;
        let (a2, src2) = data_file("tableA2.csv")?;
        let (a3, src3) = data_file("tableA3.csv")?;
        let tables = BudgetTables::parse(&a1, &a2, &a3)?;
        let reference = |q: &str, scope: &str| tables.a1_entry(q, scope).and_then(|e| e.watts());
        let compare = |value: f64, q: &str, scope: &str| {
            let r = reference(q, scope);
            json!({
                "table_a1_w": opt_num(r),
                "within_factor_2": r.map(|r| energy::within_factor(value, r, 2.0)),
            })
        };

        let th = energy::thermohaline_power(&b.thermohaline)?;
        let up = energy::wind_upwelling_power(&b.wind)?;
        let diss = energy::wind_dissipation_power(&b.wind)?;
        let hy = energy::hydropower(&b.hydro)?;
        let os = energy::osmotic_power(&b.hydro)?;
        let biota = energy::biotic_disturbance(b.biota.0, b.biota.1, b.biota.2)?;

        let mut nuclear = Map::new();
        let mut regions: Vec<&str> = tables.a2.iter().map(|e| e.scope.as_str()).collect();
        regions.dedup();
        for region in regions {
            let Some(mix) = EnergyMix::from_tables(&tables, region) else {
                continue;
            };
            let r = energy::nuclear_usable(&mix)?;
            nuclear.insert(
                region.to_string(),
                json!({
                    "total_w": num(mix.total),
                    "nuclear_total_w": num(r.nuclear_total),
                    "usable_nuclear_w": num(r.usable_nuclear),
                    "usable_total_w": num(r.usable_total),
                    "share_of_usable": num(r.share_of_usable),
                    "share_of_total": num(r.share_of_total),
                    "waste_heat_w": num(r.waste_heat),
                    "efficiency": num(r.efficiency),
                    "from_electric_data": r.from_electric_data,
                }),
            );
        }

        let mut out = vec![
            ("command", Value::from("budget")),
            (
                "provenance",
                self.provenance(Some(p.id), Some(format!("{src1};{src2};{src3}"))),
            ),
            (
                "thermohaline",
                json!({
                    "upwelling_velocity_m_per_s": num(th.upwelling_velocity),
                    "upwelling_m_per_year": num(th.upwelling_m_per_year),
                    "power_w": num(th.power),
                    "reference": compare(th.power, "thermohaline_circulation", "total_earth"),
                }),
            ),
            (
                "wind_upwelling",
                json!({
                    "force_density_n_per_m3": num(up.force_density),
                    "power_w": num(up.power),
                    "w_used_m_per_s": num(b.wind.w),
                    "w_from_precip_m_per_s": num(up.w_from_precip),
                    "reference": compare(up.power, "atmospheric_circulation", "total_earth"),
                }),
            ),
            (
                "wind_dissipation",
                json!({
                    "literal_w": num(diss.literal),
                    "printed_variant_w": num(diss.printed_variant),
                    "claimed_w": num(diss.claimed),
                    "literal_matches_claim": diss.literal_matches_claim,
                    "printed_variant_matches_claim": diss.printed_variant_matches_claim,
                }),
            ),
            (
                "hydropower",
                json!({
                    "gross_w": num(hy.gross),
                    "economically_available_w": num(hy.economically_available),
                    "reference": compare(hy.gross, "river_hydropower", "land"),
                }),
            ),
            (
                "osmotic",
                json!({
                    "head_m": num(os.head),
                    "power_w": num(os.power),
                    "reference": compare(os.power, "osmotic_transition_river_sea", "land"),
                }),
            ),
            ("nuclear_usable", Value::Object(nuclear)),
            (
                "biotic_disturbance",
                json!({
                    "total_biota_tw": num(b.biota.0),
                    "land_fraction": num(b.biota.1),
                    "disturbed_fraction": num(b.biota.2),
                    "disturbed_power_tw": num(biota),
                }),
            ),
            ("notes", Value::from(p.notes)),
        ];
        if a.tables {
            let rows: Vec<Value> = tables
                .entries()
                .map(|(table, e)| {
                    json!({
                        "table": table,
                        "quantity": e.quantity,
                        "value": opt_num(e.value),
                        "unit": e.unit,
                        "scope": e.scope,
                        "source_tag": e.source_tag,
                    })
                })
                .collect();
            out.push(("tables", Value::Array(rows)));
        }
        Ok(Report::Object(object(out)))
    }

    fn convert(&self, a: &ConvertArgs) -> Res<Report> {
        let result = energy::convert(a.value, &a.from, &a.to, self.constants)?;
        let describe = |name: &str| {
            let u = units::lookup(name, self.constants).expect("converted unit exists");
            json!({
                "unit": u.name,
                "si_factor": num(u.si_factor),
                "provenance": u.provenance.as_str(),
                "citation": u.citation,
            })
        };
        let out = vec![
            ("command", Value::from("convert")),
            ("provenance", self.provenance(None, None)),
            ("value", num(a.value)),
            ("from", describe(&a.from)),
            ("to", describe(&a.to)),
            ("result", num(result)),
        ];
        Ok(Report::Object(object(out)))
    }

    fn preset_list(&self) -> Report {
        let presets = scenarios::all_presets();
        let table = Table {
            columns: vec!["id", "kind", "inconsistent", "citation", "notes"],
            rows: presets
                .iter()
                .map(|p| {
                    vec![
                        Cell::from(p.id),
                        Cell::from(p.kind.as_str()),
                        Cell::from(p.inconsistent.to_string()),
                        Cell::from(p.citation),
                        Cell::from(p.notes),
                    ]
                })
                .collect(),
        };
        let meta = object(vec![
            ("command", Value::from("preset-list")),
            ("provenance", self.provenance(None, None)),
        ]);
        Report::Table(meta, table)
    }

    fn emit(&self, a: &EmitArgs) -> Res<Report> {
        let p = load_preset(&a.preset)?;
        let kind = CurveKind::parse(&a.curve).expect("validated by clap");
        let requests: Vec<CurveRequest> = match kind {
            CurveKind::Potential | CurveKind::Flux => {
                if a.x0.is_some() || a.dt.is_some() || a.steps.is_some() || a.sweep.is_some() {
                    return Err(CliError::usage(
                        "--x0/--dt/--steps/--sweep apply to trajectories only",
                    ));
                }
                let g = grid_from(&a.grid)?;
                vec![if kind == CurveKind::Potential {
                    CurveRequest::Potential(g)
                } else {
                    CurveRequest::Flux(g)
                }]
            }
            CurveKind::Trajectory => {
                let dt = require(a.dt, "dt")?;
                let n_steps = a
                    .steps
                    .ok_or_else(|| CliError::usage("missing required flag --steps"))?;
                let starts = match (&a.sweep, a.x0) {
                    (Some(_), Some(_)) => {
                        return Err(CliError::usage("give --x0 or --sweep, not both"))
                    }
                    (Some(spec), None) => parse_sweep(spec)?,
                    (None, Some(x0)) => vec![x0],
                    (None, None) => {
                        return Err(CliError::usage("missing required flag --x0 or --sweep"))
                    }
                };
                starts
                    .into_iter()
                    .map(|x0| CurveRequest::Trajectory { x0, dt, n_steps })
                    .collect()
            }
        };
        let sweep = a.sweep.is_some();
        let series = requests
            .par_iter()
            .map(|r| emit_curve(&p, *r))
            .collect::<Result<Vec<_>, _>>()?;

        let mut rows = Vec::new();
        for (req, s) in requests.iter().zip(&series) {
            let label = match req {
                CurveRequest::Trajectory { x0, .. } if sweep => {
                    format!("{} x0={}", s.label, crate::output::fmt_sig(*x0, 12))
                }
                _ => s.label.clone(),
            };
            for (x, y) in s.x.iter().zip(&s.y) {
                rows.push(vec![
                    Cell::from(*x),
                    Cell::from(*y),
                    Cell::from(label.as_str()),
                ]);
            }
        }
        let (x_unit, y_unit) = series
            .first()
            .map(|s| (s.x_unit.clone(), s.y_unit.clone()))
            .unwrap_or_default();
        let meta = object(vec![
            ("command", Value::from("emit")),
            ("provenance", self.provenance(Some(p.id), None)),
            ("curve", Value::from(kind.as_str())),
            ("x_unit", Value::from(x_unit)),
            ("y_unit", Value::from(y_unit)),
        ]);
        Ok(Report::Table(
            meta,
            Table {
                columns: vec!["x", "y", "label"],
                rows,
            },
        ))
    }
}

struct Run {
    x0: f64,
    samples: Vec<(f64, f64)>,
    exact: Option<Vec<f64>>,
    events: Vec<Value>,
    coarse_step: bool,
}

fn run_one(
    sys: &PiecewiseSystem,
    price: Option<&PriceSystem>,
    x0: f64,
    dt: f64,
    steps: usize,
    compare: bool,
) -> Result<Run, potdyn::Error> {
    let mut run = Run {
        x0,
        samples: Vec::new(),
        exact: compare.then(Vec::new),
        events: Vec::new(),
        coarse_step: false,
    };
    if steps == 0 {
        return Ok(run);
    }
    match price {
        Some(ps) => {
            let traj = ps.integrate(x0, dt, steps)?;
            run.samples = traj.samples.iter().map(|s| (s.t, s.m)).collect();
            run.events = traj
                .events
                .iter()
                .map(|e| match e {
                    PriceEvent::JunctionCross { t } => {
                        json!({"kind": "junction_cross", "t": num(*t)})
                    }
                    PriceEvent::Breakdown { t } => json!({"kind": "breakdown", "t": num(*t)}),
                })
                .collect();
        }
        None => {
            let traj = sys.integrate(x0, dt, steps)?;
            run.coarse_step = traj.coarse_step;
            run.samples = traj.samples.iter().map(|s| (s.t, s.m)).collect();
            run.events = traj
                .events
                .iter()
                .map(|e| match e {
                    Event::JunctionCross { t, direction } => json!({
                        "kind": "junction_cross",
                        "t": num(*t),
                        "direction": direction.as_str(),
                    }),
                    Event::Absorbed { t } => json!({"kind": "absorbed", "t": num(*t)}),
                })
                .collect();
            if compare {
                run.exact = Some(
                    run.samples
                        .iter()
                        .map(|&(t, _)| sys.closed_form_state(x0, t).map(|s| s.stock))
                        .collect::<Result<_, _>>()?,
                );
            }
        }
    }
    Ok(run)
}
