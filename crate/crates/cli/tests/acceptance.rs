//! Acceptance run: one PASS/FAIL line per criterion (and per sub-check),
//! exit status 1 if any line fails.
//!
//! Expected values are recomputed here from first principles wherever they
//! are derived rather than quoted.

use std::process::{Command, ExitCode};

use potdyn::data;
use potdyn::dynamics::{PiecewiseSystem, Regime, StationaryKind};
use potdyn::econ::{self, ThreeSectorEconomy, TwoSectorEconomy};
use potdyn::energy;
use potdyn::price::build_price_system;
use potdyn::scenarios::{preset, PresetParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

struct Report {
    failed: Vec<String>,
}

impl Report {
    fn check(&mut self, id: &str, pass: bool, detail: String) {
        println!("{} {id}: {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            self.failed.push(id.to_string());
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn criterion_1(r: &mut Report) {
    let sys = preset("fig1a").unwrap().system().unwrap();
    let d = sys.derive();
    let class = sys.classify();
    let pts = sys.stationary_points();
    let has =
        |kind: StationaryKind, at: f64| pts.iter().any(|p| p.kind == kind && p.location == at);
    r.check(
        "1.alpha",
        (0.105..=0.113).contains(&d.alpha) && rel(d.alpha, 0.11) <= 0.10,
        format!("alpha = {:.6} (P-T+/P+T- = 16/152)", d.alpha),
    );
    r.check(
        "1.regime",
        class.regime == Regime::Bistable,
        format!("regime = {}", class.regime.as_str()),
    );
    r.check(
        "1.stationary",
        has(StationaryKind::UnstableMaximum, 16.0) && has(StationaryKind::StableMinimum, 152.0),
        format!("m_u = {}, m_s = {}", d.m_u, d.m_s),
    );
}

fn criterion_2(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut worst_grad, mut worst_r, mut worst_rd) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let sys = PiecewiseSystem::new(
            rng.gen_range(0.01..100.0),
            rng.gen_range(0.01..100.0),
            rng.gen_range(0.1..50.0),
            rng.gen_range(0.1..50.0),
        )
        .unwrap();
        let d = sys.derive();
        let (tp, tm) = (sys.t_plus(), sys.t_minus());

        // -dU/dm against the flux, by central differences.
        let span = 2.0 * d.m_s.max(d.m_u);
        let h = 1e-5 * span;
        let scale = d.m_s / tm + d.m_u / tp;
        for i in 0..100 {
            let m = 2.0 * h + (span - 4.0 * h) * i as f64 / 99.0;
            if (m - d.m_r).abs() < 2.0 * h {
                continue;
            }
            let du = (sys.potential(m + h).unwrap() - sys.potential(m - h).unwrap()) / (2.0 * h);
            let f = sys.flux(m).unwrap();
            worst_grad = worst_grad.max((du + f).abs() / scale.max(f.abs()));
        }

        // Branch matching: lower-branch integral from 0 to m_r equals the
        // upper-branch integral plus the constant.
        let m_r = (d.m_s * tp + d.m_u * tm) / (tp + tm);
        let lower = (m_r * d.m_u / tp) * (1.0 - m_r / (2.0 * d.m_u));
        let upper = -(m_r * d.m_s / tm) * (1.0 - m_r / (2.0 * d.m_s));
        worst_r = worst_r.max(rel(d.r, lower - upper));

        // Price landscape of a bistable companion system with the same times.
        let m_s = rng.gen_range(1.0..200.0);
        let alpha = rng.gen_range(0.01..0.95);
        let c = rng.gen_range(0.1..100.0);
        let bistable = PiecewiseSystem::from_stocks(m_s, alpha * m_s, tp, tm).unwrap();
        let ps = build_price_system(&bistable, c, None).unwrap();
        let (ds, du_, dr) = (c / m_s, c / (alpha * m_s), ps.d_r());
        let lo = -(dr * dr / (2.0 * tm)) * (1.0 - 2.0 * dr / (3.0 * ds));
        let hi = (dr * dr / (2.0 * tp)) * (1.0 - 2.0 * dr / (3.0 * du_));
        worst_rd = worst_rd.max(rel(ps.r_d(), hi - lo));
    }
    r.check(
        "2.gradient",
        worst_grad <= 1e-6,
        format!("max |U' + flux| / scale = {worst_grad:.3e} over 1000 systems x 100 points"),
    );
    r.check(
        "2.stock_constant",
        worst_r <= 1e-12,
        format!("max rel error = {worst_r:.3e}"),
    );
    r.check(
        "2.price_constant",
        worst_rd <= 1e-12,
        format!("max rel error = {worst_rd:.3e}"),
    );
}

fn criterion_3(r: &mut Report) {
    let sys = preset("fig1a").unwrap().system().unwrap();
    let (m_s, tm) = (152.0, sys.t_minus());
    let err = |dt: f64| {
        let n = (5.0 * tm / dt).round() as usize;
        sys.integrate(100.0, dt, n)
            .unwrap()
            .samples
            .iter()
            .map(|s| (s.m - (m_s + (100.0 - m_s) * (-s.t / tm).exp())).abs())
            .fold(0.0, f64::max)
    };
    let e = err(tm / 100.0);
    r.check(
        "3.accuracy",
        e <= 1e-6 * m_s,
        format!("max error {e:.3e} <= {:.3e}", 1e-6 * m_s),
    );
    let (coarse, fine) = (err(tm / 10.0), err(tm / 20.0));
    r.check(
        "3.order",
        coarse / fine >= 8.0,
        format!("error ratio on halving dt = {:.2}", coarse / fine),
    );
}

fn criterion_4(r: &mut Report) {
    let ps = preset("fig2_relative").unwrap().price_system().unwrap();
    let got: Vec<(StationaryKind, f64, bool)> = ps
        .stationary_points()
        .iter()
        .map(|p| (p.kind, p.location, p.boundary))
        .collect();
    let want = vec![
        (StationaryKind::UnstableMaximum, 0.0, true),
        (StationaryKind::StableMinimum, 1.0, false),
        (StationaryKind::UnstableMaximum, 4.0, false),
        (StationaryKind::StableMinimum, 40.0, true),
    ];
    let show: Vec<String> = got
        .iter()
        .map(|(k, x, b)| format!("{}{} {x}", if *b { "boundary " } else { "" }, k.as_str()))
        .collect();
    r.check("4.landscape", got == want, show.join(", "));
}

fn criterion_5(r: &mut Report) {
    let stated = TwoSectorEconomy::from_ratio(45e12, 300.0, 5e12)
        .unwrap()
        .markup_ratio();
    let revenue = econ::energy_revenue(4.7e11, 10.0).unwrap();
    let computed = TwoSectorEconomy::from_ratio(45e12, 300.0, revenue)
        .unwrap()
        .markup_ratio();
    // n1 g_s with g_s = (gdp - revenue)/n1 and n2 g_t = revenue.
    let oracle = 300.0 * revenue / (45e12 - revenue);
    r.check(
        "5a.stated_revenue",
        stated == 37.5,
        format!("markup = {stated}"),
    );
    r.check(
        "5b.computed_revenue",
        within(computed, 34.8, 0.1),
        format!("markup = {computed:.4} (independent {oracle:.4}), required 34.8 +/- 0.1"),
    );
    r.check(
        "5c.about_forty",
        rel(stated, 40.0) <= 0.15 && (computed - 40.0).abs() / 40.0 <= 0.15,
        format!("{stated} and {computed:.3} vs 40"),
    );
}

fn criterion_6(r: &mut Report) {
    let w = econ::mean_wage(45e12, 6.3e9, 0.5, 2100.0).unwrap();
    r.check(
        "6.wage",
        within(w, 6.80, 0.01) && (w - 7.0).abs() / 7.0 <= 0.05,
        format!(
            "{w:.4} USD/hour (45e12 / (6.3e9 * 0.5 * 2100) = {:.4})",
            45e12 / (6.3e9 * 0.5 * 2100.0)
        ),
    );
    let m = econ::money_energy_factor(35e12, 4.7e20).unwrap();
    let mj = m.joules_per_currency / 1e6;
    r.check(
        "6.money_energy",
        within(mj, 13.4, 0.1) && (mj - 13.0).abs() / 13.0 <= 0.05,
        format!("{mj:.4} MJ/USD"),
    );
    r.check(
        "6.reciprocal",
        within(m.currency_per_gj, 74.5, 0.5) && (m.currency_per_gj - 75.0).abs() / 75.0 <= 0.05,
        format!("{:.4} USD/GJ", m.currency_per_gj),
    );
}

fn criterion_7(r: &mut Report) {
    let rep = ThreeSectorEconomy::new(45e12, 0.10, 0.001, 100.0)
        .unwrap()
        .report();
    r.check(
        "7.vacant",
        (0.095..=0.10).contains(&rep.vacant_share)
            && rel(rep.vacant_share + rep.cost_labor_share, 0.10) <= 1e-12,
        format!(
            "vacant share {} (+ cost labour {} = 0.10)",
            rep.vacant_share, rep.cost_labor_share
        ),
    );
    r.check(
        "7.workweek",
        within(rep.workweek_reduction_days, 0.5, 0.025),
        format!("{} days per 5-day week", rep.workweek_reduction_days),
    );
    r.check(
        "7.retirement",
        within(rep.retirement_reduction_years, 4.0, 0.2),
        format!("{} years", rep.retirement_reduction_years),
    );
}

fn criterion_8(r: &mut Report) {
    let rep = econ::ingest_str(data::TABLE1).unwrap();
    let agg = &rep.aggregates;
    let summary = econ::ingest_str(data::TABLE1_SUMMARY).unwrap();
    let row = &summary.records[0];
    r.check(
        "8.totals",
        agg.countries == 28
            && agg.total_consumption == 366.2
            && agg.total_production == 385.4
            && agg.total_consumption == row.energy_consumption
            && agg.total_production == row.energy_production,
        format!(
            "{} countries, {} / {}",
            agg.countries, agg.total_consumption, agg.total_production
        ),
    );

    // Employment-weighted mining share, summed by hand from the raw text.
    let (mut num, mut den) = (0.0, 0.0);
    for line in data::TABLE1.lines().skip(1) {
        let cells: Vec<&str> = line.rsplitn(13, ',').collect();
        let working: f64 = cells[8].parse().unwrap();
        let mining: f64 = cells[6].parse().unwrap();
        num += working * mining;
        den += working;
    }
    let mining = agg.weighted_share(econ::Sector::Mining).unwrap();
    r.check(
        "8.mining",
        within(mining, 0.7, 0.05) && rel(mining, num / den) <= 1e-12,
        format!("{mining:.4}% (by hand {:.4}%)", num / den),
    );
    let split = econ::energy_sector_split(agg, 0.5).unwrap();
    r.check(
        "8.split",
        (270.0..=310.0).contains(&split.n1_over_n2),
        format!("N1/N2 = {:.2}", split.n1_over_n2),
    );
    let g = econ::food_sector_groups(&rep.records, 15.0).unwrap();
    r.check(
        "8.food_groups",
        within(g.below.mean, 4.4, 0.2) && within(g.at_or_above.mean, 33.0, 1.0),
        format!(
            "threshold 15: {} countries mean {:.3}% (range {}-{}), {} countries mean {:.3}%",
            g.below.count,
            g.below.mean,
            g.below.min,
            g.below.max,
            g.at_or_above.count,
            g.at_or_above.mean
        ),
    );
}

fn criterion_9(r: &mut Report) {
    let p = preset("appendix_budget").unwrap();
    let PresetParams::Budget(b) = &p.params else {
        unreachable!()
    };
    let th = energy::thermohaline_power(&b.thermohaline).unwrap();
    let th_oracle = 1e3 * 4.2e3 * 11.0 * 3e7;
    r.check(
        "9.thermohaline",
        rel(th.power, th_oracle) <= 1e-12 && rel(th.power, 1.4e15) <= 0.02,
        format!("{:.4e} W (rho c dT F = {th_oracle:.4e})", th.power),
    );
    let up = energy::wind_upwelling_power(&b.wind).unwrap();
    let up_oracle = 3.0 * 0.02 * 1.0 * 9.8 * 1e-3 * 2400.0 * 5e14;
    r.check(
        "9.wind_upwelling",
        rel(up.power, up_oracle) <= 1e-12 && energy::within_factor(up.power, 1e15, 2.0),
        format!("{:.4e} W (oracle {up_oracle:.4e})", up.power),
    );
    let hy = energy::hydropower(&b.hydro).unwrap();
    let hy_oracle = 1.5e6 * 1e3 * 9.8 * 200.0;
    r.check(
        "9.hydropower",
        rel(hy.gross, hy_oracle) <= 1e-12 && (hy.gross - 3e12).abs() / 3e12 <= 0.02,
        format!("{:.6e} W (oracle {hy_oracle:.6e})", hy.gross),
    );
    let os = energy::osmotic_power(&b.hydro).unwrap();
    r.check("9.osmotic_head", os.head == 280.0, format!("{} m", os.head));

    let tables = energy::budget_table();
    let mix = energy::EnergyMix::from_tables(&tables, "France").unwrap();
    let n = energy::nuclear_usable(&mix).unwrap();
    // 400 - 160 + 55 * 0.78
    let usable_oracle = 400e9 - 160e9 + 55e9 * 0.78;
    r.check(
        "9.france_usable",
        within(n.usable_total / 1e9, 283.0, 3.0) && rel(n.usable_total, usable_oracle) <= 1e-12,
        format!("{:.2} GW", n.usable_total / 1e9),
    );
    r.check(
        "9.france_nuclear_share",
        within(100.0 * n.share_of_usable, 15.0, 1.0),
        format!("{:.2}% of usable", 100.0 * n.share_of_usable),
    );
    let bio = energy::biotic_disturbance(100.0, 2.0 / 3.0, 0.6).unwrap();
    r.check("9.biotic", bio == 40.0, format!("{bio} TW"));
}

fn criterion_10(r: &mut Report) {
    let p = preset("appendix_budget").unwrap();
    let PresetParams::Budget(b) = &p.params else {
        unreachable!()
    };
    let d = energy::wind_dissipation_power(&b.wind).unwrap();
    // rho nu u^2 / l^2 S and rho u^2 / l S
    let literal = 1.0 * 3.0 * 49.0 / 1e4 * 5e14;
    let printed = 1.0 * 49.0 / 100.0 * 5e14;
    r.check(
        "10.values",
        rel(d.literal, literal) <= 1e-12 && rel(d.printed_variant, printed) <= 1e-12,
        format!(
            "literal {:.4e} W, printed variant {:.4e} W",
            d.literal, d.printed_variant
        ),
    );
    r.check(
        "10.flags",
        !d.literal_matches_claim && !d.printed_variant_matches_claim,
        format!(
            "vs claimed {:.0e} W: literal_matches = {}, printed_variant_matches = {}",
            d.claimed, d.literal_matches_claim, d.printed_variant_matches_claim
        ),
    );
}

fn criterion_11(r: &mut Report) {
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_potdyn"))
            .args(args)
            .env_remove("POTDYN_DATA_DIR")
            .output()
            .expect("binary runs")
            .stdout
    };
    let mut unstable = Vec::new();
    let mut drifted = Vec::new();
    for (name, args) in common::GOLDEN {
        let (a, b) = (run(args), run(args));
        if a != b {
            unstable.push(*name);
        }
        match std::fs::read(common::golden_dir().join(name)) {
            Ok(g) if g == a => {}
            _ => drifted.push(*name),
        }
    }
    r.check(
        "11.determinism",
        unstable.is_empty() && drifted.is_empty(),
        format!(
            "{} golden invocations run twice; differing: {unstable:?}; off golden: {drifted:?}",
            common::GOLDEN.len()
        ),
    );
    let rep = econ::ingest_str(data::TABLE1).unwrap();
    let mut buf = Vec::new();
    econ::write_table(&rep.records, &mut buf).unwrap();
    let cli = run(&["ingest", "--format", "csv"]);
    r.check(
        "11.round_trip",
        buf == data::TABLE1.as_bytes() && cli == data::TABLE1.as_bytes(),
        format!("{} bytes, library and CLI", buf.len()),
    );
}

fn main() -> ExitCode {
    let mut r = Report { failed: Vec::new() };
    criterion_1(&mut r);
    criterion_2(&mut r);
    criterion_3(&mut r);
    criterion_4(&mut r);
    criterion_5(&mut r);
    criterion_6(&mut r);
    criterion_7(&mut r);
    criterion_8(&mut r);
    criterion_9(&mut r);
    criterion_10(&mut r);
    criterion_11(&mut r);
    if r.failed.is_empty() {
        println!("acceptance: all checks passed");
        ExitCode::SUCCESS
    } else {
        println!(
            "acceptance: {} failed: {}",
            r.failed.len(),
            r.failed.join(", ")
        );
        ExitCode::FAILURE
    }
}
