use potdyn::dynamics::{PiecewiseSystem, Regime, StationaryKind};
use potdyn::energy::units::{registry, ConstantSet};
use potdyn::energy::{
    convert, hydropower, osmotic_power, thermohaline_power, wind_dissipation_power,
    wind_upwelling_power, HydroOsmoticInput, ThermohalineInput, WindCirculationInput,
};
use potdyn::price::build_price_system;
use proptest::prelude::*;

fn system() -> impl Strategy<Value = PiecewiseSystem> {
    (0.01f64..100.0, 0.01f64..100.0, 0.1f64..50.0, 0.1f64..50.0)
        .prop_map(|(pp, pm, tp, tm)| PiecewiseSystem::new(pp, pm, tp, tm).unwrap())
}

fn bistable() -> impl Strategy<Value = PiecewiseSystem> {
    (1.0f64..200.0, 0.01f64..0.95, 0.1f64..50.0, 0.1f64..50.0).prop_map(|(m_s, alpha, tp, tm)| {
        PiecewiseSystem::from_stocks(m_s, alpha * m_s, tp, tm).unwrap()
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn potential_gradient_is_minus_flux(sys in system()) {
        let d = sys.derive();
        let span = 2.0 * d.m_s.max(d.m_u);
        let h = 1e-5 * span;
        let scale = d.m_s / sys.t_minus() + d.m_u / sys.t_plus();
        for i in 0..100 {
            let m = h * 2.0 + (span - 4.0 * h) * i as f64 / 99.0;
            if (m - d.m_r).abs() < 2.0 * h {
                continue;
            }
            let du = (sys.potential(m + h).unwrap() - sys.potential(m - h).unwrap()) / (2.0 * h);
            let f = sys.flux(m).unwrap();
            prop_assert!((du + f).abs() <= 1e-6 * scale.max(f.abs()), "m={m} du={du} f={f}");
        }
    }

    #[test]
    fn continuity_constant_matches_branch_matching(sys in system()) {
        let d = sys.derive();
        let (tp, tm) = (sys.t_plus(), sys.t_minus());
        let lower = (d.m_r * d.m_u / tp) * (1.0 - d.m_r / (2.0 * d.m_u));
        let upper_without_r = -(d.m_r * d.m_s / tm) * (1.0 - d.m_r / (2.0 * d.m_s));
        prop_assert!(rel(d.r, lower - upper_without_r) <= 1e-12);
    }

    #[test]
    fn junction_fluxes_agree(sys in system()) {
        let d = sys.derive();
        let upper = (d.m_s - d.m_r) / sys.t_minus();
        let lower = (d.m_r - d.m_u) / sys.t_plus();
        prop_assert!((upper - lower).abs() <= 1e-12 * (d.m_s / sys.t_minus() + d.m_u / sys.t_plus()));
    }

    #[test]
    fn price_continuity_constant(sys in bistable(), c in 0.1f64..100.0) {
        let ps = build_price_system(&sys, c, None).unwrap();
        let (dr, ds, du) = (ps.d_r(), ps.d_s(), ps.d_u());
        let (tp, tm) = (ps.t_plus(), ps.t_minus());
        let lower = -(dr * dr / (2.0 * tm)) * (1.0 - 2.0 * dr / (3.0 * ds));
        let upper_without_r = (dr * dr / (2.0 * tp)) * (1.0 - 2.0 * dr / (3.0 * du));
        prop_assert!(rel(ps.r_d(), upper_without_r - lower) <= 1e-12);
    }

    #[test]
    fn price_gradient_is_minus_flux(sys in bistable(), c in 0.1f64..100.0) {
        let ps = build_price_system(&sys, c, None).unwrap();
        let span = 2.0 * ps.d_u();
        let h = 1e-5 * span;
        let scale = span * span / ps.t_plus().min(ps.t_minus());
        for i in 1..=100 {
            let x = span * i as f64 / 101.0;
            if (x - ps.d_r()).abs() < 2.0 * h {
                continue;
            }
            let du = (ps.potential(x + h).unwrap() - ps.potential(x - h).unwrap()) / (2.0 * h);
            let f = ps.flux(x).unwrap().rate;
            prop_assert!((du + f).abs() <= 1e-6 * scale, "d={x} du={du} f={f}");
        }
    }

    #[test]
    fn price_is_dual_to_stock(sys in bistable(), c in 0.1f64..100.0) {
        let d = sys.derive();
        let ps = build_price_system(&sys, c, None).unwrap();
        prop_assert!(rel(ps.d_s(), c / d.m_s) <= 1e-15);
        prop_assert!(rel(ps.d_u(), c / d.m_u) <= 1e-15);
        prop_assert!(rel(ps.d_r(), c / d.m_r) <= 1e-12);
        // The stable stock maps to the stable (cheapest interior) price.
        let stock_min = sys.stationary_points().into_iter()
            .find(|p| p.kind == StationaryKind::StableMinimum).unwrap();
        let price_min = ps.stationary_points().into_iter()
            .find(|p| p.kind == StationaryKind::StableMinimum && !p.boundary).unwrap();
        prop_assert!(rel(price_min.location, c / stock_min.location) <= 1e-15);
    }

    #[test]
    fn rate_scaling_covariance(sys in system(), k in 0.1f64..10.0, x in 0.0f64..2.0) {
        let scaled = sys.scaled(k).unwrap();
        let (a, b) = (sys.derive(), scaled.derive());
        prop_assert!(rel(b.m_s, k * a.m_s) <= 1e-12);
        prop_assert!(rel(b.m_r, k * a.m_r) <= 1e-12);
        prop_assert!(rel(b.alpha, a.alpha) <= 1e-12);
        prop_assert!(rel(b.r, k * k * a.r) <= 1e-12);
        let m = x * a.m_s;
        prop_assert!((scaled.flux(k * m).unwrap() - k * sys.flux(m).unwrap()).abs()
            <= 1e-12 * k * (a.m_s / sys.t_minus() + a.m_u / sys.t_plus()));
        prop_assert_eq!(scaled.classify().regime, sys.classify().regime);
    }

    #[test]
    fn regime_follows_alpha(sys in system()) {
        let d = sys.derive();
        let expect = if (d.alpha - 1.0).abs() <= 1e-9 {
            Regime::Inflection
        } else if d.alpha < 1.0 {
            Regime::Bistable
        } else {
            Regime::NonStationary
        };
        prop_assert_eq!(sys.classify().regime, expect);
    }

    #[test]
    fn conversion_round_trip(x in -1e12f64..1e12, i in 0usize..64, j in 0usize..64, exact in any::<bool>()) {
        let set = if exact { ConstantSet::Exact } else { ConstantSet::PaperApproximate };
        let reg = registry(set);
        let a = reg[i % reg.len()];
        let same: Vec<_> = reg.iter().filter(|u| u.dimension == a.dimension).collect();
        let b = same[j % same.len()];
        let there = convert(x, a.name, b.name, set).unwrap();
        let back = convert(there, b.name, a.name, set).unwrap();
        prop_assert!((back - x).abs() <= 1e-12 * x.abs());
    }
}

fn doubles(base: f64, doubled: f64) -> bool {
    (doubled - 2.0 * base).abs() <= 1e-12 * base.abs()
}

#[test]
fn thermohaline_is_linear_in_each_factor() {
    let base = ThermohalineInput::reference();
    let p0 = thermohaline_power(&base).unwrap().power;
    let variants = [
        ThermohalineInput {
            sink_flux: 2.0 * base.sink_flux,
            ..base
        },
        ThermohalineInput {
            delta_t: 2.0 * base.delta_t,
            ..base
        },
        ThermohalineInput {
            water_density: 2.0 * base.water_density,
            ..base
        },
        ThermohalineInput {
            heat_capacity: 2.0 * base.heat_capacity,
            ..base
        },
    ];
    for v in variants {
        assert!(doubles(p0, thermohaline_power(&v).unwrap().power), "{v:?}");
    }
    let wider = ThermohalineInput {
        upwelling_area: 2.0 * base.upwelling_area,
        ..base
    };
    let t = thermohaline_power(&wider).unwrap();
    assert_eq!(t.power, p0);
    assert!(doubles(
        t.upwelling_velocity,
        thermohaline_power(&base).unwrap().upwelling_velocity
    ));
}

#[test]
fn wind_is_linear_in_each_factor() {
    let base = WindCirculationInput::reference();
    let up0 = wind_upwelling_power(&base).unwrap().power;
    for v in [
        WindCirculationInput {
            beta: 2.0 * base.beta,
            ..base
        },
        WindCirculationInput {
            gamma: 2.0 * base.gamma,
            ..base
        },
        WindCirculationInput {
            air_density: 2.0 * base.air_density,
            ..base
        },
        WindCirculationInput {
            g: 2.0 * base.g,
            ..base
        },
        WindCirculationInput {
            w: 2.0 * base.w,
            ..base
        },
        WindCirculationInput {
            h_vapor: 2.0 * base.h_vapor,
            ..base
        },
        WindCirculationInput {
            surface_area: 2.0 * base.surface_area,
            ..base
        },
    ] {
        assert!(
            doubles(up0, wind_upwelling_power(&v).unwrap().power),
            "{v:?}"
        );
    }
    let d0 = wind_dissipation_power(&base).unwrap();
    for v in [
        WindCirculationInput {
            air_density: 2.0 * base.air_density,
            ..base
        },
        WindCirculationInput {
            surface_area: 2.0 * base.surface_area,
            ..base
        },
    ] {
        let d = wind_dissipation_power(&v).unwrap();
        assert!(doubles(d0.literal, d.literal));
        assert!(doubles(d0.printed_variant, d.printed_variant));
    }
    let viscous = WindCirculationInput {
        eddy_viscosity: 2.0 * base.eddy_viscosity,
        ..base
    };
    assert!(doubles(
        d0.literal,
        wind_dissipation_power(&viscous).unwrap().literal
    ));
}

#[test]
fn hydro_is_linear_in_each_factor() {
    let base = HydroOsmoticInput::reference();
    let h0 = hydropower(&base).unwrap().gross;
    let o0 = osmotic_power(&base).unwrap().power;
    let runoff = HydroOsmoticInput {
        runoff: 2.0 * base.runoff,
        ..base
    };
    assert!(doubles(h0, hydropower(&runoff).unwrap().gross));
    assert!(doubles(o0, osmotic_power(&runoff).unwrap().power));
    let high = HydroOsmoticInput {
        mean_height: 2.0 * base.mean_height,
        ..base
    };
    assert!(doubles(h0, hydropower(&high).unwrap().gross));
    let salty = HydroOsmoticInput {
        osmotic_pressure: 2.0 * base.osmotic_pressure,
        ..base
    };
    assert!(doubles(o0, osmotic_power(&salty).unwrap().power));
    let column = HydroOsmoticInput {
        water_column_per_atm: 2.0 * base.water_column_per_atm,
        ..base
    };
    assert!(doubles(o0, osmotic_power(&column).unwrap().power));
}
