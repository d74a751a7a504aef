//! Market-price and employment views of the piecewise stock system.
//!
//! Price is tied to the amount of goods by `D = C / M`. Under this map the
//! upper stationary stock `m_s` becomes the cost price `d_s`, the lower one
//! `m_u` the novel-goods price `d_u`, and the junction `m_r` the junction
//! price `d_r`.
//!
//! The price flux is defined as the negative derivative of the price
//! potential:
//!
//! ```text
//! U(D) = -(D^2 / 2T-) (1 - 2D / 3D_s)          D <= D_r
//! U(D) =  (D^2 / 2T+) (1 - 2D / 3D_u) - r_D    D >= D_r
//! r_D  = D_r^2 (T+ + T-) / (6 T+ T-)
//! ```
//!
//! so `dD/dt = (D/T-)(1 - D/D_s)` below the junction and
//! `dD/dt = -(D/T+)(1 - D/D_u)` above it. This makes `d_s` a stable minimum
//! and `d_u` an unstable maximum. Writing the logistic right-hand sides with
//! the opposite overall signs would swap those two roles.

use crate::dynamics::{
    Branch, PiecewiseSystem, Regime, Sample, StationaryKind, StationaryPoint, Trajectory,
};
use crate::error::{ensure_non_negative, ensure_positive, Error, Result};

/// `c / m`: the market price of a stock `m` under price-stock product `c`.
pub fn price_from_amount(c: f64, m: f64) -> Result<f64> {
    let c = ensure_positive("c", c)?;
    let m = ensure_positive("m", m)?;
    Ok(c / m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PriceSystem {
    c: f64,
    d_s: f64,
    d_u: f64,
    d_r: f64,
    t_plus: f64,
    t_minus: f64,
    d_max: Option<f64>,
    regime: Regime,
}

/// Price rate of change, with a flag raised above the breakdown cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriceFlux {
    pub rate: f64,
    pub breakdown: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PriceEvent {
    JunctionCross {
        t: f64,
    },
    /// Price exceeded the breakdown cap; integration stops.
    Breakdown {
        t: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PriceTrajectory {
    pub samples: Vec<Sample>,
    pub events: Vec<PriceEvent>,
}

/// Maps a stock system into price space. Only systems with a stable or
/// marginal stationary state have a price landscape.
pub fn build_price_system(
    sys: &PiecewiseSystem,
    c: f64,
    d_max: Option<f64>,
) -> Result<PriceSystem> {
    let c = ensure_positive("c", c)?;
    let regime = sys.classify().regime;
    if regime == Regime::NonStationary {
        return Err(Error::UnsupportedRegime {
            regime: regime.as_str(),
            reason: "a price landscape needs alpha <= 1",
        });
    }
    let d = sys.derive();
    let d_s = c / d.m_s;
    let d_u = c / d.m_u;
    let (t_plus, t_minus) = (sys.t_plus(), sys.t_minus());
    let d_r = (t_plus + t_minus) * d_s * d_u / (d_u * t_plus + d_s * t_minus);
    if let Some(cap) = d_max {
        if !(cap.is_finite() && cap > d_u) {
            return Err(Error::domain("d_max", "must be finite and > d_u", cap));
        }
    }
    Ok(PriceSystem {
        c,
        d_s,
        d_u,
        d_r,
        t_plus,
        t_minus,
        d_max,
        regime,
    })
}

impl PriceSystem {
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d_s(&self) -> f64 {
        self.d_s
    }

    pub fn d_u(&self) -> f64 {
        self.d_u
    }

    pub fn d_r(&self) -> f64 {
        self.d_r
    }

    pub fn t_plus(&self) -> f64 {
        self.t_plus
    }

    pub fn t_minus(&self) -> f64 {
        self.t_minus
    }

    pub fn d_max(&self) -> Option<f64> {
        self.d_max
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Continuity constant of the upper price-potential branch.
    pub fn r_d(&self) -> f64 {
        let sum_t = self.t_plus + self.t_minus;
        self.d_r * self.d_r * sum_t / (6.0 * self.t_plus * self.t_minus)
    }

    pub fn potential(&self, d: f64) -> Result<f64> {
        let d = ensure_positive("d", d)?;
        Ok(if d <= self.d_r {
            -(d * d / (2.0 * self.t_minus)) * (1.0 - (2.0 / 3.0) * d / self.d_s)
        } else {
            (d * d / (2.0 * self.t_plus)) * (1.0 - (2.0 / 3.0) * d / self.d_u) - self.r_d()
        })
    }

    pub fn flux(&self, d: f64) -> Result<PriceFlux> {
        let d = ensure_positive("d", d)?;
        Ok(PriceFlux {
            rate: self.rate(d),
            breakdown: self.d_max.is_some_and(|cap| d > cap),
        })
    }

    fn rate(&self, d: f64) -> f64 {
        if d <= self.d_r {
            (d / self.t_minus) * (1.0 - d / self.d_s)
        } else {
            -(d / self.t_plus) * (1.0 - d / self.d_u)
        }
    }

    /// Sorted stationary points. The zero-price maximum is an open boundary
    /// (no economy exists there) and the cap, when set, a boundary minimum.
    pub fn stationary_points(&self) -> Vec<StationaryPoint> {
        let mut points = vec![StationaryPoint::on_boundary(
            0.0,
            StationaryKind::UnstableMaximum,
        )];
        match self.regime {
            Regime::Inflection => points.push(StationaryPoint::interior(
                self.d_s,
                StationaryKind::InflectionPoint,
            )),
            _ => {
                points.push(StationaryPoint::interior(
                    self.d_s,
                    StationaryKind::StableMinimum,
                ));
                points.push(StationaryPoint::interior(
                    self.d_u,
                    StationaryKind::UnstableMaximum,
                ));
            }
        }
        if let Some(cap) = self.d_max {
            points.push(StationaryPoint::on_boundary(
                cap,
                StationaryKind::StableMinimum,
            ));
        }
        points
    }

    /// RK4 on the price flux. Stops with a breakdown event once the price
    /// passes `d_max`.
    pub fn integrate(&self, d0: f64, dt: f64, n_steps: usize) -> Result<PriceTrajectory> {
        let d0 = ensure_positive("d0", d0)?;
        ensure_positive("dt", dt)?;
        if n_steps == 0 {
            return Err(Error::domain("n_steps", "must be > 0", 0.0));
        }
        let mut samples = vec![Sample { t: 0.0, m: d0 }];
        let mut events = Vec::new();
        let mut d = d0;
        for step in 0..n_steps {
            let t = step as f64 * dt;
            let k1 = self.rate(d);
            let k2 = self.rate(d + 0.5 * dt * k1);
            let k3 = self.rate(d + 0.5 * dt * k2);
            let k4 = self.rate(d + dt * k3);
            let next = d + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
            if (d <= self.d_r) != (next <= self.d_r) {
                events.push(PriceEvent::JunctionCross {
                    t: t + dt * (self.d_r - d) / (next - d),
                });
            }
            if let Some(cap) = self.d_max {
                if next > cap {
                    let t_hit = t + dt * (cap - d) / (next - d);
                    events.push(PriceEvent::Breakdown { t: t_hit });
                    samples.push(Sample { t: t_hit, m: cap });
                    break;
                }
            }
            d = next;
            samples.push(Sample {
                t: (step + 1) as f64 * dt,
                m: d,
            });
        }
        Ok(PriceTrajectory { samples, events })
    }
}

/// Parameters `c` and `a` fixed from an observed cost price and employment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    pub c: f64,
    pub a: f64,
}

/// `c = d_s * p_s_minus * t_minus`, `a = p_s_minus / n_s`.
pub fn calibrate(d_s: f64, n_s: f64, p_s_minus: f64, t_minus: f64) -> Result<Calibration> {
    let d_s = ensure_positive("d_s", d_s)?;
    let n_s = ensure_positive("n_s", n_s)?;
    let p = ensure_positive("p_s_minus", p_s_minus)?;
    let t_minus = ensure_positive("t_minus", t_minus)?;
    Ok(Calibration {
        c: d_s * p * t_minus,
        a: p / n_s,
    })
}

/// Employment needed for output `p` at per-capita productivity `a`.
pub fn employment_from_output(p: f64, a: f64) -> Result<f64> {
    let p = ensure_non_negative("p", p)?;
    let a = ensure_positive("a", a)?;
    Ok(p / a)
}

/// Goods-lifecycle phase for employment dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// Conventional goods: employment relaxes to `n_s`.
    Saturated,
    /// Novel goods: employment diverges from `n_u`.
    StartUp,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmploymentSystem {
    a: f64,
    n_s: f64,
    n_u: f64,
    t_plus: f64,
    t_minus: f64,
    /// The same dynamics expressed as a stock system in persons.
    persons: PiecewiseSystem,
}

impl EmploymentSystem {
    /// Employment levels `n_s = p_plus / a` and `n_u = p_minus / a` of a goods system.
    pub fn from_system(sys: &PiecewiseSystem, a: f64) -> Result<Self> {
        let a = ensure_positive("a", a)?;
        Self::new(
            a,
            sys.p_plus() / a,
            sys.p_minus() / a,
            sys.t_plus(),
            sys.t_minus(),
        )
    }

    pub fn new(a: f64, n_s: f64, n_u: f64, t_plus: f64, t_minus: f64) -> Result<Self> {
        let a = ensure_positive("a", a)?;
        let persons =
            PiecewiseSystem::from_stocks(n_s, n_u, t_plus, t_minus)?.with_units("persons", "year");
        Ok(EmploymentSystem {
            a,
            n_s,
            n_u,
            t_plus,
            t_minus,
            persons,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn n_s(&self) -> f64 {
        self.n_s
    }

    pub fn n_u(&self) -> f64 {
        self.n_u
    }

    pub fn n_r(&self) -> f64 {
        (self.n_s * self.t_plus + self.n_u * self.t_minus) / (self.t_plus + self.t_minus)
    }

    pub fn as_stock_system(&self) -> &PiecewiseSystem {
        &self.persons
    }

    /// `dN/dt` for the named phase.
    pub fn flux(&self, n: f64, phase: Phase) -> Result<f64> {
        let branch = match phase {
            Phase::Saturated => Branch::Upper,
            Phase::StartUp => Branch::Lower,
        };
        self.persons.branch_flux(n, branch)
    }

    /// `dN/dt` with the phase chosen by the junction `n_r`.
    pub fn flux_switched(&self, n: f64) -> Result<f64> {
        self.persons.flux(n)
    }

    pub fn integrate(&self, n0: f64, dt: f64, n_steps: usize) -> Result<Trajectory> {
        self.persons.integrate(n0, dt, n_steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn fig1a() -> PiecewiseSystem {
        PiecewiseSystem::new(8.0, 4.0, 4.0, 19.0).unwrap()
    }

    /// d_s = 1, d_u = 4, unit turnover times.
    fn relative(d_max: Option<f64>) -> PriceSystem {
        let sys = PiecewiseSystem::new(1.0, 0.25, 1.0, 1.0).unwrap();
        build_price_system(&sys, 1.0, d_max).unwrap()
    }

    #[test]
    fn price_from_amount_basics() {
        assert_eq!(price_from_amount(100.0, 100.0).unwrap(), 1.0);
        assert_eq!(price_from_amount(100.0, 50.0).unwrap(), 2.0);
        assert!(price_from_amount(100.0, 0.0).is_err());
        assert!(price_from_amount(0.0, 1.0).is_err());
    }

    #[test]
    fn fig1a_price_system() {
        let p = build_price_system(&fig1a(), 152.0, None).unwrap();
        assert_eq!(p.d_s(), 1.0);
        assert_eq!(p.d_u(), 9.5);
        let d_r = 23.0 * 9.5 / (9.5 * 4.0 + 19.0);
        assert_relative_eq!(p.d_r(), d_r, max_relative = 1e-15);
        assert_relative_eq!(p.d_r(), 152.0 / fig1a().derive().m_r, max_relative = 1e-14);
        assert!((p.d_r() - 3.83).abs() < 0.01);
        assert!(p.d_s() < p.d_r() && p.d_r() < p.d_u());
        assert_eq!(price_from_amount(152.0, 152.0).unwrap(), p.d_s());
    }

    #[test]
    fn rejects_non_stationary_and_low_cap() {
        let c = PiecewiseSystem::from_stocks(8.0, 16.0, 2.0, 2.0).unwrap();
        assert!(matches!(
            build_price_system(&c, 1.0, None),
            Err(Error::UnsupportedRegime { .. })
        ));
        assert!(build_price_system(&fig1a(), 152.0, Some(9.5)).is_err());
        assert!(build_price_system(&fig1a(), 152.0, Some(9.6)).is_ok());
    }

    #[test]
    fn inflection_collapses_prices() {
        let sys = PiecewiseSystem::new(8.0, 8.0, 9.0, 9.0).unwrap();
        let p = build_price_system(&sys, 72.0, None).unwrap();
        assert_eq!(p.d_s(), p.d_u());
        assert_relative_eq!(p.d_r(), p.d_s(), max_relative = 1e-15);
        let pts = p.stationary_points();
        let inflections: Vec<_> = pts
            .iter()
            .filter(|pt| pt.kind == StationaryKind::InflectionPoint)
            .collect();
        assert_eq!(inflections.len(), 1);
        assert_eq!(inflections[0].location, 1.0);
    }

    #[test]
    fn r_d_hand_value() {
        let p = relative(None);
        assert_relative_eq!(p.d_r(), 1.6, max_relative = 1e-15);
        assert_relative_eq!(p.r_d(), 1.6 * 1.6 * 2.0 / 6.0, max_relative = 1e-15);
        // numeric branch matching at d_r
        let lower = -(1.6f64 * 1.6 / 2.0) * (1.0 - (2.0 / 3.0) * 1.6);
        let upper_no_const = (1.6f64 * 1.6 / 2.0) * (1.0 - (2.0 / 3.0) * 1.6 / 4.0);
        assert_relative_eq!(p.r_d(), upper_no_const - lower, max_relative = 1e-12);
    }

    #[test]
    fn flux_zeros_and_signs() {
        let p = relative(Some(40.0));
        assert_eq!(p.flux(1.0).unwrap().rate, 0.0);
        assert_eq!(p.flux(4.0).unwrap().rate, 0.0);
        assert!(p.flux(1.001).unwrap().rate < 0.0);
        assert!(p.flux(3.99).unwrap().rate < 0.0);
        assert!(p.flux(4.0 * (1.0 - 1e-3)).unwrap().rate < 0.0);
        assert!(p.flux(4.0 * (1.0 + 1e-3)).unwrap().rate > 0.0);
        assert!(p.flux(0.5).unwrap().rate > 0.0);
        assert!(!p.flux(39.0).unwrap().breakdown);
        assert!(p.flux(41.0).unwrap().breakdown);
        assert!(p.flux(0.0).is_err());
        assert!(p.potential(-1.0).is_err());
    }

    #[test]
    fn fig2_stationary_points() {
        let pts = relative(Some(40.0)).stationary_points();
        let got: Vec<_> = pts
            .iter()
            .map(|p| (p.location, p.kind, p.boundary))
            .collect();
        assert_eq!(
            got,
            vec![
                (0.0, StationaryKind::UnstableMaximum, true),
                (1.0, StationaryKind::StableMinimum, false),
                (4.0, StationaryKind::UnstableMaximum, false),
                (40.0, StationaryKind::StableMinimum, true),
            ]
        );
        assert_eq!(relative(None).stationary_points().len(), 3);
    }

    #[test]
    fn price_relaxes_to_cost_price_and_breaks_down_above_cap() {
        let p = relative(Some(40.0));
        let down = p.integrate(3.0, 0.01, 3000).unwrap();
        assert!((down.samples.last().unwrap().m - 1.0).abs() < 1e-6);
        assert_eq!(down.events.len(), 1);
        let up = p.integrate(5.0, 0.01, 3000).unwrap();
        assert!(matches!(
            up.events.last(),
            Some(PriceEvent::Breakdown { .. })
        ));
        assert_eq!(up.samples.last().unwrap().m, 40.0);
    }

    #[test]
    fn calibration_round_trip() {
        let cal = calibrate(1.0, 10.0, 8.0, 19.0).unwrap();
        assert_eq!(cal.c, 152.0);
        assert_eq!(cal.a, 0.8);
        let m_s = 8.0 * 19.0;
        assert_eq!(price_from_amount(cal.c, m_s).unwrap(), 1.0);
        assert!(calibrate(1.0, 0.0, 8.0, 19.0).is_err());
    }

    #[test]
    fn employment_from_output_basics() {
        assert_eq!(employment_from_output(8.0, 0.8).unwrap(), 10.0);
        assert_eq!(employment_from_output(0.0, 0.8).unwrap(), 0.0);
        assert!(employment_from_output(1.0, 0.0).is_err());
    }

    #[test]
    fn employment_flux_zeros() {
        let e = EmploymentSystem::from_system(&fig1a(), 0.8).unwrap();
        assert_eq!(e.n_s(), 10.0);
        assert_eq!(e.n_u(), 5.0);
        assert_eq!(e.flux(10.0, Phase::Saturated).unwrap(), 0.0);
        assert_eq!(e.flux(5.0, Phase::StartUp).unwrap(), 0.0);
        assert!(e.flux(-1.0, Phase::StartUp).is_err());
        assert_relative_eq!(e.n_r(), (10.0 * 4.0 + 5.0 * 19.0) / 23.0);
        assert_relative_eq!(
            e.as_stock_system().derive().m_r,
            e.n_r(),
            max_relative = 1e-15
        );
        assert_eq!(e.flux_switched(10.0).unwrap(), 0.0);
    }

    #[test]
    fn employment_tracks_goods_output_on_saturated_branch() {
        // n(t) = P+(M(t)) / a with P+(M) = P_s (2 - M / M_s)
        let sys = fig1a();
        let a = 0.8;
        let p_s = sys.p_plus();
        let m_s = sys.derive().m_s;
        let e = EmploymentSystem::from_system(&sys, a).unwrap();
        let dt = 0.19;
        let goods = sys.integrate(100.0, dt, 500).unwrap();
        let n0 = p_s * (2.0 - 100.0 / m_s) / a;
        let jobs = e.integrate(n0, dt, 500).unwrap();
        for (g, n) in goods.samples.iter().zip(&jobs.samples) {
            let mapped = p_s * (2.0 - g.m / m_s) / a;
            assert!((mapped - n.m).abs() <= 1e-9 * n.m, "{mapped} vs {}", n.m);
        }
    }
}
