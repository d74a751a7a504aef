//! Piecewise production–consumption dynamics of a single stock.
//!
//! Above the junction stock `m_r` production is saturated and consumption is
//! proportional to the stock; below it production is proportional to the stock
//! and consumption is constant:
//!
//! ```text
//! dM/dt = (M_s - M) / T-     M >= M_r,   M_s = P+ T-
//! dM/dt = (M - M_u) / T+     M <  M_r,   M_u = P- T+
//! ```
//!
//! The junction is placed where both right-hand sides agree, so the flux is
//! continuous (but kinked) at `m_r`. The Lyapunov potential `U` satisfies
//! `dM/dt = -dU/dM` with `U(0) = 0` and a continuity constant `r` on the
//! upper branch.
//!
//! The same algebra describes goods in a market and employment, so stock
//! and time units are carried only as labels.

mod trajectory;

pub use trajectory::{ClosedFormState, Direction, Event, Sample, Trajectory};

use crate::error::{ensure_non_negative, ensure_positive, Result};

/// Default half-width of the band around `alpha = 1` classified as an inflection.
pub const DEFAULT_REGIME_TOL: f64 = 1e-9;

/// Labels for the stock and time dimensions, e.g. `"t C/ha"` and `"year"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Units {
    pub stock: String,
    pub time: String,
}

impl Default for Units {
    fn default() -> Self {
        Units {
            stock: "stock".to_string(),
            time: "year".to_string(),
        }
    }
}

/// The four fundamental rate/turnover parameters of the piecewise system.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseSystem {
    p_plus: f64,
    p_minus: f64,
    t_plus: f64,
    t_minus: f64,
    units: Units,
}

/// Stationary quantities derived from a [`PiecewiseSystem`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    /// Upper stationary stock, `p_plus * t_minus`.
    pub m_s: f64,
    /// Lower stationary stock, `p_minus * t_plus`.
    pub m_u: f64,
    /// Junction stock where the two branches meet with equal flux.
    pub m_r: f64,
    /// `m_u / m_s`.
    pub alpha: f64,
    /// Continuity constant of the upper potential branch.
    pub r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `alpha < 1`: stable upper state separated from collapse by a barrier.
    Bistable,
    /// `alpha = 1`: minimum and maximum merge into an unstable inflection.
    Inflection,
    /// `alpha > 1`: no stationary state; the stock drains to zero.
    NonStationary,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Bistable => "Bistable",
            Regime::Inflection => "Inflection",
            Regime::NonStationary => "NonStationary",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One of the two linear branches of the flux.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Saturated production, consumption proportional to stock (`m >= m_r`).
    Upper,
    /// Production proportional to stock, constant consumption (`m < m_r`).
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeClass {
    pub regime: Regime,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StationaryKind {
    StableMinimum,
    UnstableMaximum,
    InflectionPoint,
    AbsorbingBoundary,
}

impl StationaryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StationaryKind::StableMinimum => "StableMinimum",
            StationaryKind::UnstableMaximum => "UnstableMaximum",
            StationaryKind::InflectionPoint => "InflectionPoint",
            StationaryKind::AbsorbingBoundary => "AbsorbingBoundary",
        }
    }
}

/// A stationary point of a potential landscape.
///
/// `boundary` marks points that sit on the edge of the admissible domain
/// (zero stock, zero price, or a configured price cap) rather than at an
/// interior zero of the flux.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    pub location: f64,
    pub kind: StationaryKind,
    pub boundary: bool,
}

impl StationaryPoint {
    pub(crate) fn interior(location: f64, kind: StationaryKind) -> Self {
        StationaryPoint {
            location,
            kind,
            boundary: false,
        }
    }

    pub(crate) fn on_boundary(location: f64, kind: StationaryKind) -> Self {
        StationaryPoint {
            location,
            kind,
            boundary: true,
        }
    }
}

impl PiecewiseSystem {
    /// Builds a system from production/consumption rates and turnover times.
    pub fn new(p_plus: f64, p_minus: f64, t_plus: f64, t_minus: f64) -> Result<Self> {
        Ok(PiecewiseSystem {
            p_plus: ensure_positive("p_plus", p_plus)?,
            p_minus: ensure_positive("p_minus", p_minus)?,
            t_plus: ensure_positive("t_plus", t_plus)?,
            t_minus: ensure_positive("t_minus", t_minus)?,
            units: Units::default(),
        })
    }

    /// Builds a system from its two stationary stocks, back-deriving the rates
    /// as `p_plus = m_s / t_minus` and `p_minus = m_u / t_plus`.
    pub fn from_stocks(m_s: f64, m_u: f64, t_plus: f64, t_minus: f64) -> Result<Self> {
        let m_s = ensure_positive("m_s", m_s)?;
        let m_u = ensure_positive("m_u", m_u)?;
        let t_plus = ensure_positive("t_plus", t_plus)?;
        let t_minus = ensure_positive("t_minus", t_minus)?;
        Self::new(m_s / t_minus, m_u / t_plus, t_plus, t_minus)
    }

    pub fn with_units(mut self, stock: impl Into<String>, time: impl Into<String>) -> Self {
        self.units = Units {
            stock: stock.into(),
            time: time.into(),
        };
        self
    }

    pub fn p_plus(&self) -> f64 {
        self.p_plus
    }

    pub fn p_minus(&self) -> f64 {
        self.p_minus
    }

    pub fn t_plus(&self) -> f64 {
        self.t_plus
    }

    pub fn t_minus(&self) -> f64 {
        self.t_minus
    }

    pub fn units(&self) -> &Units {
        &self.units
    }

    /// Same system with both rates multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let factor = ensure_positive("factor", factor)?;
        let mut out = Self::new(
            self.p_plus * factor,
            self.p_minus * factor,
            self.t_plus,
            self.t_minus,
        )?;
        out.units = self.units.clone();
        Ok(out)
    }

    pub fn derive(&self) -> DerivedQuantities {
        let m_s = self.p_plus * self.t_minus;
        let m_u = self.p_minus * self.t_plus;
        let sum_t = self.t_plus + self.t_minus;
        let m_r = (m_s * self.t_plus + m_u * self.t_minus) / sum_t;
        let r = m_r * m_r * sum_t / (2.0 * self.t_plus * self.t_minus);
        DerivedQuantities {
            m_s,
            m_u,
            m_r,
            alpha: m_u / m_s,
            r,
        }
    }

    /// Rate of change `dM/dt` at stock `m`.
    pub fn flux(&self, m: f64) -> Result<f64> {
        ensure_non_negative("m", m)?;
        Ok(self.flux_unchecked(m, &self.derive()))
    }

    /// Flux of one named branch, regardless of which side of the junction `m` is on.
    pub fn branch_flux(&self, m: f64, branch: Branch) -> Result<f64> {
        ensure_non_negative("m", m)?;
        let d = self.derive();
        Ok(match branch {
            Branch::Upper => (d.m_s - m) / self.t_minus,
            Branch::Lower => (m - d.m_u) / self.t_plus,
        })
    }

    /// Branch formulas without the domain check; the integrator probes
    /// slightly negative stocks when stepping across the absorbing boundary.
    pub(crate) fn flux_unchecked(&self, m: f64, d: &DerivedQuantities) -> f64 {
        if m >= d.m_r {
            (d.m_s - m) / self.t_minus
        } else {
            (m - d.m_u) / self.t_plus
        }
    }

    /// Lyapunov potential `U(m)`, with `U(0) = 0`.
    pub fn potential(&self, m: f64) -> Result<f64> {
        ensure_non_negative("m", m)?;
        let d = self.derive();
        Ok(if m >= d.m_r {
            -(m * d.m_s / self.t_minus) * (1.0 - 0.5 * m / d.m_s) + d.r
        } else {
            (m * d.m_u / self.t_plus) * (1.0 - 0.5 * m / d.m_u)
        })
    }

    pub fn classify(&self) -> RegimeClass {
        self.classify_with_tol(DEFAULT_REGIME_TOL)
    }

    /// Classifies the regime using a band of half-width `tol` around `alpha = 1`.
    pub fn classify_with_tol(&self, tol: f64) -> RegimeClass {
        let alpha = self.derive().alpha;
        let regime = if (alpha - 1.0).abs() <= tol {
            Regime::Inflection
        } else if alpha < 1.0 {
            Regime::Bistable
        } else {
            Regime::NonStationary
        };
        RegimeClass { regime, alpha }
    }

    /// Stationary points sorted by location. Zero stock is always reported as
    /// an absorbing boundary: the lower-branch flux there is `-p_minus`, not zero.
    pub fn stationary_points(&self) -> Vec<StationaryPoint> {
        let d = self.derive();
        let mut points = vec![StationaryPoint::on_boundary(
            0.0,
            StationaryKind::AbsorbingBoundary,
        )];
        match self.classify().regime {
            Regime::Bistable => {
                points.push(StationaryPoint::interior(
                    d.m_u,
                    StationaryKind::UnstableMaximum,
                ));
                points.push(StationaryPoint::interior(
                    d.m_s,
                    StationaryKind::StableMinimum,
                ));
            }
            Regime::Inflection => {
                points.push(StationaryPoint::interior(
                    d.m_s,
                    StationaryKind::InflectionPoint,
                ));
            }
            Regime::NonStationary => {}
        }
        points
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn fig1a() -> PiecewiseSystem {
        PiecewiseSystem::new(8.0, 4.0, 4.0, 19.0).unwrap()
    }

    #[test]
    fn derive_fig1a() {
        let d = fig1a().derive();
        assert_eq!(d.m_s, 152.0);
        assert_eq!(d.m_u, 16.0);
        assert_relative_eq!(d.alpha, 16.0 / 152.0);
        assert_relative_eq!(d.m_r, 912.0 / 23.0, max_relative = 1e-15);
        assert!(d.m_u <= d.m_r && d.m_r <= d.m_s);
    }

    #[test]
    fn junction_matches_numeric_branch_intersection() {
        // bisection on the difference of the two branch fluxes
        let sys = fig1a();
        let (m_s, m_u) = (152.0, 16.0);
        let diff = |m: f64| (m_s - m) / sys.t_minus() - (m - m_u) / sys.t_plus();
        let (mut lo, mut hi) = (m_u, m_s);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if diff(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert_relative_eq!(sys.derive().m_r, 0.5 * (lo + hi), max_relative = 1e-12);
    }

    #[test]
    fn derive_inflection_preset() {
        let d = PiecewiseSystem::new(8.0, 8.0, 9.0, 9.0).unwrap().derive();
        assert_eq!((d.m_s, d.m_u, d.m_r, d.alpha), (72.0, 72.0, 72.0, 1.0));
    }

    #[test]
    fn construction_names_offending_field() {
        let err = PiecewiseSystem::new(8.0, -1.0, 4.0, 19.0).unwrap_err();
        assert!(err.to_string().contains("p_minus"));
        let err = PiecewiseSystem::new(8.0, 1.0, f64::NAN, 19.0).unwrap_err();
        assert!(err.to_string().contains("t_plus"));
        assert!(PiecewiseSystem::new(f64::INFINITY, 1.0, 1.0, 1.0).is_err());
        assert!(PiecewiseSystem::new(8.0, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn flux_zero_at_stationary_stocks() {
        let sys = fig1a();
        assert_eq!(sys.flux(152.0).unwrap(), 0.0);
        assert_eq!(sys.flux(16.0).unwrap(), 0.0);
        assert!(sys.flux(-1.0).is_err());
    }

    #[test]
    fn branches_agree_at_junction() {
        let sys = fig1a();
        let d = sys.derive();
        let upper = (d.m_s - d.m_r) / sys.t_minus();
        let lower = (d.m_r - d.m_u) / sys.t_plus();
        assert_relative_eq!(upper, lower, max_relative = 1e-12);
        assert_relative_eq!(upper, 5.913043478260869, max_relative = 1e-12);
    }

    #[test]
    fn potential_origin_and_continuity() {
        let sys = fig1a();
        assert_eq!(sys.potential(0.0).unwrap(), 0.0);
        let d = sys.derive();
        let eps = 1e-9 * d.m_s;
        let jump = sys.potential(d.m_r + eps).unwrap() - sys.potential(d.m_r - eps).unwrap();
        assert!(jump.abs() <= 1e-6 * d.r.abs());
        assert!(sys.potential(-0.5).is_err());
    }

    #[test]
    fn potential_matches_quadrature_of_flux() {
        // composite Simpson on -flux over [0, m_r] and [m_r, m_s] separately
        // (the integrand is kinked at m_r)
        let sys = fig1a();
        let d = sys.derive();
        let simpson = |a: f64, b: f64, n: usize| {
            let h = (b - a) / n as f64;
            let f = |x: f64| -sys.flux(x).unwrap();
            let mut acc = f(a) + f(b);
            for i in 1..n {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                acc += w * f(a + i as f64 * h);
            }
            acc * h / 3.0
        };
        let quad = simpson(0.0, d.m_r, 2000) + simpson(d.m_r, d.m_s, 2000);
        assert_relative_eq!(sys.potential(d.m_s).unwrap(), quad, max_relative = 1e-8);
        // the forest minimum lies below the grassland maximum for this preset
        assert!(sys.potential(d.m_s).unwrap() < sys.potential(d.m_u).unwrap());
    }

    #[test]
    fn classify_presets() {
        let a = fig1a().classify();
        assert_eq!(a.regime, Regime::Bistable);
        assert!((a.alpha - 0.10526).abs() < 1e-4);
        let b = PiecewiseSystem::new(8.0, 8.0, 9.0, 9.0).unwrap().classify();
        assert_eq!(b.regime, Regime::Inflection);
        let c = PiecewiseSystem::from_stocks(8.0, 16.0, 2.0, 2.0)
            .unwrap()
            .classify();
        assert_eq!(c.regime, Regime::NonStationary);
        assert_eq!(c.alpha, 2.0);
    }

    #[test]
    fn regime_band() {
        let sys = PiecewiseSystem::new(1.0, 1.0 + 1e-12, 1.0, 1.0).unwrap();
        assert_eq!(sys.classify().regime, Regime::Inflection);
        assert_eq!(sys.classify_with_tol(0.0).regime, Regime::NonStationary);
        let sys = PiecewiseSystem::new(1.0, 1.0 - 1e-6, 1.0, 1.0).unwrap();
        assert_eq!(sys.classify().regime, Regime::Bistable);
    }

    #[test]
    fn stationary_points_by_regime() {
        let pts = fig1a().stationary_points();
        let kinds: Vec<_> = pts.iter().map(|p| (p.location, p.kind)).collect();
        assert_eq!(
            kinds,
            vec![
                (0.0, StationaryKind::AbsorbingBoundary),
                (16.0, StationaryKind::UnstableMaximum),
                (152.0, StationaryKind::StableMinimum),
            ]
        );

        let pts = PiecewiseSystem::new(8.0, 8.0, 9.0, 9.0)
            .unwrap()
            .stationary_points();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[1].kind, StationaryKind::InflectionPoint);
        assert_eq!(pts[1].location, 72.0);

        let pts = PiecewiseSystem::from_stocks(8.0, 16.0, 2.0, 2.0)
            .unwrap()
            .stationary_points();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].kind, StationaryKind::AbsorbingBoundary);
    }

    #[test]
    fn flux_sign_change_at_stationary_points() {
        let sys = fig1a();
        let f = |m: f64| sys.flux(m).unwrap();
        // minimum: + below, - above
        assert!(f(151.9) > 0.0 && f(152.1) < 0.0);
        // maximum: - below, + above
        assert!(f(15.9) < 0.0 && f(16.1) > 0.0);
    }

    #[test]
    fn barrier_at_unstable_maximum() {
        let sys = fig1a();
        let top = sys.potential(16.0).unwrap();
        for k in 1..=10 {
            let delta = 0.1 * k as f64;
            assert!(sys.potential(16.0 - delta).unwrap() < top);
            assert!(sys.potential(16.0 + delta).unwrap() < top);
        }
    }

    #[test]
    fn units_are_labels() {
        let sys = fig1a().with_units("t C/ha", "year");
        assert_eq!(sys.units().stock, "t C/ha");
        assert_eq!(sys.scaled(2.0).unwrap().units().stock, "t C/ha");
    }
}
