use super::{Branch, DerivedQuantities, PiecewiseSystem};
use crate::error::{ensure_non_negative, ensure_positive, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Upward,
    Downward,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Upward => "up",
            Direction::Downward => "down",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Event {
    /// The stock passed the junction `m_r`.
    JunctionCross { t: f64, direction: Direction },
    /// The stock reached zero; the trajectory stops there.
    Absorbed { t: f64 },
}

impl Event {
    pub fn time(&self) -> f64 {
        match *self {
            Event::JunctionCross { t, .. } | Event::Absorbed { t } => t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub m: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub events: Vec<Event>,
    /// Set when `dt` exceeds the recommended `min(t_plus, t_minus) / 50`.
    pub coarse_step: bool,
}

impl Trajectory {
    pub fn absorbed_at(&self) -> Option<f64> {
        self.events.iter().find_map(|e| match *e {
            Event::Absorbed { t } => Some(t),
            _ => None,
        })
    }

    pub fn last(&self) -> Option<Sample> {
        self.samples.last().copied()
    }
}

/// Analytic state at time `t` together with every branch change on the way.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormState {
    pub stock: f64,
    pub events: Vec<Event>,
}

impl PiecewiseSystem {
    /// Exact solution of the linear branches, chained across the junction.
    ///
    /// Upper branch: `m(t) = m_s + (m0 - m_s) exp(-t / t_minus)`.
    /// Lower branch: `m(t) = m_u + (m0 - m_u) exp(t / t_plus)`.
    pub fn closed_form_state(&self, m0: f64, t: f64) -> Result<ClosedFormState> {
        ensure_non_negative("m0", m0)?;
        ensure_non_negative("t", t)?;
        let d = self.derive();
        let mut events = Vec::new();
        let mut m = m0;
        let mut elapsed = 0.0;
        let mut branch = if m >= d.m_r {
            Branch::Upper
        } else {
            Branch::Lower
        };

        if m == 0.0 {
            events.push(Event::Absorbed { t: 0.0 });
            return Ok(ClosedFormState { stock: 0.0, events });
        }

        // At most two branch switches are possible, so this terminates.
        loop {
            let remaining = t - elapsed;
            match branch {
                Branch::Upper => {
                    // Only a system with m_s < m_r can leave the upper branch.
                    let exit = (d.m_s < d.m_r)
                        .then(|| self.t_minus * ((m - d.m_s) / (d.m_r - d.m_s)).ln());
                    match exit {
                        Some(dt) if dt <= remaining => {
                            elapsed += dt.max(0.0);
                            events.push(Event::JunctionCross {
                                t: elapsed,
                                direction: Direction::Downward,
                            });
                            m = d.m_r;
                            branch = Branch::Lower;
                        }
                        _ => {
                            let stock = d.m_s + (m - d.m_s) * (-remaining / self.t_minus).exp();
                            return Ok(ClosedFormState { stock, events });
                        }
                    }
                }
                Branch::Lower => {
                    let exit = lower_exit(self, &d, m);
                    match exit {
                        Some((dt, target)) if dt <= remaining => {
                            elapsed += dt.max(0.0);
                            if target == 0.0 {
                                events.push(Event::Absorbed { t: elapsed });
                                return Ok(ClosedFormState { stock: 0.0, events });
                            }
                            events.push(Event::JunctionCross {
                                t: elapsed,
                                direction: Direction::Upward,
                            });
                            m = d.m_r;
                            branch = Branch::Upper;
                        }
                        _ => {
                            let stock = d.m_u + (m - d.m_u) * (remaining / self.t_plus).exp();
                            return Ok(ClosedFormState { stock, events });
                        }
                    }
                }
            }
        }
    }

    /// Fixed-step classical RK4 on the flux, recording junction crossings and
    /// absorption at zero. Event times are located by linear interpolation
    /// inside the step where the sign change happens.
    pub fn integrate(&self, m0: f64, dt: f64, n_steps: usize) -> Result<Trajectory> {
        ensure_non_negative("m0", m0)?;
        ensure_positive("dt", dt)?;
        if n_steps == 0 {
            return Err(Error::domain("n_steps", "must be > 0", 0.0));
        }
        let d = self.derive();
        let coarse_step = dt > self.t_plus.min(self.t_minus) / 50.0;
        if coarse_step {
            log::warn!(
                "dt = {dt} exceeds the recommended min(t_plus, t_minus)/50 = {}",
                self.t_plus.min(self.t_minus) / 50.0
            );
        }

        let f = |m: f64| self.flux_unchecked(m, &d);
        let mut samples = Vec::with_capacity(n_steps + 1);
        let mut events = Vec::new();
        samples.push(Sample { t: 0.0, m: m0 });
        if m0 == 0.0 {
            events.push(Event::Absorbed { t: 0.0 });
            return Ok(Trajectory {
                samples,
                events,
                coarse_step,
            });
        }

        let mut m = m0;
        for step in 0..n_steps {
            let t = step as f64 * dt;
            let k1 = f(m);
            let k2 = f(m + 0.5 * dt * k1);
            let k3 = f(m + 0.5 * dt * k2);
            let k4 = f(m + dt * k3);
            let next = m + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;

            let above_before = m >= d.m_r;
            let above_after = next >= d.m_r;
            if above_before != above_after {
                let frac = (d.m_r - m) / (next - m);
                events.push(Event::JunctionCross {
                    t: t + frac * dt,
                    direction: if above_after {
                        Direction::Upward
                    } else {
                        Direction::Downward
                    },
                });
            }
            if next <= 0.0 {
                let t_abs = t + dt * m / (m - next);
                events.push(Event::Absorbed { t: t_abs });
                samples.push(Sample { t: t_abs, m: 0.0 });
                break;
            }
            m = next;
            samples.push(Sample {
                t: (step + 1) as f64 * dt,
                m,
            });
        }

        Ok(Trajectory {
            samples,
            events,
            coarse_step,
        })
    }
}

/// Time to leave the lower branch from `m`, and where it ends up: the junction
/// when growing toward it, zero when decaying.
fn lower_exit(sys: &PiecewiseSystem, d: &DerivedQuantities, m: f64) -> Option<(f64, f64)> {
    if m > d.m_u {
        // grows; reaches the junction only if m_u < m_r
        (d.m_u < d.m_r).then(|| (sys.t_plus * ((d.m_r - d.m_u) / (m - d.m_u)).ln(), d.m_r))
    } else if m < d.m_u {
        Some((sys.t_plus * (d.m_u / (d.m_u - m)).ln(), 0.0))
    } else {
        None
    }
}
