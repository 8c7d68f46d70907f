//! Fixed-step closed-loop integration and settling detection.

use alloc::vec::Vec;

use crate::controller::Controller;
use crate::plant::Plant;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Integrator {
    /// Classical fourth-order Runge-Kutta.
    #[default]
    Rk4,
    /// Explicit Euler.
    Euler,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub dt: f64,
    pub horizon: f64,
    pub integrator: Integrator,
}

impl SimConfig {
    pub const DEFAULT_DT: f64 = 1e-3;

    pub fn new(dt: f64, horizon: f64) -> Self {
        Self {
            dt,
            horizon,
            integrator: Integrator::Rk4,
        }
    }

    /// `dt = 1e-3`, horizon `2 T_c`.
    pub fn for_time_bound(t_c: f64) -> Self {
        Self::new(Self::DEFAULT_DT, 2.0 * t_c)
    }

    pub fn with_integrator(mut self, integrator: Integrator) -> Self {
        self.integrator = integrator;
        self
    }

    /// Number of steps after the initial sample.
    pub fn steps(&self) -> Result<usize> {
        let Self { dt, horizon, .. } = *self;
        if !(dt.is_finite() && horizon.is_finite() && dt > 0.0 && dt <= horizon) {
            return Err(Error::InvalidStep { dt, horizon });
        }
        Ok(libm::ceil(horizon / dt - 1e-9) as usize)
    }
}

/// Uniformly sampled closed-loop record.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub dt: f64,
    /// Band radius used for `v`.
    pub x_s: f64,
    pub t: Vec<f64>,
    pub x: Vec<f64>,
    pub u: Vec<f64>,
    /// `V_ep(x) = x^2 / (2 x_s^2)`.
    pub v: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    fn push(&mut self, i: usize, x: f64, u: f64) {
        self.t.push(i as f64 * self.dt);
        self.x.push(x);
        self.u.push(u);
        self.v.push(x * x / (2.0 * self.x_s * self.x_s));
    }

    pub fn max_abs_u(&self) -> f64 {
        self.u.iter().fold(0.0_f64, |acc, u| acc.max(libm::fabs(*u)))
    }
}

/// Integrates `x' = drift(x) + u(x)` from `x0` over `[0, horizon]`.
///
/// For linear loops a step with `dt * rate >= 2` is outside the stable
/// region of the scheme; it is logged, not refused.
pub fn simulate(plant: Plant, controller: &Controller, x0: f64, config: SimConfig) -> Result<Trajectory> {
    let steps = config.steps()?;
    let dt = config.dt;
    let rhs = |x: f64| plant.drift(x) + controller.u(x);

    if controller.is_proportional() {
        let rate = libm::fabs(rhs(1.0));
        if dt * rate >= 2.0 {
            log::warn!(
                "dt * |rate| = {} >= 2, fixed-step integration may be unstable",
                dt * rate
            );
        }
    }

    let mut traj = Trajectory {
        dt,
        x_s: controller.params().x_s(),
        t: Vec::with_capacity(steps + 1),
        x: Vec::with_capacity(steps + 1),
        u: Vec::with_capacity(steps + 1),
        v: Vec::with_capacity(steps + 1),
    };

    let mut x = x0;
    for i in 0..=steps {
        if !x.is_finite() {
            return Err(Error::Divergence { step: i });
        }
        traj.push(i, x, controller.u(x));
        if i == steps {
            break;
        }
        x = match config.integrator {
            Integrator::Rk4 => {
                let k1 = rhs(x);
                let k2 = rhs(x + 0.5 * dt * k1);
                let k3 = rhs(x + 0.5 * dt * k2);
                let k4 = rhs(x + dt * k3);
                x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            }
            Integrator::Euler => x + dt * rhs(x),
        };
    }
    Ok(traj)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SettlingResult {
    pub entered: bool,
    /// Earliest grid time after which every sample stays in `|x| <= band`.
    pub time: Option<f64>,
    pub band: f64,
}

/// Finds the first grid time from which the trajectory stays inside the band
/// until the end of the record. A dip that later leaves the band does not count.
pub fn empirical_settling_time(traj: &Trajectory, x_s: f64) -> SettlingResult {
    let last_outside = traj.x.iter().rposition(|x| x.is_nan() || libm::fabs(*x) > x_s);
    let start = match last_outside {
        None => Some(0),
        Some(i) if i + 1 < traj.len() => Some(i + 1),
        Some(_) => None,
    };
    let time = match (start, traj.is_empty()) {
        (_, true) => None,
        (Some(i), false) => Some(traj.t[i]),
        (None, false) => None,
    };
    SettlingResult {
        entered: time.is_some(),
        time,
        band: x_s,
    }
}
