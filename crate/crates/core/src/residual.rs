//! Finite-difference residuals of the Lyapunov rate `V' = -(2 ln(x_c/x_s) / T_c) V`.

use alloc::vec::Vec;

use crate::params::ControllerParams;
use crate::sim::Trajectory;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Difference {
    /// `(v[i+1] - v[i]) / dt`, first order.
    #[default]
    Forward,
    /// `(v[i+1] - v[i-1]) / (2 dt)`, second order.
    Central,
}

/// `r[i] = dV/dt[i] + (2 ln(x_c / x_s) / T_c) v[i]`.
///
/// Forward differences give one residual per step (`len - 1` values);
/// central differences one per interior sample (`len - 2`). Only
/// trajectories of the explicit proportional loop are expected to give
/// small residuals.
pub fn lyapunov_residuals(traj: &Trajectory, params: &ControllerParams, scheme: Difference) -> Result<Vec<f64>> {
    let v = &traj.v;
    let rate = 2.0 * params.proportional_gain();
    let dt = traj.dt;
    match scheme {
        Difference::Forward => {
            if v.len() < 2 {
                return Err(Error::InsufficientData { len: v.len() });
            }
            Ok(v.windows(2).map(|w| (w[1] - w[0]) / dt + rate * w[0]).collect())
        }
        Difference::Central => {
            if v.len() < 3 {
                return Err(Error::InsufficientData { len: v.len() });
            }
            Ok(v.windows(3).map(|w| (w[2] - w[0]) / (2.0 * dt) + rate * w[1]).collect())
        }
    }
}

/// `max |r| / max(v[0], 1)`.
pub fn max_normalized_residual(residuals: &[f64], traj: &Trajectory) -> f64 {
    let scale = traj.v.first().copied().unwrap_or(0.0).max(1.0);
    residuals.iter().fold(0.0_f64, |acc, r| acc.max(libm::fabs(*r))) / scale
}
