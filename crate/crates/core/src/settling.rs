//! Closed-form settling and reaching times, and the initial-input gap
//! between the predefined-time and explicit-time laws.

use crate::candidate::GCandidate;
use crate::controller::Composition;
use crate::params::ControllerParams;
use crate::{Error, Result};

/// Analytic time for one initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReachReport {
    pub x0: f64,
    pub analytic_time: f64,
    /// `|x0| <= x_c`. The formulas extrapolate outside `D_c`; the bound only
    /// holds inside.
    pub within_condition: bool,
    /// `T_c`.
    pub bound: f64,
}

impl ReachReport {
    fn new(params: &ControllerParams, x0: f64, analytic_time: f64) -> Self {
        Self {
            x0,
            analytic_time,
            within_condition: params.contains(x0),
            bound: params.t_c(),
        }
    }

    /// `analytic_time <= bound` with a relative slack of 1e-12.
    pub fn respects_bound(&self) -> bool {
        self.analytic_time <= self.bound * (1.0 + 1e-12)
    }
}

/// `T_c * (G(W(x0)) - G(W_ref)) / (G(W(x_c)) - G(W_ref))`.
///
/// `G(W(x))` decreases linearly in time along the generalized explicit loop,
/// which gives this ratio. Under [`Composition::PracticalBand`] states
/// already inside the band report 0.
pub fn settling_time(
    g: &GCandidate,
    params: &ControllerParams,
    composition: Composition,
    x0: f64,
) -> Result<ReachReport> {
    let reference_state = composition.reference_state(params);
    if libm::fabs(x0) <= reference_state {
        return Ok(ReachReport::new(params, x0, 0.0));
    }
    let reference = g.eval(composition.reference_level(params));
    let denominator = g.eval(composition.level(params, params.x_c())) - reference;
    if !(denominator.is_finite() && denominator > 0.0) {
        return Err(Error::DegenerateCandidate {
            name: g.name,
            denominator,
        });
    }
    let numerator = g.eval(composition.level(params, x0)) - reference;
    Ok(ReachReport::new(params, x0, params.t_c() * numerator / denominator))
}

/// Settling time of the generalized explicit system built on the Lyapunov
/// level `V = x^2 / 2`:
/// `T_c * (G(x0^{2m} / 2^m) - G(0)) / (G(x_c^{2m} / 2^m) - G(0))`.
///
/// `x0 = 0` gives 0 even when `G` is undefined at 0.
pub fn settling_time_half_square(g: &GCandidate, params: &ControllerParams, x0: f64) -> Result<ReachReport> {
    settling_time(g, params, Composition::HalfSquare, x0)
}

/// Time for the generalized predefined-time loop to reach the origin,
/// `T_c * (G(W(x0)) - G(W_ref)) / (G(inf) - G(W_ref))`. Bounded by `T_c`
/// for every `x0`, not only inside `D_c`.
pub fn predefined_settling_time(
    g: &GCandidate,
    params: &ControllerParams,
    composition: Composition,
    x0: f64,
) -> Result<ReachReport> {
    let limit = g
        .limit_at_infinity
        .ok_or(Error::PredefinedRequiresBoundedG { name: g.name })?;
    let reference_state = composition.reference_state(params);
    if libm::fabs(x0) <= reference_state {
        return Ok(ReachReport::new(params, x0, 0.0));
    }
    let reference = g.eval(composition.reference_level(params));
    let denominator = limit - reference;
    if !(denominator.is_finite() && denominator > 0.0) {
        return Err(Error::DegenerateCandidate {
            name: g.name,
            denominator,
        });
    }
    let numerator = g.eval(composition.level(params, x0)) - reference;
    Ok(ReachReport::new(params, x0, params.t_c() * numerator / denominator))
}

/// Time for the explicit proportional loop to bring `|x|` from `|x0|` down to
/// `x_s`: `T_c ln(|x0| / x_s) / ln(x_c / x_s)`, and 0 inside the band.
pub fn practical_reaching_time(params: &ControllerParams, x0: f64) -> ReachReport {
    let a = libm::fabs(x0);
    let time = if a <= params.x_s() {
        0.0
    } else {
        params.t_c() * libm::log(a / params.x_s()) / libm::log(params.x_c() / params.x_s())
    };
    ReachReport::new(params, x0, time)
}

/// `|u_predefined(x0)| - |u_explicit(x0)|` for the `|x|^m` composition:
///
/// `(G(inf) - G(x_c^m)) / (m T_c) * |x0|^{1-m} / G'(|x0|^m)`.
///
/// Non-negative whenever `G` is nondecreasing and bounded by its limit.
pub fn input_advantage(g: &GCandidate, params: &ControllerParams, x0: f64) -> Result<f64> {
    let limit = g
        .limit_at_infinity
        .ok_or(Error::PredefinedRequiresBoundedG { name: g.name })?;
    if x0 == 0.0 {
        return Ok(0.0);
    }
    let m = params.m();
    let a = libm::fabs(x0);
    let gap = limit - g.eval(libm::pow(params.x_c(), m));
    Ok(gap / (m * params.t_c()) * libm::pow(a, 1.0 - m) / g.deriv(libm::pow(a, m)))
}
