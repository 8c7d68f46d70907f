//! Scalar feedback laws.
//!
//! Four constructions are available:
//!
//! | kind                    | law                                                  |
//! |-------------------------|------------------------------------------------------|
//! | `ExplicitProportional`  | `u = -k x`, `k = ln(x_c / x_s) / T_c`                |
//! | `PlantCompensating`     | `u = -(k + 1) x`, for the plant `x' = x + u`         |
//! | `GeneralizedExplicit`   | `u = -(G(W(x_c)) - G(W_ref)) / T_c * [dG(W(x))/dx]^-1` |
//! | `GeneralizedPredefined` | `u = -(G(inf) - G(W_ref)) / T_c * [dG(W(x))/dx]^-1`    |
//!
//! `W` is the level function chosen by [`Composition`]. The inverse
//! derivative is singular at `x = 0` in raw form; the laws are evaluated in
//! their expanded chain-rule form and `u(0) = 0` is taken as the `m < 1`
//! limit. Nothing is clamped: there is no actuator saturation model.

use crate::candidate::GCandidate;
use crate::conditions::verify_g_conditions_with;
use crate::params::ControllerParams;
use crate::{Error, Result};

/// Samples used by the constructors to check the candidate on `D_c`.
pub const CONSTRUCTION_SAMPLES: usize = 512;

/// How the shaping function is composed with the state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Composition {
    /// `W(x) = |x|^m`, reference `G(0)`.
    #[default]
    AbsPower,
    /// `W(x) = (x^2 / 2)^m`, reference `G(0)`.
    ///
    /// For `m > 1/2` the resulting law is unbounded near the origin.
    HalfSquare,
    /// `W(x) = (x^2 / (2 x_s^2))^m`, reference `G(W(x_s))`: convergence to
    /// the accuracy band rather than to the origin.
    PracticalBand,
}

impl Composition {
    /// The level `W(x)`.
    pub fn level(self, params: &ControllerParams, x: f64) -> f64 {
        let a = libm::fabs(x);
        let m = params.m();
        match self {
            Composition::AbsPower => libm::pow(a, m),
            Composition::HalfSquare => libm::pow(a * a / 2.0, m),
            Composition::PracticalBand => libm::pow(params.practical_level(a), m),
        }
    }

    /// The state at which the reference value `G(W_ref)` is taken.
    pub fn reference_state(self, params: &ControllerParams) -> f64 {
        match self {
            Composition::AbsPower | Composition::HalfSquare => 0.0,
            Composition::PracticalBand => params.x_s(),
        }
    }

    pub fn reference_level(self, params: &ControllerParams) -> f64 {
        self.level(params, self.reference_state(params))
    }

    /// `|dW/dx|^-1` at `|x| = a > 0`.
    pub fn inverse_slope(self, params: &ControllerParams, a: f64) -> f64 {
        let m = params.m();
        match self {
            Composition::AbsPower => libm::pow(a, 1.0 - m) / m,
            Composition::HalfSquare => libm::pow(a * a / 2.0, 1.0 - m) / (m * a),
            Composition::PracticalBand => {
                let xs = params.x_s();
                libm::pow(params.practical_level(a), 1.0 - m) * xs * xs / (m * a)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ControllerKind {
    ExplicitProportional,
    PlantCompensating,
    GeneralizedExplicit,
    GeneralizedPredefined,
}

/// An immutable scalar feedback law `u(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Controller {
    kind: ControllerKind,
    params: ControllerParams,
    g: Option<GCandidate>,
    composition: Composition,
    gain: Option<f64>,
    /// `(G(top) - G(W_ref)) / T_c` for the generalized kinds.
    rate: f64,
}

impl Controller {
    /// `u = -(ln(x_c / x_s) / T_c) x`.
    pub fn explicit_proportional(params: ControllerParams) -> Self {
        Self {
            kind: ControllerKind::ExplicitProportional,
            params,
            g: None,
            composition: Composition::PracticalBand,
            gain: Some(params.proportional_gain()),
            rate: 0.0,
        }
    }

    /// `u = -(ln(x_c / x_s) / T_c + 1) x`. Closed with `x' = x + u` this is
    /// the same loop as [`Controller::explicit_proportional`] on an integrator.
    pub fn plant_compensating(params: ControllerParams) -> Self {
        Self {
            kind: ControllerKind::PlantCompensating,
            ..Self::explicit_proportional(params)
        }
    }

    pub fn generalized_explicit(g: GCandidate, params: ControllerParams) -> Result<Self> {
        Self::generalized_explicit_with(g, params, Composition::default())
    }

    pub fn generalized_explicit_with(
        g: GCandidate,
        params: ControllerParams,
        composition: Composition,
    ) -> Result<Self> {
        check_candidate(&g, &params, composition)?;
        let reference = g.eval(composition.reference_level(&params));
        let top = g.eval(composition.level(&params, params.x_c()));
        let span = top - reference;
        if !(span.is_finite() && span > 0.0) {
            return Err(Error::DegenerateCandidate {
                name: g.name,
                denominator: span,
            });
        }
        Ok(Self {
            kind: ControllerKind::GeneralizedExplicit,
            params,
            g: Some(g),
            composition,
            gain: None,
            rate: span / params.t_c(),
        })
    }

    pub fn generalized_predefined(g: GCandidate, params: ControllerParams) -> Result<Self> {
        Self::generalized_predefined_with(g, params, Composition::default())
    }

    pub fn generalized_predefined_with(
        g: GCandidate,
        params: ControllerParams,
        composition: Composition,
    ) -> Result<Self> {
        let limit = g
            .limit_at_infinity
            .ok_or(Error::PredefinedRequiresBoundedG { name: g.name })?;
        check_candidate(&g, &params, composition)?;
        let span = limit - g.eval(composition.reference_level(&params));
        if !(span.is_finite() && span > 0.0) {
            return Err(Error::DegenerateCandidate {
                name: g.name,
                denominator: span,
            });
        }
        Ok(Self {
            kind: ControllerKind::GeneralizedPredefined,
            params,
            g: Some(g),
            composition,
            gain: None,
            rate: span / params.t_c(),
        })
    }

    pub fn kind(&self) -> ControllerKind {
        self.kind
    }

    pub fn params(&self) -> &ControllerParams {
        &self.params
    }

    pub fn g(&self) -> Option<&GCandidate> {
        self.g.as_ref()
    }

    pub fn composition(&self) -> Composition {
        self.composition
    }

    /// Proportional gain `ln(x_c / x_s) / T_c`; `None` for the generalized kinds.
    pub fn gain(&self) -> Option<f64> {
        self.gain
    }

    pub fn is_proportional(&self) -> bool {
        self.gain.is_some()
    }

    /// Evaluates the control input at state `x`.
    pub fn u(&self, x: f64) -> f64 {
        match self.kind {
            ControllerKind::ExplicitProportional => -self.params.proportional_gain() * x,
            ControllerKind::PlantCompensating => -(self.params.proportional_gain() + 1.0) * x,
            ControllerKind::GeneralizedExplicit | ControllerKind::GeneralizedPredefined => {
                if x == 0.0 {
                    return 0.0;
                }
                let g = self.g.as_ref().expect("generalized controller carries G");
                let a = libm::fabs(x);
                let slope = g.deriv(self.composition.level(&self.params, a));
                let magnitude = self.rate * self.composition.inverse_slope(&self.params, a) / slope;
                -libm::copysign(magnitude, x)
            }
        }
    }
}

fn check_candidate(g: &GCandidate, params: &ControllerParams, composition: Composition) -> Result<()> {
    let report = verify_g_conditions_with(g, params, composition, CONSTRUCTION_SAMPLES);
    match report.first_violation() {
        None => Ok(()),
        Some((condition, witness)) => Err(Error::GConditionViolation {
            name: g.name,
            condition,
            witness,
        }),
    }
}
