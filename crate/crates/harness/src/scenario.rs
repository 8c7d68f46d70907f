//! Scenario files.
//!
//! A scenario is a TOML document:
//!
//! ```toml
//! name = "unstable_plant"
//! plant = "unstable_linear"
//! x0 = [100.0, -100.0]
//! dt = 1e-3          # optional, default 1e-3
//! horizon = 2.0      # optional, default 2 T_c
//!
//! [controller]
//! kind = "plant_compensating"
//! x_c = 100.0
//! x_s = 0.1
//! t_c = 1.0
//! m = 0.5            # optional, default 0.5
//!
//! [comparison]       # optional: predefined vs explicit initial input
//! g = "bounded_exp"
//! ```
//!
//! Unknown keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};
use xtime_core::candidate;
use xtime_core::params::DEFAULT_EXPONENT;
use xtime_core::{Composition, Controller, ControllerParams, GCandidate, Integrator, Plant, SimConfig};

use crate::error::{HarnessError, Result};

const UNSTABLE_PLANT: &str = include_str!("../scenarios/unstable_plant.toml");
const BOUNDED_EXP_COMPARISON: &str = include_str!("../scenarios/bounded_exp_comparison.toml");

/// Scenarios compiled into the binary, by name.
pub const BUNDLED: [(&str, &str); 2] = [
    ("unstable_plant", UNSTABLE_PLANT),
    ("bounded_exp_comparison", BOUNDED_EXP_COMPARISON),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlantKind {
    Integrator,
    UnstableLinear,
}

impl From<PlantKind> for Plant {
    fn from(kind: PlantKind) -> Self {
        match kind {
            PlantKind::Integrator => Plant::Integrator,
            PlantKind::UnstableLinear => Plant::UnstableLinear,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ControllerKindSpec {
    ExplicitProportional,
    PlantCompensating,
    GeneralizedExplicit,
    GeneralizedPredefined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum CompositionSpec {
    #[default]
    AbsPower,
    HalfSquare,
    PracticalBand,
}

impl From<CompositionSpec> for Composition {
    fn from(spec: CompositionSpec) -> Self {
        match spec {
            CompositionSpec::AbsPower => Composition::AbsPower,
            CompositionSpec::HalfSquare => Composition::HalfSquare,
            CompositionSpec::PracticalBand => Composition::PracticalBand,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum IntegratorSpec {
    #[default]
    Rk4,
    Euler,
}

impl From<IntegratorSpec> for Integrator {
    fn from(spec: IntegratorSpec) -> Self {
        match spec {
            IntegratorSpec::Rk4 => Integrator::Rk4,
            IntegratorSpec::Euler => Integrator::Euler,
        }
    }
}

fn default_dt() -> f64 {
    SimConfig::DEFAULT_DT
}

fn default_m() -> f64 {
    DEFAULT_EXPONENT
}

fn is_default<T: Default + PartialEq>(value: &T) -> bool {
    *value == T::default()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControllerSpec {
    pub kind: ControllerKindSpec,
    pub x_c: f64,
    pub x_s: f64,
    pub t_c: f64,
    #[serde(default = "default_m")]
    pub m: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub composition: CompositionSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComparisonSpec {
    pub g: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub plant: PlantKind,
    pub x0: Vec<f64>,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub integrator: IntegratorSpec,
    pub controller: ControllerSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonSpec>,
}

/// A scenario resolved into model objects.
#[derive(Debug, Clone)]
pub struct Setup {
    pub plant: Plant,
    pub controller: Controller,
    pub config: SimConfig,
    /// `(predefined, explicit)` built from the same candidate and parameters.
    pub comparison: Option<(Controller, Controller)>,
}

pub fn find_candidate(name: &str) -> Result<GCandidate> {
    candidate::find(name).ok_or_else(|| HarnessError::UnknownCandidate {
        name: name.to_owned(),
        shipped: candidate::shipped_g_candidates().iter().map(|g| g.name).collect(),
    })
}

impl Scenario {
    pub fn from_toml(text: &str, origin: &str) -> Result<Self> {
        let scenario: Scenario = toml::from_str(text).map_err(|e| HarnessError::Parse {
            path: origin.to_owned(),
            message: e.to_string(),
        })?;
        scenario.setup()?;
        Ok(scenario)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario is always representable in TOML")
    }

    pub fn bundled(name: &str) -> Option<Result<Self>> {
        BUNDLED
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(n, text)| Scenario::from_toml(text, n))
    }

    pub fn params(&self) -> Result<ControllerParams> {
        let c = &self.controller;
        Ok(ControllerParams::new(c.x_c, c.x_s, c.t_c, c.m)?)
    }

    pub fn horizon(&self) -> f64 {
        self.horizon.unwrap_or(2.0 * self.controller.t_c)
    }

    pub fn sim_config(&self) -> SimConfig {
        SimConfig::new(self.dt, self.horizon()).with_integrator(self.integrator.into())
    }

    /// Validates the scenario and builds the plant, controller and comparison pair.
    pub fn setup(&self) -> Result<Setup> {
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return Err(HarnessError::Invalid(format!(
                "name `{}` must be non-empty and free of path separators",
                self.name
            )));
        }
        if self.x0.is_empty() {
            return Err(HarnessError::Invalid("x0 list is empty".into()));
        }
        if let Some(bad) = self.x0.iter().find(|x| !x.is_finite()) {
            return Err(HarnessError::Invalid(format!("x0 entry {bad} is not finite")));
        }
        let config = self.sim_config();
        config.steps()?;

        let params = self.params()?;
        let spec = &self.controller;
        let composition = spec.composition.into();
        let g = spec.g.as_deref().map(find_candidate).transpose()?;
        let controller = match (spec.kind, g) {
            (ControllerKindSpec::ExplicitProportional, None) => Controller::explicit_proportional(params),
            (ControllerKindSpec::PlantCompensating, None) => Controller::plant_compensating(params),
            (ControllerKindSpec::GeneralizedExplicit, Some(g)) => {
                Controller::generalized_explicit_with(g, params, composition)?
            }
            (ControllerKindSpec::GeneralizedPredefined, Some(g)) => {
                Controller::generalized_predefined_with(g, params, composition)?
            }
            (ControllerKindSpec::ExplicitProportional | ControllerKindSpec::PlantCompensating, Some(_)) => {
                return Err(HarnessError::Invalid(
                    "controller.g is only meaningful for generalized controllers".into(),
                ))
            }
            (_, None) => {
                return Err(HarnessError::Invalid(
                    "generalized controllers need controller.g".into(),
                ))
            }
        };

        let comparison = match &self.comparison {
            Some(c) => Some(comparison_pair(find_candidate(&c.g)?, params)?),
            None => None,
        };

        Ok(Setup {
            plant: self.plant.into(),
            controller,
            config,
            comparison,
        })
    }

    /// The comparison pair, falling back to the controller's own candidate.
    pub fn comparison_or_controller_g(&self) -> Result<(Controller, Controller)> {
        let setup = self.setup()?;
        if let Some(pair) = setup.comparison {
            return Ok(pair);
        }
        match self.controller.g.as_deref() {
            Some(name) => comparison_pair(find_candidate(name)?, self.params()?),
            None => Err(HarnessError::Invalid(
                "no [comparison] section and the controller has no G candidate".into(),
            )),
        }
    }
}

fn comparison_pair(g: GCandidate, params: ControllerParams) -> Result<(Controller, Controller)> {
    Ok((
        Controller::generalized_predefined(g, params)?,
        Controller::generalized_explicit(g, params)?,
    ))
}

/// Reads a scenario from disk. A path that does not exist but names a
/// bundled scenario (with or without `.toml`) resolves to the bundled copy.
pub fn load_scenario(path: &Path) -> Result<Scenario> {
    match std::fs::read_to_string(path) {
        Ok(text) => Scenario::from_toml(&text, &path.display().to_string()),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
            let bare = path.parent().is_none_or(|p| p.as_os_str().is_empty());
            match Scenario::bundled(stem) {
                Some(bundled) if bare => bundled,
                _ => Err(HarnessError::io(path, e)),
            }
        }
        Err(e) => Err(HarnessError::io(path, e)),
    }
}
