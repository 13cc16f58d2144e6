//! JSON documents accepted by the subcommands.

use std::path::PathBuf;

use ornithoplan::bench::{
    generate_grid_scenarios, generate_random_scenarios, load_scenarios, ComparisonSpec, Rectangle,
    Scenario, ScenarioSpeeds, SweepValues,
};
use ornithoplan::planner::Tolerance;
use ornithoplan::{
    Error, FlightModel, FlightState, IntegratorConfig, Maneuver, PlannerConfig, Result, RrtConfig,
};
use serde::{Deserialize, Serialize};

fn default_start() -> FlightState {
    FlightState::forward(0.0, 0.0, 1.0)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanRequest {
    #[serde(default = "default_start")]
    pub start: FlightState,
    /// Full target state (nondimensional).
    #[serde(default)]
    pub target: Option<FlightState>,
    /// Target position in meters; velocities and pitch copied from `start`.
    #[serde(default)]
    pub target_m: Option<[f64; 2]>,
    #[serde(default)]
    pub planner: PlannerConfig,
    #[serde(default)]
    pub aorrt: RrtConfig,
}

impl PlanRequest {
    pub fn target(&self, model: &FlightModel) -> Result<FlightState> {
        match (self.target, self.target_m) {
            (Some(t), None) => Ok(t),
            (None, Some([x, z])) => Ok(FlightState {
                x: model.scales.length_to_nd(x),
                z: model.scales.length_to_nd(z),
                ..self.start
            }),
            _ => Err(Error::Config(
                "give exactly one of `target` and `target_m`".into(),
            )),
        }
    }
}

fn default_grid_count() -> usize {
    80
}
fn default_random_count() -> usize {
    114
}
fn default_tuning() -> Rectangle {
    Rectangle::TUNING
}
fn default_x_range() -> (f64, f64) {
    (Rectangle::COMPARISON.x_min, Rectangle::COMPARISON.x_max)
}
fn default_z_range() -> (f64, f64) {
    (Rectangle::COMPARISON.z_min, Rectangle::COMPARISON.z_max)
}
fn default_tolerance() -> Tolerance<f64> {
    Tolerance::square(6.0)
}

/// Where a bench run gets its scenarios.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScenarioSource {
    Grid {
        #[serde(default = "default_grid_count")]
        count: usize,
        #[serde(default = "default_tuning")]
        rectangle: Rectangle,
        #[serde(default)]
        speeds: ScenarioSpeeds,
        #[serde(default = "default_tolerance")]
        tolerance: Tolerance<f64>,
    },
    Random {
        #[serde(default = "default_random_count")]
        count: usize,
        #[serde(default = "default_x_range")]
        x_range: (f64, f64),
        #[serde(default = "default_z_range")]
        z_range: (f64, f64),
        #[serde(default)]
        seed: u64,
        #[serde(default)]
        speeds: ScenarioSpeeds,
        #[serde(default = "default_tolerance")]
        tolerance: Tolerance<f64>,
    },
    File {
        path: PathBuf,
    },
    List {
        scenarios: Vec<Scenario>,
    },
}

impl ScenarioSource {
    pub fn grid() -> Self {
        ScenarioSource::Grid {
            count: default_grid_count(),
            rectangle: default_tuning(),
            speeds: ScenarioSpeeds::default(),
            tolerance: default_tolerance(),
        }
    }

    pub fn random() -> Self {
        ScenarioSource::Random {
            count: default_random_count(),
            x_range: default_x_range(),
            z_range: default_z_range(),
            seed: 0,
            speeds: ScenarioSpeeds::default(),
            tolerance: default_tolerance(),
        }
    }

    /// Replaces the seed of a random source.
    pub fn reseed(&mut self, new_seed: u64) {
        if let ScenarioSource::Random { seed, .. } = self {
            *seed = new_seed;
        }
    }

    pub fn resolve(&self, model: &FlightModel) -> Result<Vec<Scenario>> {
        let out = match self {
            ScenarioSource::Grid {
                count,
                rectangle,
                speeds,
                tolerance,
            } => generate_grid_scenarios(*count, rectangle, *speeds, *tolerance, &model.scales),
            ScenarioSource::Random {
                count,
                x_range,
                z_range,
                seed,
                speeds,
                tolerance,
            } => generate_random_scenarios(
                *count,
                *x_range,
                *z_range,
                *seed,
                *speeds,
                *tolerance,
                &model.scales,
            ),
            ScenarioSource::File { path } => load_scenarios(path)?,
            ScenarioSource::List { scenarios } => scenarios.clone(),
        };
        if out.is_empty() {
            return Err(Error::Config("scenario set is empty".into()));
        }
        for s in &out {
            s.validate()?;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRequest {
    pub sweep: SweepValues,
    #[serde(default)]
    pub template: PlannerConfig,
    #[serde(default = "ScenarioSource::grid")]
    pub scenarios: ScenarioSource,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompareRequest {
    #[serde(default = "ScenarioSource::random")]
    pub scenarios: ScenarioSource,
    #[serde(flatten)]
    pub spec: ComparisonSpec,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleEntry {
    pub maneuver: Maneuver,
    pub duration_s: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateRequest {
    #[serde(default = "default_start")]
    pub start: FlightState,
    pub schedule: Vec<ScheduleEntry>,
    #[serde(default)]
    pub integrator: IntegratorConfig,
}
