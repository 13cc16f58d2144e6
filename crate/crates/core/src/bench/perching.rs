use serde::{Deserialize, Serialize};

use super::metrics::RunRecord;
use super::scenarios::{Scenario, ScenarioSpeeds};
use super::sweep::run_ospa;
use crate::dynamics::{perching_maneuver_set, FlightModel, Maneuver};
use crate::error::{Error, Result};
use crate::planner::{PlannerConfig, Tolerance, Trajectory};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PerchingConfig {
    /// Target altitudes z_f, meters.
    pub altitudes_m: Vec<f64>,
    /// Horizontal distance to the perch, meters.
    pub distance_m: f64,
    pub speeds: ScenarioSpeeds,
    pub planner: PlannerConfig<f64>,
}

impl Default for PerchingConfig {
    fn default() -> Self {
        Self {
            altitudes_m: vec![2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0],
            distance_m: 10.0,
            speeds: ScenarioSpeeds::default(),
            planner: PlannerConfig {
                maneuver_set: perching_maneuver_set(),
                time_steps: vec![1.0],
                k_d: Some(2.0),
                k_w: Some(4),
                tolerance: Tolerance::position(0.5),
                ..PlannerConfig::default()
            },
        }
    }
}

impl PerchingConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.altitudes_m.is_empty() {
            return Err(Error::config("no perching altitudes"));
        }
        if !(self.distance_m > 0.0) {
            return Err(Error::config("distance_m must be positive"));
        }
        self.planner.validate()
    }

    pub fn scenarios(&self, model: &FlightModel<f64>) -> Vec<Scenario> {
        self.altitudes_m
            .iter()
            .map(|&z| {
                Scenario::to_point(
                    format!("perch-z{z}"),
                    self.distance_m,
                    z,
                    self.speeds,
                    self.planner.tolerance,
                    &model.scales,
                )
            })
            .collect()
    }
}

/// One record per altitude, in order. Runs are sequential so that each
/// wall time reflects a single planning call.
pub fn run_perching(cfg: &PerchingConfig, model: &FlightModel<f64>) -> Vec<RunRecord> {
    let scenarios = cfg.scenarios(model);
    scenarios
        .iter()
        .map(|s| run_ospa(s, &cfg.planner, model, "perching"))
        .collect()
}

/// True when the trajectory ends in a glide followed by a final glide at
/// the largest tail deflection available in `set`.
pub fn ends_with_pitch_up(trajectory: &Trajectory<f64>, set: &[Maneuver<f64>]) -> bool {
    let max = set.iter().map(|m| m.delta.abs()).fold(0.0, f64::max);
    let n = trajectory.segments.len();
    let Some(last) = trajectory.segments.last() else {
        return false;
    };
    let pitch_up = last.maneuver.is_gliding() && (last.maneuver.delta.abs() - max).abs() < 1e-12;
    let glide_before = n < 2 || trajectory.segments[n - 2].maneuver.is_gliding();
    pitch_up && glide_before
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::FlightState;
    use crate::energy::EnergyModel;

    fn traj(ms: &[(f64, f64)]) -> Trajectory<f64> {
        let mut t = Trajectory::empty(FlightState::forward(0.0, 0.0, 1.0));
        for &(d, f) in ms {
            t.push(
                Maneuver::from_degrees(d, f),
                1.0,
                FlightState::forward(1.0, 0.0, 1.0),
                &EnergyModel::default(),
            );
        }
        t
    }

    #[test]
    fn pitch_up_pattern() {
        let set = perching_maneuver_set();
        assert!(ends_with_pitch_up(&traj(&[(-2.0, 0.0), (-6.0, 0.0)]), &set));
        assert!(ends_with_pitch_up(&traj(&[(-6.0, 0.0)]), &set));
        assert!(!ends_with_pitch_up(&traj(&[(0.0, 4.0), (-6.0, 0.0)]), &set));
        assert!(!ends_with_pitch_up(
            &traj(&[(-6.0, 0.0), (-5.0, 0.0)]),
            &set
        ));
        assert!(!ends_with_pitch_up(&traj(&[]), &set));
    }

    #[test]
    fn seven_altitudes_seven_scenarios() {
        let cfg = PerchingConfig::default();
        let s = cfg.scenarios(&FlightModel::default());
        assert_eq!(s.len(), 7);
        assert!(s.iter().all(|s| s.validate().is_ok()));
        assert!(PerchingConfig {
            altitudes_m: vec![],
            ..cfg
        }
        .validate()
        .is_err());
    }
}
