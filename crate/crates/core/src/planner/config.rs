use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dynamics::{
    reduced_maneuver_set, CharacteristicScales, FlightState, IntegratorConfig, Maneuver,
};
use crate::energy::EnergyModel;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// How the distance between a node and the target is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ToleranceMetric {
    /// Euclidean norm over all six nondimensional state components.
    #[default]
    FullState,
    /// Euclidean XZ distance in meters.
    PositionOnly,
    /// Axis-aligned square in XZ: the tolerance value is the side length in
    /// meters and the distance is the Chebyshev distance.
    PositionBox,
}

/// Acceptance region around the target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Tolerance<T: Scalar> {
    pub metric: ToleranceMetric,
    pub value: T,
}

impl<T: Scalar> Tolerance<T> {
    pub fn full_state(radius: T) -> Self {
        Self {
            metric: ToleranceMetric::FullState,
            value: radius,
        }
    }

    pub fn position(radius_m: T) -> Self {
        Self {
            metric: ToleranceMetric::PositionOnly,
            value: radius_m,
        }
    }

    pub fn square(side_m: T) -> Self {
        Self {
            metric: ToleranceMetric::PositionBox,
            value: side_m,
        }
    }

    /// Distance from `a` to `b` under this metric.
    pub fn distance(
        &self,
        a: &FlightState<T>,
        b: &FlightState<T>,
        scales: &CharacteristicScales<T>,
    ) -> T {
        state_distance(a, b, self.metric, scales)
    }

    /// Largest accepted distance.
    pub fn radius(&self) -> T {
        match self.metric {
            ToleranceMetric::PositionBox => self.value / T::lit(2.0),
            _ => self.value,
        }
    }

    pub fn accepts(
        &self,
        a: &FlightState<T>,
        b: &FlightState<T>,
        scales: &CharacteristicScales<T>,
    ) -> bool {
        self.distance(a, b, scales) <= self.radius()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.value > T::zero()) {
            return Err(Error::config(format!(
                "tolerance must be positive, got {}",
                self.value
            )));
        }
        Ok(())
    }
}

/// Distance between two states: nondimensional full-state norm, or XZ
/// distance in meters for the position metrics.
pub fn state_distance<T: Scalar>(
    a: &FlightState<T>,
    b: &FlightState<T>,
    metric: ToleranceMetric,
    scales: &CharacteristicScales<T>,
) -> T {
    let dx = scales.length_from_nd(a.x - b.x);
    let dz = scales.length_from_nd(a.z - b.z);
    match metric {
        ToleranceMetric::FullState => a.distance(b),
        ToleranceMetric::PositionOnly => dx.hypot(dz),
        ToleranceMetric::PositionBox => dx.abs().max(dz.abs()),
    }
}

/// How a level's candidates are split along z before witness selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionMode {
    /// `k_w` bins of equal width over the candidates' z range.
    #[default]
    EqualWidth,
    /// `k_w` bins holding (nearly) equal numbers of candidates.
    Quantile,
}

/// Search parameters. `k_d = null` disables corridor pruning and
/// `k_w = null` disables witness pruning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", default)]
pub struct PlannerConfig<T: Scalar> {
    pub maneuver_set: Vec<Maneuver<T>>,
    /// Segment durations in seconds. More than one enables multi-resolution
    /// expansion.
    pub time_steps: Vec<T>,
    /// Corridor clearance in meters.
    pub k_d: Option<T>,
    /// Number of z partitions per level and time step.
    pub k_w: Option<usize>,
    pub tolerance: Tolerance<T>,
    /// Tree height cap; derived from the target distance when absent.
    pub max_depth: Option<usize>,
    pub partition_mode: PartitionMode,
    /// Keep candidates past the target's x when they fall inside the
    /// tolerance region (as unexpanded terminals).
    pub accept_overshoot: bool,
    /// Integrate a level's candidates on the rayon pool.
    pub parallel: bool,
    pub integrator: IntegratorConfig<T>,
    pub energy: EnergyModel<T>,
}

impl<T: Scalar> Default for PlannerConfig<T> {
    fn default() -> Self {
        Self {
            maneuver_set: reduced_maneuver_set(),
            time_steps: vec![T::lit(12.0)],
            k_d: Some(T::lit(10.0)),
            k_w: Some(15),
            tolerance: Tolerance::square(T::lit(6.0)),
            max_depth: None,
            partition_mode: PartitionMode::EqualWidth,
            accept_overshoot: false,
            parallel: true,
            integrator: IntegratorConfig::default(),
            energy: EnergyModel::default(),
        }
    }
}

impl<T: Scalar> PlannerConfig<T> {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.maneuver_set.is_empty() {
            return Err(Error::config("maneuver_set is empty"));
        }
        if self.time_steps.is_empty() || self.time_steps.iter().any(|t| !(*t > T::zero())) {
            return Err(Error::config(
                "time_steps must be a nonempty list of positive durations",
            ));
        }
        if let Some(kd) = self.k_d {
            if !(kd > T::zero()) {
                return Err(Error::config("k_d must be positive"));
            }
        }
        if self.k_w == Some(0) {
            return Err(Error::config("k_w must be at least 1"));
        }
        if self.max_depth == Some(0) {
            return Err(Error::config("max_depth must be at least 1"));
        }
        self.tolerance.validate()?;
        self.integrator.validate()?;
        self.energy.validate()
    }

    /// `max_depth`, or `ceil(3 |x_d| / (U_c min t_s))` when unset.
    pub fn depth_limit(&self, x_d_m: T, scales: &CharacteristicScales<T>) -> usize {
        if let Some(d) = self.max_depth {
            return d;
        }
        let min_ts = self.time_steps.iter().copied().fold(T::infinity(), T::min);
        let d = (T::lit(3.0) * x_d_m.abs() / (scales.speed * min_ts)).ceil();
        d.to_usize().unwrap_or(1).max(1)
    }
}
