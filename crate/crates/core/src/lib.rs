//! Energy-aware trajectory planning for flapping-wing UAVs.
//!
//! The numerical code is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix it to `f64`, and [`single`] to `f32`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baseline_aorrt;
pub mod bench;
pub mod dynamics;
pub mod energy;
pub mod error;
pub mod planner;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type FlightState = dynamics::FlightState<f64>;
pub type Maneuver = dynamics::Maneuver<f64>;
pub type VehicleParams = dynamics::VehicleParams<f64>;
pub type CharacteristicScales = dynamics::CharacteristicScales<f64>;
pub type VehicleConfig = dynamics::VehicleConfig<f64>;
pub type FlightModel = dynamics::FlightModel<f64>;
pub type IntegratorConfig = dynamics::IntegratorConfig<f64>;
pub type EnergyModel = energy::EnergyModel<f64>;
pub type PlannerConfig = planner::PlannerConfig<f64>;
pub type Trajectory = planner::Trajectory<f64>;
pub type RrtConfig = baseline_aorrt::RrtConfig<f64>;

/// Single-precision aliases.
pub mod single {
    use super::{dynamics, energy, planner};

    pub type FlightState = dynamics::FlightState<f32>;
    pub type Maneuver = dynamics::Maneuver<f32>;
    pub type VehicleParams = dynamics::VehicleParams<f32>;
    pub type CharacteristicScales = dynamics::CharacteristicScales<f32>;
    pub type FlightModel = dynamics::FlightModel<f32>;
    pub type IntegratorConfig = dynamics::IntegratorConfig<f32>;
    pub type EnergyModel = energy::EnergyModel<f32>;
    pub type PlannerConfig = planner::PlannerConfig<f32>;
    pub type Trajectory = planner::Trajectory<f32>;
}
