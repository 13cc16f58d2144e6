//! Longitudinal flight dynamics of a flapping-wing vehicle.

pub mod aero;
pub mod integrate;
pub mod maneuver;
pub mod model;
pub mod params;
pub mod state;
pub mod theodorsen;

pub use aero::{
    drag_coeffs, tail_coeffs, wing_coeffs_flap, wing_coeffs_glide, AeroCoefficients, ThrustClosure,
};
pub use integrate::{integrate, integrate_observed, AlphaRateClosure, IntegratorConfig};
pub use maneuver::{
    full_maneuver_set, maneuver_grid, perching_maneuver_set, reduced_maneuver_set, Maneuver,
    ManeuverBounds,
};
pub use model::{state_derivative, Aerodynamics, FlightModel};
pub use params::{CharacteristicScales, VehicleConfig, VehicleParams, DEFAULT_VEHICLE_JSON};
pub use state::FlightState;
pub use theodorsen::theodorsen;
