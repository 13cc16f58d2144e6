use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dimensionless ornithopter constants plus the aerodynamic closure
/// parameters. JSON keys follow the conventional symbols (`M_nd`, `Λ`, ...);
/// ASCII aliases are accepted on input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct VehicleParams<T: Scalar> {
    /// Mass number.
    #[serde(rename = "M_nd")]
    pub mass: T,
    /// Tail-to-wing coefficient ratio factor.
    #[serde(rename = "Λ", alias = "Lambda")]
    pub tail_ratio: T,
    /// Tail lever factor.
    #[serde(rename = "L_nd")]
    pub tail_lever: T,
    /// Wing lever factor.
    #[serde(rename = "R_HL")]
    pub wing_lever: T,
    /// Inertia factor.
    #[serde(rename = "χ", alias = "chi")]
    pub inertia: T,
    #[serde(rename = "C_D0")]
    pub wing_friction_drag: T,
    #[serde(rename = "C_D0t")]
    pub tail_friction_drag: T,
    #[serde(rename = "AR")]
    pub aspect_ratio: T,
    #[serde(rename = "AR_t")]
    pub tail_aspect_ratio: T,
    /// Lighthill number (body friction drag).
    #[serde(rename = "Li")]
    pub lighthill: T,
    /// Wing-on-tail interference factor.
    #[serde(rename = "ε_α", alias = "epsilon_alpha")]
    pub downwash: T,
    /// Flapping amplitude in half-chords.
    #[serde(rename = "h0")]
    pub flap_amplitude: T,
    /// `2 l_w / c`; positive when the center of gravity is behind the wing.
    pub lw_ratio: T,
    /// `2 l_t / c`; negative for a tail behind the center of gravity.
    pub lt_ratio: T,
    /// Wing lift saturation angle, degrees.
    pub stall_wing: T,
    /// Tail lift saturation angle, degrees.
    pub stall_tail: T,
}

impl<T: Scalar> Default for VehicleParams<T> {
    fn default() -> Self {
        let l = T::lit;
        Self {
            mass: l(6.85),
            tail_ratio: l(0.278),
            tail_lever: l(-15.5),
            wing_lever: l(1.92),
            inertia: l(0.0132),
            wing_friction_drag: l(0.018),
            tail_friction_drag: l(0.021),
            aspect_ratio: l(4.44),
            tail_aspect_ratio: l(2.35),
            lighthill: l(0.0051),
            downwash: l(0.3),
            flap_amplitude: l(0.75),
            lw_ratio: l(1.0),
            lt_ratio: l(-15.5),
            stall_wing: l(10.0),
            stall_tail: l(25.0),
        }
    }
}

impl<T: Scalar> VehicleParams<T> {
    pub fn stall_wing_rad(&self) -> T {
        self.stall_wing.to_radians()
    }

    pub fn stall_tail_rad(&self) -> T {
        self.stall_tail.to_radians()
    }

    pub fn validate(&self) -> Result<()> {
        let z = T::zero();
        let checks = [
            (self.aspect_ratio > z, "AR must be positive"),
            (self.tail_aspect_ratio > z, "AR_t must be positive"),
            (self.mass > z, "M_nd must be positive"),
            (self.inertia > z, "χ must be positive"),
            (self.wing_friction_drag >= z, "C_D0 must be non-negative"),
            (self.tail_friction_drag >= z, "C_D0t must be non-negative"),
            (self.lighthill >= z, "Li must be non-negative"),
            (self.stall_wing > z, "stall_wing must be positive"),
            (self.stall_tail > z, "stall_tail must be positive"),
        ];
        for (ok, msg) in checks {
            if !ok {
                return Err(Error::config(msg));
            }
        }
        let all = [
            self.mass,
            self.tail_ratio,
            self.tail_lever,
            self.wing_lever,
            self.inertia,
            self.downwash,
            self.flap_amplitude,
            self.lw_ratio,
            self.lt_ratio,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::config("vehicle parameters must be finite"));
        }
        Ok(())
    }
}

/// Characteristic speed (m/s), length (m) and time (s) used to make the
/// equations of motion dimensionless.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CharacteristicScales<T: Scalar> {
    #[serde(rename = "U_c")]
    pub speed: T,
    #[serde(rename = "L_c")]
    pub length: T,
    #[serde(rename = "t_c")]
    pub time: T,
}

impl<T: Scalar> Default for CharacteristicScales<T> {
    fn default() -> Self {
        Self {
            speed: T::lit(4.26),
            length: T::lit(0.135),
            time: T::lit(0.0317),
        }
    }
}

impl<T: Scalar> CharacteristicScales<T> {
    pub fn validate(&self) -> Result<()> {
        let z = T::zero();
        if !(self.speed > z && self.length > z && self.time > z) {
            return Err(Error::config("characteristic scales must be positive"));
        }
        let implied = self.length / self.time;
        if ((implied - self.speed) / self.speed).abs() > T::lit(0.01) {
            return Err(Error::config(format!(
                "L_c / t_c = {implied} differs from U_c = {} by more than 1%",
                self.speed
            )));
        }
        Ok(())
    }

    pub fn length_to_nd(&self, meters: T) -> T {
        meters / self.length
    }
    pub fn length_from_nd(&self, nd: T) -> T {
        nd * self.length
    }
    pub fn speed_to_nd(&self, mps: T) -> T {
        mps / self.speed
    }
    pub fn speed_from_nd(&self, nd: T) -> T {
        nd * self.speed
    }
    pub fn time_to_nd(&self, seconds: T) -> T {
        seconds / self.time
    }
    pub fn time_from_nd(&self, nd: T) -> T {
        nd * self.time
    }
    /// Hz to cycles per characteristic time.
    pub fn frequency_to_nd(&self, hz: T) -> T {
        hz * self.time
    }
    pub fn frequency_from_nd(&self, nd: T) -> T {
        nd / self.time
    }
    /// rad/s to rad per characteristic time.
    pub fn rate_to_nd(&self, per_s: T) -> T {
        per_s * self.time
    }
    pub fn rate_from_nd(&self, nd: T) -> T {
        nd / self.time
    }
}

/// Vehicle description document: `{"params": {...}, "scales": {...}}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct VehicleConfig<T: Scalar> {
    pub params: VehicleParams<T>,
    pub scales: CharacteristicScales<T>,
}

/// Contents of the bundled `ornithopter_default.json`.
pub const DEFAULT_VEHICLE_JSON: &str = include_str!("../../data/ornithopter_default.json");

impl<T: Scalar> Default for VehicleConfig<T> {
    fn default() -> Self {
        Self {
            params: VehicleParams::default(),
            scales: CharacteristicScales::default(),
        }
    }
}

impl<T: Scalar> VehicleConfig<T> {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.params.validate()?;
        cfg.scales.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn bundled() -> Self {
        Self::from_json(DEFAULT_VEHICLE_JSON).expect("bundled vehicle document is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_document_matches_defaults() {
        let cfg = VehicleConfig::<f64>::bundled();
        assert_eq!(cfg, VehicleConfig::default());
    }

    #[test]
    fn table_scales_are_consistent() {
        let s = CharacteristicScales::<f64>::default();
        s.validate().unwrap();
        assert_eq!(s.speed_to_nd(4.26), 1.0);
        assert_eq!(s.length_to_nd(0.135), 1.0);
    }

    #[test]
    fn inconsistent_scales_rejected() {
        let s = CharacteristicScales::<f64> {
            speed: 5.0,
            length: 0.135,
            time: 0.0317,
        };
        assert!(s.validate().is_err());
    }

    #[test]
    fn invalid_params_rejected() {
        let mut p = VehicleParams::<f64>::default();
        p.aspect_ratio = 0.0;
        assert!(p.validate().is_err());
        let mut p = VehicleParams::<f64>::default();
        p.wing_friction_drag = -0.1;
        assert!(p.validate().is_err());
    }

    #[test]
    fn ascii_aliases_accepted() {
        let text = DEFAULT_VEHICLE_JSON
            .replace("\"Λ\"", "\"Lambda\"")
            .replace("\"χ\"", "\"chi\"")
            .replace("\"ε_α\"", "\"epsilon_alpha\"");
        let cfg = VehicleConfig::<f64>::from_json(&text).unwrap();
        assert_eq!(cfg.params.tail_ratio, 0.278);
    }

    #[test]
    fn round_trips_are_identity() {
        let s = CharacteristicScales::<f64>::default();
        for v in [-123.456, 0.0, 1e-3, 7.5, 250.0] {
            assert!((s.length_from_nd(s.length_to_nd(v)) - v).abs() <= 1e-12 * (1.0 + v.abs()));
            assert!((s.speed_from_nd(s.speed_to_nd(v)) - v).abs() <= 1e-12 * (1.0 + v.abs()));
            assert!((s.time_from_nd(s.time_to_nd(v)) - v).abs() <= 1e-12 * (1.0 + v.abs()));
            assert!(
                (s.frequency_from_nd(s.frequency_to_nd(v)) - v).abs() <= 1e-12 * (1.0 + v.abs())
            );
        }
    }
}
