//! Maneuver energy cost: `E = t_s (K_aero f³ + c_r)`.

use serde::{Deserialize, Serialize};

use crate::dynamics::Maneuver;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Flapping power coefficient `K_aero` (W/Hz³) and constant avionics draw
/// `c_r` (W).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", default)]
pub struct EnergyModel<T: Scalar> {
    #[serde(rename = "K_aero")]
    pub k_aero: T,
    #[serde(rename = "c_r")]
    pub c_r: T,
}

impl<T: Scalar> Default for EnergyModel<T> {
    fn default() -> Self {
        Self {
            k_aero: T::lit(2.5),
            c_r: T::lit(5.0),
        }
    }
}

impl<T: Scalar> EnergyModel<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.k_aero >= T::zero() && self.c_r >= T::zero())
            || !self.k_aero.is_finite()
            || !self.c_r.is_finite()
        {
            return Err(Error::config(
                "energy model constants must be finite and non-negative",
            ));
        }
        Ok(())
    }

    /// Power drawn while holding `maneuver`, watts.
    #[inline]
    pub fn power(&self, maneuver: &Maneuver<T>) -> T {
        let f = maneuver.frequency;
        self.k_aero * f * f * f + self.c_r
    }
}

/// Energy in W·s spent holding `maneuver` for `duration_s` seconds.
#[inline]
pub fn maneuver_energy<T: Scalar>(
    maneuver: &Maneuver<T>,
    duration_s: T,
    model: &EnergyModel<T>,
) -> T {
    duration_s * model.power(maneuver)
}

/// Sum of [`maneuver_energy`] over `(maneuver, duration)` segments, in order.
pub fn trajectory_energy<'a, T: Scalar, I>(segments: I, model: &EnergyModel<T>) -> T
where
    I: IntoIterator<Item = (&'a Maneuver<T>, T)>,
{
    segments
        .into_iter()
        .fold(T::zero(), |acc, (m, d)| acc + maneuver_energy(m, d, model))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_constants() {
        let e = EnergyModel::<f64>::default();
        assert_eq!(
            maneuver_energy(&Maneuver::from_degrees(0.0, 5.0), 12.0, &e),
            3810.0
        );
        assert_eq!(maneuver_energy(&Maneuver::glide(0.0), 12.0, &e), 60.0);
        assert_eq!(maneuver_energy(&Maneuver::glide(0.0), 0.0, &e), 0.0);
    }

    #[test]
    fn trajectory_sums() {
        let e = EnergyModel::<f64>::default();
        let g = Maneuver::glide(-0.02);
        assert_eq!(trajectory_energy(std::iter::empty(), &e), 0.0);
        assert_eq!(trajectory_energy([(&g, 12.0); 3], &e), 180.0);
        let f = Maneuver::from_degrees(-2.0, 4.0);
        assert_eq!(
            trajectory_energy([(&f, 7.0)], &e),
            maneuver_energy(&f, 7.0, &e)
        );
    }

    #[test]
    fn flapping_dominates_gliding() {
        let e = EnergyModel::<f64>::default();
        let glide = e.power(&Maneuver::glide(0.0));
        assert_eq!(glide, 5.0);
        assert_eq!(e.power(&Maneuver::from_degrees(0.0, 4.0)), 165.0);
        assert!(e.power(&Maneuver::from_degrees(0.0, 4.0)) > 30.0 * glide);
    }

    #[test]
    fn json_keys() {
        let e: EnergyModel<f64> = serde_json::from_str(r#"{"K_aero": 3.0}"#).unwrap();
        assert_eq!(e.k_aero, 3.0);
        assert_eq!(e.c_r, 5.0);
        assert!(EnergyModel {
            k_aero: -1.0,
            c_r: 5.0
        }
        .validate()
        .is_err());
    }
}
