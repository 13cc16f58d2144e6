use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Longitudinal flight state in nondimensional units.
///
/// `x`, `z` are Earth-frame positions (Z points down, so positive `z` is
/// below the origin), `u`, `w` body-axis velocities, `theta` the pitch angle
/// in radians and `q` the pitch rate.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct FlightState<T: Scalar> {
    pub x: T,
    pub z: T,
    pub u: T,
    pub w: T,
    pub theta: T,
    pub q: T,
}

impl<T: Scalar> FlightState<T> {
    pub fn new(x: T, z: T, u: T, w: T, theta: T, q: T) -> Self {
        Self {
            x,
            z,
            u,
            w,
            theta,
            q,
        }
    }

    /// Level, unpitched state at `(x, z)` moving forward at body speed `u`.
    pub fn forward(x: T, z: T, u: T) -> Self {
        Self::new(x, z, u, T::zero(), T::zero(), T::zero())
    }

    /// Body-frame speed `U_b = sqrt(u² + w²)`.
    #[inline]
    pub fn airspeed(&self) -> T {
        self.u.hypot(self.w)
    }

    /// Angle of attack, `atan2(w, u)`.
    pub fn angle_of_attack(&self) -> Result<T> {
        if self.u == T::zero() && self.w == T::zero() {
            return Err(Error::DegenerateState);
        }
        Ok(self.w.atan2(self.u))
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    #[inline]
    pub fn to_array(&self) -> [T; 6] {
        [self.x, self.z, self.u, self.w, self.theta, self.q]
    }

    #[inline]
    pub fn from_array(a: [T; 6]) -> Self {
        Self::new(a[0], a[1], a[2], a[3], a[4], a[5])
    }

    /// `self + h * rate`, component-wise.
    #[inline]
    pub fn add_scaled(&self, rate: &Self, h: T) -> Self {
        Self {
            x: self.x + h * rate.x,
            z: self.z + h * rate.z,
            u: self.u + h * rate.u,
            w: self.w + h * rate.w,
            theta: self.theta + h * rate.theta,
            q: self.q + h * rate.q,
        }
    }

    /// Euclidean distance over all six components.
    pub fn distance(&self, other: &Self) -> T {
        self.to_array()
            .iter()
            .zip(other.to_array().iter())
            .map(|(a, b)| (*a - *b) * (*a - *b))
            .sum::<T>()
            .sqrt()
    }

    pub fn cast<U: Scalar>(&self) -> FlightState<U> {
        let c = |v: T| U::lit(v.to_f64_lossy());
        FlightState::new(
            c(self.x),
            c(self.z),
            c(self.u),
            c(self.w),
            c(self.theta),
            c(self.q),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn with_velocity(u: f64, w: f64) -> FlightState<f64> {
        FlightState::new(0.0, 0.0, u, w, 0.0, 0.0)
    }

    #[test]
    fn angle_of_attack_examples() {
        assert_eq!(with_velocity(1.0, 0.0).angle_of_attack().unwrap(), 0.0);
        assert!((with_velocity(1.0, 1.0).angle_of_attack().unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert!((with_velocity(0.5, -0.5).angle_of_attack().unwrap() + FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn zero_airspeed_is_degenerate() {
        assert!(matches!(
            with_velocity(0.0, 0.0).angle_of_attack(),
            Err(Error::DegenerateState)
        ));
    }

    #[test]
    fn rearward_flight_does_not_alias() {
        let a = with_velocity(-1.0, 0.1).angle_of_attack().unwrap();
        assert!(a > std::f64::consts::FRAC_PI_2);
    }
}
