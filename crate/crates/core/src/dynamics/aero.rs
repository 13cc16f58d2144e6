//! Mode-dependent aerodynamic coefficients for wing, tail and drag.

use serde::{Deserialize, Serialize};

use super::maneuver::Maneuver;
use super::params::{CharacteristicScales, VehicleParams};
use super::state::FlightState;
use super::theodorsen::theodorsen;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Wing lift, thrust and drag plus tail lift and drag. All dimensionless.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct AeroCoefficients<T: Scalar> {
    pub lift: T,
    pub thrust: T,
    pub drag: T,
    pub tail_lift: T,
    pub tail_drag: T,
}

/// Source of the corrected Garrick thrust function `C1(k) = F1 + i G1`.
#[derive(Debug, Clone, Copy, Default)]
pub enum ThrustClosure<T: Scalar> {
    /// `F1 = F`, `G1 = -(π/2)(F² + G²)`: the mean of the flapping thrust
    /// term equals Garrick's classical plunging-airfoil thrust
    /// `π k² h0² |C(k)|²` (times the span factor).
    #[default]
    GarrickMean,
    /// `C1(k) = C(k)`.
    Theodorsen,
    /// Frequency-independent `(F1, G1)`.
    Constant { f1: T, g1: T },
    /// Arbitrary `k -> (F1, G1)`.
    Custom(fn(T) -> (T, T)),
}

impl<T: Scalar> ThrustClosure<T> {
    pub fn eval(&self, k: T, theodorsen: (T, T)) -> (T, T) {
        match *self {
            ThrustClosure::GarrickMean => {
                let (f, g) = theodorsen;
                (f, -T::FRAC_PI_2() * (f * f + g * g))
            }
            ThrustClosure::Theodorsen => theodorsen,
            ThrustClosure::Constant { f1, g1 } => (f1, g1),
            ThrustClosure::Custom(func) => func(k),
        }
    }
}

#[inline]
fn saturate<T: Scalar>(angle: T, limit: T) -> T {
    angle.max(-limit).min(limit)
}

#[inline]
fn two_pi<T: Scalar>() -> T {
    T::TAU()
}

/// Finite-span lift slope correction `AR / (AR + 2)`.
#[inline]
pub fn span_factor<T: Scalar>(aspect_ratio: T) -> T {
    aspect_ratio / (aspect_ratio + T::lit(2.0))
}

/// Gliding wing lift from the effective (saturated) incidence
/// `α + (1.5 α̇ − lw q) / U_b`.
pub fn wing_coeffs_glide<T: Scalar>(
    state: &FlightState<T>,
    alpha_rate: T,
    params: &VehicleParams<T>,
) -> Result<T> {
    let alpha = state.angle_of_attack()?;
    Ok(glide_lift(
        alpha,
        state.airspeed(),
        alpha_rate,
        state.q,
        params,
    ))
}

#[inline]
pub(crate) fn glide_lift<T: Scalar>(
    alpha: T,
    airspeed: T,
    alpha_rate: T,
    q: T,
    p: &VehicleParams<T>,
) -> T {
    let incidence = alpha + (T::lit(1.5) * alpha_rate - p.lw_ratio * q) / airspeed;
    two_pi::<T>() * saturate(incidence, p.stall_wing_rad()) * span_factor(p.aspect_ratio)
}

/// Delta-wing tail lift, saturated at the tail stall angle.
pub fn tail_coeffs<T: Scalar>(
    state: &FlightState<T>,
    delta: T,
    alpha_rate: T,
    params: &VehicleParams<T>,
) -> Result<T> {
    let alpha = state.angle_of_attack()?;
    Ok(tail_lift(
        alpha,
        state.airspeed(),
        delta,
        alpha_rate,
        state.q,
        params,
    ))
}

#[inline]
pub(crate) fn tail_lift<T: Scalar>(
    alpha: T,
    airspeed: T,
    delta: T,
    alpha_rate: T,
    q: T,
    p: &VehicleParams<T>,
) -> T {
    let incidence = (T::one() - p.downwash) * alpha
        + delta
        + (T::lit(1.5) * alpha_rate - p.lt_ratio * q) / airspeed;
    T::PI() * p.tail_aspect_ratio / T::lit(2.0) * saturate(incidence, p.stall_tail_rad())
}

/// Friction plus induced drag for wing and tail.
pub fn drag_coeffs<T: Scalar>(lift: T, tail_lift: T, params: &VehicleParams<T>) -> (T, T) {
    (
        params.wing_friction_drag + lift * lift / (T::PI() * params.aspect_ratio),
        params.tail_friction_drag + tail_lift * tail_lift / (T::PI() * params.tail_aspect_ratio),
    )
}

/// Reduced frequency `k = 2π f / U_b` with `f` in cycles per characteristic time.
#[inline]
pub fn reduced_frequency<T: Scalar>(frequency_nd: T, airspeed: T) -> T {
    two_pi::<T>() * frequency_nd / airspeed
}

/// Flapping lift and thrust at nondimensional time `t_nd` into the maneuver.
pub fn wing_coeffs_flap<T: Scalar>(
    state: &FlightState<T>,
    maneuver: &Maneuver<T>,
    t_nd: T,
    params: &VehicleParams<T>,
    scales: &CharacteristicScales<T>,
    closure: &ThrustClosure<T>,
) -> Result<(T, T)> {
    if !(maneuver.frequency > T::zero()) {
        return Err(Error::ModeMismatch);
    }
    let alpha = state.angle_of_attack()?;
    let airspeed = state.airspeed();
    let f_nd = scales.frequency_to_nd(maneuver.frequency);
    let k = reduced_frequency(f_nd, airspeed);
    let theo = theodorsen(k)?;
    let closure = closure.eval(k, theo);
    let phase = two_pi::<T>() * f_nd * t_nd;
    Ok(flap_coeffs(alpha, k, phase, theo, closure, params))
}

/// Flapping lift and thrust given precomputed `C(k)` and `C1(k)`.
pub fn flap_coeffs<T: Scalar>(
    alpha: T,
    k: T,
    phase: T,
    (f, g): (T, T),
    (f1, g1): (T, T),
    p: &VehicleParams<T>,
) -> (T, T) {
    let (s, c) = phase.sin_cos();
    let kh = k * p.flap_amplitude;
    let ar = p.aspect_ratio;
    let lift = two_pi::<T>()
        * (kh * (g * c + f * s) + saturate(alpha, p.stall_wing_rad()))
        * span_factor(ar)
        + T::PI() * k * k * p.flap_amplitude * c * ar / (ar + T::one());
    let thrust = T::lit(4.0) * kh * kh * s * (f1 * c - g1 * s) * span_factor(ar) - alpha * lift;
    (lift, thrust)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> VehicleParams<f64> {
        VehicleParams::default()
    }

    fn state_at(alpha_deg: f64) -> FlightState<f64> {
        let a = alpha_deg.to_radians();
        FlightState::new(0.0, 0.0, a.cos(), a.sin(), 0.0, 0.0)
    }

    #[test]
    fn glide_lift_zero_incidence() {
        assert_eq!(
            wing_coeffs_glide(&state_at(0.0), 0.0, &params()).unwrap(),
            0.0
        );
    }

    #[test]
    fn glide_lift_hand_value() {
        let expected = 2.0 * std::f64::consts::PI * (5.0f64).to_radians() * (4.44 / 6.44);
        let got = wing_coeffs_glide(&state_at(5.0), 0.0, &params()).unwrap();
        assert!((got - expected).abs() < 1e-14, "{got} vs {expected}");
    }

    #[test]
    fn glide_lift_saturates_at_wing_stall() {
        let p = params();
        let stalled = wing_coeffs_glide(&state_at(20.0), 0.0, &p).unwrap();
        let at_stall = wing_coeffs_glide(&state_at(10.0), 0.0, &p).unwrap();
        assert!((stalled - at_stall).abs() < 1e-14);
    }

    #[test]
    fn tail_lift_examples() {
        let p = params();
        assert_eq!(tail_coeffs(&state_at(0.0), 0.0, 0.0, &p).unwrap(), 0.0);
        let expected = std::f64::consts::PI * 2.35 / 2.0 * (-3.0f64).to_radians();
        let got = tail_coeffs(&state_at(0.0), (-3.0f64).to_radians(), 0.0, &p).unwrap();
        assert!((got - expected).abs() < 1e-14);
        let clamp = tail_coeffs(&state_at(0.0), (40.0f64).to_radians(), 0.0, &p).unwrap();
        let at_stall = std::f64::consts::PI * 2.35 / 2.0 * (25.0f64).to_radians();
        assert!((clamp - at_stall).abs() < 1e-14);
    }

    #[test]
    fn drag_examples() {
        let p = params();
        assert_eq!(drag_coeffs(0.0, 0.0, &p), (0.018, 0.021));
        let (cd, _) = drag_coeffs(1.0, 0.0, &p);
        assert!((cd - (0.018 + 1.0 / (std::f64::consts::PI * 4.44))).abs() < 1e-15);
    }

    #[test]
    fn flap_requires_positive_frequency() {
        let p = params();
        let r = wing_coeffs_flap(
            &state_at(2.0),
            &Maneuver::glide(0.0),
            0.0,
            &p,
            &CharacteristicScales::default(),
            &ThrustClosure::Theodorsen,
        );
        assert!(matches!(r, Err(Error::ModeMismatch)));
    }

    #[test]
    fn zero_amplitude_collapses_flapping_terms() {
        let mut p = params();
        p.flap_amplitude = 0.0;
        let s = state_at(4.0);
        let a = s.angle_of_attack().unwrap();
        for t in [0.0, 1.3, 2.9] {
            let (cl, ct) = wing_coeffs_flap(
                &s,
                &Maneuver::from_degrees(-2.0, 5.0),
                t,
                &p,
                &CharacteristicScales::default(),
                &ThrustClosure::Theodorsen,
            )
            .unwrap();
            let cl_qs = 2.0 * std::f64::consts::PI * a * 4.44 / 6.44;
            assert!((cl - cl_qs).abs() < 1e-14);
            assert!((ct + a * cl).abs() < 1e-15);
        }
    }

    #[test]
    fn custom_closure_is_used() {
        fn half(_: f64) -> (f64, f64) {
            (0.5, -0.1)
        }
        assert_eq!(
            ThrustClosure::Custom(half).eval(1.0, (0.9, -0.2)),
            (0.5, -0.1)
        );
        assert_eq!(
            ThrustClosure::Theodorsen.eval(1.0, (0.9, -0.2)),
            (0.9, -0.2)
        );
    }
}
