//! Nondimensional longitudinal Newton–Euler right-hand side.

use super::aero::{self, AeroCoefficients, ThrustClosure};
use super::maneuver::Maneuver;
use super::params::{CharacteristicScales, VehicleConfig, VehicleParams};
use super::state::FlightState;
use super::theodorsen::theodorsen;
use crate::error::Result;
use crate::scalar::Scalar;

/// Whether aerodynamic forces are evaluated. `Disabled` zeroes every
/// coefficient, including body friction, leaving gravity and the
/// rotating-frame terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Aerodynamics {
    #[default]
    Enabled,
    Disabled,
}

/// Vehicle parameters, scales and closure choices needed to evaluate the
/// equations of motion.
#[derive(Debug, Clone, Copy)]
pub struct FlightModel<T: Scalar> {
    pub params: VehicleParams<T>,
    pub scales: CharacteristicScales<T>,
    pub closure: ThrustClosure<T>,
    pub aerodynamics: Aerodynamics,
}

impl<T: Scalar> Default for FlightModel<T> {
    fn default() -> Self {
        Self::new(VehicleParams::default(), CharacteristicScales::default())
    }
}

impl<T: Scalar> From<VehicleConfig<T>> for FlightModel<T> {
    fn from(cfg: VehicleConfig<T>) -> Self {
        Self::new(cfg.params, cfg.scales)
    }
}

/// Quantities at a state that do not depend on `α̇`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Frozen<T: Scalar> {
    alpha: T,
    airspeed: T,
    sin_a: T,
    cos_a: T,
    sin_t: T,
    cos_t: T,
    /// Flapping lift and thrust, `None` while gliding.
    flap: Option<(T, T)>,
}

impl<T: Scalar> FlightModel<T> {
    pub fn new(params: VehicleParams<T>, scales: CharacteristicScales<T>) -> Self {
        Self {
            params,
            scales,
            closure: ThrustClosure::default(),
            aerodynamics: Aerodynamics::Enabled,
        }
    }

    pub fn with_closure(mut self, closure: ThrustClosure<T>) -> Self {
        self.closure = closure;
        self
    }

    pub fn without_aerodynamics(mut self) -> Self {
        self.aerodynamics = Aerodynamics::Disabled;
        self
    }

    pub(crate) fn freeze(
        &self,
        state: &FlightState<T>,
        maneuver: &Maneuver<T>,
        t_nd: T,
    ) -> Result<Frozen<T>> {
        let (sin_t, cos_t) = state.theta.sin_cos();
        if self.aerodynamics == Aerodynamics::Disabled {
            return Ok(Frozen {
                alpha: T::zero(),
                airspeed: state.airspeed(),
                sin_a: T::zero(),
                cos_a: T::one(),
                sin_t,
                cos_t,
                flap: None,
            });
        }
        let alpha = state.angle_of_attack()?;
        let airspeed = state.airspeed();
        let flap = if maneuver.is_gliding() {
            None
        } else {
            let f_nd = self.scales.frequency_to_nd(maneuver.frequency);
            let k = aero::reduced_frequency(f_nd, airspeed);
            let theo = theodorsen(k)?;
            let c1 = self.closure.eval(k, theo);
            let phase = T::TAU() * f_nd * t_nd;
            Some(aero::flap_coeffs(alpha, k, phase, theo, c1, &self.params))
        };
        let (sin_a, cos_a) = alpha.sin_cos();
        Ok(Frozen {
            alpha,
            airspeed,
            sin_a,
            cos_a,
            sin_t,
            cos_t,
            flap,
        })
    }

    pub(crate) fn coefficients_frozen(
        &self,
        fr: &Frozen<T>,
        state: &FlightState<T>,
        maneuver: &Maneuver<T>,
        alpha_rate: T,
    ) -> AeroCoefficients<T> {
        if self.aerodynamics == Aerodynamics::Disabled {
            return AeroCoefficients::default();
        }
        let p = &self.params;
        let (lift, thrust) = match fr.flap {
            Some(lt) => lt,
            None => (
                aero::glide_lift(fr.alpha, fr.airspeed, alpha_rate, state.q, p),
                T::zero(),
            ),
        };
        let tail_lift = aero::tail_lift(
            fr.alpha,
            fr.airspeed,
            maneuver.delta,
            alpha_rate,
            state.q,
            p,
        );
        let (drag, tail_drag) = aero::drag_coeffs(lift, tail_lift, p);
        AeroCoefficients {
            lift,
            thrust,
            drag,
            tail_lift,
            tail_drag,
        }
    }

    /// Aerodynamic coefficients with an explicitly supplied `α̇`.
    pub fn coefficients(
        &self,
        state: &FlightState<T>,
        maneuver: &Maneuver<T>,
        t_nd: T,
        alpha_rate: T,
    ) -> Result<AeroCoefficients<T>> {
        let fr = self.freeze(state, maneuver, t_nd)?;
        Ok(self.coefficients_frozen(&fr, state, maneuver, alpha_rate))
    }

    pub(crate) fn derivative_frozen(
        &self,
        fr: &Frozen<T>,
        state: &FlightState<T>,
        maneuver: &Maneuver<T>,
        alpha_rate: T,
    ) -> FlightState<T> {
        let p = &self.params;
        let c = self.coefficients_frozen(fr, state, maneuver, alpha_rate);
        let body_drag = if self.aerodynamics == Aerodynamics::Enabled {
            p.lighthill
        } else {
            T::zero()
        };
        let two_m = T::lit(2.0) * p.mass;
        let ub2 = fr.airspeed * fr.airspeed;
        let (sa, ca) = (fr.sin_a, fr.cos_a);

        let normal = c.lift + p.tail_ratio * c.tail_lift;
        let axial = c.thrust - c.drag - body_drag - p.tail_ratio * c.tail_drag;
        let net_wing = c.thrust - c.drag;

        let du = (ub2 * (normal * sa + axial * ca) - fr.sin_t) / two_m - state.q * state.w;
        let dw = (ub2 * (-normal * ca + axial * sa) + fr.cos_t) / two_m + state.q * state.u;
        let moment = c.lift * ca - net_wing * sa
            + p.tail_lever * p.tail_ratio * (c.tail_lift * ca + c.tail_drag * sa)
            - p.wing_lever * (c.lift * sa + net_wing * ca);
        let dq = p.inertia * ub2 * moment;

        FlightState {
            x: state.u * fr.cos_t + state.w * fr.sin_t,
            z: -state.u * fr.sin_t + state.w * fr.cos_t,
            u: du,
            w: dw,
            theta: state.q,
            q: dq,
        }
    }

    /// Time derivative of the state at nondimensional time `t_nd` into the
    /// maneuver, with `alpha_rate` supplying the `α̇` of the lift terms.
    pub fn state_derivative(
        &self,
        state: &FlightState<T>,
        maneuver: &Maneuver<T>,
        t_nd: T,
        alpha_rate: T,
    ) -> Result<FlightState<T>> {
        let fr = self.freeze(state, maneuver, t_nd)?;
        Ok(self.derivative_frozen(&fr, state, maneuver, alpha_rate))
    }

    /// `α̇` implied by a derivative: `(u ẇ − w u̇) / U_b²`.
    #[inline]
    fn implied_alpha_rate(state: &FlightState<T>, d: &FlightState<T>, airspeed: T) -> T {
        (state.u * d.w - state.w * d.u) / (airspeed * airspeed)
    }

    /// Solves `α̇ = (u ẇ(α̇) − w u̇(α̇)) / U_b²` by secant iteration and
    /// returns the fixed point together with the derivative evaluated there.
    pub(crate) fn consistent_frozen(
        &self,
        fr: &Frozen<T>,
        state: &FlightState<T>,
        maneuver: &Maneuver<T>,
        guess: T,
    ) -> (T, FlightState<T>) {
        if self.aerodynamics == Aerodynamics::Disabled || fr.airspeed == T::zero() {
            return (guess, self.derivative_frozen(fr, state, maneuver, guess));
        }
        let tol = T::epsilon() * T::lit(16.0);
        let residual = |a: T| {
            let d = self.derivative_frozen(fr, state, maneuver, a);
            (Self::implied_alpha_rate(state, &d, fr.airspeed) - a, d)
        };
        let (mut a0, (mut g0, mut d0)) = (guess, residual(guess));
        if g0.abs() <= tol * (T::one() + a0.abs()) {
            return (a0, d0);
        }
        let mut a1 = a0 + g0;
        for _ in 0..40 {
            let (g1, d1) = residual(a1);
            if g1.abs() <= tol * (T::one() + a1.abs()) || !g1.is_finite() {
                return (a1, d1);
            }
            let slope = g1 - g0;
            let next = if slope != T::zero() {
                a1 - g1 * (a1 - a0) / slope
            } else {
                a1 + g1
            };
            (a0, g0, d0) = (a1, g1, d1);
            a1 = next;
        }
        (a0, d0)
    }

    /// `α̇` consistent with the accelerations it produces.
    pub fn consistent_alpha_rate(
        &self,
        state: &FlightState<T>,
        maneuver: &Maneuver<T>,
        t_nd: T,
        guess: T,
    ) -> Result<T> {
        let fr = self.freeze(state, maneuver, t_nd)?;
        Ok(self.consistent_frozen(&fr, state, maneuver, guess).0)
    }
}

/// Free-function form of [`FlightModel::state_derivative`].
pub fn state_derivative<T: Scalar>(
    model: &FlightModel<T>,
    state: &FlightState<T>,
    maneuver: &Maneuver<T>,
    t_nd: T,
    alpha_rate: T,
) -> Result<FlightState<T>> {
    model.state_derivative(state, maneuver, t_nd, alpha_rate)
}
