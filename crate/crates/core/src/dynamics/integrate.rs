//! Fixed-step RK4 propagation of one maneuver segment.

use serde::{Deserialize, Serialize};

use super::maneuver::Maneuver;
use super::model::FlightModel;
use super::state::FlightState;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// How the `α̇` inside the lift terms is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaRateClosure {
    /// Solved at every stage so that `α̇` matches the accelerations it
    /// produces. Keeps RK4 fourth-order.
    #[default]
    Consistent,
    /// Finite difference of `α` over the previous substep, zero at segment
    /// start. First-order accurate in time.
    Lagged,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", default)]
pub struct IntegratorConfig<T: Scalar> {
    /// Upper bound on the substep, seconds.
    pub max_step_s: T,
    /// Minimum substeps per flapping period.
    pub steps_per_flap_period: usize,
    pub alpha_rate: AlphaRateClosure,
}

impl<T: Scalar> Default for IntegratorConfig<T> {
    fn default() -> Self {
        Self {
            max_step_s: T::lit(0.01),
            steps_per_flap_period: 20,
            alpha_rate: AlphaRateClosure::Consistent,
        }
    }
}

impl<T: Scalar> IntegratorConfig<T> {
    pub fn with_max_step(mut self, max_step_s: T) -> Self {
        self.max_step_s = max_step_s;
        self
    }

    /// Number of equal substeps used for a segment of `duration_s` seconds.
    pub fn substeps(&self, maneuver: &Maneuver<T>, duration_s: T) -> usize {
        let mut h = self.max_step_s;
        if maneuver.frequency > T::zero() && self.steps_per_flap_period > 0 {
            let per_period =
                T::one() / (maneuver.frequency * T::from_usize_lossy(self.steps_per_flap_period));
            h = h.min(per_period);
        }
        let n = (duration_s / h).ceil().to_usize().unwrap_or(1);
        n.max(1)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.max_step_s > T::zero()) {
            return Err(Error::config("integrator max_step_s must be positive"));
        }
        Ok(())
    }
}

/// Advances `state` through `duration_s` seconds of `maneuver`.
pub fn integrate<T: Scalar>(
    model: &FlightModel<T>,
    state: &FlightState<T>,
    maneuver: &Maneuver<T>,
    duration_s: T,
    cfg: &IntegratorConfig<T>,
) -> Result<FlightState<T>> {
    integrate_observed(model, state, maneuver, duration_s, cfg, |_, _| {})
}

/// Like [`integrate`], calling `observer(t_nd, state)` at the start and after
/// every substep.
pub fn integrate_observed<T: Scalar, F>(
    model: &FlightModel<T>,
    state: &FlightState<T>,
    maneuver: &Maneuver<T>,
    duration_s: T,
    cfg: &IntegratorConfig<T>,
    mut observer: F,
) -> Result<FlightState<T>>
where
    F: FnMut(T, &FlightState<T>),
{
    if !(duration_s > T::zero()) {
        return Err(Error::Domain(format!(
            "segment duration must be positive, got {duration_s}"
        )));
    }
    if !state.is_finite() {
        return Err(Error::Divergence { elapsed_s: 0.0 });
    }
    let n = cfg.substeps(maneuver, duration_s);
    let total_nd = model.scales.time_to_nd(duration_s);
    let h = total_nd / T::from_usize_lossy(n);
    let half = h / T::lit(2.0);
    let sixth = h / T::lit(6.0);
    let two = T::lit(2.0);

    let mut s = *state;
    let mut alpha_rate = T::zero();
    let mut prev_alpha: Option<T> = None;
    observer(T::zero(), &s);

    for i in 0..n {
        let t = h * T::from_usize_lossy(i);
        let guard = |st: &FlightState<T>, at: T| -> Result<()> {
            if st.is_finite() {
                Ok(())
            } else {
                Err(Error::Divergence {
                    elapsed_s: model.scales.time_from_nd(at).to_f64_lossy(),
                })
            }
        };
        let k = match cfg.alpha_rate {
            AlphaRateClosure::Lagged => {
                let alpha = s.angle_of_attack()?;
                if let Some(prev) = prev_alpha {
                    alpha_rate = (alpha - prev) / h;
                }
                prev_alpha = Some(alpha);
                let eval = |st: &FlightState<T>, tt: T| {
                    guard(st, t)?;
                    model.state_derivative(st, maneuver, tt, alpha_rate)
                };
                let k1 = eval(&s, t)?;
                let k2 = eval(&s.add_scaled(&k1, half), t + half)?;
                let k3 = eval(&s.add_scaled(&k2, half), t + half)?;
                let k4 = eval(&s.add_scaled(&k3, h), t + h)?;
                [k1, k2, k3, k4]
            }
            AlphaRateClosure::Consistent => {
                let mut eval = |st: &FlightState<T>, tt: T| -> Result<FlightState<T>> {
                    guard(st, t)?;
                    let fr = model.freeze(st, maneuver, tt)?;
                    let (a, d) = model.consistent_frozen(&fr, st, maneuver, alpha_rate);
                    alpha_rate = a;
                    Ok(d)
                };
                let k1 = eval(&s, t)?;
                let k2 = eval(&s.add_scaled(&k1, half), t + half)?;
                let k3 = eval(&s.add_scaled(&k2, half), t + half)?;
                let k4 = eval(&s.add_scaled(&k3, h), t + h)?;
                [k1, k2, k3, k4]
            }
        };
        let [k1, k2, k3, k4] = k;
        let a = s.to_array();
        let (d1, d2, d3, d4) = (k1.to_array(), k2.to_array(), k3.to_array(), k4.to_array());
        let mut next = [T::zero(); 6];
        for j in 0..6 {
            next[j] = a[j] + sixth * (d1[j] + two * d2[j] + two * d3[j] + d4[j]);
        }
        s = FlightState::from_array(next);
        guard(&s, t + h)?;
        observer(h * T::from_usize_lossy(i + 1), &s);
    }
    Ok(s)
}
