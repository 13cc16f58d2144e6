use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A control pair held constant for one segment: tail deflection `delta`
/// (radians) and flapping frequency `frequency` (Hz). Zero frequency glides.
///
/// Serialized with the deflection in degrees (`delta_deg`, `frequency_hz`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", from = "ManeuverRepr<T>", into = "ManeuverRepr<T>")]
pub struct Maneuver<T: Scalar> {
    pub delta: T,
    pub frequency: T,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct ManeuverRepr<T: Scalar> {
    delta_deg: T,
    frequency_hz: T,
}

impl<T: Scalar> From<ManeuverRepr<T>> for Maneuver<T> {
    fn from(r: ManeuverRepr<T>) -> Self {
        Maneuver::from_degrees(r.delta_deg, r.frequency_hz)
    }
}

impl<T: Scalar> From<Maneuver<T>> for ManeuverRepr<T> {
    fn from(m: Maneuver<T>) -> Self {
        // Rounded so that whole-degree deflections survive a round trip.
        let scale = T::lit(1e9);
        ManeuverRepr {
            delta_deg: (m.delta_deg() * scale).round() / scale,
            frequency_hz: m.frequency,
        }
    }
}

impl<T: Scalar> Maneuver<T> {
    pub fn new(delta: T, frequency: T) -> Self {
        Self { delta, frequency }
    }

    pub fn from_degrees(delta_deg: T, frequency: T) -> Self {
        Self::new(delta_deg.to_radians(), frequency)
    }

    pub fn glide(delta: T) -> Self {
        Self::new(delta, T::zero())
    }

    #[inline]
    pub fn is_gliding(&self) -> bool {
        self.frequency == T::zero()
    }

    pub fn delta_deg(&self) -> T {
        self.delta.to_degrees()
    }

    /// Stable identity used to group maneuvers: deflection rounded to a
    /// thousandth of a degree and frequency to a thousandth of a hertz.
    pub fn key(&self) -> (i64, i64) {
        let round = |v: T| (v.to_f64_lossy() * 1000.0).round() as i64;
        (round(self.delta_deg()), round(self.frequency))
    }

    pub fn validate(&self, bounds: &ManeuverBounds<T>) -> Result<()> {
        if !(self.frequency >= T::zero()) {
            return Err(Error::config(format!(
                "negative flapping frequency {}",
                self.frequency
            )));
        }
        let (lo, hi) = (
            bounds.delta_min_deg.to_radians(),
            bounds.delta_max_deg.to_radians(),
        );
        let slack = T::lit(1e-9);
        if self.delta < lo - slack || self.delta > hi + slack {
            return Err(Error::config(format!(
                "tail deflection {}° outside [{}°, {}°]",
                self.delta_deg(),
                bounds.delta_min_deg,
                bounds.delta_max_deg
            )));
        }
        if self.frequency > bounds.frequency_max + slack {
            return Err(Error::config(format!(
                "flapping frequency {} Hz above {} Hz",
                self.frequency, bounds.frequency_max
            )));
        }
        Ok(())
    }

    pub fn cast<U: Scalar>(&self) -> Maneuver<U> {
        Maneuver::new(
            U::lit(self.delta.to_f64_lossy()),
            U::lit(self.frequency.to_f64_lossy()),
        )
    }
}

/// Admissible control box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ManeuverBounds<T: Scalar> {
    pub delta_min_deg: T,
    pub delta_max_deg: T,
    pub frequency_max: T,
}

impl<T: Scalar> Default for ManeuverBounds<T> {
    fn default() -> Self {
        Self {
            delta_min_deg: T::lit(-6.0),
            delta_max_deg: T::zero(),
            frequency_max: T::lit(6.0),
        }
    }
}

/// Cartesian product of tail deflections (degrees) and flapping frequencies,
/// ordered by frequency first, then deflection.
pub fn maneuver_grid<T: Scalar>(deltas_deg: &[T], frequencies: &[T]) -> Vec<Maneuver<T>> {
    frequencies
        .iter()
        .flat_map(|&f| {
            deltas_deg
                .iter()
                .map(move |&d| Maneuver::from_degrees(d, f))
        })
        .collect()
}

/// The full 28-maneuver set: seven deflections evenly spread over
/// [-6°, 0°] combined with {0, 4, 5, 6} Hz.
pub fn full_maneuver_set<T: Scalar>() -> Vec<Maneuver<T>> {
    let deltas: Vec<T> = (0..7).map(|i| T::lit(-6.0 + i as f64)).collect();
    let freqs: Vec<T> = [0.0, 4.0, 5.0, 6.0].iter().map(|&f| T::lit(f)).collect();
    maneuver_grid(&deltas, &freqs)
}

/// The 17-maneuver reduced set retained at occurrence threshold 0.02.
pub fn reduced_maneuver_set<T: Scalar>() -> Vec<Maneuver<T>> {
    [
        (-2.0, 0.0),
        (0.0, 4.0),
        (0.0, 5.0),
        (-3.0, 0.0),
        (-6.0, 0.0),
        (-5.0, 0.0),
        (-4.0, 0.0),
        (-1.0, 0.0),
        (0.0, 6.0),
        (-2.0, 6.0),
        (-3.0, 5.0),
        (0.0, 0.0),
        (-4.0, 4.0),
        (-5.0, 4.0),
        (-3.0, 4.0),
        (-6.0, 4.0),
        (-4.0, 5.0),
    ]
    .iter()
    .map(|&(d, f)| Maneuver::from_degrees(T::lit(d), T::lit(f)))
    .collect()
}

/// The nine-maneuver perching set: gliding at every non-zero deflection plus
/// untrimmed flapping at 4, 5 and 6 Hz.
pub fn perching_maneuver_set<T: Scalar>() -> Vec<Maneuver<T>> {
    [
        (-1.0, 0.0),
        (-2.0, 0.0),
        (-3.0, 0.0),
        (-4.0, 0.0),
        (-5.0, 0.0),
        (-6.0, 0.0),
        (0.0, 4.0),
        (0.0, 5.0),
        (0.0, 6.0),
    ]
    .iter()
    .map(|&(d, f)| Maneuver::from_degrees(T::lit(d), T::lit(f)))
    .collect()
}
