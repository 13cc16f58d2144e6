use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dynamics::{integrate_observed, FlightModel, FlightState, IntegratorConfig, Maneuver};
use crate::energy::EnergyModel;
use crate::error::Result;
use crate::scalar::Scalar;

/// One maneuver held for `duration_s`, with its endpoint states
/// (nondimensional).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Segment<T: Scalar> {
    pub maneuver: Maneuver<T>,
    pub duration_s: T,
    /// W·s.
    pub energy: T,
    pub start: FlightState<T>,
    pub end: FlightState<T>,
}

/// Planned maneuver sequence. `energy` equals the sum of segment energies
/// accumulated from the start.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Trajectory<T: Scalar> {
    pub start: FlightState<T>,
    pub segments: Vec<Segment<T>>,
    pub energy: T,
}

/// One row of the sampled time series, SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t_s: f64,
    pub x_m: f64,
    pub z_m: f64,
    pub u_mps: f64,
    pub w_mps: f64,
    pub theta_rad: f64,
    pub q_radps: f64,
}

impl<T: Scalar> Trajectory<T> {
    pub fn empty(start: FlightState<T>) -> Self {
        Self {
            start,
            segments: Vec::new(),
            energy: T::zero(),
        }
    }

    /// Appends a segment, charging its energy.
    pub fn push(
        &mut self,
        maneuver: Maneuver<T>,
        duration_s: T,
        end: FlightState<T>,
        energy: &EnergyModel<T>,
    ) {
        let e = crate::energy::maneuver_energy(&maneuver, duration_s, energy);
        let start = self.final_state();
        self.energy = self.energy + e;
        self.segments.push(Segment {
            maneuver,
            duration_s,
            energy: e,
            start,
            end,
        });
    }

    pub fn final_state(&self) -> FlightState<T> {
        self.segments.last().map_or(self.start, |s| s.end)
    }

    pub fn duration_s(&self) -> T {
        self.segments
            .iter()
            .fold(T::zero(), |acc, s| acc + s.duration_s)
    }

    pub fn maneuvers(&self) -> impl Iterator<Item = &Maneuver<T>> {
        self.segments.iter().map(|s| &s.maneuver)
    }

    /// Segment end positions in meters, starting with the initial position.
    pub fn waypoints_m(&self, model: &FlightModel<T>) -> Vec<(T, T)> {
        let sc = &model.scales;
        std::iter::once(&self.start)
            .chain(self.segments.iter().map(|s| &s.end))
            .map(|st| (sc.length_from_nd(st.x), sc.length_from_nd(st.z)))
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.to_json()?.as_bytes())?;
        f.write_all(b"\n")?;
        Ok(())
    }

    /// Re-integrates every segment and records the state at each substep.
    pub fn time_series(
        &self,
        model: &FlightModel<T>,
        cfg: &IntegratorConfig<T>,
    ) -> Result<Vec<Sample>> {
        let sc = &model.scales;
        let sample = |t_s: T, st: &FlightState<T>| Sample {
            t_s: t_s.to_f64_lossy(),
            x_m: sc.length_from_nd(st.x).to_f64_lossy(),
            z_m: sc.length_from_nd(st.z).to_f64_lossy(),
            u_mps: sc.speed_from_nd(st.u).to_f64_lossy(),
            w_mps: sc.speed_from_nd(st.w).to_f64_lossy(),
            theta_rad: st.theta.to_f64_lossy(),
            q_radps: sc.rate_from_nd(st.q).to_f64_lossy(),
        };
        let mut out = vec![sample(T::zero(), &self.start)];
        let mut offset = T::zero();
        let mut state = self.start;
        for seg in &self.segments {
            state = integrate_observed(
                model,
                &state,
                &seg.maneuver,
                seg.duration_s,
                cfg,
                |t_nd, st| {
                    if t_nd > T::zero() {
                        out.push(sample(offset + sc.time_from_nd(t_nd), st));
                    }
                },
            )?;
            offset = offset + seg.duration_s;
        }
        Ok(out)
    }

    pub fn write_csv(
        &self,
        path: impl AsRef<Path>,
        model: &FlightModel<T>,
        cfg: &IntegratorConfig<T>,
    ) -> Result<()> {
        write_samples_csv(path, &self.time_series(model, cfg)?)
    }
}

pub fn write_samples_csv(path: impl AsRef<Path>, samples: &[Sample]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for s in samples {
        w.serialize(s)?;
    }
    w.flush()?;
    Ok(())
}
