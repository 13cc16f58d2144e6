use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::{CharacteristicScales, FlightState};
use crate::error::{Error, Result};
use crate::planner::Tolerance;

/// Axis-aligned target region in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub x_min: f64,
    pub x_max: f64,
    pub z_min: f64,
    pub z_max: f64,
}

impl Rectangle {
    /// Targets of the parameter-tuning experiments.
    pub const TUNING: Rectangle = Rectangle {
        x_min: 200.0,
        x_max: 250.0,
        z_min: -20.0,
        z_max: 100.0,
    };
    /// Targets of the planner comparison.
    pub const COMPARISON: Rectangle = Rectangle {
        x_min: 200.0,
        x_max: 250.0,
        z_min: -90.0,
        z_max: 20.0,
    };

    pub fn contains(&self, x: f64, z: f64) -> bool {
        (self.x_min..=self.x_max).contains(&x) && (self.z_min..=self.z_max).contains(&z)
    }
}

/// Initial body velocities (nondimensional) shared by generated scenarios.
/// The start and target pitch are zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScenarioSpeeds {
    pub u0: f64,
    pub w0: f64,
}

impl Default for ScenarioSpeeds {
    fn default() -> Self {
        Self { u0: 1.0, w0: 0.0 }
    }
}

/// Start and target states (nondimensional) plus the acceptance region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub label: String,
    pub start: FlightState<f64>,
    pub target: FlightState<f64>,
    pub tolerance: Tolerance<f64>,
}

impl Scenario {
    /// Start at the origin, target at `(x_m, z_m)`, both with the given body
    /// velocities and zero pitch.
    pub fn to_point(
        label: impl Into<String>,
        x_m: f64,
        z_m: f64,
        speeds: ScenarioSpeeds,
        tolerance: Tolerance<f64>,
        scales: &CharacteristicScales<f64>,
    ) -> Self {
        Self {
            label: label.into(),
            start: FlightState::new(0.0, 0.0, speeds.u0, speeds.w0, 0.0, 0.0),
            target: FlightState::new(
                scales.length_to_nd(x_m),
                scales.length_to_nd(z_m),
                speeds.u0,
                speeds.w0,
                0.0,
                0.0,
            ),
            tolerance,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target.x > self.start.x) {
            return Err(Error::config(format!(
                "scenario {}: target must lie ahead of the start",
                self.label
            )));
        }
        self.tolerance.validate()
    }
}

pub fn load_scenarios(path: impl AsRef<Path>) -> Result<Vec<Scenario>> {
    let list: Vec<Scenario> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    for s in &list {
        s.validate()?;
    }
    Ok(list)
}

/// Grid shape `(nx, nz)` with `nx * nz = count`, as square as possible and
/// with the larger count along the longer rectangle side.
pub fn grid_shape(count: usize, rect: &Rectangle) -> (usize, usize) {
    let count = count.max(1);
    let mut small = (count as f64).sqrt().floor() as usize;
    while !count.is_multiple_of(small) {
        small -= 1;
    }
    let large = count / small;
    if rect.x_max - rect.x_min >= rect.z_max - rect.z_min {
        (large, small)
    } else {
        (small, large)
    }
}

fn axis(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    if n == 1 {
        return vec![(lo + hi) / 2.0];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// `count` targets on a uniform grid spanning `rect` (corners included;
/// a single target sits at the center). Ordered by x, then z.
pub fn generate_grid_scenarios(
    count: usize,
    rect: &Rectangle,
    speeds: ScenarioSpeeds,
    tolerance: Tolerance<f64>,
    scales: &CharacteristicScales<f64>,
) -> Vec<Scenario> {
    let (nx, nz) = grid_shape(count, rect);
    let mut out = Vec::with_capacity(nx * nz);
    for x in axis(nx, rect.x_min, rect.x_max) {
        for z in axis(nz, rect.z_min, rect.z_max) {
            let label = format!("grid-{:03}", out.len());
            out.push(Scenario::to_point(label, x, z, speeds, tolerance, scales));
        }
    }
    out
}

/// `count` targets drawn uniformly from `x_range × z_range` (meters).
pub fn generate_random_scenarios(
    count: usize,
    x_range: (f64, f64),
    z_range: (f64, f64),
    seed: u64,
    speeds: ScenarioSpeeds,
    tolerance: Tolerance<f64>,
    scales: &CharacteristicScales<f64>,
) -> Vec<Scenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let x = x_range.0 + (x_range.1 - x_range.0) * rng.gen::<f64>();
            let z = z_range.0 + (z_range.1 - z_range.0) * rng.gen::<f64>();
            Scenario::to_point(format!("random-{i:03}"), x, z, speeds, tolerance, scales)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(s: &Scenario, sc: &CharacteristicScales<f64>) -> (f64, f64) {
        (sc.length_from_nd(s.target.x), sc.length_from_nd(s.target.z))
    }

    #[test]
    fn single_target_is_centered() {
        let sc = CharacteristicScales::default();
        let s = generate_grid_scenarios(
            1,
            &Rectangle::TUNING,
            ScenarioSpeeds::default(),
            Tolerance::square(6.0),
            &sc,
        );
        let (x, z) = pos(&s[0], &sc);
        assert!((x - 225.0).abs() < 1e-9 && (z - 40.0).abs() < 1e-9);
    }

    #[test]
    fn eighty_distinct_targets_in_rectangle() {
        let sc = CharacteristicScales::default();
        let r = Rectangle::TUNING;
        assert_eq!(grid_shape(80, &r), (8, 10));
        let s = generate_grid_scenarios(
            80,
            &r,
            ScenarioSpeeds::default(),
            Tolerance::square(6.0),
            &sc,
        );
        assert_eq!(s.len(), 80);
        let pts: Vec<_> = s.iter().map(|s| pos(s, &sc)).collect();
        for &(x, z) in &pts {
            assert!(
                x >= 200.0 - 1e-9 && x <= 250.0 + 1e-9 && z >= -20.0 - 1e-9 && z <= 100.0 + 1e-9
            );
        }
        for corner in [
            (200.0, -20.0),
            (200.0, 100.0),
            (250.0, -20.0),
            (250.0, 100.0),
        ] {
            assert!(pts
                .iter()
                .any(|p| (p.0 - corner.0).abs() < 1e-9 && (p.1 - corner.1).abs() < 1e-9));
        }
        let mut keys: Vec<_> = pts
            .iter()
            .map(|p| ((p.0 * 1e6) as i64, (p.1 * 1e6) as i64))
            .collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 80);
    }

    #[test]
    fn four_on_unit_square_are_corners() {
        let sc = CharacteristicScales {
            speed: 1.0,
            length: 1.0,
            time: 1.0,
        };
        let r = Rectangle {
            x_min: 0.0,
            x_max: 1.0,
            z_min: 0.0,
            z_max: 1.0,
        };
        let s = generate_grid_scenarios(
            4,
            &r,
            ScenarioSpeeds::default(),
            Tolerance::square(6.0),
            &sc,
        );
        let pts: Vec<_> = s.iter().map(|s| pos(s, &sc)).collect();
        assert_eq!(pts, vec![(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]);
    }

    #[test]
    fn random_suite_is_seeded_and_bounded() {
        let sc = CharacteristicScales::default();
        let gen = |seed| {
            generate_random_scenarios(
                114,
                (200.0, 250.0),
                (-90.0, 20.0),
                seed,
                ScenarioSpeeds::default(),
                Tolerance::square(6.0),
                &sc,
            )
        };
        let a = gen(5);
        assert_eq!(a.len(), 114);
        assert_eq!(a, gen(5));
        assert_ne!(a, gen(6));
        for s in &a {
            let (x, z) = pos(s, &sc);
            assert!(Rectangle::COMPARISON.contains(x, z));
        }
    }
}
