use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dynamics::{CharacteristicScales, FlightState, Maneuver};
use crate::error::Result;
use crate::planner::{state_distance, ToleranceMetric, Trajectory};

/// Outcome of one planner run on one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub scenario: String,
    pub planner: String,
    /// Configuration label within a sweep or comparison.
    #[serde(default)]
    pub variant: String,
    /// Distance from the trajectory end to the target (absent on failure).
    pub accuracy: Option<f64>,
    /// W·s (absent on failure).
    pub energy: Option<f64>,
    pub wall_time_s: f64,
    pub success: bool,
    pub segments: usize,
    pub error: Option<String>,
    #[serde(skip)]
    pub trajectory: Option<Trajectory<f64>>,
}

impl RunRecord {
    pub fn from_result(
        scenario: &str,
        planner: &str,
        result: &Result<Trajectory<f64>>,
        target: &FlightState<f64>,
        metric: ToleranceMetric,
        scales: &CharacteristicScales<f64>,
        wall_time_s: f64,
    ) -> Self {
        match result {
            Ok(t) => Self {
                scenario: scenario.into(),
                planner: planner.into(),
                variant: String::new(),
                accuracy: Some(accuracy(&t.final_state(), target, metric, scales)),
                energy: Some(t.energy),
                wall_time_s,
                success: true,
                segments: t.segments.len(),
                error: None,
                trajectory: Some(t.clone()),
            },
            Err(e) => Self {
                scenario: scenario.into(),
                planner: planner.into(),
                variant: String::new(),
                accuracy: None,
                energy: None,
                wall_time_s,
                success: false,
                segments: 0,
                error: Some(e.to_string()),
                trajectory: None,
            },
        }
    }
}

/// Final-state error: nondimensional full-state norm, or meters for the
/// position metrics.
pub fn accuracy(
    final_state: &FlightState<f64>,
    target: &FlightState<f64>,
    metric: ToleranceMetric,
    scales: &CharacteristicScales<f64>,
) -> f64 {
    state_distance(final_state, target, metric, scales)
}

/// Fraction of successful records; 0 for an empty slice.
pub fn precision_rate(records: &[RunRecord]) -> f64 {
    if records.is_empty() {
        return 0.0;
    }
    records.iter().filter(|r| r.success).count() as f64 / records.len() as f64
}

/// How often a maneuver appears across solution trajectories.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OccurrenceRate {
    pub maneuver: Maneuver<f64>,
    pub count: usize,
    pub rate: f64,
}

/// Occurrence rate of every maneuver used, sorted by decreasing rate (ties
/// by maneuver key).
pub fn occurrence_rates<'a, I>(trajectories: I) -> Vec<OccurrenceRate>
where
    I: IntoIterator<Item = &'a Trajectory<f64>>,
{
    let mut counts: BTreeMap<(i64, i64), (Maneuver<f64>, usize)> = BTreeMap::new();
    let mut total = 0usize;
    for t in trajectories {
        for m in t.maneuvers() {
            counts.entry(m.key()).or_insert((*m, 0)).1 += 1;
            total += 1;
        }
    }
    let mut out: Vec<OccurrenceRate> = counts
        .into_values()
        .map(|(maneuver, count)| OccurrenceRate {
            maneuver,
            count,
            rate: count as f64 / total as f64,
        })
        .collect();
    out.sort_by(|a, b| {
        b.rate
            .total_cmp(&a.rate)
            .then(a.maneuver.key().cmp(&b.maneuver.key()))
    });
    out
}

/// Published occurrence rates of the 17 most used maneuvers at 12 s steps.
/// The remaining maneuvers of the full set are implicitly zero.
pub fn published_occurrence_rates() -> Vec<OccurrenceRate> {
    [
        (0.111, -2.0, 0.0),
        (0.109, 0.0, 4.0),
        (0.077, 0.0, 5.0),
        (0.076, -3.0, 0.0),
        (0.074, -6.0, 0.0),
        (0.072, -5.0, 0.0),
        (0.057, -4.0, 0.0),
        (0.053, -1.0, 0.0),
        (0.053, 0.0, 6.0),
        (0.045, -2.0, 6.0),
        (0.026, -3.0, 5.0),
        (0.026, 0.0, 0.0),
        (0.025, -4.0, 4.0),
        (0.023, -5.0, 4.0),
        (0.022, -3.0, 4.0),
        (0.021, -6.0, 4.0),
        (0.021, -4.0, 5.0),
    ]
    .iter()
    .map(|&(rate, d, f)| OccurrenceRate {
        maneuver: Maneuver::from_degrees(d, f),
        count: 0,
        rate,
    })
    .collect()
}

/// Members of `universe` whose rate is at least `threshold`; maneuvers
/// missing from `rates` count as rate 0. Keeps the order of `universe`.
pub fn reduce_maneuver_set(
    universe: &[Maneuver<f64>],
    rates: &[OccurrenceRate],
    threshold: f64,
) -> Vec<Maneuver<f64>> {
    let lookup: BTreeMap<(i64, i64), f64> =
        rates.iter().map(|r| (r.maneuver.key(), r.rate)).collect();
    universe
        .iter()
        .filter(|m| lookup.get(&m.key()).copied().unwrap_or(0.0) >= threshold)
        .copied()
        .collect()
}

/// Mean and standard error of the mean.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MeanSem {
    pub n: usize,
    pub mean: f64,
    pub sem: f64,
}

impl MeanSem {
    pub fn of(values: &[f64]) -> Self {
        let n = values.len();
        if n == 0 {
            return Self {
                n,
                mean: f64::NAN,
                sem: f64::NAN,
            };
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let sem = if n > 1 {
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        } else {
            0.0
        };
        Self { n, mean, sem }
    }
}

/// Machine description attached to benchmark reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HostInfo {
    pub os: String,
    pub arch: String,
    pub cpus: usize,
    pub version: String,
}

impl HostInfo {
    pub fn current() -> Self {
        Self {
            os: std::env::consts::OS.into(),
            arch: std::env::consts::ARCH.into(),
            cpus: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

pub fn write_records_csv(path: impl AsRef<Path>, records: &[RunRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
