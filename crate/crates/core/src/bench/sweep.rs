use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::{
    published_occurrence_rates, reduce_maneuver_set, write_records_csv, HostInfo, MeanSem,
    RunRecord,
};
use super::scenarios::Scenario;
use crate::dynamics::{full_maneuver_set, FlightModel};
use crate::error::{Error, Result};
use crate::planner::{plan, PlannerConfig};

/// Parameter varied by a sweep and its values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "parameter", content = "values", rename_all = "snake_case")]
pub enum SweepValues {
    /// Single segment duration, seconds.
    TimeStep(Vec<f64>),
    /// Sets of segment durations (multi-resolution).
    TimeSteps(Vec<Vec<f64>>),
    #[serde(rename = "k_d")]
    Kd(Vec<f64>),
    #[serde(rename = "k_w")]
    Kw(Vec<usize>),
    /// `(k_d, k_w)` pairs.
    Pruning(Vec<(f64, usize)>),
    /// Occurrence thresholds applied to the published rates to pick the
    /// maneuver set.
    ManeuverThreshold(Vec<f64>),
}

impl SweepValues {
    pub fn len(&self) -> usize {
        match self {
            SweepValues::TimeStep(v) | SweepValues::Kd(v) | SweepValues::ManeuverThreshold(v) => {
                v.len()
            }
            SweepValues::TimeSteps(v) => v.len(),
            SweepValues::Kw(v) => v.len(),
            SweepValues::Pruning(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// One labelled planner configuration per value.
    pub fn configs(&self, template: &PlannerConfig<f64>) -> Vec<(String, PlannerConfig<f64>)> {
        let with = |f: &dyn Fn(&mut PlannerConfig<f64>)| {
            let mut c = template.clone();
            f(&mut c);
            c
        };
        match self {
            SweepValues::TimeStep(v) => v
                .iter()
                .map(|&t| (format!("t_s={t}"), with(&|c| c.time_steps = vec![t])))
                .collect(),
            SweepValues::TimeSteps(v) => v
                .iter()
                .map(|ts| {
                    let label = ts
                        .iter()
                        .map(|t| t.to_string())
                        .collect::<Vec<_>>()
                        .join("/");
                    (format!("t_s={label}"), with(&|c| c.time_steps = ts.clone()))
                })
                .collect(),
            SweepValues::Kd(v) => v
                .iter()
                .map(|&k| (format!("k_d={k}"), with(&|c| c.k_d = Some(k))))
                .collect(),
            SweepValues::Kw(v) => v
                .iter()
                .map(|&k| (format!("k_w={k}"), with(&|c| c.k_w = Some(k))))
                .collect(),
            SweepValues::Pruning(v) => v
                .iter()
                .map(|&(kd, kw)| {
                    (
                        format!("k_d={kd},k_w={kw}"),
                        with(&|c| {
                            c.k_d = Some(kd);
                            c.k_w = Some(kw);
                        }),
                    )
                })
                .collect(),
            SweepValues::ManeuverThreshold(v) => v
                .iter()
                .map(|&xi| {
                    let set = reduce_maneuver_set(
                        &full_maneuver_set(),
                        &published_occurrence_rates(),
                        xi,
                    );
                    (format!("xi={xi}"), with(&|c| c.maneuver_set = set.clone()))
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub sweep: SweepValues,
    #[serde(default)]
    pub template: PlannerConfig<f64>,
}

impl SweepSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sweep.is_empty() {
            return Err(Error::config("sweep has no values"));
        }
        for (label, cfg) in self.sweep.configs(&self.template) {
            cfg.validate()
                .map_err(|e| Error::config(format!("{label}: {e}")))?;
        }
        Ok(())
    }
}

/// Aggregate of one swept value. Accuracy and energy are over successful
/// runs, wall time over all runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: String,
    pub runs: usize,
    pub successes: usize,
    pub accuracy_mean: f64,
    pub accuracy_sem: f64,
    pub energy_mean: f64,
    pub energy_sem: f64,
    pub time_mean_s: f64,
    pub time_sem_s: f64,
}

impl SweepRow {
    pub fn summarize(value: &str, records: &[&RunRecord]) -> Self {
        let acc: Vec<f64> = records.iter().filter_map(|r| r.accuracy).collect();
        let en: Vec<f64> = records.iter().filter_map(|r| r.energy).collect();
        let tm: Vec<f64> = records.iter().map(|r| r.wall_time_s).collect();
        let (a, e, t) = (MeanSem::of(&acc), MeanSem::of(&en), MeanSem::of(&tm));
        Self {
            value: value.into(),
            runs: records.len(),
            successes: records.iter().filter(|r| r.success).count(),
            accuracy_mean: a.mean,
            accuracy_sem: a.sem,
            energy_mean: e.mean,
            energy_sem: e.sem,
            time_mean_s: t.mean,
            time_sem_s: t.sem,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub host: HostInfo,
    pub rows: Vec<SweepRow>,
    pub records: Vec<RunRecord>,
}

impl SweepReport {
    /// Writes `records.csv`, `summary.csv` and `summary.json` into `dir`.
    pub fn write(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        write_records_csv(dir.join("records.csv"), &self.records)?;
        let mut w = csv::Writer::from_path(dir.join("summary.csv"))?;
        for r in &self.rows {
            w.serialize(r)?;
        }
        w.flush()?;
        let summary = serde_json::json!({ "host": self.host, "rows": self.rows });
        std::fs::write(
            dir.join("summary.json"),
            serde_json::to_string_pretty(&summary)? + "\n",
        )?;
        Ok(())
    }
}

/// Plans one scenario with `cfg` (the scenario's tolerance replaces the
/// configured one) and times it.
pub fn run_ospa(
    scenario: &Scenario,
    cfg: &PlannerConfig<f64>,
    model: &FlightModel<f64>,
    variant: &str,
) -> RunRecord {
    let mut cfg = cfg.clone();
    cfg.tolerance = scenario.tolerance;
    let clock = Instant::now();
    let result = plan(&scenario.start, &scenario.target, &cfg, model);
    let elapsed = clock.elapsed().as_secs_f64();
    let mut r = RunRecord::from_result(
        &scenario.label,
        "ospa",
        &result,
        &scenario.target,
        cfg.tolerance.metric,
        &model.scales,
        elapsed,
    );
    r.variant = variant.into();
    r
}

/// Runs every (value, scenario) pair. With `parallel`, scenarios of a value
/// run concurrently on the rayon pool; records keep scenario order.
pub fn run_sweep(
    spec: &SweepSpec,
    scenarios: &[Scenario],
    model: &FlightModel<f64>,
    parallel: bool,
) -> SweepReport {
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for (label, mut cfg) in spec.sweep.configs(&spec.template) {
        if parallel {
            cfg.parallel = false;
        }
        let batch: Vec<RunRecord> = if parallel {
            scenarios
                .par_iter()
                .map(|s| run_ospa(s, &cfg, model, &label))
                .collect()
        } else {
            scenarios
                .iter()
                .map(|s| run_ospa(s, &cfg, model, &label))
                .collect()
        };
        rows.push(SweepRow::summarize(
            &label,
            &batch.iter().collect::<Vec<_>>(),
        ));
        records.extend(batch);
    }
    SweepReport {
        host: HostInfo::current(),
        rows,
        records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_json() {
        let spec =
            SweepSpec::from_json(r#"{"sweep": {"parameter": "time_step", "values": [8, 12, 20]}}"#)
                .unwrap();
        assert_eq!(spec.sweep, SweepValues::TimeStep(vec![8.0, 12.0, 20.0]));
        let spec = SweepSpec::from_json(
            r#"{"sweep": {"parameter": "pruning", "values": [[10, 15], [15, 25]]}}"#,
        )
        .unwrap();
        let cfgs = spec.sweep.configs(&spec.template);
        assert_eq!(cfgs[1].1.k_w, Some(25));
        assert_eq!(cfgs[1].0, "k_d=15,k_w=25");
        assert!(SweepSpec::from_json(r#"{"sweep": {"parameter": "k_w", "values": []}}"#).is_err());
        assert!(SweepSpec::from_json(r#"{"sweep": {"parameter": "k_w", "values": [0]}}"#).is_err());
    }

    #[test]
    fn threshold_values_pick_published_sets() {
        let v = SweepValues::ManeuverThreshold(vec![0.0, 0.02]);
        let cfgs = v.configs(&PlannerConfig::default());
        assert_eq!(cfgs[0].1.maneuver_set.len(), 28);
        assert_eq!(cfgs[1].1.maneuver_set.len(), 17);
    }
}
