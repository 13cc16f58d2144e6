use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::metrics::{write_records_csv, HostInfo, MeanSem, RunRecord};
use super::scenarios::Scenario;
use crate::baseline_aorrt::{aorrt_run, RrtConfig};
use crate::dynamics::FlightModel;
use crate::error::{Error, Result};
use crate::planner::{extract_optimal_path, Planner, PlannerConfig, Tolerance, Trajectory};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ComparisonSpec {
    pub ospa: PlannerConfig<f64>,
    /// One AO-RRT variant per entry, usually differing in control step.
    pub rrt: Vec<RrtConfig<f64>>,
    /// OSPA runs slower than this are counted as failures.
    pub ospa_budget_s: Option<f64>,
    /// Number of leading scenarios whose explored waypoints are exported.
    pub cloud_scenarios: usize,
}

impl Default for ComparisonSpec {
    fn default() -> Self {
        let rrt = [1.0, 2.0, 4.0]
            .iter()
            .map(|&dt| RrtConfig {
                time_budget_s: 200.0,
                control_step_s: dt,
                ..RrtConfig::default()
            })
            .collect();
        Self {
            ospa: PlannerConfig::default(),
            rrt,
            ospa_budget_s: Some(200.0),
            cloud_scenarios: 1,
        }
    }
}

impl ComparisonSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        self.ospa.validate()?;
        for r in &self.rrt {
            r.validate()?;
        }
        if self.ospa_budget_s.is_some_and(|b| !(b > 0.0)) {
            return Err(Error::config("ospa_budget_s must be positive"));
        }
        Ok(())
    }
}

/// Aggregate of one planner variant. The `joint_*` fields compare an
/// AO-RRT variant against OSPA over scenarios both solved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub planner: String,
    pub variant: String,
    pub runs: usize,
    pub successes: usize,
    pub precision_rate: f64,
    pub energy_mean: f64,
    pub energy_sem: f64,
    pub time_mean_s: f64,
    pub joint_scenarios: Option<usize>,
    pub joint_energy_ospa: Option<f64>,
    pub joint_energy_other: Option<f64>,
}

/// Explored and solution waypoints (meters) of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaypointCloud {
    pub scenario: String,
    pub planner: String,
    pub variant: String,
    pub explored: Vec<[f64; 2]>,
    pub solution: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub host: HostInfo,
    pub rows: Vec<ComparisonRow>,
    pub records: Vec<RunRecord>,
    pub clouds: Vec<WaypointCloud>,
}

impl ComparisonReport {
    pub fn row(&self, planner: &str, variant: &str) -> Option<&ComparisonRow> {
        self.rows
            .iter()
            .find(|r| r.planner == planner && r.variant == variant)
    }

    /// Writes `records.csv`, `summary.csv`, `summary.json` and, when any
    /// were collected, `clouds.json` into `dir`.
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
        if !self.clouds.is_empty() {
            std::fs::write(
                dir.join("clouds.json"),
                serde_json::to_string_pretty(&self.clouds)? + "\n",
            )?;
        }
        Ok(())
    }
}

fn solution_points(t: &Result<Trajectory<f64>>, model: &FlightModel<f64>) -> Vec<[f64; 2]> {
    match t {
        Ok(t) => t
            .waypoints_m(model)
            .into_iter()
            .map(|(x, z)| [x, z])
            .collect(),
        Err(_) => Vec::new(),
    }
}

fn xz(model: &FlightModel<f64>, x: f64, z: f64) -> [f64; 2] {
    [
        model.scales.length_from_nd(x),
        model.scales.length_from_nd(z),
    ]
}

/// OSPA on one scenario, single-threaded, with optional explored waypoints.
pub fn compare_ospa(
    scenario: &Scenario,
    cfg: &PlannerConfig<f64>,
    budget_s: Option<f64>,
    model: &FlightModel<f64>,
    cloud: bool,
) -> (RunRecord, Option<WaypointCloud>) {
    let mut cfg = cfg.clone();
    cfg.tolerance = scenario.tolerance;
    cfg.parallel = false;
    let clock = Instant::now();
    let (result, explored) = match Planner::new(scenario.start, scenario.target, &cfg, model) {
        Ok(p) => {
            let tree = p.build_tree();
            let r =
                extract_optimal_path(&tree, &scenario.target, &cfg.tolerance, model, &cfg.energy);
            (
                r,
                tree.nodes
                    .iter()
                    .map(|n| xz(model, n.state.x, n.state.z))
                    .collect(),
            )
        }
        Err(e) => (Err(e), Vec::new()),
    };
    let elapsed = clock.elapsed().as_secs_f64();
    let mut rec = RunRecord::from_result(
        &scenario.label,
        "ospa",
        &result,
        &scenario.target,
        cfg.tolerance.metric,
        &model.scales,
        elapsed,
    );
    if let Some(b) = budget_s.filter(|&b| elapsed > b) {
        rec.success = false;
        rec.accuracy = None;
        rec.energy = None;
        rec.trajectory = None;
        rec.segments = 0;
        rec.error = Some(format!("exceeded time budget of {b} s"));
    }
    let cloud = cloud.then(|| WaypointCloud {
        scenario: scenario.label.clone(),
        planner: "ospa".into(),
        variant: String::new(),
        explored,
        solution: solution_points(&result, model),
    });
    (rec, cloud)
}

/// AO-RRT on one scenario. The goal square side is taken from a box
/// tolerance when the scenario has one.
pub fn compare_aorrt(
    scenario: &Scenario,
    cfg: &RrtConfig<f64>,
    seed: u64,
    model: &FlightModel<f64>,
    cloud: bool,
) -> (RunRecord, Option<WaypointCloud>) {
    let mut cfg = cfg.clone();
    cfg.seed = seed;
    let metric = scenario.tolerance.metric;
    if metric == crate::planner::ToleranceMetric::PositionBox {
        cfg.goal_side_m = scenario.tolerance.value;
    }
    let variant = variant_label(&cfg);
    let clock = Instant::now();
    let (result, explored) = match aorrt_run(&scenario.start, &scenario.target, &cfg, model) {
        Ok(o) => (
            o.trajectory,
            o.nodes
                .iter()
                .map(|n| xz(model, n.state.x, n.state.z))
                .collect(),
        ),
        Err(e) => (Err(e), Vec::new()),
    };
    let elapsed = clock.elapsed().as_secs_f64();
    let goal = Tolerance::square(cfg.goal_side_m);
    let mut rec = RunRecord::from_result(
        &scenario.label,
        "aorrt",
        &result,
        &scenario.target,
        goal.metric,
        &model.scales,
        elapsed,
    );
    rec.variant = variant.clone();
    let cloud = cloud.then(|| WaypointCloud {
        scenario: scenario.label.clone(),
        planner: "aorrt".into(),
        variant,
        explored,
        solution: solution_points(&result, model),
    });
    (rec, cloud)
}

fn variant_label(cfg: &RrtConfig<f64>) -> String {
    format!("dt={}", cfg.control_step_s)
}

fn summarize(planner: &str, variant: &str, records: &[&RunRecord]) -> ComparisonRow {
    let energy: Vec<f64> = records.iter().filter_map(|r| r.energy).collect();
    let time: Vec<f64> = records.iter().map(|r| r.wall_time_s).collect();
    let e = MeanSem::of(&energy);
    let successes = records.iter().filter(|r| r.success).count();
    ComparisonRow {
        planner: planner.into(),
        variant: variant.into(),
        runs: records.len(),
        successes,
        precision_rate: if records.is_empty() {
            0.0
        } else {
            successes as f64 / records.len() as f64
        },
        energy_mean: e.mean,
        energy_sem: e.sem,
        time_mean_s: MeanSem::of(&time).mean,
        joint_scenarios: None,
        joint_energy_ospa: None,
        joint_energy_other: None,
    }
}

/// Runs OSPA and every AO-RRT variant on each scenario, one at a time so
/// that wall-clock budgets are not shared. AO-RRT seeds are the configured
/// seed plus the scenario index.
pub fn run_comparison(
    spec: &ComparisonSpec,
    scenarios: &[Scenario],
    model: &FlightModel<f64>,
) -> ComparisonReport {
    let mut ospa = Vec::new();
    let mut rrt: Vec<Vec<RunRecord>> = vec![Vec::new(); spec.rrt.len()];
    let mut clouds = Vec::new();
    for (i, s) in scenarios.iter().enumerate() {
        let cloud = i < spec.cloud_scenarios;
        let (rec, c) = compare_ospa(s, &spec.ospa, spec.ospa_budget_s, model, cloud);
        ospa.push(rec);
        clouds.extend(c);
        for (j, cfg) in spec.rrt.iter().enumerate() {
            let (rec, c) = compare_aorrt(s, cfg, cfg.seed.wrapping_add(i as u64), model, cloud);
            rrt[j].push(rec);
            clouds.extend(c);
        }
    }

    let mut rows = vec![summarize("ospa", "", &ospa.iter().collect::<Vec<_>>())];
    for (cfg, recs) in spec.rrt.iter().zip(&rrt) {
        let mut row = summarize(
            "aorrt",
            &variant_label(cfg),
            &recs.iter().collect::<Vec<_>>(),
        );
        let joint: Vec<(f64, f64)> = ospa
            .iter()
            .zip(recs)
            .filter_map(|(o, r)| Some((o.energy?, r.energy?)))
            .collect();
        row.joint_scenarios = Some(joint.len());
        if !joint.is_empty() {
            let n = joint.len() as f64;
            row.joint_energy_ospa = Some(joint.iter().map(|j| j.0).sum::<f64>() / n);
            row.joint_energy_other = Some(joint.iter().map(|j| j.1).sum::<f64>() / n);
        }
        rows.push(row);
    }
    let records = ospa.into_iter().chain(rrt.into_iter().flatten()).collect();
    ComparisonReport {
        host: HostInfo::current(),
        rows,
        records,
        clouds,
    }
}
