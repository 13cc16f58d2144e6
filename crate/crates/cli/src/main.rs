//! Command-line front end: planning, sweeps, planner comparison, perching
//! and maneuver-set analysis over JSON configuration files.

mod output;
mod requests;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ornithoplan::baseline_aorrt::aorrt_plan;
use ornithoplan::bench::{
    ends_with_pitch_up, occurrence_rates, published_occurrence_rates, reduce_maneuver_set,
    run_comparison, run_perching, run_sweep, write_records_csv, HostInfo, PerchingConfig,
    SweepSpec,
};
use ornithoplan::dynamics::{full_maneuver_set, integrate};
use ornithoplan::planner::plan;
use ornithoplan::{Error, FlightModel, Result, Trajectory, VehicleConfig};
use serde::de::DeserializeOwned;
use serde_json::json;

use output::Staged;
use requests::{CompareRequest, PlanRequest, SimulateRequest, SweepRequest};

#[derive(Parser, Debug)]
#[command(
    name = "ornithoplan",
    version,
    about = "Energy-aware trajectory planning for flapping-wing UAVs"
)]
struct Cli {
    /// Vehicle parameter file (JSON); the bundled vehicle when absent.
    #[arg(long, global = true, env = "ORNITHOPLAN_VEHICLE")]
    vehicle: Option<PathBuf>,

    /// Subcommand configuration file (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory, created by the run.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Overrides the configured random seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for scenario-level parallelism.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Replace an existing output directory.
    #[arg(long, global = true)]
    force: bool,

    /// Print progress to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Plan one trajectory.
    Plan {
        #[arg(long, value_enum, default_value_t = PlannerKind::Ospa)]
        planner: PlannerKind,
    },
    /// Run the planner over a scenario set for each value of one parameter.
    Sweep,
    /// Compare the tree-search planner with AO-RRT.
    Compare,
    /// Plan short perching approaches at several altitudes.
    Perch,
    /// Compute occurrence rates and the reduced maneuver set.
    Maneuvers {
        /// Trajectory JSON files; the published rates are used when none are given.
        trajectories: Vec<PathBuf>,
        #[arg(long, default_value_t = 0.02)]
        threshold: f64,
    },
    /// Integrate a maneuver schedule and dump the state time series.
    Simulate,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PlannerKind {
    Ospa,
    Aorrt,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Plan { .. } => "plan",
            Command::Sweep => "sweep",
            Command::Compare => "compare",
            Command::Perch => "perch",
            Command::Maneuvers { .. } => "maneuvers",
            Command::Simulate => "simulate",
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NoSolution { .. } => 3,
        Error::Divergence { .. } | Error::DegenerateState => 4,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DegenerateState => "degenerate_state",
        Error::Domain(_) => "domain",
        Error::ModeMismatch => "mode_mismatch",
        Error::Divergence { .. } => "divergence",
        Error::NoSolution { .. } => "no_solution",
        Error::Config(_) => "config",
        Error::Io(_) => "io",
        Error::Json(_) => "parse",
        Error::Csv(_) => "csv",
    }
}

fn report_error(e: &Error) -> ExitCode {
    let code = exit_code(e);
    let mut doc = json!({ "error": error_kind(e), "message": e.to_string(), "exit_code": code });
    if let Error::NoSolution { best_distance } = e {
        doc["best_distance"] = json!(best_distance);
    }
    eprintln!("{doc}");
    ExitCode::from(code)
}

fn read_config<T: DeserializeOwned>(path: Option<&Path>) -> Result<Option<T>> {
    match path {
        None => Ok(None),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
            Ok(Some(serde_json::from_str(&text)?))
        }
    }
}

fn require_config<T: DeserializeOwned>(cli: &Cli) -> Result<T> {
    read_config(cli.config.as_deref())?
        .ok_or_else(|| Error::Config(format!("`{}` needs --config", cli.command.name())))
}

fn load_model(cli: &Cli) -> Result<FlightModel> {
    let cfg = match &cli.vehicle {
        Some(p) => VehicleConfig::load(p)?,
        None => VehicleConfig::bundled(),
    };
    Ok(FlightModel::from(cfg))
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(value)? + "\n")?;
    Ok(())
}

fn write_trajectory(
    dir: &Path,
    stem: &str,
    t: &Trajectory,
    model: &FlightModel,
    cfg: &ornithoplan::IntegratorConfig,
) -> Result<()> {
    t.write_json(dir.join(format!("{stem}.json")))?;
    t.write_csv(dir.join(format!("{stem}.csv")), model, cfg)
}

fn run(cli: &Cli) -> Result<()> {
    let out_dir = cli
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("ornithoplan-{}", cli.command.name())));
    let staged = Staged::prepare(&out_dir, cli.force)?;
    let model = load_model(cli)?;
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Error::Config("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Error::Config(e.to_string()))?;
    }
    let verbose = cli.verbose > 0;

    match &cli.command {
        Command::Plan { planner } => {
            let mut req: PlanRequest = require_config(cli)?;
            req.planner.validate()?;
            let target = req.target(&model)?;
            if cli.jobs == Some(1) {
                req.planner.parallel = false;
            }
            let traj = match planner {
                PlannerKind::Ospa => plan(&req.start, &target, &req.planner, &model)?,
                PlannerKind::Aorrt => {
                    if let Some(seed) = cli.seed {
                        req.aorrt.seed = seed;
                    }
                    aorrt_plan(&req.start, &target, &req.aorrt, &model)?
                }
            };
            let integ = match planner {
                PlannerKind::Ospa => req.planner.integrator,
                PlannerKind::Aorrt => req.aorrt.integrator,
            };
            staged.commit(|dir| write_trajectory(dir, "trajectory", &traj, &model, &integ))
        }
        Command::Sweep => {
            let mut req: SweepRequest = require_config(cli)?;
            if let Some(seed) = cli.seed {
                req.scenarios.reseed(seed);
            }
            let spec = SweepSpec {
                sweep: req.sweep,
                template: req.template,
            };
            spec.validate()?;
            let scenarios = req.scenarios.resolve(&model)?;
            if verbose {
                eprintln!(
                    "sweep: {} values x {} scenarios",
                    spec.sweep.len(),
                    scenarios.len()
                );
            }
            let report = run_sweep(&spec, &scenarios, &model, cli.jobs != Some(1));
            staged.commit(|dir| report.write(dir))
        }
        Command::Compare => {
            let mut req: CompareRequest =
                read_config(cli.config.as_deref())?.unwrap_or_else(|| CompareRequest {
                    scenarios: requests::ScenarioSource::random(),
                    spec: Default::default(),
                });
            if let Some(seed) = cli.seed {
                req.scenarios.reseed(seed);
                for r in &mut req.spec.rrt {
                    r.seed = seed;
                }
            }
            req.spec.validate()?;
            let scenarios = req.scenarios.resolve(&model)?;
            if verbose {
                eprintln!(
                    "compare: {} scenarios, {} AO-RRT variants",
                    scenarios.len(),
                    req.spec.rrt.len()
                );
            }
            let report = run_comparison(&req.spec, &scenarios, &model);
            staged.commit(|dir| report.write(dir))
        }
        Command::Perch => {
            let cfg: PerchingConfig = read_config(cli.config.as_deref())?.unwrap_or_default();
            cfg.validate()?;
            let records = run_perching(&cfg, &model);
            let summary: Vec<_> = records
                .iter()
                .map(|r| {
                    let pattern = r
                        .trajectory
                        .as_ref()
                        .map(|t| ends_with_pitch_up(t, &cfg.planner.maneuver_set));
                    json!({
                        "scenario": r.scenario,
                        "success": r.success,
                        "error_m": r.accuracy,
                        "energy": r.energy,
                        "wall_time_s": r.wall_time_s,
                        "pitch_up_ending": pattern,
                    })
                })
                .collect();
            staged.commit(|dir| {
                write_records_csv(dir.join("records.csv"), &records)?;
                write_json(
                    &dir.join("summary.json"),
                    &json!({ "host": HostInfo::current(), "altitudes": summary }),
                )?;
                for r in &records {
                    if let Some(t) = &r.trajectory {
                        write_trajectory(dir, &r.scenario, t, &model, &cfg.planner.integrator)?;
                    }
                }
                Ok(())
            })
        }
        Command::Maneuvers {
            trajectories,
            threshold,
        } => {
            if threshold.is_nan() || *threshold < 0.0 {
                return Err(Error::Config("threshold must be non-negative".into()));
            }
            let rates = if trajectories.is_empty() {
                published_occurrence_rates()
            } else {
                let loaded = trajectories
                    .iter()
                    .map(|p| read_config::<Trajectory>(Some(p)).map(|t| t.expect("path given")))
                    .collect::<Result<Vec<_>>>()?;
                occurrence_rates(&loaded)
            };
            let set = reduce_maneuver_set(&full_maneuver_set(), &rates, *threshold);
            staged.commit(|dir| {
                write_json(&dir.join("rates.json"), &rates)?;
                write_json(
                    &dir.join("maneuvers.json"),
                    &json!({ "threshold": threshold, "maneuvers": set }),
                )
            })
        }
        Command::Simulate => {
            let req: SimulateRequest = require_config(cli)?;
            req.integrator.validate()?;
            let mut traj = Trajectory::empty(req.start);
            let mut state = req.start;
            let energy = ornithoplan::EnergyModel::default();
            for e in &req.schedule {
                state = integrate(&model, &state, &e.maneuver, e.duration_s, &req.integrator)?;
                traj.push(e.maneuver, e.duration_s, state, &energy);
            }
            staged.commit(|dir| write_trajectory(dir, "simulation", &traj, &model, &req.integrator))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report_error(&e),
    }
}
