//! Asymptotically-optimal RRT over (cost, state) with discrete control
//! sampling, used as the comparison baseline.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::{
    integrate, reduced_maneuver_set, FlightModel, FlightState, IntegratorConfig, Maneuver,
};
use crate::energy::{maneuver_energy, EnergyModel};
use crate::error::{Error, Result};
use crate::planner::{Tolerance, Trajectory};
use crate::scalar::Scalar;

/// Box from which random states are drawn. Positions in meters, the rest
/// nondimensional, cost in W·s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct SampleBounds<T: Scalar> {
    pub x_m: (T, T),
    pub z_m: (T, T),
    pub u: (T, T),
    pub w: (T, T),
    pub theta: (T, T),
    pub q: (T, T),
    pub cost: (T, T),
}

impl<T: Scalar> SampleBounds<T> {
    /// Bounds spanning start and target: x from the start to the far edge
    /// of the goal square, z padded by a quarter of the horizontal
    /// distance, cost up to flapping at full power for twice the cruise time.
    pub fn around(
        start: &FlightState<T>,
        target: &FlightState<T>,
        cfg: &RrtConfig<T>,
        model: &FlightModel<T>,
    ) -> Self {
        let sc = &model.scales;
        let (x0, z0) = (sc.length_from_nd(start.x), sc.length_from_nd(start.z));
        let (xf, zf) = (sc.length_from_nd(target.x), sc.length_from_nd(target.z));
        let pad = (xf - x0).abs() / T::lit(4.0);
        let max_power = cfg
            .maneuver_set
            .iter()
            .map(|m| cfg.energy.power(m))
            .fold(T::zero(), T::max);
        let cruise_s = T::lit(2.0) * (xf - x0).abs() / sc.speed;
        Self {
            x_m: (x0.min(xf), x0.max(xf) + cfg.goal_side_m / T::lit(2.0)),
            z_m: (z0.min(zf) - pad, z0.max(zf) + pad),
            u: (T::lit(0.5), T::lit(2.5)),
            w: (T::lit(-0.5), T::lit(0.5)),
            theta: (T::lit(-0.6), T::lit(0.6)),
            q: (T::lit(-0.05), T::lit(0.05)),
            cost: (T::zero(), max_power * cruise_s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", default)]
pub struct RrtConfig<T: Scalar> {
    /// Wall-clock budget in seconds.
    pub time_budget_s: f64,
    /// Optional iteration cap; with it, runs are reproducible regardless of
    /// machine speed.
    pub max_iterations: Option<usize>,
    /// Duration of every sampled control, seconds.
    pub control_step_s: T,
    pub maneuver_set: Vec<Maneuver<T>>,
    /// Derived from start and target when absent.
    pub sample_bounds: Option<SampleBounds<T>>,
    /// Side of the goal square centered at the target, meters.
    pub goal_side_m: T,
    pub seed: u64,
    /// Weights for (cost, x, z, u, w, θ, q) in the nearest-neighbor metric.
    pub weights: [T; 7],
    /// Probability of sampling inside the goal square.
    pub goal_bias: T,
    pub integrator: IntegratorConfig<T>,
    pub energy: EnergyModel<T>,
}

impl<T: Scalar> Default for RrtConfig<T> {
    fn default() -> Self {
        let l = T::lit;
        Self {
            time_budget_s: 5.0,
            max_iterations: None,
            control_step_s: l(2.0),
            maneuver_set: reduced_maneuver_set(),
            sample_bounds: None,
            goal_side_m: l(6.0),
            seed: 0,
            weights: [l(1.0), l(1.0), l(1.0), l(1.0), l(1.0), l(0.5), l(0.1)],
            goal_bias: l(0.05),
            integrator: IntegratorConfig::default(),
            energy: EnergyModel::default(),
        }
    }
}

impl<T: Scalar> RrtConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.time_budget_s > 0.0) {
            return Err(Error::config("time_budget_s must be positive"));
        }
        if !(self.control_step_s > T::zero()) {
            return Err(Error::config("control_step_s must be positive"));
        }
        if !(self.goal_side_m > T::zero()) {
            return Err(Error::config("goal_side_m must be positive"));
        }
        if self.maneuver_set.is_empty() {
            return Err(Error::config("maneuver_set is empty"));
        }
        if self.weights.iter().any(|w| !(*w >= T::zero())) {
            return Err(Error::config("metric weights must be non-negative"));
        }
        self.integrator.validate()?;
        self.energy.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct RrtNode<T: Scalar> {
    pub state: FlightState<T>,
    pub cost: T,
    pub parent: Option<usize>,
    pub maneuver: Option<Maneuver<T>>,
}

/// Tree and best solution of one run.
#[derive(Debug)]
pub struct RrtOutcome<T: Scalar> {
    pub nodes: Vec<RrtNode<T>>,
    pub iterations: usize,
    pub trajectory: Result<Trajectory<T>>,
}

/// Runs AO-RRT and returns the minimum-energy path into the goal square.
pub fn aorrt_plan<T: Scalar>(
    start: &FlightState<T>,
    target: &FlightState<T>,
    cfg: &RrtConfig<T>,
    model: &FlightModel<T>,
) -> Result<Trajectory<T>> {
    aorrt_run(start, target, cfg, model)?.trajectory
}

/// Like [`aorrt_plan`] but also returns the explored tree.
pub fn aorrt_run<T: Scalar>(
    start: &FlightState<T>,
    target: &FlightState<T>,
    cfg: &RrtConfig<T>,
    model: &FlightModel<T>,
) -> Result<RrtOutcome<T>> {
    cfg.validate()?;
    let sc = &model.scales;
    let bounds = cfg
        .sample_bounds
        .unwrap_or_else(|| SampleBounds::around(start, target, cfg, model));
    let goal = Tolerance::square(cfg.goal_side_m);
    let half = cfg.goal_side_m / T::lit(2.0);
    let (tx, tz) = (sc.length_from_nd(target.x), sc.length_from_nd(target.z));
    let goal_covers_bounds = tx - half <= bounds.x_m.0
        && tx + half >= bounds.x_m.1
        && tz - half <= bounds.z_m.0
        && tz + half >= bounds.z_m.1;

    let length_norm = sc.speed * cfg.control_step_s;
    let max_power = cfg
        .maneuver_set
        .iter()
        .map(|m| cfg.energy.power(m))
        .fold(T::zero(), T::max);
    let cost_norm = (max_power * cfg.control_step_s).max(T::epsilon());
    let key = |cost: T, s: &FlightState<T>| -> [T; 7] {
        [
            cost / cost_norm,
            sc.length_from_nd(s.x) / length_norm,
            sc.length_from_nd(s.z) / length_norm,
            s.u,
            s.w,
            s.theta,
            s.q,
        ]
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut nodes = vec![RrtNode {
        state: *start,
        cost: T::zero(),
        parent: None,
        maneuver: None,
    }];
    let mut keys = vec![key(T::zero(), start)];
    let mut best: Option<usize> = None;
    let clock = Instant::now();
    let budget = Duration::from_secs_f64(cfg.time_budget_s);
    let mut iterations = 0;

    let uniform = |rng: &mut ChaCha8Rng, (lo, hi): (T, T)| -> T {
        let r = T::lit(rng.gen::<f64>());
        lo + (hi - lo) * r
    };

    loop {
        if clock.elapsed() >= budget || cfg.max_iterations.is_some_and(|m| iterations >= m) {
            break;
        }
        iterations += 1;
        let best_cost = best.map(|b| nodes[b].cost);
        let (sx, sz) = if T::lit(rng.gen::<f64>()) < cfg.goal_bias {
            (
                uniform(&mut rng, (tx - half, tx + half)),
                uniform(&mut rng, (tz - half, tz + half)),
            )
        } else {
            (uniform(&mut rng, bounds.x_m), uniform(&mut rng, bounds.z_m))
        };
        let cost_hi = best_cost.map_or(bounds.cost.1, |c| c.min(bounds.cost.1));
        let sample = FlightState::new(
            sc.length_to_nd(sx),
            sc.length_to_nd(sz),
            uniform(&mut rng, bounds.u),
            uniform(&mut rng, bounds.w),
            uniform(&mut rng, bounds.theta),
            uniform(&mut rng, bounds.q),
        );
        let sk = key(uniform(&mut rng, (bounds.cost.0, cost_hi)), &sample);
        let m_idx = rng.gen_range(0..cfg.maneuver_set.len());

        let mut nearest = None;
        let mut nearest_d = T::infinity();
        for (i, k) in keys.iter().enumerate() {
            if best_cost.is_some_and(|c| nodes[i].cost >= c) {
                continue;
            }
            let d = k
                .iter()
                .zip(&sk)
                .zip(&cfg.weights)
                .fold(T::zero(), |acc, ((a, b), w)| {
                    let diff = *a - *b;
                    acc + *w * diff * diff
                });
            if d < nearest_d {
                nearest_d = d;
                nearest = Some(i);
            }
        }
        let Some(parent) = nearest else { continue };
        let maneuver = cfg.maneuver_set[m_idx];
        let Ok(child) = integrate(
            model,
            &nodes[parent].state,
            &maneuver,
            cfg.control_step_s,
            &cfg.integrator,
        ) else {
            continue;
        };
        let cost = nodes[parent].cost + maneuver_energy(&maneuver, cfg.control_step_s, &cfg.energy);
        if best_cost.is_some_and(|c| cost >= c) {
            continue;
        }
        let id = nodes.len();
        nodes.push(RrtNode {
            state: child,
            cost,
            parent: Some(parent),
            maneuver: Some(maneuver),
        });
        keys.push(key(cost, &child));
        if goal.accepts(&child, target, sc) {
            best = Some(id);
            if goal_covers_bounds {
                break;
            }
        }
    }

    let trajectory = match best {
        Some(b) => Ok(rrt_path(&nodes, b, cfg)),
        None => {
            let closest = nodes
                .iter()
                .skip(1)
                .map(|n| goal.distance(&n.state, target, sc))
                .fold(T::infinity(), T::min);
            Err(Error::NoSolution {
                best_distance: closest.to_f64_lossy(),
            })
        }
    };
    Ok(RrtOutcome {
        nodes,
        iterations,
        trajectory,
    })
}

fn rrt_path<T: Scalar>(nodes: &[RrtNode<T>], goal: usize, cfg: &RrtConfig<T>) -> Trajectory<T> {
    let mut ids = vec![goal];
    while let Some(p) = nodes[*ids.last().unwrap_or(&0)].parent {
        ids.push(p);
    }
    ids.reverse();
    let mut traj = Trajectory::empty(nodes[ids[0]].state);
    for &id in &ids[1..] {
        let n = &nodes[id];
        if let Some(m) = n.maneuver {
            traj.push(m, cfg.control_step_s, n.state, &cfg.energy);
        }
    }
    traj.energy = nodes[goal].cost;
    traj
}
