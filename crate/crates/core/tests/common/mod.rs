//! Independent oracles shared by the integration tests.
#![allow(dead_code, clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;

use ornithoplan::dynamics::{integrate, FlightModel, FlightState, IntegratorConfig, Maneuver};
use ornithoplan::energy::{maneuver_energy, EnergyModel};
use ornithoplan::planner::{
    corridor_distance, PlanTree, Planner, PlannerConfig, ReferenceCurve, Tolerance,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Composite Simpson rule on `[a, b]` with `n` (even) intervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + h * i as f64);
    }
    s * h / 3.0
}

/// Bessel functions of order 0 and 1 from their integral representations.
pub fn bessel_integral(n: i32, x: f64) -> (f64, f64) {
    let nf = n as f64;
    let j = simpson(|t| (nf * t - x * t.sin()).cos(), 0.0, PI, 4000) / PI;
    let y_osc = simpson(|t| (x * t.sin() - nf * t).sin(), 0.0, PI, 4000) / PI;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let upper = (60.0 / x).asinh();
    let y_tail = simpson(
        |t| ((nf * t).exp() + sign * (-nf * t).exp()) * (-x * t.sinh()).exp(),
        0.0,
        upper,
        200_000,
    ) / PI;
    (j, y_osc - y_tail)
}

pub fn theodorsen_oracle(k: f64) -> (f64, f64) {
    let (j0, y0) = bessel_integral(0, k);
    let (j1, y1) = bessel_integral(1, k);
    // C = H1 / (H1 + i H0), H = J - iY
    let (nr, ni) = (j1, -y1);
    let (dr, di) = (j1 + y0, -y1 + j0);
    let d = dr * dr + di * di;
    ((nr * dr + ni * di) / d, (ni * dr - nr * di) / d)
}

/// End of a 5 s glide integrated with the given step.
pub fn glide_at(step: f64) -> FlightState<f64> {
    let model = FlightModel::<f64>::default();
    // stays below stall, so the right-hand side is smooth along the segment
    let s = FlightState::new(0.0, 0.0, 1.5, 0.02, 0.0, 0.0);
    integrate(
        &model,
        &s,
        &Maneuver::from_degrees(-2.0, 0.0),
        5.0,
        &IntegratorConfig::default().with_max_step(step),
    )
    .unwrap()
}

/// Observed convergence order from three step halvings.
pub fn observed_order() -> f64 {
    let (a, b, c) = (glide_at(0.01), glide_at(0.005), glide_at(0.0025));
    (a.distance(&b) / b.distance(&c)).log2()
}

pub fn tiny_set() -> Vec<Maneuver<f64>> {
    vec![
        Maneuver::from_degrees(-2.0, 0.0),
        Maneuver::from_degrees(-5.0, 0.0),
        Maneuver::from_degrees(0.0, 4.0),
        Maneuver::from_degrees(0.0, 6.0),
    ]
}

pub const TINY_STEP: f64 = 15.0;
pub const TINY_DEPTH: usize = 3;

/// Minimum energy over every maneuver sequence of length 1..=depth that
/// keeps moving forward, stays at or behind the target's x and ends inside
/// the tolerance region.
pub fn brute_force(
    model: &FlightModel<f64>,
    state: &FlightState<f64>,
    target: &FlightState<f64>,
    tol: &Tolerance<f64>,
    depth: usize,
    spent: f64,
) -> Option<f64> {
    let mut best: Option<f64> = None;
    if depth == 0 {
        return best;
    }
    let energy = EnergyModel::default();
    for m in tiny_set() {
        let Ok(next) = integrate(model, state, &m, TINY_STEP, &IntegratorConfig::default()) else {
            continue;
        };
        if !(next.x > state.x) || next.x > target.x {
            continue;
        }
        let e = spent + maneuver_energy(&m, TINY_STEP, &energy);
        if tol.accepts(&next, target, &model.scales) {
            best = Some(best.map_or(e, |b: f64| b.min(e)));
        }
        if let Some(deeper) = brute_force(model, &next, target, tol, depth - 1, e) {
            best = Some(best.map_or(deeper, |b| b.min(deeper)));
        }
    }
    best
}

/// Targets offset from the end of a random reachable sequence.
pub fn tiny_instances() -> Vec<(FlightState<f64>, FlightState<f64>)> {
    let model = FlightModel::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let start = FlightState::forward(0.0, 0.0, 1.0);
    let set = tiny_set();
    let mut out = Vec::new();
    while out.len() < 10 {
        let depth = rng.gen_range(1..=TINY_DEPTH);
        let mut s = start;
        let mut ok = true;
        for _ in 0..depth {
            let m = set[rng.gen_range(0..set.len())];
            match integrate(&model, &s, &m, TINY_STEP, &IntegratorConfig::default()) {
                Ok(n) => s = n,
                Err(_) => ok = false,
            }
        }
        if !ok {
            continue;
        }
        let dx = model.scales.length_to_nd(rng.gen_range(0.0..3.0));
        let dz = model.scales.length_to_nd(rng.gen_range(-3.0..3.0));
        out.push((
            start,
            FlightState {
                x: s.x + dx,
                z: s.z + dz,
                ..s
            },
        ));
    }
    out
}

pub fn tiny_config(k_d: Option<f64>, k_w: Option<usize>) -> PlannerConfig<f64> {
    PlannerConfig {
        maneuver_set: tiny_set(),
        time_steps: vec![TINY_STEP],
        k_d,
        k_w,
        max_depth: Some(TINY_DEPTH),
        tolerance: Tolerance::position(8.0),
        ..PlannerConfig::default()
    }
}

pub fn curve_oracle(c: &ReferenceCurve<f64>, x: f64) -> f64 {
    let t = (x - c.x0) / (c.xf - c.x0);
    c.z0 + (c.zf - c.z0) * (1.0 - (PI * t).cos()) / 2.0
}

pub fn desk_config() -> PlannerConfig<f64> {
    PlannerConfig {
        time_steps: vec![4.0],
        k_d: Some(15.0),
        k_w: Some(10),
        ..PlannerConfig::default()
    }
}

pub fn target_m(model: &FlightModel<f64>, x: f64, z: f64) -> FlightState<f64> {
    FlightState::forward(
        model.scales.length_to_nd(x),
        model.scales.length_to_nd(z),
        1.0,
    )
}

/// Every violated tree invariant, one message each.
pub fn tree_violations(tree: &PlanTree<f64>, planner: &Planner<f64>) -> Vec<String> {
    let sc = &planner.model.scales;
    let cfg = planner.config;
    let mut out = Vec::new();
    for (i, n) in tree.nodes.iter().enumerate().skip(1) {
        let p = &tree.nodes[n.parent.unwrap()];
        let (x, z) = (sc.length_from_nd(n.state.x), sc.length_from_nd(n.state.z));
        if let Some(k_d) = cfg.k_d {
            let d = corridor_distance(&planner.corridor, x, z);
            if d > k_d + 1e-3 {
                out.push(format!("node {i}: corridor distance {d}"));
            }
        }
        if n.state.x > planner.target.x {
            out.push(format!("node {i}: beyond target"));
        }
        if !(n.state.x > p.state.x) || n.depth != p.depth + 1 {
            out.push(format!("node {i}: not a forward child"));
        }
        let e = maneuver_energy(
            &n.inbound_maneuver.unwrap(),
            n.inbound_duration,
            &cfg.energy,
        );
        if n.accumulated_energy != p.accumulated_energy + e {
            out.push(format!("node {i}: energy not accumulated"));
        }
    }
    if let Some(k_w) = cfg.k_w {
        let bound = planner.depth_limit * k_w * cfg.time_steps.len();
        if tree.inserted_count() > bound {
            out.push(format!(
                "{} nodes inserted, bound {bound}",
                tree.inserted_count()
            ));
        }
        for (d, level) in tree.levels.iter().enumerate().skip(1) {
            if level.len() > k_w * cfg.time_steps.len() {
                out.push(format!("level {d} holds {} nodes", level.len()));
            }
        }
    }
    out
}
