use rayon::prelude::*;

use super::config::{PlannerConfig, Tolerance};
use super::curve::{Corridor, ReferenceCurve};
use super::trajectory::Trajectory;
use super::tree::{cmp, partition_by_z, select_witness, PlanNode, PlanTree};
use crate::dynamics::{integrate, FlightModel, FlightState};
use crate::energy::{maneuver_energy, EnergyModel};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A configured search from `start` to `target`.
#[derive(Debug, Clone)]
pub struct Planner<'a, T: Scalar> {
    pub start: FlightState<T>,
    pub target: FlightState<T>,
    pub config: &'a PlannerConfig<T>,
    pub model: &'a FlightModel<T>,
    pub corridor: Corridor<T>,
    pub depth_limit: usize,
}

/// Tree and extracted trajectory of one search.
#[derive(Debug, Clone)]
pub struct PlanOutcome<T: Scalar> {
    pub tree: PlanTree<T>,
    pub trajectory: Trajectory<T>,
    /// Index of the trajectory's last node in `tree`.
    pub goal: usize,
}

impl<'a, T: Scalar> Planner<'a, T> {
    pub fn new(
        start: FlightState<T>,
        target: FlightState<T>,
        config: &'a PlannerConfig<T>,
        model: &'a FlightModel<T>,
    ) -> Result<Self> {
        config.validate()?;
        if !(target.x > start.x) {
            return Err(Error::Domain(
                "target must lie ahead of the start (sf.x > s0.x)".into(),
            ));
        }
        let sc = &model.scales;
        let curve = ReferenceCurve::new(
            sc.length_from_nd(start.x),
            sc.length_from_nd(start.z),
            sc.length_from_nd(target.x),
            sc.length_from_nd(target.z),
        )?;
        let corridor = Corridor::new(curve, config.k_d.unwrap_or_else(T::infinity))?;
        let depth_limit = config.depth_limit(curve.x_d(), sc);
        Ok(Self {
            start,
            target,
            config,
            model,
            corridor,
            depth_limit,
        })
    }

    fn in_corridor(&self, s: &FlightState<T>) -> bool {
        let sc = &self.model.scales;
        self.corridor
            .contains(sc.length_from_nd(s.x), sc.length_from_nd(s.z))
    }

    fn in_tolerance(&self, s: &FlightState<T>) -> bool {
        self.config
            .tolerance
            .accepts(s, &self.target, &self.model.scales)
    }

    /// Expands every leaf with every maneuver and time step, in the order
    /// (leaf, maneuver, time step). Candidates that diverge, fail to move
    /// forward, leave the corridor or pass the target's x are dropped; with
    /// `accept_overshoot`, candidates past the target that fall inside the
    /// tolerance region are kept and marked terminal.
    pub fn expand_leaves(&self, tree: &PlanTree<T>, leaves: &[usize]) -> Vec<PlanNode<T>> {
        let cfg = self.config;
        let jobs: Vec<(usize, usize, usize)> = leaves
            .iter()
            .flat_map(|&l| {
                (0..cfg.maneuver_set.len())
                    .flat_map(move |m| (0..cfg.time_steps.len()).map(move |t| (l, m, t)))
            })
            .collect();
        let run = |&(leaf, m, t): &(usize, usize, usize)| -> Option<PlanNode<T>> {
            let parent = &tree.nodes[leaf];
            let maneuver = cfg.maneuver_set[m];
            let dt = cfg.time_steps[t];
            let state =
                integrate(self.model, &parent.state, &maneuver, dt, &cfg.integrator).ok()?;
            if !(state.x > parent.state.x) || !self.in_corridor(&state) {
                return None;
            }
            let terminal = if state.x <= self.target.x {
                false
            } else if cfg.accept_overshoot && self.in_tolerance(&state) {
                true
            } else {
                return None;
            };
            Some(PlanNode {
                state,
                parent: Some(leaf),
                inbound_maneuver: Some(maneuver),
                inbound_duration: dt,
                accumulated_energy: parent.accumulated_energy
                    + maneuver_energy(&maneuver, dt, &cfg.energy),
                depth: parent.depth + 1,
                terminal,
            })
        };
        let results: Vec<Option<PlanNode<T>>> = if cfg.parallel {
            jobs.par_iter().map(run).collect()
        } else {
            jobs.iter().map(run).collect()
        };
        results.into_iter().flatten().collect()
    }

    /// Grows the tree level by level until no node survives pruning or the
    /// depth limit is reached.
    pub fn build_tree(&self) -> PlanTree<T> {
        let cfg = self.config;
        let mut tree = PlanTree::new(self.start);
        let mut leaves = vec![0];
        let mut steps: Vec<T> = Vec::new();
        for &dt in &cfg.time_steps {
            if !steps.contains(&dt) {
                steps.push(dt);
            }
        }
        for _ in 0..self.depth_limit {
            let candidates = self.expand_leaves(&tree, &leaves);
            let mut next = Vec::new();
            for &dt in &steps {
                let group: Vec<PlanNode<T>> = candidates
                    .iter()
                    .filter(|c| !c.terminal && c.inbound_duration == dt)
                    .copied()
                    .collect();
                if group.is_empty() {
                    continue;
                }
                let mut keep = vec![cfg.k_w.is_none(); group.len()];
                if let Some(k_w) = cfg.k_w {
                    for part in partition_by_z(&group, k_w, cfg.partition_mode) {
                        if let Some(w) = select_witness(&group, &part) {
                            keep[w] = true;
                        }
                    }
                }
                for (node, kept) in group.into_iter().zip(keep) {
                    if kept {
                        next.push(tree.push(node));
                    } else if self.in_tolerance(&node.state) {
                        tree.push(PlanNode {
                            terminal: true,
                            ..node
                        });
                    }
                }
            }
            for c in candidates.iter().filter(|c| c.terminal) {
                tree.push(*c);
            }
            if next.is_empty() {
                break;
            }
            leaves = next;
        }
        tree
    }

    /// Builds the tree and extracts the minimum-energy path.
    pub fn run(&self) -> Result<PlanOutcome<T>> {
        let tree = self.build_tree();
        let goal = best_node(&tree, &self.target, &self.config.tolerance, self.model)?;
        let trajectory = path_trajectory(&tree, goal, &self.config.energy);
        Ok(PlanOutcome {
            tree,
            trajectory,
            goal,
        })
    }
}

/// Plans an energy-minimal maneuver sequence from `start` to `target`.
pub fn plan<T: Scalar>(
    start: &FlightState<T>,
    target: &FlightState<T>,
    config: &PlannerConfig<T>,
    model: &FlightModel<T>,
) -> Result<Trajectory<T>> {
    Ok(Planner::new(*start, *target, config, model)?
        .run()?
        .trajectory)
}

/// Minimum-energy path to a non-root node within `tolerance` of `target`.
/// Energy ties go to the node closer to the target.
pub fn extract_optimal_path<T: Scalar>(
    tree: &PlanTree<T>,
    target: &FlightState<T>,
    tolerance: &Tolerance<T>,
    model: &FlightModel<T>,
    energy: &EnergyModel<T>,
) -> Result<Trajectory<T>> {
    let goal = best_node(tree, target, tolerance, model)?;
    Ok(path_trajectory(tree, goal, energy))
}

fn best_node<T: Scalar>(
    tree: &PlanTree<T>,
    target: &FlightState<T>,
    tolerance: &Tolerance<T>,
    model: &FlightModel<T>,
) -> Result<usize> {
    let radius = tolerance.radius();
    let mut closest = T::infinity();
    let mut best: Option<(usize, T)> = None;
    for (i, n) in tree.nodes.iter().enumerate() {
        let d = tolerance.distance(&n.state, target, &model.scales);
        closest = closest.min(d);
        if i == 0 || d > radius {
            continue;
        }
        let better = match best {
            None => true,
            Some((b, bd)) => cmp(n.accumulated_energy, tree.nodes[b].accumulated_energy)
                .then(cmp(d, bd))
                .is_lt(),
        };
        if better {
            best = Some((i, d));
        }
    }
    best.map(|(i, _)| i).ok_or(Error::NoSolution {
        best_distance: closest.to_f64_lossy(),
    })
}

fn path_trajectory<T: Scalar>(
    tree: &PlanTree<T>,
    goal: usize,
    energy: &EnergyModel<T>,
) -> Trajectory<T> {
    let path = tree.path_to(goal);
    let mut traj = Trajectory::empty(tree.nodes[path[0]].state);
    for &id in &path[1..] {
        let n = &tree.nodes[id];
        if let Some(m) = n.inbound_maneuver {
            traj.push(m, n.inbound_duration, n.state, energy);
        }
    }
    traj.energy = tree.nodes[goal].accumulated_energy;
    traj
}
