use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::config::PartitionMode;
use crate::dynamics::{FlightState, Maneuver};
use crate::scalar::Scalar;

/// A tree vertex. Nodes live in [`PlanTree::nodes`] and refer to their parent
/// by index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PlanNode<T: Scalar> {
    pub state: FlightState<T>,
    pub parent: Option<usize>,
    pub inbound_maneuver: Option<Maneuver<T>>,
    /// Seconds.
    pub inbound_duration: T,
    /// W·s from the root.
    pub accumulated_energy: T,
    pub depth: usize,
    /// Kept only as a path end candidate; never expanded.
    pub terminal: bool,
}

impl<T: Scalar> PlanNode<T> {
    pub fn root(state: FlightState<T>) -> Self {
        Self {
            state,
            parent: None,
            inbound_maneuver: None,
            inbound_duration: T::zero(),
            accumulated_energy: T::zero(),
            depth: 0,
            terminal: false,
        }
    }
}

/// Arena of nodes plus the expandable nodes inserted at each level.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PlanTree<T: Scalar> {
    pub nodes: Vec<PlanNode<T>>,
    /// `levels[d]` lists the non-terminal nodes of depth `d`.
    pub levels: Vec<Vec<usize>>,
}

impl<T: Scalar> PlanTree<T> {
    pub fn new(root: FlightState<T>) -> Self {
        Self {
            nodes: vec![PlanNode::root(root)],
            levels: vec![vec![0]],
        }
    }

    pub fn push(&mut self, node: PlanNode<T>) -> usize {
        let id = self.nodes.len();
        if !node.terminal {
            if self.levels.len() <= node.depth {
                self.levels.resize_with(node.depth + 1, Vec::new);
            }
            self.levels[node.depth].push(id);
        }
        self.nodes.push(node);
        id
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Height of the tree (deepest level with an expandable node).
    pub fn height(&self) -> usize {
        self.levels.iter().rposition(|l| !l.is_empty()).unwrap_or(0)
    }

    /// Non-terminal nodes excluding the root.
    pub fn inserted_count(&self) -> usize {
        self.levels.iter().skip(1).map(Vec::len).sum()
    }

    /// Node indices from the root to `id`, inclusive.
    pub fn path_to(&self, id: usize) -> Vec<usize> {
        let mut path = vec![id];
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }
}

/// Splits `nodes` by z into at most `k_w` nonempty partitions, returned in
/// ascending z. Each partition lists indices into `nodes` in input order.
pub fn partition_by_z<T: Scalar>(
    nodes: &[PlanNode<T>],
    k_w: usize,
    mode: PartitionMode,
) -> Vec<Vec<usize>> {
    if nodes.is_empty() {
        return Vec::new();
    }
    let k_w = k_w.max(1);
    let (lo, hi) = nodes
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), n| {
            (lo.min(n.state.z), hi.max(n.state.z))
        });
    if k_w == 1 || !(hi > lo) {
        return vec![(0..nodes.len()).collect()];
    }
    match mode {
        PartitionMode::EqualWidth => {
            let width = (hi - lo) / T::from_usize_lossy(k_w);
            let mut bins = vec![Vec::new(); k_w];
            for (i, n) in nodes.iter().enumerate() {
                let b = ((n.state.z - lo) / width)
                    .floor()
                    .to_usize()
                    .unwrap_or(0)
                    .min(k_w - 1);
                bins[b].push(i);
            }
            bins.into_iter().filter(|b| !b.is_empty()).collect()
        }
        PartitionMode::Quantile => {
            let mut order: Vec<usize> = (0..nodes.len()).collect();
            order.sort_by(|&a, &b| {
                let (sa, sb) = (&nodes[a].state, &nodes[b].state);
                cmp(sa.z, sb.z).then(cmp(sa.x, sb.x)).then(a.cmp(&b))
            });
            let n = order.len();
            let k = k_w.min(n);
            let mut out: Vec<Vec<usize>> = (0..k)
                .map(|i| order[i * n / k..(i + 1) * n / k].to_vec())
                .filter(|p| !p.is_empty())
                .collect();
            for p in &mut out {
                p.sort_unstable();
            }
            out
        }
    }
}

/// Index (into `nodes`) of the minimum-energy member of `partition`; ties go
/// to smaller z, then smaller x, then the earlier index.
pub fn select_witness<T: Scalar>(nodes: &[PlanNode<T>], partition: &[usize]) -> Option<usize> {
    partition.iter().copied().min_by(|&a, &b| {
        let (na, nb) = (&nodes[a], &nodes[b]);
        cmp(na.accumulated_energy, nb.accumulated_energy)
            .then(cmp(na.state.z, nb.state.z))
            .then(cmp(na.state.x, nb.state.x))
            .then(a.cmp(&b))
    })
}

#[inline]
pub(crate) fn cmp<T: Scalar>(a: T, b: T) -> Ordering {
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}
