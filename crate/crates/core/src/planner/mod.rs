//! Maneuver-segmented tree search with corridor and witness pruning.

pub mod config;
pub mod curve;
pub mod search;
pub mod trajectory;
pub mod tree;

pub use config::{state_distance, PartitionMode, PlannerConfig, Tolerance, ToleranceMetric};
pub use curve::{corridor_distance, Corridor, ReferenceCurve};
pub use search::{extract_optimal_path, plan, PlanOutcome, Planner};
pub use trajectory::{write_samples_csv, Sample, Segment, Trajectory};
pub use tree::{partition_by_z, select_witness, PlanNode, PlanTree};
